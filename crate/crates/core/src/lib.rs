//! Exact arithmetic over prime-power fields and their extension towers,
//! polynomial classification (irreducibility, order, primitivity), and the
//! composition constructions that assemble high-degree irreducible and
//! primitive polynomials from small inputs, each verified independently.

pub mod classify;
pub mod construct;
pub mod error;
pub mod field;
pub mod poly;
pub mod text;

pub use classify::{
    brute_force_irreducible, conjugate_factor, dickson_split, enumerate_irreducible,
    enumerate_primitive, is_irreducible, is_primitive, mobius_product, poly_order,
    sidelnikov_q1_check, sidelnikov_q9_check,
};
pub use construct::{
    cohen_compose, corollary_ci_construct, corollary_theta_construct, find_order_form,
    minimal_poly_mod, ogm_construct, theorem10_construct, theorem11_construct, theorem1_compose,
    theorem3_construct, theorem5_construct, theorem8_construct, varshamov_construct, Checks,
    ConstructionReport, Intermediates,
};
pub use error::{Error, Result};
pub use field::{
    element_order, factor_group_order, factor_group_order_with_bound, make_field, set_degree,
    Felt, FieldCtx, OrderFactorization, DEFAULT_TRIAL_BOUND,
};
pub use poly::{norm_product, Degree, Poly};
pub use text::{parse_element, parse_field, parse_poly, poly_to_exps};
