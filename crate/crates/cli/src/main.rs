//! `galois`: construct irreducible/primitive polynomials by composition
//! methods, verify user-supplied polynomials, and enumerate small families.
//!
//! Exit codes: 0 success (construct: report verified), 1 usage or input
//! syntax error, 2 precondition failure, 3 verification failure.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use galois_core::{
    brute_force_irreducible, cohen_compose, corollary_ci_construct, corollary_theta_construct,
    factor_group_order_with_bound, find_order_form, is_irreducible, mobius_product, ogm_construct,
    parse_element, parse_field, parse_poly, poly_order, poly_to_exps, theorem10_construct,
    theorem11_construct, theorem1_compose, theorem3_construct, theorem5_construct,
    theorem8_construct, varshamov_construct, ConstructionReport, Error, FieldCtx, Poly, Result,
};

#[derive(Parser)]
#[command(
    name = "galois",
    version,
    about = "Finite-field polynomial constructions by composition methods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one construction and print its report
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Check a polynomial: irreducibility, optionally order and primitivity
    Verify {
        #[command(flatten)]
        common: Common,
        /// Polynomial to check
        #[arg(long)]
        poly: String,
        /// Also compute the order and test primitivity
        #[arg(long)]
        order: bool,
    },
    /// List all monic irreducibles (or primitives) of one degree
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Degree to enumerate
        #[arg(long)]
        degree: usize,
        /// Keep only primitive polynomials
        #[arg(long)]
        primitive: bool,
        /// Assert the product of the listing equals the Mobius-formula product
        #[arg(long, conflicts_with = "primitive")]
        check_mobius: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Exps,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    None,
    Fast,
    Oracle,
}

#[derive(Args)]
struct Common {
    /// Field descriptor: GF(p), GF(p^s), or GF(p^s)[chain: m0; m1; ...]
    #[arg(long)]
    field: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Verification level: fast is the built-in checking, oracle adds the
    /// brute-force cross-check, none skips the optional extras
    #[arg(long = "verify", value_enum, default_value_t = Level::Fast)]
    verify: Level,
    /// Trial-division bound for group-order factoring (overrides the
    /// GALOIS_TRIAL_BOUND environment variable)
    #[arg(long)]
    trial_bound: Option<u64>,
}

impl Common {
    /// Parse the field descriptor and apply the trial-bound override:
    /// flag, then environment variable, then the library default.
    fn field_ctx(&self) -> Result<Arc<FieldCtx>> {
        let ctx = parse_field(&self.field)?;
        let bound = match self.trial_bound {
            Some(b) => Some(b),
            None => match std::env::var("GALOIS_TRIAL_BOUND") {
                Ok(v) => Some(v.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("GALOIS_TRIAL_BOUND must be an integer, got {v:?}"),
                })?),
                Err(_) => None,
            },
        };
        Ok(match bound {
            Some(b) => ctx.with_trial_bound(b),
            None => ctx,
        })
    }
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Norm product of f(alpha*x + beta) over an extension of degree ext
    Theorem1 {
        #[command(flatten)]
        common: Common,
        /// Degree of the extension the scalars are drawn from
        #[arg(long)]
        ext: usize,
        /// Irreducible polynomial over the base field
        #[arg(long)]
        f: String,
        /// Nonzero scalar in the extension (variable y, z, ... per level)
        #[arg(long)]
        alpha: String,
        /// Scalar in the extension
        #[arg(long)]
        beta: String,
    },
    /// Substitute the fraction f/g into P: sum of P_i f^i g^(n-i)
    Cohen {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial being composed
        #[arg(long)]
        p: String,
        /// Numerator of the substituted fraction
        #[arg(long)]
        f: String,
        /// Denominator of the substituted fraction, coprime to f
        #[arg(long)]
        g: String,
    },
    /// Quotient psi(x^r)/f for psi the minimal polynomial of x^r mod f
    Varshamov {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial
        #[arg(long)]
        f: String,
        /// Odd prime with ord_r(q) = r - 1
        #[arg(long)]
        r: u64,
    },
    /// Linearized associate of l divided by x; irreducible iff l primitive
    Ogm {
        #[command(flatten)]
        common: Common,
        /// Monic polynomial with nonzero constant term
        #[arg(long)]
        l: String,
    },
    /// Quotient psi(l)/f for psi the minimal polynomial of l(x) mod f
    Theorem3 {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial
        #[arg(long)]
        f: String,
        /// Primitive polynomial (conventional associate)
        #[arg(long)]
        l: String,
    },
    /// theorem3 specialized to l = x - theta
    CorTheta {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial
        #[arg(long)]
        f: String,
        /// Primitive element of the coefficient field
        #[arg(long)]
        theta: String,
    },
    /// theorem3 recomputed through the coefficient sums c_i
    CorCi {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial
        #[arg(long)]
        f: String,
        /// Primitive polynomial (conventional associate)
        #[arg(long)]
        l: String,
    },
    /// Quotient built from f(x^q + beta input) over x - gamma
    Theorem5 {
        #[command(flatten)]
        common: Common,
        /// Primitive polynomial
        #[arg(long)]
        f: String,
        /// Scalar with beta != -gamma
        #[arg(long)]
        beta: String,
        /// Scalar
        #[arg(long)]
        gamma: String,
    },
    /// Composition for an irreducible of order e(q^n + 1)
    Theorem8 {
        #[command(flatten)]
        common: Common,
        /// Irreducible polynomial of even degree 2n
        #[arg(long)]
        f: String,
        /// Order cofactor; discovered from the order of f when omitted
        #[arg(long)]
        e: Option<u128>,
    },
    /// Quotient f(x^q + x^(q-1))/f(x + 1)
    Theorem10 {
        #[command(flatten)]
        common: Common,
        /// Primitive polynomial
        #[arg(long)]
        f: String,
    },
    /// Quotient of the homogenized twist by (-(x+1))^n f(-x)
    Theorem11 {
        #[command(flatten)]
        common: Common,
        /// Primitive polynomial
        #[arg(long)]
        f: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

fn exit_class(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 1,
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { which } => run_construct(which),
        Command::Verify { common, poly, order } => run_verify(&common, &poly, order),
        Command::Enumerate { common, degree, primitive, check_mobius } => {
            run_enumerate(&common, degree, primitive, check_mobius)
        }
    }
}

fn run_construct(which: ConstructCmd) -> Result<ExitCode> {
    let (common, report) = match which {
        ConstructCmd::Theorem1 { common, ext, f, alpha, beta } => {
            let base = common.field_ctx()?;
            let tower = base.extend_default(ext)?;
            let top = tower.top_level();
            let f = parse_poly(&f, &tower, top - 1)?;
            let alpha = parse_element(&alpha, &tower, top)?;
            let beta = parse_element(&beta, &tower, top)?;
            (common, theorem1_compose(&f, &alpha, &beta)?)
        }
        ConstructCmd::Cohen { common, p, f, g } => {
            let (ctx, top) = top_of(&common)?;
            let p = parse_poly(&p, &ctx, top)?;
            let f = parse_poly(&f, &ctx, top)?;
            let g = parse_poly(&g, &ctx, top)?;
            (common, cohen_compose(&p, &f, &g)?)
        }
        ConstructCmd::Varshamov { common, f, r } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            (common, varshamov_construct(&f, r)?)
        }
        ConstructCmd::Ogm { common, l } => {
            let (ctx, top) = top_of(&common)?;
            let l = parse_poly(&l, &ctx, top)?;
            (common, ogm_construct(&l)?)
        }
        ConstructCmd::Theorem3 { common, f, l } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            let l = parse_poly(&l, &ctx, top)?;
            (common, theorem3_construct(&f, &l)?)
        }
        ConstructCmd::CorTheta { common, f, theta } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            let theta = parse_element(&theta, &ctx, top)?;
            (common, corollary_theta_construct(&f, &theta)?)
        }
        ConstructCmd::CorCi { common, f, l } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            let l = parse_poly(&l, &ctx, top)?;
            (common, corollary_ci_construct(&f, &l)?)
        }
        ConstructCmd::Theorem5 { common, f, beta, gamma } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            let beta = parse_element(&beta, &ctx, top)?;
            let gamma = parse_element(&gamma, &ctx, top)?;
            (common, theorem5_construct(&f, &beta, &gamma)?)
        }
        ConstructCmd::Theorem8 { common, f, e } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            let e = match e {
                Some(e) => e,
                None => find_order_form(&f)?,
            };
            (common, theorem8_construct(&f, e)?)
        }
        ConstructCmd::Theorem10 { common, f } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            (common, theorem10_construct(&f)?)
        }
        ConstructCmd::Theorem11 { common, f } => {
            let (ctx, top) = top_of(&common)?;
            let f = parse_poly(&f, &ctx, top)?;
            (common, theorem11_construct(&f)?)
        }
    };
    finish_report(report, &common)
}

fn top_of(common: &Common) -> Result<(Arc<FieldCtx>, usize)> {
    let ctx = common.field_ctx()?;
    let top = ctx.top_level();
    Ok((ctx, top))
}

fn finish_report(mut report: ConstructionReport, common: &Common) -> Result<ExitCode> {
    if common.verify == Level::Oracle {
        match brute_force_irreducible(&report.output) {
            Ok(verdict) => {
                if verdict != report.checks.irreducible {
                    return Err(Error::Internal(
                        "brute-force oracle disagrees with the irreducibility verdict".into(),
                    ));
                }
                report
                    .notes
                    .push("brute-force oracle agrees with the irreducibility verdict".into());
            }
            Err(Error::OutOfRange { detail, .. }) => {
                report.notes.push(format!("brute-force oracle skipped: {detail}"));
            }
            Err(e) => return Err(e),
        }
    }
    match common.format {
        Format::Text => println!("{}", report.to_text()),
        Format::Json => println!("{:#}", report.to_json()),
        Format::Exps => println!("{}", poly_to_exps(&report.output)?),
    }
    Ok(if report.verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

/// Order/primitivity facts for the verify command; None when skipped.
struct OrderFacts {
    order: Option<u128>,
    primitive: Option<bool>,
    skipped: Option<String>,
}

fn run_verify(common: &Common, poly: &str, order: bool) -> Result<ExitCode> {
    let ctx = common.field_ctx()?;
    let top = ctx.top_level();
    let poly = parse_poly(poly, &ctx, top)?;
    let rendered = render_poly(&poly, common.format)?;
    if common.verify == Level::None {
        // parse-only run: echo the canonical form
        match common.format {
            Format::Json => println!(
                "{:#}",
                json!({ "field": ctx.descriptor(), "poly": rendered })
            ),
            _ => println!("{rendered}"),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let irreducible = is_irreducible(&poly)?;
    if common.verify == Level::Oracle {
        match brute_force_irreducible(&poly) {
            Ok(verdict) if verdict != irreducible => {
                return Err(Error::Internal(
                    "brute-force oracle disagrees with the irreducibility verdict".into(),
                ));
            }
            Ok(_) => {}
            Err(Error::OutOfRange { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let facts = if order && irreducible {
        order_facts(&ctx, &poly)?
    } else {
        OrderFacts { order: None, primitive: None, skipped: None }
    };
    match common.format {
        Format::Json => {
            let mut doc = json!({
                "field": ctx.descriptor(),
                "poly": rendered,
                "irreducible": irreducible,
            });
            let map = doc.as_object_mut().unwrap();
            if let Some(e) = facts.order {
                map.insert("order".into(), json!(e.to_string()));
            }
            if let Some(p) = facts.primitive {
                map.insert("primitive".into(), json!(p));
            }
            if let Some(why) = &facts.skipped {
                map.insert("order_skipped".into(), json!(why));
            }
            println!("{doc:#}");
        }
        _ => {
            println!("field: {}", ctx.descriptor());
            println!("poly: {rendered}");
            println!("irreducible: {}", if irreducible { "yes" } else { "no" });
            if let Some(e) = facts.order {
                println!("order: {e}");
            }
            if let Some(p) = facts.primitive {
                println!("primitive: {}", if p { "yes" } else { "no" });
            }
            if let Some(why) = &facts.skipped {
                println!("order: skipped ({why})");
            }
        }
    }
    Ok(if irreducible { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn order_facts(ctx: &Arc<FieldCtx>, poly: &Poly) -> Result<OrderFacts> {
    let n = poly.degree().finite().ok_or(Error::ConstantInput)?;
    if poly.constant_term().is_zero() {
        return Ok(OrderFacts {
            order: None,
            primitive: None,
            skipped: Some("order is undefined when f(0) = 0".into()),
        });
    }
    let q = ctx.card(ctx.top_level());
    let group = q
        .checked_pow(n as u32)
        .map(|v| v - 1)
        .ok_or_else(|| Error::OutOfRange {
            what: "verify".into(),
            detail: "q^n exceeds u128".into(),
        })?;
    match factor_group_order_with_bound(group, ctx.trial_bound()) {
        Ok(fact) => {
            let e = poly_order(poly, &fact)?;
            Ok(OrderFacts {
                order: Some(e),
                primitive: Some(e == group),
                skipped: None,
            })
        }
        Err(Error::OutOfRange { detail, .. }) => Ok(OrderFacts {
            order: None,
            primitive: None,
            skipped: Some(format!("group order would not factor: {detail}")),
        }),
        Err(e) => Err(e),
    }
}

fn run_enumerate(
    common: &Common,
    degree: usize,
    primitive: bool,
    check_mobius: bool,
) -> Result<ExitCode> {
    let ctx = common.field_ctx()?;
    let polys = if primitive {
        galois_core::enumerate_primitive(&ctx, degree)?
    } else {
        galois_core::enumerate_irreducible(&ctx, degree)?
    };
    let mobius_ok = if check_mobius {
        let mut product = Poly::one(&ctx, ctx.top_level());
        for p in &polys {
            product = product.mul(p)?;
        }
        let expected = mobius_product(&ctx, degree)?;
        if product != expected {
            return Err(Error::Internal(
                "product of the enumerated polynomials differs from the Mobius product".into(),
            ));
        }
        Some(true)
    } else {
        None
    };
    match common.format {
        Format::Json => {
            let listed: Result<Vec<String>> =
                polys.iter().map(|p| render_poly(p, common.format)).collect();
            let mut doc = json!({
                "field": ctx.descriptor(),
                "degree": degree,
                "primitive": primitive,
                "count": polys.len(),
                "polynomials": listed?,
            });
            if let Some(ok) = mobius_ok {
                doc.as_object_mut().unwrap().insert("mobius_ok".into(), json!(ok));
            }
            println!("{doc:#}");
        }
        _ => {
            for p in &polys {
                println!("{}", render_poly(p, common.format)?);
            }
            if mobius_ok == Some(true) {
                println!("mobius check: ok ({} polynomials)", polys.len());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One polynomial in the requested format; JSON callers embed the text form.
fn render_poly(p: &Poly, format: Format) -> Result<String> {
    match format {
        Format::Exps => poly_to_exps(p),
        _ => Ok(p.to_string()),
    }
}
