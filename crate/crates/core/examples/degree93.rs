use galois_core::{make_field, parse_poly, theorem3_construct, Result};

fn main() -> Result<()> {
    let ctx = make_field(2, &[])?;
    let f = parse_poly("x^3+x+1", &ctx, 0)?;
    let l = parse_poly("x^5+x^4+x^2+x+1", &ctx, 0)?;
    let report = theorem3_construct(&f, &l)?;
    assert!(report.verified());
    assert_eq!(report.claimed_degree, 93);
    println!("{}", report.to_text());
    Ok(())
}
