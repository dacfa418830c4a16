//! Canonical text formats: polynomial and element printing, the matching
//! parsers, and the field descriptor form `GF(p^s)[chain: m0; m1; ...]`.
//!
//! Printing is bit-exact and round-trips through the parser. Polynomials
//! print terms in strictly decreasing exponent order joined by ` + `, with
//! coefficients printed only when not 1 and parenthesized when compound.
//! Elements use the variables y, z, w for tower levels 1, 2, 3.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Felt, FieldCtx};
use crate::poly::Poly;

fn var_name(level: usize) -> String {
    match level {
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        n => format!("u{n}"),
    }
}

/// Shared term formatter: coefficient list (constant first) over a named
/// variable, decreasing exponents.
fn format_terms(coeffs: &[Felt], var: &str) -> String {
    let nonzero = coeffs.iter().filter(|c| !c.is_zero()).count();
    let mut parts: Vec<String> = Vec::new();
    for e in (0..coeffs.len()).rev() {
        let c = &coeffs[e];
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let piece = if e == 0 {
            // a compound constant term is parenthesized unless it stands alone
            if cs.contains(' ') && nonzero > 1 {
                format!("({cs})")
            } else {
                cs
            }
        } else {
            let prefix = if c.is_one() {
                String::new()
            } else if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            let v = if e == 1 {
                var.to_string()
            } else {
                format!("{var}^{e}")
            };
            format!("{prefix}{v}")
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.prime_value() {
            return write!(f, "{v}");
        }
        let coords = self.coords();
        write!(f, "{}", format_terms(&coords, &var_name(self.level())))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.coeffs(), "x"))
    }
}

/// Exponent-list form `exps:[...]`; valid only when every nonzero
/// coefficient is 1.
pub fn poly_to_exps(p: &Poly) -> Result<String> {
    let mut exps = Vec::new();
    for e in (0..p.coeffs().len()).rev() {
        let c = &p.coeffs()[e];
        if c.is_zero() {
            continue;
        }
        if !c.is_one() {
            return Err(Error::Precondition(format!(
                "exps format needs all-1 coefficients, found {c} at x^{e}"
            )));
        }
        exps.push(e.to_string());
    }
    Ok(format!("exps:[{}]", exps.join(",")))
}

const MAX_EXPONENT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    Int(u64),
    /// Tower level of the variable: 0 marks the polynomial indeterminate x.
    Var(usize),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end_pos: usize,
}

fn lex(text: &str, offset: usize) -> Result<Lexer> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = offset + i;
        match b {
            b' ' | b'\t' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: u64 = text[start..i].parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "number too large".into(),
                })?;
                toks.push((Tok::Int(v), pos));
            }
            b'x' => {
                toks.push((Tok::Var(0), pos));
                i += 1;
            }
            b'y' => {
                toks.push((Tok::Var(1), pos));
                i += 1;
            }
            b'z' => {
                toks.push((Tok::Var(2), pos));
                i += 1;
            }
            b'w' => {
                toks.push((Tok::Var(3), pos));
                i += 1;
            }
            b'u' => {
                // deep-tower variable u<n>
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected level digits after 'u'".into(),
                    });
                }
                let lvl: usize = text[start + 1..i].parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "level too large".into(),
                })?;
                toks.push((Tok::Var(lvl), pos));
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        at: 0,
        end_pos: offset + bytes.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }
    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|&(_, p)| p)
            .unwrap_or(self.end_pos)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }
}

struct PolyParser<'a> {
    lx: Lexer,
    ctx: &'a Arc<FieldCtx>,
    level: usize,
}

impl<'a> PolyParser<'a> {
    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if matches!(self.lx.peek(), Some(Tok::Minus)) {
            self.lx.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lx.peek() {
                Some(Tok::Plus) => {
                    self.lx.bump();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.lx.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// A term is one or more juxtaposed factors (implicit multiplication).
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while matches!(
            self.lx.peek(),
            Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen)
        ) {
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if matches!(self.lx.peek(), Some(Tok::Caret)) {
            self.lx.bump();
            let pos = self.lx.pos();
            match self.lx.bump() {
                Some(Tok::Int(e)) => {
                    if e as usize > MAX_EXPONENT {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("exponent {e} too large"),
                        });
                    }
                    return base.pow(e as u32).map_err(|err| Error::Parse {
                        pos,
                        msg: format!("power failed: {err}"),
                    });
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected exponent after '^'".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        let pos = self.lx.pos();
        match self.lx.bump() {
            Some(Tok::Int(v)) => {
                let p = self.ctx.characteristic();
                if v >= p {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("coefficient {v} not in GF({p})"),
                    });
                }
                Ok(Poly::monomial(
                    self.ctx,
                    self.level,
                    0,
                    self.ctx.from_u64(self.level, v),
                ))
            }
            Some(Tok::Var(0)) => Ok(Poly::x(self.ctx, self.level)),
            Some(Tok::Var(vl)) => {
                if vl > self.level || vl > self.ctx.top_level() {
                    return Err(Error::Parse {
                        pos,
                        msg: format!(
                            "variable {} undefined at this level",
                            var_name(vl)
                        ),
                    });
                }
                let g = self.ctx.generator(vl).map_err(|e| Error::Parse {
                    pos,
                    msg: format!("{e}"),
                })?;
                let g = g.lift_to(self.level).map_err(|e| Error::Parse {
                    pos,
                    msg: format!("{e}"),
                })?;
                Ok(Poly::monomial(self.ctx, self.level, 0, g))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let pos = self.lx.pos();
                match self.lx.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        pos,
                        msg: "expected ')'".into(),
                    }),
                }
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a term".into(),
            }),
        }
    }
}

fn parse_exps_form(text: &str, offset: usize, ctx: &Arc<FieldCtx>, level: usize) -> Result<Poly> {
    let body = text.trim();
    let inner = body
        .strip_prefix("exps:[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or(Error::Parse {
            pos: offset,
            msg: "malformed exps:[...] literal".into(),
        })?;
    let mut exps = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let e: usize = part.parse().map_err(|_| Error::Parse {
            pos: offset,
            msg: format!("bad exponent {part:?} in exps list"),
        })?;
        if e > MAX_EXPONENT {
            return Err(Error::Parse {
                pos: offset,
                msg: format!("exponent {e} too large"),
            });
        }
        exps.push(e);
    }
    Ok(Poly::from_exponents(ctx, level, &exps))
}

pub(crate) fn parse_poly_at(
    text: &str,
    offset: usize,
    ctx: &Arc<FieldCtx>,
    level: usize,
) -> Result<Poly> {
    if text.trim_start().starts_with("exps:") {
        return parse_exps_form(text, offset, ctx, level);
    }
    let lx = lex(text, offset)?;
    let mut p = PolyParser { lx, ctx, level };
    let poly = p.expr()?;
    if p.lx.peek().is_some() {
        return Err(Error::Parse {
            pos: p.lx.pos(),
            msg: "trailing input after polynomial".into(),
        });
    }
    Ok(poly)
}

/// Parse the canonical polynomial format (or `exps:[...]`) over the given
/// level of a field.
pub fn parse_poly(text: &str, ctx: &Arc<FieldCtx>, level: usize) -> Result<Poly> {
    parse_poly_at(text, 0, ctx, level)
}

/// Parse a field element literal: a polynomial expression in y/z/w with no
/// occurrence of the indeterminate x.
pub fn parse_element(text: &str, ctx: &Arc<FieldCtx>, level: usize) -> Result<Felt> {
    let p = parse_poly(text, ctx, level)?;
    match p.degree().finite() {
        Some(d) if d >= 1 => Err(Error::Parse {
            pos: 0,
            msg: "element literal must not involve x".into(),
        }),
        _ => Ok(p.constant_term()),
    }
}

/// Parse a field descriptor: `GF(p)`, `GF(p^s)` (default moduli), or
/// `GF(p^s)[chain: m0; m1; ...]` with explicit moduli.
pub fn parse_field(text: &str) -> Result<Arc<FieldCtx>> {
    let s = text.trim();
    let inner_start = s.find("GF(").ok_or(Error::Parse {
        pos: 0,
        msg: "descriptor must start with GF(".into(),
    })?;
    if inner_start != 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "descriptor must start with GF(".into(),
        });
    }
    let close = s.find(')').ok_or(Error::Parse {
        pos: s.len(),
        msg: "missing ')'".into(),
    })?;
    let head = &s[3..close];
    let (p_str, s_str) = match head.split_once('^') {
        Some((a, b)) => (a, Some(b)),
        None => (head, None),
    };
    let p: u64 = p_str.trim().parse().map_err(|_| Error::Parse {
        pos: 3,
        msg: format!("bad characteristic {p_str:?}"),
    })?;
    let total: usize = match s_str {
        None => 1,
        Some(b) => b.trim().parse().map_err(|_| Error::Parse {
            pos: 3,
            msg: format!("bad extension degree {b:?}"),
        })?,
    };
    let rest = s[close + 1..].trim();
    if rest.is_empty() {
        return if total == 1 {
            crate::field::make_field(p, &[])
        } else {
            crate::field::make_field(p, &[total])
        };
    }
    let chain_body = rest
        .strip_prefix("[chain:")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or(Error::Parse {
            pos: close + 1,
            msg: "expected [chain: ...] after GF(p^s)".into(),
        })?;
    let mut ctx = crate::field::FieldCtx::prime(p)?;
    let mut got: usize = 1;
    let base_off = s.len() - rest.len() + "[chain:".len();
    let mut seg_off = base_off;
    for seg in chain_body.split(';') {
        let m = parse_poly_at(seg, seg_off, &ctx, ctx.top_level())?;
        let d = m.degree().finite().unwrap_or(0);
        got = got.checked_mul(d).ok_or(Error::Parse {
            pos: seg_off,
            msg: "chain degree overflow".into(),
        })?;
        ctx = ctx.extend_with(&m)?;
        seg_off += seg.len() + 1;
    }
    if got != total {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("chain degrees multiply to {got}, descriptor says {total}"),
        });
    }
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn poly_display() {
        let f2 = make_field(2, &[]).unwrap();
        let p = Poly::from_exponents(&f2, 0, &[6, 4, 2, 1, 0]);
        assert_eq!(p.to_string(), "x^6 + x^4 + x^2 + x + 1");
        assert_eq!(Poly::zero(&f2, 0).to_string(), "0");
        assert_eq!(Poly::one(&f2, 0).to_string(), "1");
        assert_eq!(Poly::x(&f2, 0).to_string(), "x");

        let f3 = make_field(3, &[]).unwrap();
        let p = Poly::from_ints(&f3, 0, &[0, 0, 0, 2]);
        assert_eq!(p.to_string(), "2x^3");
    }

    #[test]
    fn element_display() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        assert_eq!(y.to_string(), "y");
        assert_eq!((&y.pow(2) + &f8.one(1)).to_string(), "y^2 + 1");
        assert_eq!(f8.zero(1).to_string(), "0");
        // tower level 2 with compound coefficient
        let t = make_field(2, &[2, 2]).unwrap();
        let y = t.generator(1).unwrap().lift().unwrap();
        let z = t.generator(2).unwrap();
        let e = &(&(&y + &t.one(2)) * &z) + &y;
        assert_eq!(e.to_string(), "(y + 1)z + y");
        let yz = &y * &z;
        assert_eq!(yz.to_string(), "yz");
    }

    #[test]
    fn poly_display_with_tower_coeffs() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        let c = &(&y.pow(2) + &y) + &f8.one(1);
        let p = Poly::from_felts(&f8, 1, vec![c, f8.one(1), f8.one(1)]).unwrap();
        assert_eq!(p.to_string(), "x^2 + x + (y^2 + y + 1)");
        let q = Poly::from_felts(&f8, 1, vec![f8.one(1), y.clone()]).unwrap();
        assert_eq!(q.to_string(), "yx + 1");
    }

    #[test]
    fn parse_basic() {
        let f2 = make_field(2, &[]).unwrap();
        let p = parse_poly("x^2 + x + 1", &f2, 0).unwrap();
        assert_eq!(p, Poly::from_ints(&f2, 0, &[1, 1, 1]));
        let p = parse_poly("exps:[3,1,0]", &f2, 0).unwrap();
        assert_eq!(p, Poly::from_exponents(&f2, 0, &[3, 1, 0]));
        // coefficient outside the field is rejected with a position
        match parse_poly("2x^2 + x", &f2, 0).unwrap_err() {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 0);
                assert!(msg.contains("coefficient 2"));
            }
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn parse_round_trip() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        let c = &(&y.pow(2) + &y) + &f8.one(1);
        let p = Poly::from_felts(&f8, 1, vec![c, y.clone(), f8.one(1)]).unwrap();
        let text = p.to_string();
        assert_eq!(parse_poly(&text, &f8, 1).unwrap(), p);

        let f3 = make_field(3, &[]).unwrap();
        let p = Poly::from_ints(&f3, 0, &[2, 0, 1, 2]);
        assert_eq!(parse_poly(&p.to_string(), &f3, 0).unwrap(), p);
        // zero round trip
        assert_eq!(parse_poly("0", &f3, 0).unwrap(), Poly::zero(&f3, 0));
    }

    #[test]
    fn parse_minus_and_parens() {
        let f3 = make_field(3, &[]).unwrap();
        let p = parse_poly("x^2 - x + 2", &f3, 0).unwrap();
        assert_eq!(p, Poly::from_ints(&f3, 0, &[2, 2, 1]));
        let q = parse_poly("(x + 1)(x + 2)", &f3, 0).unwrap();
        assert_eq!(q, Poly::from_ints(&f3, 0, &[2, 0, 1]));
        let r = parse_poly("(x + 1)^2", &f3, 0).unwrap();
        assert_eq!(r, Poly::from_ints(&f3, 0, &[1, 2, 1]));
    }

    #[test]
    fn parse_element_literals() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        assert_eq!(parse_element("y + 1", &f8, 1).unwrap(), &y + &f8.one(1));
        assert_eq!(parse_element("1", &f8, 1).unwrap(), f8.one(1));
        assert_eq!(parse_element("y^2", &f8, 1).unwrap(), y.pow(2));
        assert!(parse_element("x + 1", &f8, 1).is_err());
        // z undefined in a one-level tower
        assert!(parse_element("z", &f8, 1).is_err());
    }

    #[test]
    fn exps_output() {
        let f2 = make_field(2, &[]).unwrap();
        let p = Poly::from_exponents(&f2, 0, &[6, 4, 2, 1, 0]);
        assert_eq!(poly_to_exps(&p).unwrap(), "exps:[6,4,2,1,0]");
        assert_eq!(poly_to_exps(&Poly::zero(&f2, 0)).unwrap(), "exps:[]");
        let f3 = make_field(3, &[]).unwrap();
        let p = Poly::from_ints(&f3, 0, &[2, 1]);
        assert!(poly_to_exps(&p).is_err());
    }

    #[test]
    fn field_descriptor_round_trip() {
        for desc in [
            "GF(2)",
            "GF(3)",
            "GF(2^3)[chain: x^3 + x + 1]",
            "GF(2^4)[chain: x^2 + x + 1; x^2 + x + y]",
            "GF(3^2)[chain: x^2 + 1]",
        ] {
            let ctx = parse_field(desc).unwrap();
            assert_eq!(ctx.descriptor(), desc);
            let again = parse_field(&ctx.descriptor()).unwrap();
            assert_eq!(*again, *ctx);
        }
        // GF(p^s) without chain uses the default modulus
        let f8 = parse_field("GF(2^3)").unwrap();
        assert_eq!(f8.descriptor(), "GF(2^3)[chain: x^3 + x + 1]");
        // mismatched total degree
        assert!(parse_field("GF(2^3)[chain: x^2 + x + 1]").is_err());
        assert!(parse_field("GF(4)").is_err());
    }
}
