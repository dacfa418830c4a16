//! Dense univariate polynomial arithmetic over any tower level, plus the
//! transforms the constructions need: Frobenius twists, norm products,
//! affine composition, reciprocals, and q-associates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{set_degree, Felt, FieldCtx};

/// Degree threshold: schoolbook multiplication below, Karatsuba at and above.
const KARATSUBA_THRESHOLD: usize = 64;

/// Cap on dense coefficient vectors produced by exponent blowups
/// (q-associates, Moebius numerators).
pub(crate) const POLY_LEN_LIMIT: u128 = 1 << 20;

/// Degree of a polynomial; the zero polynomial gets a distinguished marker
/// rather than a sentinel integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Polynomial over one level of a field tower. Coefficient of x^u sits at
/// index u; trailing zeros are stripped, so the zero polynomial has an empty
/// coefficient vector. Immutable value object.
#[derive(Clone, Debug)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    level: usize,
    coeffs: Vec<Felt>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>, level: usize) -> Poly {
        Poly {
            ctx: ctx.clone(),
            level,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>, level: usize) -> Poly {
        Poly {
            ctx: ctx.clone(),
            level,
            coeffs: vec![ctx.one(level)],
        }
    }

    /// The monomial x.
    pub fn x(ctx: &Arc<FieldCtx>, level: usize) -> Poly {
        Poly::monomial(ctx, level, 1, ctx.one(level))
    }

    /// c·x^e (zero polynomial when c = 0).
    pub fn monomial(ctx: &Arc<FieldCtx>, level: usize, e: usize, c: Felt) -> Poly {
        if c.is_zero() {
            return Poly::zero(ctx, level);
        }
        let mut coeffs = vec![ctx.zero(level); e + 1];
        coeffs[e] = c;
        Poly {
            ctx: ctx.clone(),
            level,
            coeffs,
        }
    }

    pub fn constant(c: Felt) -> Poly {
        let ctx = c.ctx().clone();
        let level = c.level();
        Poly::monomial(&ctx, level, 0, c)
    }

    /// Build from an explicit coefficient list, constant term first.
    pub fn from_felts(ctx: &Arc<FieldCtx>, level: usize, coeffs: Vec<Felt>) -> Result<Poly> {
        for c in &coeffs {
            if c.level() != level || !c.ctx().agrees_with(ctx, level) {
                return Err(Error::ContextMismatch(
                    "coefficient from a different field level".into(),
                ));
            }
        }
        Ok(Poly::from_felts_unchecked(ctx.clone(), level, coeffs))
    }

    /// Integer coefficient list reduced mod p, constant term first.
    pub fn from_ints(ctx: &Arc<FieldCtx>, level: usize, coeffs: &[u64]) -> Poly {
        let felts = coeffs.iter().map(|&v| ctx.from_u64(level, v)).collect();
        Poly::from_felts_unchecked(ctx.clone(), level, felts)
    }

    /// Characteristic-1 coefficients at the given exponents (the `exps:`
    /// input form).
    pub fn from_exponents(ctx: &Arc<FieldCtx>, level: usize, exps: &[usize]) -> Poly {
        let top = exps.iter().copied().max().map_or(0, |m| m + 1);
        let mut coeffs = vec![ctx.zero(level); top];
        for &e in exps {
            coeffs[e] = ctx.one(level);
        }
        Poly::from_felts_unchecked(ctx.clone(), level, coeffs)
    }

    pub(crate) fn from_felts_unchecked(
        ctx: Arc<FieldCtx>,
        level: usize,
        mut coeffs: Vec<Felt>,
    ) -> Poly {
        while coeffs.last().map_or(false, Felt::is_zero) {
            coeffs.pop();
        }
        Poly { ctx, level, coeffs }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^u (zero beyond the degree).
    pub fn coeff(&self, u: usize) -> Felt {
        self.coeffs
            .get(u)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero(self.level))
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Felt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, Felt::is_one)
    }

    pub fn constant_term(&self) -> Felt {
        self.coeff(0)
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.level != other.level || !self.ctx.agrees_with(&other.ctx, self.level) {
            return Err(Error::ContextMismatch(
                "polynomials over different field levels".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for u in 0..n {
            out.push((self.coeff(u).add(&other.coeff(u)))?);
        }
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for u in 0..n {
            out.push((self.coeff(u).sub(&other.coeff(u)))?);
        }
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    pub fn neg(&self) -> Poly {
        let out = self.coeffs.iter().map(Felt::neg).collect();
        Poly::from_felts_unchecked(self.ctx.clone(), self.level, out)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ctx, self.level));
        }
        let out = mul_vec(&self.ctx, self.level, &self.coeffs, &other.coeffs);
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    pub fn mul_scalar(&self, c: &Felt) -> Result<Poly> {
        if c.level() != self.level || !c.ctx().agrees_with(&self.ctx, self.level) {
            return Err(Error::ContextMismatch("scalar from a different level".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    /// Quotient and remainder; deg r < deg divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_compatible(divisor)?;
        let d = divisor
            .degree()
            .finite()
            .ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= d {
            return Ok((Poly::zero(&self.ctx, self.level), self.clone()));
        }
        let lead_inv = divisor.coeffs[d].inv()?;
        let mut rem = self.coeffs.clone();
        let q_len = rem.len() - d;
        let mut quot = vec![self.ctx.zero(self.level); q_len];
        for i in (0..q_len).rev() {
            if rem[i + d].is_zero() {
                continue;
            }
            let factor = rem[i + d].mul(&lead_inv)?;
            for (j, m) in divisor.coeffs.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let t = factor.mul(m)?;
                rem[i + j] = rem[i + j].sub(&t)?;
            }
            quot[i] = factor;
        }
        rem.truncate(d);
        Ok((
            Poly::from_felts_unchecked(self.ctx.clone(), self.level, quot),
            Poly::from_felts_unchecked(self.ctx.clone(), self.level, rem),
        ))
    }

    /// Division known to be exact; a nonzero remainder is an arithmetic bug
    /// in the caller's reasoning, not a user error.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "inexact division, remainder {r}"
            )));
        }
        Ok(q)
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Scale by the inverse of the leading coefficient (no-op on zero).
    pub fn into_monic(self) -> Result<Poly> {
        match self.leading_coeff() {
            None => Ok(self),
            Some(l) if l.is_one() => Ok(self),
            Some(l) => {
                let inv = l.inv()?;
                self.mul_scalar(&inv)
            }
        }
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, e: u32) -> Result<Poly> {
        let mut acc = Poly::one(&self.ctx, self.level);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod(&self, e: u128, m: &Poly) -> Result<Poly> {
        match m.degree().finite() {
            None => return Err(Error::DivisionByZero),
            Some(0) => {
                return Err(Error::DegreeMismatch(
                    "powmod modulus must be nonconstant".into(),
                ))
            }
            Some(_) => {}
        }
        let mut acc = Poly::one(&self.ctx, self.level).rem(m)?;
        let mut base = self.rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    /// outer(inner), reduced mod m when given (Horner scheme).
    pub fn compose_mod(&self, inner: &Poly, m: Option<&Poly>) -> Result<Poly> {
        self.check_compatible(inner)?;
        if let Some(m) = m {
            self.check_compatible(m)?;
        }
        let mut acc = Poly::zero(&self.ctx, self.level);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc = acc.add(&Poly::monomial(&self.ctx, self.level, 0, c.clone()))?;
            if let Some(m) = m {
                acc = acc.rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation. The point may live above the coefficient level
    /// (coefficients are embedded) or below (the point is embedded).
    pub fn evaluate(&self, a: &Felt) -> Result<Felt> {
        let join = self.level.max(a.level());
        if !a.ctx().agrees_with(&self.ctx, self.level.min(a.level())) {
            return Err(Error::ContextMismatch(
                "evaluation point from a different tower".into(),
            ));
        }
        // The deeper tower's ctx knows the chain up to `join`.
        let host = if a.level() >= self.level {
            a.ctx().clone()
        } else {
            self.ctx.clone()
        };
        let point = a.retagged(&host).lift_to(join)?;
        let mut acc = host.zero(join);
        for c in self.coeffs.iter().rev() {
            let c = c.retagged(&host).lift_to(join)?;
            acc = acc.mul(&point)?.add(&c)?;
        }
        Ok(acc)
    }

    /// g(x) = f(αx + β): coefficients embedded into α's level, same degree
    /// as f when α ≠ 0.
    pub fn affine_compose(&self, alpha: &Felt, beta: &Felt) -> Result<Poly> {
        if alpha.is_zero() {
            return Err(Error::Precondition(
                "affine substitution needs α ≠ 0".into(),
            ));
        }
        if alpha.level() != beta.level() || !alpha.ctx().agrees_with(beta.ctx(), alpha.level()) {
            return Err(Error::ContextMismatch("α and β at different levels".into()));
        }
        let target = alpha.level();
        if target < self.level || !alpha.ctx().agrees_with(&self.ctx, self.level) {
            return Err(Error::ContextMismatch(
                "substitution level must extend the coefficient level".into(),
            ));
        }
        let host = alpha.ctx().clone();
        let arg = Poly::from_felts_unchecked(
            host.clone(),
            target,
            vec![beta.clone(), alpha.clone()],
        );
        let mut acc = Poly::zero(&host, target);
        for c in self.coeffs.iter().rev() {
            let c = c.retagged(&host).lift_to(target)?;
            acc = acc.mul(&arg)?;
            acc = acc.add(&Poly::monomial(&host, target, 0, c))?;
        }
        Ok(acc)
    }

    /// Coefficient-wise Frobenius: Σ b_u x^u ↦ Σ b_u^{q^a} x^u, q the
    /// cardinality of the level below. Degree preserved.
    pub fn frobenius_twist(&self, a: usize) -> Poly {
        let out = self.coeffs.iter().map(|c| c.frobenius(a)).collect();
        Poly::from_felts_unchecked(self.ctx.clone(), self.level, out)
    }

    /// set_degree of the coefficient list (1 for the zero polynomial).
    pub fn coeff_set_degree(&self) -> usize {
        if self.coeffs.is_empty() {
            return 1;
        }
        set_degree(&self.coeffs).expect("nonempty homogeneous coefficient list")
    }

    /// h*(x) = x^n h(1/x): coefficient reversal.
    pub fn reciprocal(&self) -> Poly {
        let mut out = self.coeffs.clone();
        out.reverse();
        Poly::from_felts_unchecked(self.ctx.clone(), self.level, out)
    }

    /// Conventional to linearized q-associate: Σ a_i x^i ↦ Σ a_i x^{q^i},
    /// q the cardinality of the coefficient level.
    pub fn to_linearized(&self) -> Result<Poly> {
        let q = self.ctx.card(self.level);
        let deg = match self.degree().finite() {
            None => return Ok(self.clone()),
            Some(d) => d,
        };
        let top = checked_q_pow(q, deg)?;
        let mut out = vec![self.ctx.zero(self.level); top as usize + 1];
        let mut qpow: u128 = 1;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                qpow *= q;
            }
            if !c.is_zero() {
                out[qpow as usize] = c.clone();
            }
        }
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    /// Linearized to conventional q-associate. Errors when a nonzero
    /// coefficient sits on an exponent that is not a power of q.
    pub fn to_conventional(&self) -> Result<Poly> {
        let q = self.ctx.card(self.level);
        let mut out: Vec<Felt> = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut qpow: u128 = 1;
            let mut i = 0usize;
            while qpow < e as u128 {
                qpow *= q;
                i += 1;
            }
            if qpow != e as u128 {
                return Err(Error::Precondition(format!(
                    "exponent {e} is not a power of {q}"
                )));
            }
            if out.len() <= i {
                out.resize(i + 1, self.ctx.zero(self.level));
            }
            out[i] = c.clone();
        }
        Ok(Poly::from_felts_unchecked(self.ctx.clone(), self.level, out))
    }

    /// Same polynomial viewed inside a taller tower that agrees with this
    /// one up to the coefficient level, with coefficients lifted to `level`.
    pub fn embedded(&self, ctx: &Arc<FieldCtx>, level: usize) -> Result<Poly> {
        if !ctx.agrees_with(&self.ctx, self.level) {
            return Err(Error::ContextMismatch(
                "target tower disagrees below the coefficient level".into(),
            ));
        }
        if level < self.level || level > ctx.top_level() {
            return Err(Error::ContextMismatch(format!(
                "cannot embed level {} coefficients at level {level}",
                self.level
            )));
        }
        let coeffs: Result<Vec<Felt>> = self
            .coeffs
            .iter()
            .map(|c| c.retagged(ctx).lift_to(level))
            .collect();
        Ok(Poly::from_felts_unchecked(ctx.clone(), level, coeffs?))
    }
}

fn checked_q_pow(q: u128, e: usize) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc
            .checked_mul(q)
            .filter(|&v| v <= POLY_LEN_LIMIT)
            .ok_or_else(|| {
                Error::out_of_range("linearized degree", format!("{q}^{e} exceeds dense limit"))
            })?;
    }
    Ok(acc)
}

/// ∏_{v=0}^{d-1} g^{(v)}(x) for g over F_{q^d}, re-expressed over F_q.
/// d = 1 returns g unchanged. Every coefficient of the product must come out
/// Frobenius-fixed; anything else is an internal arithmetic bug.
pub fn norm_product(g: &Poly, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::Precondition("norm product needs d >= 1".into()));
    }
    if d == 1 {
        return Ok(g.clone());
    }
    let level = g.level();
    if level == 0 {
        return Err(Error::DegreeMismatch(
            "norm product with d > 1 needs an extension level".into(),
        ));
    }
    let k = g.ctx().extension_degree(level);
    if k != d {
        return Err(Error::DegreeMismatch(format!(
            "d = {d} does not match the top extension degree {k}"
        )));
    }
    let mut prod = g.clone();
    for v in 1..d {
        prod = prod.mul(&g.frobenius_twist(v))?;
    }
    let mut dropped = Vec::with_capacity(prod.coeffs.len());
    for c in &prod.coeffs {
        if c.frobenius(1) != *c {
            return Err(Error::Internal(
                "norm product coefficient not fixed by Frobenius".into(),
            ));
        }
        dropped.push(
            c.lower()
                .map_err(|_| Error::Internal("Frobenius-fixed coefficient failed to lower".into()))?,
        );
    }
    Ok(Poly::from_felts_unchecked(
        g.ctx().clone(),
        level - 1,
        dropped,
    ))
}

fn mul_vec(ctx: &Arc<FieldCtx>, level: usize, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return mul_schoolbook(ctx, level, a, b);
    }
    // Karatsuba: split both operands at m, recurse three times.
    let m = a.len().max(b.len()) / 2;
    let (a_lo, a_hi) = a.split_at(a.len().min(m));
    let (b_lo, b_hi) = b.split_at(b.len().min(m));
    let z0 = mul_vec(ctx, level, a_lo, b_lo);
    let z2 = mul_vec(ctx, level, a_hi, b_hi);
    let a_sum = add_slices(ctx, level, a_lo, a_hi);
    let b_sum = add_slices(ctx, level, b_lo, b_hi);
    let mut z1 = mul_vec(ctx, level, &a_sum, &b_sum);
    sub_assign(&mut z1, &z0);
    sub_assign(&mut z1, &z2);
    let mut out = vec![ctx.zero(level); a.len() + b.len() - 1];
    add_assign_at(&mut out, &z0, 0);
    add_assign_at(&mut out, &z1, m);
    add_assign_at(&mut out, &z2, 2 * m);
    out
}

fn mul_schoolbook(ctx: &Arc<FieldCtx>, level: usize, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    let mut out = vec![ctx.zero(level); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn add_slices(ctx: &Arc<FieldCtx>, level: usize, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    let n = a.len().max(b.len());
    let zero = ctx.zero(level);
    (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            x + y
        })
        .collect()
}

fn sub_assign(dst: &mut [Felt], src: &[Felt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = &*d - s;
    }
}

fn add_assign_at(dst: &mut [Felt], src: &[Felt], offset: usize) {
    for (i, s) in src.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        dst[offset + i] = &dst[offset + i] + s;
    }
}
