//! Exact arithmetic in F_p, extensions F_q = F_p[y]/(m(y)), and towers
//! F_{q^k} = F_q[z]/(u(z)).
//!
//! A [`FieldCtx`] describes one tower: the prime characteristic plus a chain
//! of monic irreducible moduli, one per extension level. Level 0 is F_p,
//! level i is the extension defined by the i-th modulus over level i-1.
//! Every element ([`Felt`]) and polynomial carries the level it lives at;
//! all Frobenius and degree computations are relative to the level below.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default trial-division bound for [`factor_group_order`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 20;

/// Hard cap on exhaustive element scans (root searches, subfield sweeps).
pub(crate) const SCAN_LIMIT: u128 = 1 << 16;

/// Canonical reduced representation of a field element, without its context.
/// Level 0 holds a residue mod p; level i >= 1 holds a fixed-length
/// coordinate vector over level i-1 (length = extension degree).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Repr {
    Prime(u64),
    Ext(Vec<Repr>),
}

/// Immutable description of a finite field tower.
///
/// Construction validates everything up front: p prime, every chain modulus
/// monic and irreducible over its level. Instances are shared behind `Arc`
/// and are safe to use concurrently; all operations are pure.
pub struct FieldCtx {
    p: u64,
    /// chain[i]: monic modulus over level i defining level i+1, stored as
    /// its full coefficient vector (constant first, leading 1 included).
    chain: Vec<Vec<Repr>>,
    /// cards[l] = cardinality of level l.
    cards: Vec<u128>,
    trial_bound: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx(p={}, levels={})", self.p, self.levels())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.chain == other.chain
    }
}
impl Eq for FieldCtx {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Build a field from a prime and a list of extension degrees, each level
/// using the deterministic default modulus (least monic irreducible in the
/// canonical candidate order).
pub fn make_field(p: u64, degrees: &[usize]) -> Result<Arc<FieldCtx>> {
    let mut ctx = FieldCtx::prime(p)?;
    for &d in degrees {
        ctx = ctx.extend_default(d)?;
    }
    Ok(ctx)
}

impl FieldCtx {
    /// The prime field F_p (empty chain).
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>> {
        if !is_prime_u64(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Arc::new(FieldCtx {
            p,
            chain: Vec::new(),
            cards: vec![p as u128],
            trial_bound: DEFAULT_TRIAL_BOUND,
        }))
    }

    /// Extend the top level by the default modulus of the given degree:
    /// the first irreducible among monic candidates ordered by their integer
    /// encoding (constant coordinate least significant).
    pub fn extend_default(self: &Arc<Self>, degree: usize) -> Result<Arc<FieldCtx>> {
        if degree < 1 {
            return Err(Error::DegreeMismatch(format!(
                "extension degree must be >= 1, got {degree}"
            )));
        }
        let top = self.top_level();
        let base_card = self.card(top);
        let count = checked_pow(base_card, degree as u32).ok_or_else(|| {
            Error::out_of_range("default modulus search", format!("{base_card}^{degree}"))
        })?;
        if count > SCAN_LIMIT {
            return Err(Error::out_of_range(
                "default modulus search",
                format!("{count} candidates exceeds scan limit"),
            ));
        }
        for idx in 0..count {
            let cand = self.monic_by_index(top, degree, idx)?;
            if crate::classify::is_irreducible(&cand)? {
                return self.extend_with(&cand);
            }
        }
        // Unreachable: an irreducible of every degree exists over every F_q.
        Err(Error::Internal(format!(
            "no irreducible modulus of degree {degree} found"
        )))
    }

    /// Extend the top level by an explicit monic irreducible modulus.
    pub fn extend_with(self: &Arc<Self>, modulus: &Poly) -> Result<Arc<FieldCtx>> {
        let top = self.top_level();
        if modulus.level() != top || !modulus.ctx().agrees_with(self, top) {
            return Err(Error::ContextMismatch(
                "modulus must live at the top level of the field being extended".into(),
            ));
        }
        let deg = match modulus.degree().finite() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::DegreeMismatch(
                    "modulus must have degree >= 1".into(),
                ))
            }
        };
        if !modulus.is_monic() {
            return Err(Error::Precondition("modulus must be monic".into()));
        }
        if deg > 1 && !crate::classify::is_irreducible(modulus)? {
            return Err(Error::ReducibleModulus(modulus.to_string()));
        }
        let coeffs: Vec<Repr> = (0..=deg).map(|u| modulus.coeff(u).repr).collect();
        let card = checked_pow(self.card(top), deg as u32)
            .ok_or_else(|| Error::out_of_range("field cardinality", "exceeds u128"))?;
        let mut chain = self.chain.clone();
        chain.push(coeffs);
        let mut cards = self.cards.clone();
        cards.push(card);
        Ok(Arc::new(FieldCtx {
            p: self.p,
            chain,
            cards,
            trial_bound: self.trial_bound,
        }))
    }

    /// Same tower with a different trial-division bound for order
    /// factorizations.
    pub fn with_trial_bound(self: &Arc<Self>, bound: u64) -> Arc<FieldCtx> {
        Arc::new(FieldCtx {
            p: self.p,
            chain: self.chain.clone(),
            cards: self.cards.clone(),
            trial_bound: bound,
        })
    }

    /// The tower cut off at `level` (drops everything above). Elements at or
    /// below `level` remain valid in the truncated context.
    pub fn truncated(self: &Arc<Self>, level: usize) -> Arc<FieldCtx> {
        if level >= self.top_level() {
            return self.clone();
        }
        Arc::new(FieldCtx {
            p: self.p,
            chain: self.chain[..level].to_vec(),
            cards: self.cards[..=level].to_vec(),
            trial_bound: self.trial_bound,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn trial_bound(&self) -> u64 {
        self.trial_bound
    }

    /// Number of levels (1 for a prime field).
    pub fn levels(&self) -> usize {
        self.chain.len() + 1
    }

    pub fn top_level(&self) -> usize {
        self.chain.len()
    }

    /// Cardinality of the given level.
    pub fn card(&self, level: usize) -> u128 {
        self.cards[level]
    }

    /// Extension degree of `level` over the level below (level >= 1).
    pub fn extension_degree(&self, level: usize) -> usize {
        assert!(level >= 1, "level 0 has no extension degree");
        self.chain[level - 1].len() - 1
    }

    /// The defining modulus of `level` as a polynomial over `level - 1`.
    pub fn modulus_at(self: &Arc<Self>, level: usize) -> Poly {
        assert!(level >= 1, "level 0 has no modulus");
        let coeffs = self.chain[level - 1]
            .iter()
            .map(|r| Felt {
                ctx: self.clone(),
                level: level - 1,
                repr: r.clone(),
            })
            .collect();
        Poly::from_felts_unchecked(self.clone(), level - 1, coeffs)
    }

    /// Text descriptor: `GF(p)` or `GF(p^s)[chain: m0; m1; ...]`.
    pub fn descriptor(self: &Arc<Self>) -> String {
        if self.chain.is_empty() {
            return format!("GF({})", self.p);
        }
        let total: usize = (1..self.levels()).map(|l| self.extension_degree(l)).product();
        let mods: Vec<String> = (1..self.levels())
            .map(|l| self.modulus_at(l).to_string())
            .collect();
        format!("GF({}^{})[chain: {}]", self.p, total, mods.join("; "))
    }

    /// True when the two contexts agree on everything at or below `level`
    /// (same characteristic, identical chain prefix). Elements at that level
    /// are then interchangeable between the contexts.
    pub fn agrees_with(&self, other: &FieldCtx, level: usize) -> bool {
        self.p == other.p
            && self.chain.len() >= level
            && other.chain.len() >= level
            && self.chain[..level] == other.chain[..level]
    }

    // ---- element construction ----

    pub fn zero(self: &Arc<Self>, level: usize) -> Felt {
        Felt {
            ctx: self.clone(),
            level,
            repr: self.r_zero(level),
        }
    }

    pub fn one(self: &Arc<Self>, level: usize) -> Felt {
        Felt {
            ctx: self.clone(),
            level,
            repr: self.r_from_u64(level, 1),
        }
    }

    /// Embed an integer via reduction mod p into any level.
    pub fn from_u64(self: &Arc<Self>, level: usize, v: u64) -> Felt {
        Felt {
            ctx: self.clone(),
            level,
            repr: self.r_from_u64(level, v),
        }
    }

    /// The adjoined root of the level's modulus (coordinate vector [0,1,0..]).
    pub fn generator(self: &Arc<Self>, level: usize) -> Result<Felt> {
        if level < 1 {
            return Err(Error::Precondition(
                "level 0 has no adjoined generator".into(),
            ));
        }
        let k = self.extension_degree(level);
        let mut coords = vec![self.r_zero(level - 1); k];
        if k == 1 {
            // Degree-1 extension: the adjoined root equals -m_0.
            let m0 = self.chain[level - 1][0].clone();
            coords[0] = self.r_neg(level - 1, &m0);
        } else {
            coords[1] = self.r_from_u64(level - 1, 1);
        }
        Ok(Felt {
            ctx: self.clone(),
            level,
            repr: Repr::Ext(coords),
        })
    }

    /// Element from an explicit coordinate vector over the level below.
    pub fn element_from_coords(self: &Arc<Self>, level: usize, coords: &[Felt]) -> Result<Felt> {
        if level < 1 {
            return Err(Error::Precondition(
                "level 0 elements have no coordinate vector".into(),
            ));
        }
        let k = self.extension_degree(level);
        if coords.len() > k {
            return Err(Error::DegreeMismatch(format!(
                "{} coordinates for a degree-{} extension",
                coords.len(),
                k
            )));
        }
        let mut vec = Vec::with_capacity(k);
        for c in coords {
            if c.level != level - 1 || !c.ctx.agrees_with(self, level - 1) {
                return Err(Error::ContextMismatch(
                    "coordinate not at the level below".into(),
                ));
            }
            vec.push(c.repr.clone());
        }
        vec.resize(k, self.r_zero(level - 1));
        Ok(Felt {
            ctx: self.clone(),
            level,
            repr: Repr::Ext(vec),
        })
    }

    /// The idx-th element of a level in the canonical order (coordinates as
    /// mixed-radix digits, constant coordinate least significant).
    pub fn element(self: &Arc<Self>, level: usize, idx: u128) -> Result<Felt> {
        if idx >= self.card(level) {
            return Err(Error::out_of_range(
                "element index",
                format!("{idx} >= {}", self.card(level)),
            ));
        }
        Ok(Felt {
            ctx: self.clone(),
            level,
            repr: self.r_from_index(level, idx),
        })
    }

    /// Inverse of [`FieldCtx::element`].
    pub fn element_index(&self, a: &Felt) -> u128 {
        self.r_index(a.level, &a.repr)
    }

    /// All elements of a level in canonical order.
    pub fn elements(self: &Arc<Self>, level: usize) -> impl Iterator<Item = Felt> + '_ {
        let ctx = self.clone();
        (0..self.card(level)).map(move |i| Felt {
            ctx: ctx.clone(),
            level,
            repr: ctx.r_from_index(level, i),
        })
    }

    /// Monic polynomial of the given exact degree whose lower coefficients
    /// are the mixed-radix digits of `idx` (constant term least significant).
    pub(crate) fn monic_by_index(self: &Arc<Self>, level: usize, degree: usize, idx: u128) -> Result<Poly> {
        let card = self.card(level);
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            let digit = rest % card;
            rest /= card;
            coeffs.push(Felt {
                ctx: self.clone(),
                level,
                repr: self.r_from_index(level, digit),
            });
        }
        if rest != 0 {
            return Err(Error::out_of_range("polynomial index", format!("{idx}")));
        }
        coeffs.push(self.one(level));
        Ok(Poly::from_felts_unchecked(self.clone(), level, coeffs))
    }

    // ---- representation arithmetic ----

    pub(crate) fn r_zero(&self, level: usize) -> Repr {
        if level == 0 {
            Repr::Prime(0)
        } else {
            let k = self.extension_degree(level);
            Repr::Ext(vec![self.r_zero(level - 1); k])
        }
    }

    pub(crate) fn r_from_u64(&self, level: usize, v: u64) -> Repr {
        if level == 0 {
            Repr::Prime(v % self.p)
        } else {
            let k = self.extension_degree(level);
            let mut coords = vec![self.r_zero(level - 1); k];
            coords[0] = self.r_from_u64(level - 1, v);
            Repr::Ext(coords)
        }
    }

    pub(crate) fn r_is_zero(&self, r: &Repr) -> bool {
        match r {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(coords) => coords.iter().all(|c| self.r_is_zero(c)),
        }
    }

    pub(crate) fn r_add(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Prime(x), Repr::Prime(y)) => Repr::Prime((x + y) % self.p),
            (Repr::Ext(xs), Repr::Ext(ys)) => Repr::Ext(
                xs.iter()
                    .zip(ys)
                    .map(|(x, y)| self.r_add(level - 1, x, y))
                    .collect(),
            ),
            _ => unreachable!("level-checked callers"),
        }
    }

    pub(crate) fn r_neg(&self, level: usize, a: &Repr) -> Repr {
        match a {
            Repr::Prime(x) => Repr::Prime(if *x == 0 { 0 } else { self.p - x }),
            Repr::Ext(xs) => Repr::Ext(xs.iter().map(|x| self.r_neg(level - 1, x)).collect()),
        }
    }

    pub(crate) fn r_sub(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        self.r_add(level, a, &self.r_neg(level, b))
    }

    pub(crate) fn r_mul(&self, level: usize, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Prime(x), Repr::Prime(y)) => {
                Repr::Prime(((*x as u128 * *y as u128) % self.p as u128) as u64)
            }
            (Repr::Ext(xs), Repr::Ext(ys)) => {
                let k = xs.len();
                let below = level - 1;
                let mut prod = vec![self.r_zero(below); 2 * k - 1];
                for (i, x) in xs.iter().enumerate() {
                    if self.r_is_zero(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        if self.r_is_zero(y) {
                            continue;
                        }
                        let t = self.r_mul(below, x, y);
                        prod[i + j] = self.r_add(below, &prod[i + j], &t);
                    }
                }
                self.reduce_in_place(level, &mut prod);
                prod.truncate(k);
                Repr::Ext(prod)
            }
            _ => unreachable!("level-checked callers"),
        }
    }

    /// Reduce a coefficient vector over level-1 modulo the level's (monic)
    /// modulus, in place.
    fn reduce_in_place(&self, level: usize, v: &mut Vec<Repr>) {
        let modulus = &self.chain[level - 1];
        let k = modulus.len() - 1;
        let below = level - 1;
        for i in (k..v.len()).rev() {
            if self.r_is_zero(&v[i]) {
                continue;
            }
            let c = std::mem::replace(&mut v[i], self.r_zero(below));
            for (j, m) in modulus.iter().take(k).enumerate() {
                if self.r_is_zero(m) {
                    continue;
                }
                let t = self.r_mul(below, &c, m);
                v[i - k + j] = self.r_sub(below, &v[i - k + j], &t);
            }
        }
        v.truncate(std::cmp::max(k, 1));
    }

    pub(crate) fn r_pow(&self, level: usize, a: &Repr, mut e: u128) -> Repr {
        let mut base = a.clone();
        let mut acc = self.r_from_u64(level, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.r_mul(level, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.r_mul(level, &base, &base);
            }
        }
        acc
    }

    pub(crate) fn r_inv(&self, level: usize, a: &Repr) -> Option<Repr> {
        if self.r_is_zero(a) {
            return None;
        }
        // Fermat: a^(card - 2); card >= 2 always.
        Some(self.r_pow(level, a, self.card(level) - 2))
    }

    fn r_from_index(&self, level: usize, idx: u128) -> Repr {
        if level == 0 {
            Repr::Prime(idx as u64)
        } else {
            let k = self.extension_degree(level);
            let base = self.card(level - 1);
            let mut rest = idx;
            let mut coords = Vec::with_capacity(k);
            for _ in 0..k {
                coords.push(self.r_from_index(level - 1, rest % base));
                rest /= base;
            }
            Repr::Ext(coords)
        }
    }

    fn r_index(&self, level: usize, r: &Repr) -> u128 {
        match r {
            Repr::Prime(v) => *v as u128,
            Repr::Ext(coords) => {
                let base = self.card(level - 1);
                let mut idx = 0u128;
                for c in coords.iter().rev() {
                    idx = idx * base + self.r_index(level - 1, c);
                }
                idx
            }
        }
    }
}

/// An element of one level of a [`FieldCtx`]. Immutable value object;
/// equality is canonical coordinate equality (elements of two contexts
/// compare equal when the contexts agree up to the element's level).
#[derive(Clone, Debug)]
pub struct Felt {
    ctx: Arc<FieldCtx>,
    level: usize,
    pub(crate) repr: Repr,
}

impl PartialEq for Felt {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.repr == other.repr
            && self.ctx.agrees_with(&other.ctx, self.level)
    }
}
impl Eq for Felt {}

impl std::hash::Hash for Felt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.level.hash(state);
        self.repr.hash(state);
    }
}

impl Felt {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.ctx.r_is_zero(&self.repr)
    }

    pub fn is_one(&self) -> bool {
        self.repr == self.ctx.r_from_u64(self.level, 1)
    }

    /// Residue value for a level-0 element.
    pub fn prime_value(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(v) => Some(*v),
            _ => None,
        }
    }

    /// Coordinate vector over the level below (level >= 1).
    pub fn coords(&self) -> Vec<Felt> {
        match &self.repr {
            Repr::Prime(_) => Vec::new(),
            Repr::Ext(coords) => coords
                .iter()
                .map(|r| Felt {
                    ctx: self.ctx.clone(),
                    level: self.level - 1,
                    repr: r.clone(),
                })
                .collect(),
        }
    }

    /// Same element viewed through another context whose chain agrees up to
    /// this element's level. Used to move elements into a deeper tower.
    pub(crate) fn retagged(&self, ctx: &Arc<FieldCtx>) -> Felt {
        debug_assert!(ctx.agrees_with(&self.ctx, self.level));
        Felt {
            ctx: ctx.clone(),
            level: self.level,
            repr: self.repr.clone(),
        }
    }

    fn check_same(&self, other: &Felt) -> Result<()> {
        if self.level != other.level || !self.ctx.agrees_with(&other.ctx, self.level) {
            return Err(Error::ContextMismatch(format!(
                "elements at levels {} and {} of different towers",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Felt) -> Result<Felt> {
        self.check_same(other)?;
        Ok(Felt {
            ctx: self.ctx.clone(),
            level: self.level,
            repr: self.ctx.r_add(self.level, &self.repr, &other.repr),
        })
    }

    pub fn sub(&self, other: &Felt) -> Result<Felt> {
        self.check_same(other)?;
        Ok(Felt {
            ctx: self.ctx.clone(),
            level: self.level,
            repr: self.ctx.r_sub(self.level, &self.repr, &other.repr),
        })
    }

    pub fn mul(&self, other: &Felt) -> Result<Felt> {
        self.check_same(other)?;
        Ok(Felt {
            ctx: self.ctx.clone(),
            level: self.level,
            repr: self.ctx.r_mul(self.level, &self.repr, &other.repr),
        })
    }

    pub fn neg(&self) -> Felt {
        Felt {
            ctx: self.ctx.clone(),
            level: self.level,
            repr: self.ctx.r_neg(self.level, &self.repr),
        }
    }

    /// Multiplicative inverse; error on zero.
    pub fn inv(&self) -> Result<Felt> {
        self.ctx
            .r_inv(self.level, &self.repr)
            .map(|repr| Felt {
                ctx: self.ctx.clone(),
                level: self.level,
                repr,
            })
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u128) -> Felt {
        Felt {
            ctx: self.ctx.clone(),
            level: self.level,
            repr: self.ctx.r_pow(self.level, &self.repr, e),
        }
    }

    /// a^{q^e} where q is the cardinality of the level below (p at level 0).
    /// Computed by repeated q-th powering, so q^e never materializes.
    pub fn frobenius(&self, e: usize) -> Felt {
        let q = if self.level == 0 {
            self.ctx.p as u128
        } else {
            self.ctx.card(self.level - 1)
        };
        let mut acc = self.clone();
        for _ in 0..e {
            acc = acc.pow(q);
        }
        acc
    }

    /// Embed into the next level up (constant coordinate vector).
    pub fn lift(&self) -> Result<Felt> {
        let level = self.level + 1;
        if level > self.ctx.top_level() {
            return Err(Error::ContextMismatch(
                "no level above the top of this tower".into(),
            ));
        }
        let k = self.ctx.extension_degree(level);
        let mut coords = vec![self.ctx.r_zero(self.level); k];
        coords[0] = self.repr.clone();
        Ok(Felt {
            ctx: self.ctx.clone(),
            level,
            repr: Repr::Ext(coords),
        })
    }

    pub fn lift_to(&self, level: usize) -> Result<Felt> {
        let mut a = self.clone();
        while a.level < level {
            a = a.lift()?;
        }
        if a.level != level {
            return Err(Error::ContextMismatch(format!(
                "cannot lift from level {} to {}",
                self.level, level
            )));
        }
        Ok(a)
    }

    /// Project to the level below; errors unless the element lies in that
    /// subfield (all coordinates above the constant one are zero).
    pub fn lower(&self) -> Result<Felt> {
        match &self.repr {
            Repr::Prime(_) => Err(Error::ContextMismatch(
                "level 0 has no level below".into(),
            )),
            Repr::Ext(coords) => {
                if coords[1..].iter().any(|c| !self.ctx.r_is_zero(c)) {
                    return Err(Error::ContextMismatch(
                        "element does not lie in the subfield below".into(),
                    ));
                }
                Ok(Felt {
                    ctx: self.ctx.clone(),
                    level: self.level - 1,
                    repr: coords[0].clone(),
                })
            }
        }
    }

    /// Least d dividing the extension degree k with a^{q^d} = a, where q is
    /// the cardinality of the level below. 1 for level-0 elements.
    pub fn element_degree(&self) -> usize {
        if self.level == 0 {
            return 1;
        }
        let k = self.ctx.extension_degree(self.level);
        for d in 1..=k {
            if k % d == 0 && self.frobenius(d) == *self {
                return d;
            }
        }
        unreachable!("frobenius(a, k) = a always holds");
    }
}

impl std::ops::Add for &Felt {
    type Output = Felt;
    fn add(self, rhs: &Felt) -> Felt {
        Felt::add(self, rhs).expect("context mismatch in +")
    }
}
impl std::ops::Sub for &Felt {
    type Output = Felt;
    fn sub(self, rhs: &Felt) -> Felt {
        Felt::sub(self, rhs).expect("context mismatch in -")
    }
}
impl std::ops::Mul for &Felt {
    type Output = Felt;
    fn mul(self, rhs: &Felt) -> Felt {
        Felt::mul(self, rhs).expect("context mismatch in *")
    }
}
impl std::ops::Neg for &Felt {
    type Output = Felt;
    fn neg(self) -> Felt {
        Felt::neg(self)
    }
}

/// Least common multiple of the element degrees of a nonempty list sharing
/// one tower level. Equals the extension degree k exactly when no proper
/// subfield contains the whole set.
pub fn set_degree(elems: &[Felt]) -> Result<usize> {
    let first = elems
        .first()
        .ok_or_else(|| Error::Precondition("set_degree of an empty list".into()))?;
    let mut acc = 1usize;
    for e in elems {
        first.check_same(e)?;
        let d = e.element_degree();
        acc = lcm(acc, d);
    }
    Ok(acc)
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Factorization of a multiplicative-group order, produced by
/// [`factor_group_order`]; both invariants (product matches, factors prime)
/// hold by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFactorization {
    pub modulus: u128,
    /// (prime, multiplicity) pairs in increasing prime order.
    pub factors: Vec<(u128, u32)>,
}

/// Complete factorization of N by trial division up to the default bound.
pub fn factor_group_order(n: u128) -> Result<OrderFactorization> {
    factor_group_order_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// Complete factorization of N by trial division up to `bound`. A leftover
/// cofactor c with no prime factor <= bound is prime whenever c <= bound^2;
/// anything larger fails loudly rather than returning a partial answer.
pub fn factor_group_order_with_bound(n: u128, bound: u64) -> Result<OrderFactorization> {
    if n < 1 {
        return Err(Error::Precondition("group order must be >= 1".into()));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d: u128 = 2;
    while d <= bound as u128 && d * d <= rest {
        if rest % d == 0 {
            let mut mult = 0u32;
            while rest % d == 0 {
                rest /= d;
                mult += 1;
            }
            factors.push((d, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest <= bound as u128 || rest <= (bound as u128) * (bound as u128) {
            factors.push((rest, 1));
        } else {
            return Err(Error::out_of_range(
                "factorization",
                format!("cofactor {rest} of {n} above trial bound {bound}"),
            ));
        }
    }
    Ok(OrderFactorization {
        modulus: n,
        factors,
    })
}

/// Exact multiplicative order of a nonzero element by divisor descent over
/// a factorization whose modulus is any multiple of the order (a^N must be 1).
pub fn element_order(a: &Felt, fact: &OrderFactorization) -> Result<u128> {
    if a.is_zero() {
        return Err(Error::ZeroElementOrder);
    }
    if !a.pow(fact.modulus).is_one() {
        return Err(Error::InconsistentFactorization(format!(
            "a^{} != 1",
            fact.modulus
        )));
    }
    let mut e = fact.modulus;
    for &(l, _) in &fact.factors {
        while e % l == 0 && a.pow(e / l).is_one() {
            e /= l;
        }
    }
    Ok(e)
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_screen() {
        assert!(FieldCtx::prime(2).is_ok());
        assert!(FieldCtx::prime(3).is_ok());
        assert!(FieldCtx::prime(5).is_ok());
        // 4 is not prime
        assert_eq!(
            make_field(4, &[]).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert_eq!(
            make_field(1, &[]).unwrap_err(),
            Error::NonPrimeCharacteristic(1)
        );
    }

    #[test]
    fn default_moduli_match_enumeration_order() {
        // Degree 2 over F_2: candidates x^2, x^2+1, x^2+x are reducible,
        // x^2+x+1 is the first irreducible.
        let f4 = make_field(2, &[2]).unwrap();
        assert_eq!(f4.modulus_at(1).to_string(), "x^2 + x + 1");
        // Degree 3: x^3+x+1 encodes below x^3+x^2+1.
        let f8 = make_field(2, &[3]).unwrap();
        assert_eq!(f8.modulus_at(1).to_string(), "x^3 + x + 1");
        // Degree 4: x^4+x+1 is the first irreducible quartic.
        let f16 = make_field(2, &[4]).unwrap();
        assert_eq!(f16.modulus_at(1).to_string(), "x^4 + x + 1");
        // Degree 5: x^5+x+1 = (x^2+x+1)(x^3+x^2+1), so x^5+x^2+1 is first.
        let f32 = make_field(2, &[5]).unwrap();
        assert_eq!(f32.modulus_at(1).to_string(), "x^5 + x^2 + 1");
    }

    #[test]
    fn default_modulus_is_least_by_brute_force() {
        // Independent oracle: re-enumerate all monic cubics over F_2 in
        // canonical order and keep the first with no root and no factor;
        // must agree with the constructed default.
        let f8 = make_field(2, &[3]).unwrap();
        let base = make_field(2, &[]).unwrap();
        let mut first = None;
        'outer: for idx in 0..8u128 {
            let cand = base.monic_by_index(0, 3, idx).unwrap();
            // cubic is reducible iff it has a root in F_2
            for a in base.elements(0) {
                if cand.evaluate(&a).unwrap().is_zero() {
                    continue 'outer;
                }
            }
            first = Some(cand);
            break;
        }
        assert_eq!(first.unwrap(), f8.modulus_at(1));
    }

    #[test]
    fn cardinalities() {
        let t = make_field(2, &[2, 2]).unwrap();
        assert_eq!(t.card(0), 2);
        assert_eq!(t.card(1), 4);
        assert_eq!(t.card(2), 16);
        let f27 = make_field(3, &[3]).unwrap();
        assert_eq!(f27.card(1), 27);
    }

    #[test]
    fn frobenius_examples() {
        // F_4 = F_2[y]/(y^2+y+1): y^2 = y+1
        let f4 = make_field(2, &[2]).unwrap();
        let y = f4.generator(1).unwrap();
        let y1 = &y + &f4.one(1);
        assert_eq!(y.frobenius(1), y1);
        assert_eq!(y.frobenius(0), y);
        // F_8: frobenius order divides the extension degree
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        assert_eq!(y.frobenius(3), y);
    }

    #[test]
    fn element_degree_examples() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        assert_eq!(y.element_degree(), 3);
        assert_eq!(f8.one(1).element_degree(), 1);

        // F_16 with modulus y^4+y+1: y^5 = y^2+y has a^4 = a, degree 2.
        let f16 = make_field(2, &[4]).unwrap();
        let y = f16.generator(1).unwrap();
        let a = y.pow(5);
        // oracle: brute force over all divisors of 4
        let mut degs: Vec<usize> = (1..=4).filter(|d| 4 % d == 0 && a.frobenius(*d) == a).collect();
        degs.sort();
        assert_eq!(degs[0], 2);
        assert_eq!(a.element_degree(), 2);
    }

    #[test]
    fn set_degree_examples() {
        let f8 = make_field(2, &[3]).unwrap();
        let y = f8.generator(1).unwrap();
        assert_eq!(set_degree(&[f8.one(1), y.clone()]).unwrap(), 3);
        assert_eq!(set_degree(&[f8.one(1), f8.one(1)]).unwrap(), 1);
        assert!(set_degree(&[]).is_err());

        // y^5 and y^10 both lie in the F_4 subfield of F_16.
        let f16 = make_field(2, &[4]).unwrap();
        let y = f16.generator(1).unwrap();
        assert_eq!(set_degree(&[y.pow(5), y.pow(10)]).unwrap(), 2);
    }

    #[test]
    fn element_order_examples() {
        let f4 = make_field(2, &[2]).unwrap();
        let fact = factor_group_order(3).unwrap();
        assert_eq!(element_order(&f4.one(1), &fact).unwrap(), 1);
        assert_eq!(element_order(&f4.generator(1).unwrap(), &fact).unwrap(), 3);

        // F_16: order(y^3) = 5; oracle by direct powering.
        let f16 = make_field(2, &[4]).unwrap();
        let a = f16.generator(1).unwrap().pow(3);
        let fact = factor_group_order(15).unwrap();
        assert_eq!(element_order(&a, &fact).unwrap(), 5);
        let mut direct = None;
        for e in 1..=15u128 {
            if a.pow(e).is_one() {
                direct = Some(e);
                break;
            }
        }
        assert_eq!(direct, Some(5));

        assert_eq!(
            element_order(&f16.zero(1), &fact).unwrap_err(),
            Error::ZeroElementOrder
        );
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            factor_group_order(15).unwrap().factors,
            vec![(3, 1), (5, 1)]
        );
        assert_eq!(factor_group_order(1).unwrap().factors, vec![]);
        assert_eq!(
            factor_group_order(1023).unwrap().factors,
            vec![(3, 1), (11, 1), (31, 1)]
        );
        // smooth value: every prime factor below the default bound
        // 2^36 - 1 = 3^3 * 5 * 7 * 13 * 19 * 37 * 73 * 109
        let n = (1u128 << 36) - 1;
        let f = factor_group_order(n).unwrap();
        let prod: u128 = f.factors.iter().map(|&(p, m)| p.pow(m)).product();
        assert_eq!(prod, n);
        // cofactor path: 7 * 2147483647 leaves a cofactor above the bound
        // but below bound^2, which is therefore prime
        let f = factor_group_order(7 * 2147483647).unwrap();
        assert_eq!(f.factors, vec![(7, 1), (2147483647, 1)]);
        // 2^93 - 1 = 7 * 2147483647 * 658812288653553079: after the small
        // factor 7 the cofactor exceeds bound^2, so the default bound must
        // refuse rather than guess
        assert!(matches!(
            factor_group_order((1u128 << 93) - 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_and_pow() {
        let f9 = make_field(3, &[2]).unwrap();
        for a in f9.elements(1) {
            if a.is_zero() {
                assert!(a.inv().is_err());
                continue;
            }
            let inv = a.inv().unwrap();
            assert!((&a * &inv).is_one());
            // Lagrange: a^{|F*|} = 1
            assert!(a.pow(8).is_one());
        }
    }

    #[test]
    fn frobenius_fixes_tower_after_k_steps() {
        // exhaustive for a two-level tower F_2 -> F_4 -> F_16
        let t = make_field(2, &[2, 2]).unwrap();
        for a in t.elements(2) {
            assert_eq!(a.frobenius(2), a);
            assert!(a.element_degree() == 1 || a.element_degree() == 2);
        }
    }

    #[test]
    fn subfield_membership_iff_degree_divides() {
        // over F_16/F_2: a in F_{2^v} iff element_degree(a) | v
        let f16 = make_field(2, &[4]).unwrap();
        for a in f16.elements(1) {
            for v in 1..=4usize {
                let in_sub = a.frobenius(v) == a;
                assert_eq!(in_sub, v % a.element_degree() == 0);
            }
        }
    }

    #[test]
    fn element_index_round_trip() {
        let t = make_field(3, &[2]).unwrap();
        for idx in 0..9u128 {
            let a = t.element(1, idx).unwrap();
            assert_eq!(t.element_index(&a), idx);
        }
        assert!(t.element(1, 9).is_err());
    }

    #[test]
    fn lift_lower_round_trip() {
        let t = make_field(2, &[2, 2]).unwrap();
        let y = t.generator(1).unwrap();
        let lifted = y.lift().unwrap();
        assert_eq!(lifted.level(), 2);
        assert_eq!(lifted.lower().unwrap(), y);
        // the level-2 generator does not lie in the level-1 subfield
        let z = t.generator(2).unwrap();
        assert!(z.lower().is_err());
    }

    #[test]
    fn descriptor_round() {
        assert_eq!(make_field(2, &[]).unwrap().descriptor(), "GF(2)");
        assert_eq!(
            make_field(2, &[3]).unwrap().descriptor(),
            "GF(2^3)[chain: x^3 + x + 1]"
        );
        assert_eq!(
            make_field(2, &[2, 2]).unwrap().descriptor(),
            "GF(2^4)[chain: x^2 + x + 1; x^2 + x + y]"
        );
    }
}
