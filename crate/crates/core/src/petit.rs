//! Petit algebras `S_f = K[t;σ] / K[t;σ]f` for monic `f` of degree `m`.
//!
//! Elements are polynomials of degree `< m` and the product is
//! `g ∘ h = gh mod_r f`. The algebra is unital but in general not
//! associative, so powers of a general element are only available as the
//! explicitly bracketed [`PetitAlgebra::left_nested_power`].
//!
//! For `f = t^m - a` the reduction is a single pass: `c·t^{m+e}` becomes
//! `c·σ^e(a)·t^e`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{iter_norm, Elem, FieldCtx, FrobPower};
use crate::skew_poly::{raw, SkewPoly, SkewRing};

/// A Petit algebra over a skew polynomial ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PetitAlgebra {
    ring: SkewRing,
    /// Monic modulus, trimmed, degree `m`.
    f: Vec<Elem>,
    /// `Some(a)` iff `f = t^m - a`.
    constant: Option<Elem>,
}

impl fmt::Debug for PetitAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Some(a) => write!(f, "S_(t^{} - {:?}) over {:?}", self.m(), a, self.ring),
            None => write!(f, "S_f over {:?}, f = {:?}", self.ring, self.modulus()),
        }
    }
}

/// An element of a Petit algebra: exactly `m` coefficients, low degree first.
///
/// Elements carry no algebra handle; operations go through the algebra and
/// reject vectors of the wrong length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct AlgebraElem(Vec<Elem>);

impl AlgebraElem {
    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    /// Number of nonzero coefficients.
    pub fn hamming_weight(&self) -> usize {
        raw::weight(&self.0)
    }

    /// `Some((α, k))` if the element is `α t^k` with `α ≠ 0`.
    pub fn as_monomial(&self) -> Option<(Elem, usize)> {
        let mut it = self.0.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (k, &alpha) = it.next()?;
        it.next().is_none().then_some((alpha, k))
    }
}

/// A nonzero monomial `α t^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Elem,
    pub k: usize,
}

impl Monomial {
    pub fn new(alpha: Elem, k: usize) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(Monomial { alpha, k })
    }
}

/// How [`is_power_assoc_monomial`] decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerAssocMode {
    /// `αb = σ^m(α)σ^k(b)`.
    Criterion,
    /// Direct comparison of bracketed products in the algebra.
    Oracle,
}

impl PetitAlgebra {
    /// `S_f` for a monic `f` of degree at least 1.
    pub fn new(f: &SkewPoly) -> Result<Self> {
        let m = f.degree().ok_or(Error::BadModulus)?;
        if m == 0 || !f.is_monic() {
            return Err(Error::BadModulus);
        }
        let coeffs = f.coeffs().to_vec();
        let ctx = f.ring().ctx();
        let constant = (coeffs[1..m].iter().all(|c| c.is_zero()) && !coeffs[0].is_zero())
            .then(|| ctx.neg(coeffs[0]));
        Ok(PetitAlgebra {
            ring: f.ring().clone(),
            f: coeffs,
            constant,
        })
    }

    /// `S_a = S_{t^m - a}` with `a ≠ 0`.
    pub fn constacyclic(ring: &SkewRing, m: usize, a: Elem) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadModulus);
        }
        if a.is_zero() {
            return Err(Error::ZeroConstant);
        }
        Self::new(&ring.constacyclic_modulus(m, a))
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ring.ctx()
    }

    pub fn sigma(&self) -> FrobPower {
        self.ring.sigma()
    }

    /// Order of `σ`.
    pub fn n(&self) -> u32 {
        self.ring.n()
    }

    pub fn m(&self) -> usize {
        self.f.len() - 1
    }

    pub fn modulus(&self) -> SkewPoly {
        self.ring.poly(self.f.clone())
    }

    /// `a` when the modulus is `t^m - a`.
    pub fn constacyclic_a(&self) -> Option<Elem> {
        self.constant
    }

    fn require_constacyclic(&self) -> Result<Elem> {
        self.constant.ok_or(Error::NotConstacyclic)
    }

    /// Whether `m` and `deg` are compatible with another algebra, i.e. the
    /// two share field, `σ` and `m`.
    pub fn same_shape(&self, other: &PetitAlgebra) -> bool {
        self.ring == other.ring && self.m() == other.m()
    }

    /// Pads a coefficient vector to length `m`.
    pub fn elem(&self, coeffs: &[Elem]) -> Result<AlgebraElem> {
        let mut v = coeffs.to_vec();
        raw::trim(&mut v);
        if v.len() > self.m() {
            return Err(Error::DegreeTooLarge {
                degree: v.len() - 1,
                dim: self.m(),
            });
        }
        v.resize(self.m(), Elem::ZERO);
        Ok(AlgebraElem(v))
    }

    pub fn from_poly(&self, g: &SkewPoly) -> Result<AlgebraElem> {
        if *g.ring() != self.ring {
            return Err(Error::ContextMismatch);
        }
        self.elem(g.coeffs())
    }

    pub fn to_poly(&self, x: &AlgebraElem) -> SkewPoly {
        self.ring.poly(x.0.clone())
    }

    pub fn zero(&self) -> AlgebraElem {
        AlgebraElem(vec![Elem::ZERO; self.m()])
    }

    pub fn one(&self) -> AlgebraElem {
        self.scalar(Elem::ONE)
    }

    pub fn scalar(&self, c: Elem) -> AlgebraElem {
        let mut v = self.zero();
        v.0[0] = c;
        v
    }

    /// `c·t^i` for `i < m`.
    pub fn monomial(&self, c: Elem, i: usize) -> AlgebraElem {
        assert!(i < self.m(), "degree {i} not below m = {}", self.m());
        let mut v = self.zero();
        v.0[i] = c;
        v
    }

    /// `t`; for `m = 1` this is the reduced value `a`.
    pub fn t(&self) -> AlgebraElem {
        if self.m() > 1 {
            self.monomial(Elem::ONE, 1)
        } else {
            self.reduce(vec![Elem::ZERO, Elem::ONE])
        }
    }

    fn check(&self, x: &AlgebraElem) {
        assert_eq!(x.0.len(), self.m(), "element of the wrong dimension");
    }

    pub fn add(&self, x: &AlgebraElem, y: &AlgebraElem) -> AlgebraElem {
        self.check(x);
        self.check(y);
        let ctx = self.ctx();
        AlgebraElem(x.0.iter().zip(&y.0).map(|(&a, &b)| ctx.add(a, b)).collect())
    }

    pub fn sub(&self, x: &AlgebraElem, y: &AlgebraElem) -> AlgebraElem {
        self.check(x);
        self.check(y);
        let ctx = self.ctx();
        AlgebraElem(x.0.iter().zip(&y.0).map(|(&a, &b)| ctx.sub(a, b)).collect())
    }

    pub fn neg(&self, x: &AlgebraElem) -> AlgebraElem {
        let ctx = self.ctx();
        AlgebraElem(x.0.iter().map(|&a| ctx.neg(a)).collect())
    }

    /// `c ∘ x`.
    pub fn scale(&self, c: Elem, x: &AlgebraElem) -> AlgebraElem {
        let ctx = self.ctx();
        AlgebraElem(x.0.iter().map(|&a| ctx.mul(c, a)).collect())
    }

    /// Reduces any polynomial (as a coefficient vector) modulo `f`.
    pub fn reduce(&self, mut prod: Vec<Elem>) -> AlgebraElem {
        let m = self.m();
        match self.constant {
            Some(a) if prod.len() <= 2 * m => {
                let ctx = self.ctx();
                let sigma = self.sigma();
                for e in m..prod.len() {
                    let c = prod[e];
                    if !c.is_zero() {
                        let term = ctx.mul(c, ctx.apply(sigma.pow((e - m) as u64), a));
                        prod[e - m] = ctx.add(prod[e - m], term);
                    }
                }
                prod.resize(m, Elem::ZERO);
                AlgebraElem(prod)
            }
            _ => {
                let (_, mut rem) = raw::right_divmod(self.ctx(), self.sigma(), &prod, &self.f);
                rem.resize(m, Elem::ZERO);
                AlgebraElem(rem)
            }
        }
    }

    /// `x ∘ y = xy mod_r f`.
    pub fn mul(&self, x: &AlgebraElem, y: &AlgebraElem) -> AlgebraElem {
        self.check(x);
        self.check(y);
        self.reduce(raw::mul_untrimmed(self.ctx(), self.sigma(), &x.0, &y.0))
    }

    /// `L(z, s) = z ∘ (z ∘ (... ∘ z))` with `s` factors.
    pub fn left_nested_power(&self, z: &AlgebraElem, s: usize) -> Result<AlgebraElem> {
        if s == 0 {
            return Err(Error::EmptyPower);
        }
        let mut acc = z.clone();
        for _ in 1..s {
            acc = self.mul(z, &acc);
        }
        Ok(acc)
    }

    /// `[L(z, 1), ..., L(z, s)]`.
    pub fn left_nested_powers(&self, z: &AlgebraElem, s: usize) -> Vec<AlgebraElem> {
        let mut out = Vec::with_capacity(s);
        if s == 0 {
            return out;
        }
        out.push(z.clone());
        for _ in 1..s {
            let next = self.mul(z, out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// For each `j` in `1..=factors`, the set of values of all binary
    /// bracketings of `z^j` (index `j - 1`).
    pub fn bracketing_values(&self, z: &AlgebraElem, factors: usize) -> Vec<Vec<AlgebraElem>> {
        let mut sets: Vec<Vec<AlgebraElem>> = Vec::with_capacity(factors);
        if factors == 0 {
            return sets;
        }
        sets.push(vec![z.clone()]);
        for j in 2..=factors {
            let mut vals: HashSet<AlgebraElem> = HashSet::new();
            for left in 1..j {
                for x in &sets[left - 1] {
                    for y in &sets[j - left - 1] {
                        vals.insert(self.mul(x, y));
                    }
                }
            }
            let mut vals: Vec<AlgebraElem> = vals.into_iter().collect();
            vals.sort();
            sets.push(vals);
        }
        sets
    }

    /// `(x ∘ y) ∘ z - x ∘ (y ∘ z)`.
    pub fn associator(&self, x: &AlgebraElem, y: &AlgebraElem, z: &AlgebraElem) -> AlgebraElem {
        self.sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    /// `{ξ^u t^i : u < r, i < m}`, a basis over the prime field.
    pub fn prime_field_basis(&self) -> Vec<AlgebraElem> {
        let ctx = self.ctx();
        let mut out = Vec::with_capacity(self.m() * ctx.degree() as usize);
        for i in 0..self.m() {
            for u in 0..ctx.degree() {
                out.push(self.monomial(ctx.xi_pow(u as i64), i));
            }
        }
        out
    }

    /// The first basis triple with a nonzero associator, if any.
    ///
    /// The associator is additive in each argument, so vanishing on a
    /// prime-field basis means vanishing everywhere.
    pub fn associator_scan(&self) -> Option<[AlgebraElem; 3]> {
        let basis = self.prime_field_basis();
        for x in &basis {
            for y in &basis {
                let xy = self.mul(x, y);
                for z in &basis {
                    let lhs = self.mul(&xy, z);
                    let rhs = self.mul(x, &self.mul(y, z));
                    if lhs != rhs {
                        return Some([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
        }
        None
    }

    /// `a ∈ K_0` and `n | m`, for `f = t^m - a`; `m = 1` is the field `K`.
    pub fn is_associative(&self) -> Result<bool> {
        let a = self.require_constacyclic()?;
        let m = self.m();
        Ok(m == 1 || (self.ring.in_fixed_field(a) && m.is_multiple_of(self.n() as usize)))
    }

    /// Number of elements, `q^m`, if it fits.
    pub fn size(&self) -> Option<u64> {
        (self.ctx().size() as u64).checked_pow(self.m() as u32)
    }

    /// The element with mixed-radix index `idx` over `q`, digits given by
    /// [`FieldCtx::elements`] order (zero first), low degree first.
    pub fn element_at(&self, mut idx: u64) -> AlgebraElem {
        let ctx = self.ctx();
        let q = ctx.size() as u64;
        let mut v = Vec::with_capacity(self.m());
        for _ in 0..self.m() {
            let d = (idx % q) as u32;
            idx /= q;
            v.push(if d == 0 { Elem::ZERO } else { ctx.xi_pow(d as i64 - 1) });
        }
        AlgebraElem(v)
    }

    /// Every element, in [`Self::element_at`] order.
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElem> + '_ {
        let total = self.size().expect("algebra too large to enumerate");
        (0..total).map(move |i| self.element_at(i))
    }
}

/// `αb = σ^m(α)σ^k(b)` in `S_b`.
pub fn power_assoc_criterion(alg: &PetitAlgebra, z: Monomial) -> Result<bool> {
    let b = alg.require_constacyclic()?;
    let ctx = alg.ctx();
    let sigma = alg.sigma();
    let lhs = ctx.mul(z.alpha, b);
    let rhs = ctx.mul(
        ctx.apply_pow(sigma, alg.m() as u64, z.alpha),
        ctx.apply_pow(sigma, z.k as u64, b),
    );
    Ok(lhs == rhs)
}

/// Least `r > 0` with `rk >= m`.
fn least_wrap(m: usize, k: usize) -> usize {
    m.div_ceil(k)
}

/// Decides whether `αt^k` is power-associative in `S_b`.
///
/// The oracle checks, in the algebra itself:
/// `z^r ∘ z = z ∘ z^r` for the least `r` with `rk >= m`;
/// `L(z, s) ∘ L(z, l) = L(z, s + l)` for `s + l <= 2m`;
/// and that all bracketings of up to `min(8, 2m)` factors coincide.
pub fn is_power_assoc_monomial(alg: &PetitAlgebra, z: Monomial, mode: PowerAssocMode) -> Result<bool> {
    let m = alg.m();
    if z.k == 0 || z.k >= m {
        return Err(Error::DegreeOutOfRange { k: z.k, lo: 1, hi: m });
    }
    match mode {
        PowerAssocMode::Criterion => power_assoc_criterion(alg, z),
        PowerAssocMode::Oracle => {
            alg.require_constacyclic()?;
            Ok(power_assoc_oracle(alg, &alg.monomial(z.alpha, z.k)))
        }
    }
}

/// The bracketing oracle of [`is_power_assoc_monomial`], for any element.
pub fn power_assoc_oracle(alg: &PetitAlgebra, z: &AlgebraElem) -> bool {
    let m = alg.m();
    let powers = alg.left_nested_powers(z, 2 * m);
    let l = |s: usize| &powers[s - 1];

    if let Some((_, k)) = z.as_monomial() {
        if k > 0 {
            let r = least_wrap(m, k);
            if r < 2 * m && alg.mul(l(r), z) != *l(r + 1) {
                return false;
            }
        }
    }
    for total in 2..=2 * m {
        for s in 1..total {
            if alg.mul(l(s), l(total - s)) != *l(total) {
                return false;
            }
        }
    }
    alg.bracketing_values(z, 8.min(2 * m))
        .iter()
        .all(|vals| vals.len() == 1)
}

/// Least `j` with `L(z, j) ∘ z ≠ L(z, j + 1)`, searched up to `2m`.
fn least_failing_nesting(alg: &PetitAlgebra, z: &AlgebraElem) -> Option<usize> {
    let powers = alg.left_nested_powers(z, 2 * alg.m() + 1);
    (1..=2 * alg.m()).find(|&j| alg.mul(&powers[j - 1], z) != powers[j])
}

/// `z^s = N_s^{σ^k}(α) · ∏_{i=1}^{⌊sk/m⌋} σ^{sk - im}(b) · t^{sk mod m}`.
///
/// For `k >= 1` this requires the power-associativity criterion; `k = 0`
/// is a scalar power.
pub fn monomial_power(alg: &PetitAlgebra, z: Monomial, s: usize) -> Result<AlgebraElem> {
    let b = alg.require_constacyclic()?;
    let m = alg.m();
    if z.k >= m {
        return Err(Error::DegreeOutOfRange { k: z.k, lo: 0, hi: m });
    }
    if s == 0 {
        return Err(Error::EmptyPower);
    }
    if z.k > 0 && !power_assoc_criterion(alg, z)? {
        let elem = alg.monomial(z.alpha, z.k);
        let nesting = least_failing_nesting(alg, &elem).unwrap_or(least_wrap(m, z.k));
        return Err(Error::NotPowerAssociative { nesting });
    }
    let ctx = alg.ctx();
    let sigma = alg.sigma();
    let sk = s * z.k;
    let mut coeff = iter_norm(ctx, sigma.pow(z.k as u64), s as u64, z.alpha);
    for i in 1..=sk / m {
        coeff = ctx.mul(coeff, ctx.apply_pow(sigma, (sk - i * m) as u64, b));
    }
    Ok(alg.monomial(coeff, sk % m))
}

/// Evaluates both sides of the key-step identity
///
/// `σ^{[sk]_m}(N_l^{σ^k}(α)) ∏_{j=1}^{z} σ^{sk-jm}(b)
///   = σ^{sk}(N_l^{σ^k}(α)) ∏_{j=1}^{z} σ^{sk-jm}(σ^{lk}(b))`,
///
/// `z = ⌊sk/m⌋`, under the hypothesis `αb = σ^m(α)σ^k(b)`.
#[allow(clippy::too_many_arguments)]
pub fn keystep_identity_check(
    ctx: &FieldCtx,
    sigma: FrobPower,
    m: usize,
    k: usize,
    alpha: Elem,
    b: Elem,
    s: usize,
    ell: usize,
) -> Result<bool> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if alpha.is_zero() || b.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let hyp_lhs = ctx.mul(alpha, b);
    let hyp_rhs = ctx.mul(
        ctx.apply_pow(sigma, m as u64, alpha),
        ctx.apply_pow(sigma, k as u64, b),
    );
    if hyp_lhs != hyp_rhs {
        return Err(Error::HypothesisViolated(
            "alpha*b != sigma^m(alpha)*sigma^k(b)".into(),
        ));
    }
    let sk = s * k;
    let wraps = sk / m;
    let norm = iter_norm(ctx, sigma.pow(k as u64), ell as u64, alpha);
    let b_shift = ctx.apply_pow(sigma, (ell * k) as u64, b);
    let mut lhs = ctx.apply_pow(sigma, (sk % m) as u64, norm);
    let mut rhs = ctx.apply_pow(sigma, sk as u64, norm);
    for j in 1..=wraps {
        let shift = (sk - j * m) as u64;
        lhs = ctx.mul(lhs, ctx.apply_pow(sigma, shift, b));
        rhs = ctx.mul(rhs, ctx.apply_pow(sigma, shift, b_shift));
    }
    Ok(lhs == rhs)
}
