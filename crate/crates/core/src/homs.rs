//! Homomorphisms between Petit algebras `S_a → S_b`.
//!
//! A candidate map is fixed by a field automorphism `τ` and the image
//! `G(t)`: the images of powers of `t` are forced to be the left-nested
//! powers `P_i = L(G(t), i)` (`P_0 = 1`), and
//! `G(Σ x_i t^i) = Σ τ(x_i) P_i`. [`brute_force_is_hom`] decides whether
//! that map is multiplicative by direct computation; the closed-form
//! criteria [`check_degree1_hom`] and [`check_monomial_hom`] are tested
//! against it.
//!
//! Multiplicativity is checked on pairs `(t^i, d t^j)` with `d` running over
//! a prime-field basis of `K`. This suffices: `G` is additive and
//! `τ`-semilinear on the left by construction, the product is left
//! `K`-linear in its first argument and additive in its second, and both
//! sides of `G(t^i ∘ d t^j) = P_i ∘ τ(d) P_j` are additive in `d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gcd, iter_norm, Elem, FrobPower};
use crate::linalg::fp_rank;
use crate::petit::{AlgebraElem, PetitAlgebra};
use crate::skew_poly::SkewRing;

/// Default cap on the number of candidate images per search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// `G_{τ,α,k}`: `τ` on scalars, `t ↦ α t^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialHomSpec {
    pub tau: FrobPower,
    pub alpha: Elem,
    pub k: usize,
}

impl MonomialHomSpec {
    pub fn new(tau: FrobPower, alpha: Elem, k: usize) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(MonomialHomSpec { tau, alpha, k })
    }

    pub fn to_poly(&self, target: &PetitAlgebra) -> PolyHomSpec {
        PolyHomSpec {
            tau: self.tau,
            image: target.monomial(self.alpha, self.k),
        }
    }
}

/// `τ` on scalars and an arbitrary image of `t` (of degree `< m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolyHomSpec {
    pub tau: FrobPower,
    pub image: AlgebraElem,
}

impl PolyHomSpec {
    /// `Some((α, k))` if the image of `t` is a monomial.
    pub fn as_monomial(&self) -> Option<MonomialHomSpec> {
        self.image
            .as_monomial()
            .map(|(alpha, k)| MonomialHomSpec { tau: self.tau, alpha, k })
    }

    pub fn is_zero(&self) -> bool {
        self.image.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Hom,
    Iso,
    NotHom,
}

impl Verdict {
    pub fn is_hom(self) -> bool {
        !matches!(self, Verdict::NotHom)
    }
}

/// A failing product: `G(t^i ∘ d t^j) = lhs ≠ rhs = G(t^i) ∘ G(d t^j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub d: Elem,
    pub lhs: AlgebraElem,
    pub rhs: AlgebraElem,
}

impl Witness {
    /// Recomputes both sides from scratch.
    pub fn reverify(&self, source: &PetitAlgebra, target: &PetitAlgebra, spec: &PolyHomSpec) -> bool {
        let map = HomMap::new(target, spec);
        let (lhs, rhs) = map.product_pair(source, target, self.i, self.j, self.d);
        lhs == self.lhs && rhs == self.rhs && lhs != rhs
    }
}

/// The individual conditions of the degree-`k` criterion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub k_mod_n: bool,
    pub n_divides_m: bool,
    #[serde(rename = "a_in_S0")]
    pub a_in_s0: bool,
    #[serde(rename = "b_in_S0")]
    pub b_in_s0: bool,
    pub norm_condition: bool,
    pub k_coprime_m: bool,
}

/// Outcome of checking a weight-preservation claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub preserving: bool,
    /// `true` when only a sample of the algebra was examined.
    pub sampled: bool,
    pub checked: u64,
    pub counterexample: Option<AlgebraElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCertificate {
    pub spec: PolyHomSpec,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_flags: Option<StructureFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_preserving: Option<WeightCheck>,
}

impl HomCertificate {
    fn new(spec: PolyHomSpec, verdict: Verdict) -> Self {
        HomCertificate {
            spec,
            verdict,
            witness: None,
            structure_flags: None,
            weight_preserving: None,
        }
    }
}

/// A candidate map with its powers `P_0, ..., P_{m-1}` precomputed.
struct HomMap {
    tau: FrobPower,
    powers: Vec<AlgebraElem>,
}

impl HomMap {
    fn new(target: &PetitAlgebra, spec: &PolyHomSpec) -> Self {
        let m = target.m();
        let mut powers = Vec::with_capacity(m);
        powers.push(target.one());
        for i in 1..m {
            let next = target.mul(&spec.image, &powers[i - 1]);
            powers.push(next);
        }
        HomMap { tau: spec.tau, powers }
    }

    fn apply(&self, target: &PetitAlgebra, x: &AlgebraElem) -> AlgebraElem {
        let ctx = target.ctx();
        let mut acc = target.zero();
        for (i, &c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = target.add(&acc, &target.scale(ctx.apply(self.tau, c), &self.powers[i]));
            }
        }
        acc
    }

    fn product_pair(
        &self,
        source: &PetitAlgebra,
        target: &PetitAlgebra,
        i: usize,
        j: usize,
        d: Elem,
    ) -> (AlgebraElem, AlgebraElem) {
        let prod = source.mul(&source.monomial(Elem::ONE, i), &source.monomial(d, j));
        let lhs = self.apply(target, &prod);
        let td = target.ctx().apply(self.tau, d);
        let rhs = target.mul(&self.powers[i], &target.scale(td, &self.powers[j]));
        (lhs, rhs)
    }
}

fn same_shape(source: &PetitAlgebra, target: &PetitAlgebra) -> Result<()> {
    if source.same_shape(target) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `G(x)` for `x` in the source; powers of the image are left-nested.
pub fn apply_hom(target: &PetitAlgebra, spec: &PolyHomSpec, x: &AlgebraElem) -> AlgebraElem {
    HomMap::new(target, spec).apply(target, x)
}

/// Prime-field basis `ξ^0, ..., ξ^{r-1}` of `K`.
fn scalar_basis(ring: &SkewRing) -> Vec<Elem> {
    (0..ring.ctx().degree()).map(|u| ring.ctx().xi_pow(u as i64)).collect()
}

/// Basis pairs in check order: `(1, 0)` first, then the rest row by row.
fn pair_order(m: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(m * m);
    if m > 1 {
        pairs.push((1, 0));
    }
    for i in 0..m {
        for j in 0..m {
            if !(i == 1 && j == 0) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Whether the `F_p`-images of `{ξ^u t^i}` are independent.
fn is_bijective(source: &PetitAlgebra, target: &PetitAlgebra, map: &HomMap) -> bool {
    let ctx = target.ctx();
    let p = ctx.characteristic();
    let rows: Vec<Vec<u32>> = source
        .prime_field_basis()
        .iter()
        .map(|x| {
            map.apply(target, x)
                .coeffs()
                .iter()
                .flat_map(|&c| ctx.coords(c))
                .collect()
        })
        .collect();
    fp_rank(p, rows) == source.m() * ctx.degree() as usize
}

/// The ground-truth oracle: decides multiplicativity of the map by direct
/// computation and, for homomorphisms, bijectivity by an `F_p`-rank count.
pub fn brute_force_is_hom(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    spec: &PolyHomSpec,
) -> Result<HomCertificate> {
    same_shape(source, target)?;
    Ok(oracle(source, target, spec, &scalar_basis(source.ring()), &pair_order(source.m())))
}

fn oracle(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    spec: &PolyHomSpec,
    basis: &[Elem],
    pairs: &[(usize, usize)],
) -> HomCertificate {
    let map = HomMap::new(target, spec);
    for &(i, j) in pairs {
        for &d in basis {
            let (lhs, rhs) = map.product_pair(source, target, i, j, d);
            if lhs != rhs {
                let mut cert = HomCertificate::new(spec.clone(), Verdict::NotHom);
                cert.witness = Some(Witness { i, j, d, lhs, rhs });
                return cert;
            }
        }
    }
    let verdict = if is_bijective(source, target, &map) {
        Verdict::Iso
    } else {
        Verdict::Hom
    };
    HomCertificate::new(spec.clone(), verdict)
}

fn constants(source: &PetitAlgebra, target: &PetitAlgebra) -> Result<(Elem, Elem)> {
    same_shape(source, target)?;
    let a = source.constacyclic_a().ok_or(Error::NotConstacyclic)?;
    let b = target.constacyclic_a().ok_or(Error::NotConstacyclic)?;
    Ok((a, b))
}

/// Degree-one criterion: `G_{τ,α}` is a homomorphism iff
/// `τ(a) = N_m^σ(α)·b`, and then always an isomorphism.
pub fn check_degree1_hom(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    tau: FrobPower,
    alpha: Elem,
) -> Result<HomCertificate> {
    let (a, b) = constants(source, target)?;
    let spec = MonomialHomSpec::new(tau, alpha, 1)?;
    let ctx = source.ctx();
    let norm = iter_norm(ctx, source.sigma(), source.m() as u64, alpha);
    let holds = ctx.apply(tau, a) == ctx.mul(norm, b);
    let n = source.n() as usize;
    let flags = StructureFlags {
        k_mod_n: true,
        n_divides_m: source.m().is_multiple_of(n),
        a_in_s0: source.ring().in_fixed_field(a),
        b_in_s0: source.ring().in_fixed_field(b),
        norm_condition: holds,
        k_coprime_m: true,
    };
    let verdict = if holds { Verdict::Iso } else { Verdict::NotHom };
    let mut cert = HomCertificate::new(spec.to_poly(target), verdict);
    cert.structure_flags = Some(flags);
    Ok(cert)
}

/// Degree-`k` criterion. For `k >= 2`, `G_{τ,α,k}` is a homomorphism iff
/// `k ≡ 1 mod n`, `n | m`, `a, b ∈ K_0` and `N_n^σ(α)^{m/n}·b^k = τ(a)`;
/// it is an isomorphism iff moreover `gcd(k, m) = 1`.
pub fn check_monomial_hom(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    spec: MonomialHomSpec,
) -> Result<HomCertificate> {
    let (a, b) = constants(source, target)?;
    let m = source.m();
    if spec.k == 0 || spec.k >= m {
        return Err(Error::DegreeOutOfRange { k: spec.k, lo: 1, hi: m });
    }
    if spec.k == 1 {
        return check_degree1_hom(source, target, spec.tau, spec.alpha);
    }
    if spec.alpha.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let ctx = source.ctx();
    let sigma = source.sigma();
    let n = source.n() as usize;
    let n_divides_m = m.is_multiple_of(n);
    let norm_condition = n_divides_m && {
        let field_norm = iter_norm(ctx, sigma, n as u64, spec.alpha);
        let lhs = ctx.mul(ctx.pow(field_norm, (m / n) as u64), ctx.pow(b, spec.k as u64));
        lhs == ctx.apply(spec.tau, a)
    };
    let flags = StructureFlags {
        k_mod_n: spec.k % n == 1 % n,
        n_divides_m,
        a_in_s0: source.ring().in_fixed_field(a),
        b_in_s0: source.ring().in_fixed_field(b),
        norm_condition,
        k_coprime_m: gcd(spec.k as u64, m as u64) == 1,
    };
    let hom = flags.k_mod_n && flags.n_divides_m && flags.a_in_s0 && flags.b_in_s0 && flags.norm_condition;
    let verdict = match (hom, flags.k_coprime_m) {
        (false, _) => Verdict::NotHom,
        (true, true) => Verdict::Iso,
        (true, false) => Verdict::Hom,
    };
    let mut cert = HomCertificate::new(spec.to_poly(target), verdict);
    cert.structure_flags = Some(flags);
    Ok(cert)
}

/// Candidate family for [`enumerate_homs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restrict {
    /// `t ↦ α t^k` with `α ≠ 0`, `1 <= k < m`.
    Monomial,
    /// Every image of degree `< m`.
    All,
}

/// Result of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomEnumeration {
    /// Nonzero homomorphisms, in candidate order.
    pub homs: Vec<HomCertificate>,
    /// Homomorphisms with `G(t) = 0`; excluded from `homs`.
    pub degenerate: usize,
    pub candidates: u64,
}

fn candidate_count(source: &PetitAlgebra, restrict: Restrict) -> Option<u64> {
    let r = source.ctx().degree() as u64;
    match restrict {
        Restrict::Monomial => Some(r * source.ctx().order() as u64 * (source.m() as u64 - 1)),
        Restrict::All => source.size().and_then(|s| s.checked_mul(r)),
    }
}

fn candidates(source: &PetitAlgebra, target: &PetitAlgebra, restrict: Restrict) -> Vec<PolyHomSpec> {
    let r = source.ctx().degree();
    let mut out = Vec::new();
    for tau in FrobPower::all(r) {
        match restrict {
            Restrict::Monomial => {
                for k in 1..source.m() {
                    for alpha in source.ctx().units() {
                        out.push(MonomialHomSpec { tau, alpha, k }.to_poly(target));
                    }
                }
            }
            Restrict::All => {
                out.extend(target.elements().map(|image| PolyHomSpec { tau, image }));
            }
        }
    }
    out
}

/// Runs the oracle on every candidate. `budget` bounds the candidate count.
pub fn enumerate_homs(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    restrict: Restrict,
    budget: u64,
) -> Result<HomEnumeration> {
    same_shape(source, target)?;
    let needed = candidate_count(source, restrict).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(Error::Budget {
            needed: needed as u128,
            budget,
        });
    }
    let basis = scalar_basis(source.ring());
    let pairs = pair_order(source.m());
    let certs: Vec<HomCertificate> = candidates(source, target, restrict)
        .into_par_iter()
        .map(|spec| oracle(source, target, &spec, &basis, &pairs))
        .filter(|c| c.verdict.is_hom())
        .collect();
    Ok(split_degenerate(certs, needed))
}

fn split_degenerate(certs: Vec<HomCertificate>, candidates: u64) -> HomEnumeration {
    let (degenerate, homs): (Vec<_>, Vec<_>) = certs.into_iter().partition(|c| c.spec.is_zero());
    HomEnumeration {
        homs,
        degenerate: degenerate.len(),
        candidates,
    }
}

/// `G(t ∘ d) = G(σ(d) t)` for all `d`, i.e. `g ∘ τ(d) = τ(σ(d)) g`. This is
/// the `(1, 0)` product of the oracle and depends on neither `a` nor `b`.
pub fn twist_compatible(target: &PetitAlgebra, tau: FrobPower, image: &AlgebraElem) -> bool {
    let ctx = target.ctx();
    let sigma = target.sigma();
    scalar_basis(target.ring()).into_iter().all(|d| {
        let lhs = target.mul(image, &target.scalar(ctx.apply(tau, d)));
        let rhs = target.scale(ctx.apply(tau, ctx.apply(sigma, d)), image);
        lhs == rhs
    })
}

/// Exhaustive `All` search across many `(a, b)` pairs with a shared
/// prefilter: the twist-compatible `(τ, G(t))` candidates are computed once
/// per `(ring, m)` and only those are run through the full oracle.
pub struct HomSearch {
    ring: SkewRing,
    m: usize,
    candidates: Vec<PolyHomSpec>,
    total: u64,
}

impl HomSearch {
    pub fn new(ring: &SkewRing, m: usize, budget: u64) -> Result<Self> {
        let probe = PetitAlgebra::constacyclic(ring, m, Elem::ONE)?;
        let total = candidate_count(&probe, Restrict::All).unwrap_or(u64::MAX);
        if total > budget {
            return Err(Error::Budget {
                needed: total as u128,
                budget,
            });
        }
        let mut candidates = Vec::new();
        for tau in FrobPower::all(ring.ctx().degree()) {
            let found: Vec<PolyHomSpec> = (0..probe.size().unwrap())
                .into_par_iter()
                .map(|idx| probe.element_at(idx))
                .filter(|image| m == 1 || twist_compatible(&probe, tau, image))
                .map(|image| PolyHomSpec { tau, image })
                .collect();
            candidates.extend(found);
        }
        Ok(HomSearch {
            ring: ring.clone(),
            m,
            candidates,
            total,
        })
    }

    /// Twist-compatible candidates, in [`enumerate_homs`] order.
    pub fn candidates(&self) -> &[PolyHomSpec] {
        &self.candidates
    }

    /// Same result as `enumerate_homs(S_a, S_b, Restrict::All, _)`.
    pub fn homs(&self, a: Elem, b: Elem) -> Result<HomEnumeration> {
        let source = PetitAlgebra::constacyclic(&self.ring, self.m, a)?;
        let target = PetitAlgebra::constacyclic(&self.ring, self.m, b)?;
        let basis = scalar_basis(&self.ring);
        let pairs = pair_order(self.m);
        let certs: Vec<HomCertificate> = self
            .candidates
            .par_iter()
            .map(|spec| oracle(&source, &target, spec, &basis, &pairs))
            .filter(|c| c.verdict.is_hom())
            .collect();
        Ok(split_degenerate(certs, self.total))
    }
}

/// A certified non-monomial homomorphism has `n | m` and its image of `t`
/// supported in degrees `≡ 1 mod n`. Monomial images pass vacuously.
pub fn nonmonomial_structure_check(n: u32, m: usize, image: &AlgebraElem) -> bool {
    if image.as_monomial().is_some() || image.is_zero() {
        return true;
    }
    let n = n as usize;
    m.is_multiple_of(n)
        && image
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % n == 1 % n)
}

/// With `s` the least value with `sk >= m`: `(s + 1)k <= 2m`.
pub fn star_hypothesis(m: usize, k: usize) -> Result<bool> {
    if k < 2 || k >= m {
        return Err(Error::DegreeOutOfRange { k, lo: 2, hi: m });
    }
    let s = m.div_ceil(k);
    Ok((s + 1) * k <= 2 * m)
}

pub fn hamming_weight(x: &AlgebraElem) -> usize {
    x.hamming_weight()
}

/// Whether `wt(G(x)) = wt(x)` for every `x`.
///
/// Exhaustive (weight-one elements first, early exit) when `q^m <= budget`;
/// otherwise all elements of weight `<= 2` plus `budget` seeded random
/// samples, reported as `sampled`.
pub fn is_weight_preserving(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    spec: &PolyHomSpec,
    budget: u64,
    seed: u64,
) -> WeightCheck {
    let map = HomMap::new(target, spec);
    let ctx = source.ctx();
    let m = source.m();
    let mut checked = 0u64;
    let mut test = |x: AlgebraElem| -> Option<AlgebraElem> {
        checked += 1;
        (map.apply(target, &x).hamming_weight() != x.hamming_weight()).then_some(x)
    };
    let result = |preserving, sampled, checked, counterexample| WeightCheck {
        preserving,
        sampled,
        checked,
        counterexample,
    };

    for i in 0..m {
        for c in ctx.units() {
            if let Some(x) = test(source.monomial(c, i)) {
                return result(false, false, checked, Some(x));
            }
        }
    }
    match source.size().filter(|&s| s <= budget) {
        Some(_) => {
            for x in source.elements().filter(|x| x.hamming_weight() > 1) {
                if let Some(x) = test(x) {
                    return result(false, false, checked, Some(x));
                }
            }
            result(true, false, checked, None)
        }
        None => {
            for i in 0..m {
                for j in i + 1..m {
                    for c in ctx.units() {
                        for d in ctx.units() {
                            let x = source.add(&source.monomial(c, i), &source.monomial(d, j));
                            if let Some(x) = test(x) {
                                return result(false, true, checked, Some(x));
                            }
                        }
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let size = source.size().unwrap_or(u64::MAX);
            for _ in 0..budget {
                let x = source.element_at(rng.gen_range(0..size));
                if let Some(x) = test(x) {
                    return result(false, true, checked, Some(x));
                }
            }
            result(true, true, checked, None)
        }
    }
}

/// `G_2 ∘ G_1`: `τ_2 τ_1` on scalars and `t ↦ G_2(G_1(t))`. The result is a
/// spec only; certify it with [`brute_force_is_hom`].
pub fn compose(mid: &PetitAlgebra, target: &PetitAlgebra, first: &PolyHomSpec, second: &PolyHomSpec) -> PolyHomSpec {
    let _ = mid;
    PolyHomSpec {
        tau: second.tau.compose(first.tau),
        image: apply_hom(target, second, &first.image),
    }
}

/// In `K[t;σ]` (no modulus): `α t^k τ(c) = τ(σ(c)) α t^k` for every `c ∈ K`.
pub fn twist_check_skew(ring: &SkewRing, tau: FrobPower, alpha: Elem, k: usize) -> bool {
    let ctx = ring.ctx();
    let z = ring.monomial(alpha, k);
    ctx.elements().all(|c| {
        let lhs = &z * &ring.constant(ctx.apply(tau, c));
        let rhs = &ring.constant(ctx.apply(tau, ctx.apply(ring.sigma(), c))) * &z;
        lhs == rhs
    })
}

/// Draws a random element; used by spot checks.
pub fn random_element(alg: &PetitAlgebra, rng: &mut impl Rng) -> AlgebraElem {
    alg.element_at(rng.gen_range(0..alg.size().unwrap_or(u64::MAX)))
}
