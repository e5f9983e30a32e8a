//! Equivalence and isometry classes of the algebras `S_{t^m - a}`, `a ∈ K^×`.
//!
//! `a ~ b` when a monomial isomorphism `S_a → S_b` exists whose `(τ, k)`
//! lie in the mode's allowed set. [`partition`] builds the classes from
//! generating isomorphisms; [`partition_pairwise`] tests every ordered pair
//! and is the independent route the former is checked against.

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{bracket_m_s_mod, gcd, iter_norm, Elem, FieldCtx, FrobPower};
use crate::homs::{brute_force_is_hom, check_degree1_hom, check_monomial_hom, MonomialHomSpec, Verdict};
use crate::petit::PetitAlgebra;
use crate::skew_poly::SkewRing;

/// Largest field for which pairwise classification is attempted.
pub const PAIRWISE_MAX_ORDER: u32 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassMode {
    /// `τ = id`, `k = 1`.
    MSigmaEquivalence,
    /// `τ = id`, any `k`.
    MSigmaIsometry,
    /// Any `τ`, `k = 1`.
    Equivalence,
    /// Any `τ`, any `k`.
    Isometry,
}

impl ClassMode {
    pub const ALL: [ClassMode; 4] = [
        ClassMode::MSigmaEquivalence,
        ClassMode::MSigmaIsometry,
        ClassMode::Equivalence,
        ClassMode::Isometry,
    ];

    pub fn any_tau(self) -> bool {
        matches!(self, ClassMode::Equivalence | ClassMode::Isometry)
    }

    pub fn any_k(self) -> bool {
        matches!(self, ClassMode::MSigmaIsometry | ClassMode::Isometry)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassMode::MSigmaEquivalence => "m-sigma-equivalence",
            ClassMode::MSigmaIsometry => "m-sigma-isometry",
            ClassMode::Equivalence => "equivalence",
            ClassMode::Isometry => "isometry",
        }
    }

    fn taus(self, r: u32) -> Vec<FrobPower> {
        if self.any_tau() {
            FrobPower::all(r).collect()
        } else {
            vec![FrobPower::identity(r)]
        }
    }

    fn degrees(self, m: usize) -> Vec<usize> {
        if self.any_k() {
            (1..m.max(2)).collect()
        } else {
            vec![1]
        }
    }
}

impl std::str::FromStr for ClassMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown classification mode {s:?}")))
    }
}

/// How [`partition_pairwise`] decides whether an isomorphism exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Closed-form degree-`k` criterion.
    Criterion,
    /// Brute-force certification of every monomial candidate.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub field: String,
    pub p: u32,
    pub r: u32,
    pub s: u32,
    pub n: u32,
    pub m: usize,
}

impl Params {
    pub fn of(ring: &SkewRing, m: usize) -> Self {
        let ctx = ring.ctx();
        Params {
            field: ctx.spec(),
            p: ctx.characteristic(),
            r: ctx.degree(),
            s: ring.sigma().exponent(),
            n: ring.n(),
            m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub representative: u32,
    pub size: usize,
    /// Some member lies in the fixed field `K_0`.
    pub contains_subfield: bool,
    /// Some member gives an associative algebra.
    pub associative_sector: bool,
}

/// For one coset `ξ^A ⟨ξ^w⟩`: the number of its elements outside `K_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCount {
    /// Least exponent `A` in the coset (`0 <= A < w`).
    pub representative: u32,
    /// Which of the four cases applies (1-based).
    pub case: u8,
    /// Value given by the published case formula.
    pub stated: u64,
    /// Value of the corrected case formula.
    pub derived: u64,
    /// Value counted element by element.
    pub oracle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerCase {
    pub cosets: Vec<CosetCount>,
    /// `stated == oracle` on every coset.
    pub stated_agree: bool,
    /// `derived == oracle` on every coset.
    pub derived_agree: bool,
    /// Cosets contained in `K_0`, as exponent lists.
    pub subfield_cosets: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub params: Params,
    pub mode: ClassMode,
    /// Exponents of each class, ascending; classes ordered by representative.
    pub classes: Vec<Vec<u32>>,
    pub class_flags: Vec<ClassFlags>,
    pub w: u64,
    pub t: u64,
    #[serde(rename = "formula_N")]
    pub formula_n: Option<u64>,
    /// Classes meeting `K \ K_0`.
    #[serde(rename = "oracle_N")]
    pub oracle_n: u64,
    pub agree: Option<bool>,
    pub per_case: Option<PerCase>,
}

impl ClassReport {
    /// Class containing the exponent `e`.
    pub fn class_of(&self, e: u32) -> Option<&[u32]> {
        self.classes.iter().find(|c| c.binary_search(&e).is_ok()).map(Vec::as_slice)
    }

    /// Classes restricted to exponents whose elements lie outside `K_0`.
    pub fn nonassociative_classes(&self, ring: &SkewRing) -> Vec<Vec<u32>> {
        let ctx = ring.ctx();
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .copied()
                    .filter(|&e| !ring.in_fixed_field(ctx.xi_pow(e as i64)))
                    .collect::<Vec<_>>()
            })
            .filter(|c| !c.is_empty())
            .collect()
    }
}

/// `w = gcd([m]_s, q - 1)`; the norm image `N_m^σ(K^×)` is `⟨ξ^w⟩`.
pub fn norm_exponent(ring: &SkewRing, m: usize) -> u64 {
    let ctx = ring.ctx();
    let order = ctx.order() as u64;
    let s = ring.sigma().exponent();
    gcd(bracket_m_s_mod(ctx.characteristic(), s, m as u32, order), order)
}

/// `N_m^σ(K^×)`, generated by `ξ^w`; ascending by exponent.
pub fn norm_subgroup(ring: &SkewRing, m: usize) -> Vec<Elem> {
    let w = norm_exponent(ring, m);
    let ctx = ring.ctx();
    (0..ctx.order() as u64).step_by(w as usize).map(|e| ctx.xi_pow(e as i64)).collect()
}

/// `{N_m^σ(x) : x ∈ K^×}` evaluated element by element; ascending.
pub fn norm_image(ring: &SkewRing, m: usize) -> Vec<Elem> {
    let ctx = ring.ctx();
    let mut image: Vec<Elem> = ctx.units().map(|x| iter_norm(ctx, ring.sigma(), m as u64, x)).collect();
    image.sort();
    image.dedup();
    image
}

fn check_order(ctx: &FieldCtx, cap: u32) -> Result<()> {
    if ctx.size() > cap {
        return Err(Error::Budget {
            needed: ctx.size() as u128,
            budget: cap as u64,
        });
    }
    Ok(())
}

fn admissible_k(ring: &SkewRing, m: usize, k: usize) -> bool {
    let n = ring.n() as usize;
    k > 1 && k % n == 1 % n && m.is_multiple_of(n) && gcd(k as u64, m as u64) == 1
}

/// Partition of `K^×` from generating isomorphisms: `a ↦ a·N_m^σ(ξ)^{-1}`
/// (`τ = id`, `α = ξ`), `a ↦ τ(a)` (`α = 1`), and for admissible `k > 1`
/// with `b ∈ K_0`, `τ^{-1}(b^k) ↦ b` (`α = 1`).
pub fn partition(ring: &SkewRing, m: usize, mode: ClassMode) -> Result<ClassReport> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let ctx = ring.ctx();
    let order = ctx.order();
    let mut uf = UnionFind::<u32>::new(order as usize);
    let norm_xi = iter_norm(ctx, ring.sigma(), m as u64, ctx.xi());
    for a in ctx.units() {
        let b = ctx.div(a, norm_xi).expect("norm of a unit is a unit");
        uf.union(a.log().unwrap(), b.log().unwrap());
    }
    let taus = mode.taus(ctx.degree());
    for &tau in &taus {
        for a in ctx.units() {
            uf.union(a.log().unwrap(), ctx.apply(tau, a).log().unwrap());
        }
    }
    for k in mode.degrees(m).into_iter().filter(|&k| admissible_k(ring, m, k)) {
        for b in ctx.units().filter(|&b| ring.in_fixed_field(b)) {
            for &tau in &taus {
                let a = ctx.apply(tau.inverse(), ctx.pow(b, k as u64));
                uf.union(a.log().unwrap(), b.log().unwrap());
            }
        }
    }
    let labels = uf.into_labeling();
    Ok(report(ring, m, mode, group_labels(&labels)))
}

fn group_labels(labels: &[u32]) -> Vec<Vec<u32>> {
    let mut by_label: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for (e, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(e as u32);
    }
    let mut classes: Vec<Vec<u32>> = by_label.into_values().collect();
    classes.sort();
    classes
}

/// Partition from testing every ordered pair `(a, b)` for an isomorphism
/// `G_{τ,α,k}: S_a → S_b` allowed by the mode. Requires `q <= 2^12`.
pub fn partition_pairwise(ring: &SkewRing, m: usize, mode: ClassMode, membership: Membership) -> Result<ClassReport> {
    let ctx = ring.ctx();
    check_order(ctx, PAIRWISE_MAX_ORDER)?;
    let algebras: Vec<PetitAlgebra> = ctx
        .units()
        .map(|a| PetitAlgebra::constacyclic(ring, m, a))
        .collect::<Result<_>>()?;
    let taus = mode.taus(ctx.degree());
    let ks = mode.degrees(m);
    let order = ctx.order() as usize;
    let edges: Vec<(u32, u32)> = (0..order * order)
        .into_par_iter()
        .map(|idx| (idx / order, idx % order))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| -> Result<Option<(u32, u32)>> {
            let (sa, sb) = (&algebras[i], &algebras[j]);
            for &tau in &taus {
                for &k in &ks {
                    for alpha in ctx.units() {
                        if is_iso(sa, sb, tau, alpha, k, membership)? {
                            return Ok(Some((i as u32, j as u32)));
                        }
                    }
                }
            }
            Ok(None)
        })
        .filter_map(|e| e.transpose())
        .collect::<Result<_>>()?;
    let mut uf = UnionFind::<u32>::new(order);
    for (i, j) in edges {
        uf.union(i, j);
    }
    Ok(report(ring, m, mode, group_labels(&uf.into_labeling())))
}

fn is_iso(
    sa: &PetitAlgebra,
    sb: &PetitAlgebra,
    tau: FrobPower,
    alpha: Elem,
    k: usize,
    membership: Membership,
) -> Result<bool> {
    let m = sa.m();
    if m == 1 {
        // S_a = S_b = K; τ is the isomorphism.
        return Ok(true);
    }
    let spec = MonomialHomSpec::new(tau, alpha, k)?;
    let verdict = match membership {
        Membership::Criterion => check_monomial_hom(sa, sb, spec)?.verdict,
        Membership::Oracle => brute_force_is_hom(sa, sb, &spec.to_poly(sb))?.verdict,
    };
    Ok(verdict == Verdict::Iso)
}

fn report(ring: &SkewRing, m: usize, mode: ClassMode, classes: Vec<Vec<u32>>) -> ClassReport {
    let ctx = ring.ctx();
    let n = ring.n() as usize;
    let in_k0 = |e: u32| ring.in_fixed_field(ctx.xi_pow(e as i64));
    let class_flags: Vec<ClassFlags> = classes
        .iter()
        .map(|c| {
            let contains_subfield = c.iter().any(|&e| in_k0(e));
            ClassFlags {
                representative: c[0],
                size: c.len(),
                contains_subfield,
                associative_sector: m == 1 || (contains_subfield && m.is_multiple_of(n)),
            }
        })
        .collect();
    let oracle_n = classes.iter().filter(|c| c.iter().any(|&e| !in_k0(e))).count() as u64;
    let counts = count_formula(ring, m);
    let formula_n = match (mode, &counts) {
        (ClassMode::MSigmaEquivalence | ClassMode::MSigmaIsometry, Some(c)) => Some(c.n),
        _ => None,
    };
    ClassReport {
        params: Params::of(ring, m),
        mode,
        classes,
        class_flags,
        w: norm_exponent(ring, m),
        t: counts.as_ref().map_or(0, |c| c.t),
        formula_n,
        oracle_n,
        agree: formula_n.map(|f| f == oracle_n),
        per_case: counts.map(|c| c.per_case),
    }
}

/// The closed-form class count and its four per-coset cases, with each
/// case compared against a direct element count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountFormula {
    #[serde(rename = "N")]
    pub n: u64,
    pub w: u64,
    pub t: u64,
    pub per_case: PerCase,
}

/// `None` unless `s | r` (so that `K_0 = F_{p^s}`).
///
/// With `M = (q-1)/(p^s-1)` and `t = gcd([m]_s, M)`, the published count of
/// `b ∈ ξ^A ⟨ξ^w⟩` outside `F_{p^s}` is: (1) `(q-1)/w` if `n | m`, `a ∉ K_0`;
/// (2) `0` if `n | m`, `a ∈ K_0`; (3) `(q-1)/w` if `n ∤ m`, `t ∤ A`;
/// (4) `(q-1)/w - t` if `n ∤ m`, `t | A`. In case (4) the coset meets
/// `F_{p^s}` in `t(p^s-1)/w` elements, which is the `derived` value.
pub fn count_formula(ring: &SkewRing, m: usize) -> Option<CountFormula> {
    let ctx = ring.ctx();
    let (p, r) = (ctx.characteristic(), ctx.degree());
    let s = match ring.sigma().exponent() {
        0 => r,
        s => s,
    };
    if r % s != 0 {
        return None;
    }
    let q1 = ctx.order() as u64;
    let ps1 = (p as u64).pow(s) - 1;
    let big_m = q1 / ps1;
    let w = norm_exponent(ring, m);
    let t = gcd(bracket_m_s_mod(p, s, m as u32, big_m), big_m);
    let n = ring.n() as usize;
    let n_divides = m.is_multiple_of(n);
    let coset_size = q1 / w;
    let in_k0 = |e: u64| ring.in_fixed_field(ctx.xi_pow(e as i64));

    let mut cosets = Vec::with_capacity(w as usize);
    let mut subfield_cosets = Vec::new();
    for a in 0..w {
        let members: Vec<u64> = (a..q1).step_by(w as usize).collect();
        let inside = members.iter().filter(|&&e| in_k0(e)).count() as u64;
        let oracle = coset_size - inside;
        let (case, stated, derived) = if n_divides {
            if in_k0(a) {
                (2, 0, 0)
            } else {
                (1, coset_size, coset_size)
            }
        } else if a % t != 0 {
            (3, coset_size, coset_size)
        } else {
            (4, coset_size - t, coset_size - t * ps1 / w)
        };
        if oracle == 0 {
            subfield_cosets.push(members.iter().map(|&e| e as u32).collect());
        }
        cosets.push(CosetCount {
            representative: a as u32,
            case,
            stated,
            derived,
            oracle,
        });
    }
    let per_case = PerCase {
        stated_agree: cosets.iter().all(|c| c.stated == c.oracle),
        derived_agree: cosets.iter().all(|c| c.derived == c.oracle),
        cosets,
        subfield_cosets,
    };
    Some(CountFormula {
        n: if n_divides { w - 1 } else { w },
        w,
        t,
        per_case,
    })
}

/// Outcome of [`associative_sector_equivalence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeWay {
    /// `G_{τ,α,k}: S_a → S_b` is an isomorphism (oracle).
    pub isometric: bool,
    /// `G_{τ,α}: S_a → S_{b^k}` is an isomorphism (oracle), `k ≡ 1 mod n`
    /// and `gcd(k, m) = 1`.
    pub equivalent_to_power: bool,
    /// `τ(a) = N_m^σ(α) b^k`, `k ≡ 1 mod n` and `gcd(k, m) = 1`.
    pub norm_equation: bool,
}

/// For `a, b ∈ K_0^×` and `n | m`: evaluates the three equivalent
/// statements independently and returns their common value.
pub fn associative_sector_equivalence(
    ring: &SkewRing,
    m: usize,
    a: Elem,
    b: Elem,
    tau: FrobPower,
    alpha: Elem,
    k: usize,
) -> Result<bool> {
    let w = three_way(ring, m, a, b, tau, alpha, k)?;
    if w.isometric == w.equivalent_to_power && w.equivalent_to_power == w.norm_equation {
        Ok(w.isometric)
    } else {
        Err(Error::StatementsDisagree {
            i: w.isometric,
            ii: w.equivalent_to_power,
            iii: w.norm_equation,
        })
    }
}

/// The three statements of [`associative_sector_equivalence`], unreconciled.
pub fn three_way(ring: &SkewRing, m: usize, a: Elem, b: Elem, tau: FrobPower, alpha: Elem, k: usize) -> Result<ThreeWay> {
    let ctx = ring.ctx();
    let n = ring.n() as usize;
    if a.is_zero() || b.is_zero() || !ring.in_fixed_field(a) || !ring.in_fixed_field(b) || !m.is_multiple_of(n) {
        return Err(Error::Precondition("requires a, b in K_0^× and n | m".into()));
    }
    if k == 0 || k >= m {
        return Err(Error::DegreeOutOfRange { k, lo: 1, hi: m });
    }
    let side = k % n == 1 % n && gcd(k as u64, m as u64) == 1;
    let sa = PetitAlgebra::constacyclic(ring, m, a)?;
    let sb = PetitAlgebra::constacyclic(ring, m, b)?;
    let spec = MonomialHomSpec::new(tau, alpha, k)?;
    let isometric = brute_force_is_hom(&sa, &sb, &spec.to_poly(&sb))?.verdict == Verdict::Iso;

    let bk = ctx.pow(b, k as u64);
    let sbk = PetitAlgebra::constacyclic(ring, m, bk)?;
    let deg1 = MonomialHomSpec::new(tau, alpha, 1)?;
    let equivalent_to_power = side && brute_force_is_hom(&sa, &sbk, &deg1.to_poly(&sbk))?.verdict == Verdict::Iso;

    let norm = iter_norm(ctx, ring.sigma(), m as u64, alpha);
    let norm_equation = side && ctx.apply(tau, a) == ctx.mul(norm, bk);
    // The degree-one closed form is a fourth route to (ii) without the side
    // conditions; it must agree with the oracle.
    debug_assert_eq!(
        check_degree1_hom(&sa, &sbk, tau, alpha)?.verdict.is_hom(),
        ctx.apply(tau, a) == ctx.mul(norm, bk)
    );
    Ok(ThreeWay {
        isometric,
        equivalent_to_power,
        norm_equation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring(p: u32, r: u32, s: u32) -> SkewRing {
        SkewRing::new(Arc::new(FieldCtx::new(p, r).unwrap()), s).unwrap()
    }

    const GRID: [(u32, u32, u32, usize); 10] = [
        (2, 2, 1, 2),
        (2, 2, 1, 3),
        (2, 2, 1, 4),
        (3, 2, 1, 2),
        (3, 2, 1, 3),
        (3, 2, 1, 4),
        (5, 2, 1, 2),
        (5, 2, 1, 3),
        (2, 4, 2, 4),
        (2, 4, 1, 3),
    ];

    fn assert_partition(report: &ClassReport, order: u32) {
        let mut all: Vec<u32> = report.classes.concat();
        all.sort();
        assert_eq!(all, (0..order).collect::<Vec<_>>());
    }

    #[test]
    fn norm_subgroup_two_ways() {
        for (p, r, s, m) in GRID {
            let rg = ring(p, r, s);
            assert_eq!(norm_subgroup(&rg, m), norm_image(&rg, m), "{p} {r} {s} {m}");
        }
        let f9 = ring(3, 2, 1);
        assert_eq!(norm_exponent(&f9, 4), 8);
        assert_eq!(norm_subgroup(&f9, 4), vec![Elem::ONE]);
        // [3]_1 = 13 is prime to 8
        assert_eq!(norm_subgroup(&f9, 3).len(), 8);
    }

    #[test]
    fn trivial_norm_group_gives_singletons_and_galois_orbits() {
        let rg = ring(3, 2, 1);
        let ctx = rg.ctx();
        let rep = partition(&rg, 4, ClassMode::MSigmaEquivalence).unwrap();
        assert_eq!(rep.classes.len(), 8);
        assert!(rep.classes.iter().all(|c| c.len() == 1));
        let eq = partition(&rg, 4, ClassMode::Equivalence).unwrap();
        for a in ctx.units() {
            let mut orbit: Vec<u32> = FrobPower::all(2).map(|t| ctx.apply(t, a).log().unwrap()).collect();
            orbit.sort();
            orbit.dedup();
            assert_eq!(eq.class_of(a.log().unwrap()).unwrap(), &orbit[..]);
        }
    }

    #[test]
    fn generators_match_pairwise_oracle() {
        for (p, r, s, m) in GRID {
            let rg = ring(p, r, s);
            for mode in ClassMode::ALL {
                let gen = partition(&rg, m, mode).unwrap();
                let crit = partition_pairwise(&rg, m, mode, Membership::Criterion).unwrap();
                assert_eq!(gen.classes, crit.classes, "{p} {r} {s} {m} {mode:?}");
                if p * p <= 9 || m <= 3 {
                    let orc = partition_pairwise(&rg, m, mode, Membership::Oracle).unwrap();
                    assert_eq!(gen.classes, orc.classes, "{p} {r} {s} {m} {mode:?}");
                }
                assert_partition(&gen, rg.ctx().order());
            }
        }
    }

    #[test]
    fn modes_refine() {
        let refines = |fine: &ClassReport, coarse: &ClassReport| {
            fine.classes
                .iter()
                .all(|c| c.iter().all(|&e| coarse.class_of(e) == coarse.class_of(c[0])))
        };
        for (p, r, s, m) in GRID {
            let rg = ring(p, r, s);
            let [me, mi, eq, iso] = ClassMode::ALL.map(|mode| partition(&rg, m, mode).unwrap());
            assert!(refines(&me, &mi) && refines(&mi, &iso) && refines(&me, &eq) && refines(&eq, &iso));
        }
    }

    #[test]
    fn isometry_and_equivalence_coincide_off_the_associative_sector() {
        for (p, r, s, m) in GRID {
            let rg = ring(p, r, s);
            let [me, mi, eq, iso] = ClassMode::ALL.map(|mode| partition(&rg, m, mode).unwrap());
            assert_eq!(me.nonassociative_classes(&rg), mi.nonassociative_classes(&rg));
            assert_eq!(eq.nonassociative_classes(&rg), iso.nonassociative_classes(&rg));
        }
        // n ∤ m: the partitions agree everywhere
        let rg = ring(3, 2, 1);
        assert_eq!(
            partition(&rg, 3, ClassMode::MSigmaIsometry).unwrap().classes,
            partition(&rg, 3, ClassMode::MSigmaEquivalence).unwrap().classes
        );
    }

    #[test]
    fn counts_at_reference_tuples() {
        let f = count_formula(&ring(3, 2, 1), 4).unwrap();
        assert_eq!((f.w, f.t, f.n), (8, 4, 7));
        // n | m: case (2) for a ∈ F_3, case (1) otherwise
        assert!(f.per_case.cosets.iter().all(|c| c.case == 1 || c.case == 2));
        assert!(f.per_case.stated_agree);
        assert_eq!(f.per_case.subfield_cosets, vec![vec![0], vec![4]]);

        let g = count_formula(&ring(3, 2, 1), 3).unwrap();
        assert_eq!((g.w, g.t, g.n), (1, 1, 1));
        let c = &g.per_case.cosets[0];
        assert_eq!((c.case, c.stated, c.derived, c.oracle), (4, 7, 6, 6));
        assert!(!g.per_case.stated_agree && g.per_case.derived_agree);

        assert!(count_formula(&ring(2, 3, 2), 3).is_none());
    }

    #[test]
    fn derived_counts_match_on_a_wider_sweep() {
        for (p, r) in [(2, 2), (3, 2), (5, 2), (2, 4), (2, 6), (3, 3), (7, 2)] {
            for s in (1..=r).filter(|s| r % s == 0) {
                let rg = ring(p, r, s);
                for m in 1..=6 {
                    let f = count_formula(&rg, m).unwrap();
                    assert!(f.per_case.derived_agree, "{p} {r} {s} {m}");
                    let n = rg.n() as usize;
                    let cases_1_to_3 = f.per_case.cosets.iter().filter(|c| c.case != 4);
                    for c in cases_1_to_3 {
                        assert_eq!(c.stated, c.oracle);
                    }
                    if m % n != 0 {
                        assert_eq!(partition(&rg, m, ClassMode::MSigmaEquivalence).unwrap().oracle_n, f.n);
                    }
                }
            }
        }
    }

    #[test]
    fn headline_count_is_one_for_full_norm_image() {
        for (p, r, s, m) in GRID {
            let rg = ring(p, r, s);
            if norm_exponent(&rg, m) == 1 {
                let rep = partition(&rg, m, ClassMode::MSigmaEquivalence).unwrap();
                assert_eq!(rep.classes.len(), 1);
                assert_eq!(rep.oracle_n, 1);
                assert_eq!(rep.agree, Some(true));
            }
        }
    }

    #[test]
    fn headline_mismatch_with_two_subfield_cosets() {
        let rg = ring(3, 2, 1);
        let rep = partition(&rg, 4, ClassMode::MSigmaEquivalence).unwrap();
        assert_eq!((rep.formula_n, rep.oracle_n, rep.agree), (Some(7), 6, Some(false)));
    }

    #[test]
    fn subfield_census() {
        for (p, r, s, _) in GRID {
            let rg = ring(p, r, s);
            let inside = rg.ctx().units().filter(|&x| rg.in_fixed_field(x)).count();
            let s0 = gcd(r as u64, s as u64) as u32;
            assert_eq!(inside as u64, (p as u64).pow(s0) - 1);
        }
    }

    #[test]
    fn partition_independent_of_generator() {
        for (p, r, s, m) in [(3, 2, 1, 4), (5, 2, 1, 3), (2, 4, 2, 4)] {
            let base = Arc::new(FieldCtx::new(p, r).unwrap());
            let order = base.order();
            let g = (2..order).find(|&g| gcd(g as u64, order as u64) == 1).unwrap();
            let alt = Arc::new(base.with_generator_power(g).unwrap());
            for mode in ClassMode::ALL {
                let packed = |ctx: &Arc<FieldCtx>| {
                    let rg = SkewRing::new(ctx.clone(), s).unwrap();
                    let mut classes: Vec<Vec<u32>> = partition(&rg, m, mode)
                        .unwrap()
                        .classes
                        .iter()
                        .map(|c| {
                            let mut v: Vec<u32> = c.iter().map(|&e| ctx.to_packed(ctx.xi_pow(e as i64))).collect();
                            v.sort();
                            v
                        })
                        .collect();
                    classes.sort();
                    classes
                };
                assert_eq!(packed(&base), packed(&alt));
            }
        }
    }

    #[test]
    fn three_way_sweep_f9_m4() {
        let rg = ring(3, 2, 1);
        let ctx = rg.ctx();
        let k0: Vec<Elem> = ctx.units().filter(|&x| rg.in_fixed_field(x)).collect();
        let mut trues = 0;
        for &a in &k0 {
            for &b in &k0 {
                for tau in FrobPower::all(2) {
                    for alpha in ctx.units() {
                        for k in 1..4 {
                            if associative_sector_equivalence(&rg, 4, a, b, tau, alpha, k).unwrap() {
                                trues += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(trues > 0);
        assert!(associative_sector_equivalence(&rg, 4, ctx.xi(), Elem::ONE, FrobPower::identity(2), Elem::ONE, 1).is_err());
        assert!(associative_sector_equivalence(&rg, 3, Elem::ONE, Elem::ONE, FrobPower::identity(2), Elem::ONE, 1).is_err());
    }

    #[test]
    fn pairwise_rejects_large_fields() {
        let rg = ring(2, 13, 1);
        assert!(matches!(
            partition_pairwise(&rg, 2, ClassMode::Equivalence, Membership::Criterion),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in ClassMode::ALL {
            assert_eq!(mode.name().parse::<ClassMode>().unwrap(), mode);
            assert_eq!(serde_json::to_string(&mode).unwrap(), format!("\"{}\"", mode.name()));
        }
    }
}
