//! Skew constacyclic codes: principal left ideals `S_a ∘ g` with `g` a monic
//! right divisor of `t^m - a`, read as length-`m` block codes over `K`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::homs::{apply_hom, brute_force_is_hom, PolyHomSpec, Verdict};
use crate::linalg::{in_row_space, rank, rref};
use crate::petit::{AlgebraElem, PetitAlgebra};
use crate::skew_poly::SkewPoly;

/// Default cap on divisor candidates and on enumerated codewords.
pub const DEFAULT_CODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct SkewCode {
    algebra: PetitAlgebra,
    generator: SkewPoly,
    gen_matrix: Vec<Vec<Elem>>,
}

impl SkewCode {
    pub fn algebra(&self) -> &PetitAlgebra {
        &self.algebra
    }

    pub fn generator(&self) -> &SkewPoly {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.algebra.m()
    }

    /// `m - deg g`.
    pub fn dim(&self) -> usize {
        self.gen_matrix.len()
    }

    /// Rows are the coefficient vectors of `t^i ∘ g`, `0 <= i < dim`.
    pub fn gen_matrix(&self) -> &[Vec<Elem>] {
        &self.gen_matrix
    }

    /// `Σ u_i (t^i ∘ g)` for message coefficients `u`.
    pub fn encode(&self, u: &[Elem]) -> AlgebraElem {
        let ctx = self.algebra.ctx();
        let mut word = vec![Elem::ZERO; self.length()];
        for (row, &c) in self.gen_matrix.iter().zip(u) {
            if !c.is_zero() {
                for (x, &y) in word.iter_mut().zip(row) {
                    *x = ctx.add(*x, ctx.mul(c, y));
                }
            }
        }
        self.algebra.elem(&word).expect("codeword has length m")
    }

    pub fn contains(&self, word: &AlgebraElem) -> bool {
        in_row_space(self.algebra.ctx(), &self.gen_matrix, word.coeffs())
    }

    /// Equal row spaces.
    pub fn same_code(&self, other: &SkewCode) -> bool {
        self.algebra.ctx() == other.algebra.ctx()
            && self.length() == other.length()
            && rref(self.algebra.ctx(), self.gen_matrix.clone()) == rref(other.algebra.ctx(), other.gen_matrix.clone())
    }

    /// `t ∘ c` lies in the code for every generator row `c`.
    pub fn is_shift_closed(&self) -> bool {
        let t = self.algebra.t();
        self.gen_matrix.iter().all(|row| {
            let c = self.algebra.elem(row).expect("row has length m");
            self.contains(&self.algebra.mul(&t, &c))
        })
    }

    /// `x ∘ c` lies in the code for every `x` in the prime-field basis of
    /// `S_a` and every codeword `c`.
    pub fn is_left_ideal(&self, budget: u64) -> Result<bool> {
        let basis = self.algebra.prime_field_basis();
        let words = self.codewords(budget)?;
        Ok(words
            .par_iter()
            .all(|c| basis.iter().all(|x| self.contains(&self.algebra.mul(x, c)))))
    }

    fn message_count(&self, budget: u64) -> Result<u64> {
        let q = self.algebra.ctx().size() as u64;
        let count = q.checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if count > budget {
            return Err(Error::Budget {
                needed: (q as u128).pow(self.dim() as u32),
                budget,
            });
        }
        Ok(count)
    }

    fn message(&self, mut idx: u64) -> Vec<Elem> {
        let ctx = self.algebra.ctx();
        let q = ctx.size() as u64;
        (0..self.dim())
            .map(|_| {
                let digit = idx % q;
                idx /= q;
                if digit == 0 {
                    Elem::ZERO
                } else {
                    ctx.xi_pow(digit as i64 - 1)
                }
            })
            .collect()
    }

    /// Every codeword, in message order.
    pub fn codewords(&self, budget: u64) -> Result<Vec<AlgebraElem>> {
        let count = self.message_count(budget)?;
        Ok((0..count).into_par_iter().map(|i| self.encode(&self.message(i))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    /// `counts[w]` codewords of weight `w`, `0 <= w <= m`.
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|i| i + 1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

fn check_constacyclic(alg: &PetitAlgebra) -> Result<()> {
    alg.constacyclic_a().map(|_| ()).ok_or(Error::NotConstacyclic)
}

/// Monic `g` of degree `d` with `(t^m - a) mod_r g = 0`, in candidate order.
pub fn right_divisors(alg: &PetitAlgebra, d: usize, budget: u64) -> Result<Vec<SkewPoly>> {
    check_constacyclic(alg)?;
    let m = alg.m();
    if d == 0 || d >= m {
        return Err(Error::DegreeOutOfRange { k: d, lo: 1, hi: m });
    }
    let ctx = alg.ctx();
    let q = ctx.size() as u64;
    let needed = (q as u128).pow(d as u32);
    if needed > budget as u128 {
        return Err(Error::Budget { needed, budget });
    }
    let f = alg.modulus();
    let ring = alg.ring().clone();
    let found: Vec<SkewPoly> = (0..needed as u64)
        .into_par_iter()
        .map(|idx| ring.poly(monic_candidate(ctx, d, idx)))
        .filter(|g| f.right_rem(g).expect("candidate is monic").is_zero())
        .collect();
    Ok(found)
}

fn monic_candidate(ctx: &FieldCtx, d: usize, mut idx: u64) -> Vec<Elem> {
    let q = ctx.size() as u64;
    let mut coeffs: Vec<Elem> = (0..d)
        .map(|_| {
            let digit = idx % q;
            idx /= q;
            if digit == 0 {
                Elem::ZERO
            } else {
                ctx.xi_pow(digit as i64 - 1)
            }
        })
        .collect();
    coeffs.push(Elem::ONE);
    coeffs
}

/// The code `S_a ∘ g`.
pub fn code_from_generator(alg: &PetitAlgebra, g: &SkewPoly) -> Result<SkewCode> {
    check_constacyclic(alg)?;
    let m = alg.m();
    let deg = g.degree().ok_or(Error::NotADivisor)?;
    if !g.is_monic() || deg >= m || !alg.modulus().right_rem(g)?.is_zero() {
        return Err(Error::NotADivisor);
    }
    let ring = alg.ring();
    let gen_matrix: Vec<Vec<Elem>> = (0..m - deg)
        .map(|i| {
            let row = &ring.monomial(Elem::ONE, i) * g;
            let mut v = row.into_coeffs();
            v.resize(m, Elem::ZERO);
            v
        })
        .collect();
    Ok(SkewCode {
        algebra: alg.clone(),
        generator: g.clone(),
        gen_matrix,
    })
}

/// Exact distribution by enumerating all `q^dim` codewords.
pub fn weight_distribution(code: &SkewCode, budget: u64) -> Result<WeightDistribution> {
    let count = code.message_count(budget)?;
    let m = code.length();
    let counts = (0..count)
        .into_par_iter()
        .fold(
            || vec![0u64; m + 1],
            |mut acc, i| {
                acc[code.encode(&code.message(i)).hamming_weight()] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; m + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(WeightDistribution { counts })
}

/// The image of `code` under a certified isomorphism `S_a → S_b`, generated
/// by the monic element of least degree in the image.
pub fn map_code(target: &PetitAlgebra, spec: &PolyHomSpec, code: &SkewCode) -> Result<SkewCode> {
    let source = code.algebra();
    if brute_force_is_hom(source, target, spec)?.verdict != Verdict::Iso {
        return Err(Error::Precondition("map_code needs a certified isomorphism".into()));
    }
    let ctx = target.ctx();
    let m = target.m();
    // Images of a K-basis span the image: G(λx) = τ(λ)G(x).
    let images: Vec<Vec<Elem>> = code
        .gen_matrix()
        .iter()
        .map(|row| {
            let x = source.elem(row).expect("row has length m");
            let mut v = apply_hom(target, spec, &x).coeffs().to_vec();
            v.reverse();
            v
        })
        .collect();
    // Reversed columns: the last echelon row has the least leading degree.
    let echelon = rref(ctx, images);
    let mut lowest = echelon.last().cloned().ok_or(Error::NotADivisor)?;
    lowest.reverse();
    let g = target.ring().poly(lowest);
    debug_assert!(g.is_monic());
    let mapped = code_from_generator(target, &g)?;
    debug_assert_eq!(mapped.dim(), code.dim());
    debug_assert_eq!(rank(ctx, mapped.gen_matrix.clone()), m - g.degree().unwrap());
    Ok(mapped)
}

/// One row of the code table of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeRow {
    pub field: String,
    pub s: u32,
    pub m: usize,
    pub a: Elem,
    pub g: Vec<Elem>,
    pub dim: usize,
    pub d_min: Option<usize>,
    pub weight_distribution: Vec<u64>,
}

/// Every code `S_a ∘ g` with `1 <= deg g < m`, ordered by degree then
/// candidate order.
pub fn code_table(alg: &PetitAlgebra, budget: u64) -> Result<Vec<CodeRow>> {
    let a = alg.constacyclic_a().ok_or(Error::NotConstacyclic)?;
    let mut rows = Vec::new();
    for d in 1..alg.m() {
        for g in right_divisors(alg, d, budget)? {
            let code = code_from_generator(alg, &g)?;
            let dist = weight_distribution(&code, budget)?;
            rows.push(CodeRow {
                field: alg.ctx().spec(),
                s: alg.sigma().exponent(),
                m: alg.m(),
                a,
                g: g.coeffs().to_vec(),
                dim: code.dim(),
                d_min: dist.min_distance(),
                weight_distribution: dist.counts,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{iter_norm, FrobPower};
    use crate::homs::{check_degree1_hom, MonomialHomSpec};
    use crate::skew_poly::SkewRing;
    use std::sync::Arc;

    fn ring(p: u32, r: u32, s: u32) -> SkewRing {
        SkewRing::new(Arc::new(FieldCtx::new(p, r).unwrap()), s).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn full_space_distribution() {
        let rg = ring(3, 2, 1);
        let alg = PetitAlgebra::constacyclic(&rg, 3, rg.ctx().xi()).unwrap();
        let code = code_from_generator(&alg, &rg.one()).unwrap();
        assert_eq!(code.dim(), 3);
        let dist = weight_distribution(&code, DEFAULT_CODE_BUDGET).unwrap();
        for w in 0..=3u64 {
            assert_eq!(dist.counts[w as usize], binom(3, w) * 8u64.pow(w as u32));
        }
        assert_eq!(dist.min_distance(), Some(1));
    }

    #[test]
    fn linear_divisors_match_norm_equation() {
        for (p, r, s, m) in [(3, 2, 1, 3), (3, 2, 1, 4), (2, 4, 1, 3), (2, 4, 2, 4), (5, 2, 1, 3)] {
            let rg = ring(p, r, s);
            let ctx = rg.ctx();
            for a in ctx.units().step_by(3) {
                let alg = PetitAlgebra::constacyclic(&rg, m, a).unwrap();
                let scanned = right_divisors(&alg, 1, DEFAULT_CODE_BUDGET).unwrap();
                let mut closed: Vec<SkewPoly> = ctx
                    .elements()
                    .filter(|&c| iter_norm(ctx, rg.sigma(), m as u64, c) == a)
                    .map(|c| rg.poly(vec![ctx.neg(c), Elem::ONE]))
                    .collect();
                let mut scanned_sorted = scanned.clone();
                let key = |g: &SkewPoly| g.coeffs().to_vec();
                scanned_sorted.sort_by_key(key);
                closed.sort_by_key(key);
                assert_eq!(scanned_sorted, closed, "{p} {r} {s} {m} {a:?}");
            }
        }
    }

    #[test]
    fn divisors_are_exactly_the_valid_generators() {
        let rg = ring(3, 2, 1);
        let ctx = rg.ctx();
        let alg = PetitAlgebra::constacyclic(&rg, 3, Elem::ONE).unwrap();
        for d in 1..3 {
            let divs = right_divisors(&alg, d, DEFAULT_CODE_BUDGET).unwrap();
            let q = ctx.size() as u64;
            let accepted = (0..q.pow(d as u32))
                .filter(|&i| code_from_generator(&alg, &rg.poly(monic_candidate(ctx, d, i))).is_ok())
                .count();
            assert_eq!(accepted, divs.len());
        }
        assert_eq!(
            code_from_generator(&alg, &rg.poly(vec![ctx.xi(), Elem::ONE])).map(|_| ()),
            if right_divisors(&alg, 1, DEFAULT_CODE_BUDGET)
                .unwrap()
                .contains(&rg.poly(vec![ctx.xi(), Elem::ONE]))
            {
                Ok(())
            } else {
                Err(Error::NotADivisor)
            }
        );
    }

    #[test]
    fn code_invariants_on_small_algebras() {
        for (p, r, s, m) in [(3, 2, 1, 3), (2, 2, 1, 4), (2, 4, 2, 4)] {
            let rg = ring(p, r, s);
            let ctx = rg.ctx();
            for a in ctx.units().step_by(2) {
                let alg = PetitAlgebra::constacyclic(&rg, m, a).unwrap();
                for d in 1..m {
                    for g in right_divisors(&alg, d, DEFAULT_CODE_BUDGET).unwrap() {
                        let code = code_from_generator(&alg, &g).unwrap();
                        assert_eq!(code.dim(), m - d);
                        assert_eq!(rank(ctx, code.gen_matrix().to_vec()), m - d);
                        assert!(code.is_shift_closed());
                        assert!(code.is_left_ideal(DEFAULT_CODE_BUDGET).unwrap());
                        let dist = weight_distribution(&code, DEFAULT_CODE_BUDGET).unwrap();
                        assert_eq!(dist.counts[0], 1);
                        assert_eq!(dist.total(), (ctx.size() as u64).pow(code.dim() as u32));
                    }
                }
            }
        }
    }

    #[test]
    fn degree_one_isometries_preserve_every_weight() {
        let rg = ring(3, 2, 1);
        let ctx = rg.ctx();
        let m = 3;
        let mut mapped = 0;
        for a in ctx.units() {
            let sa = PetitAlgebra::constacyclic(&rg, m, a).unwrap();
            for tau in FrobPower::all(2) {
                for alpha in ctx.units().step_by(3) {
                    let norm = iter_norm(ctx, rg.sigma(), m as u64, alpha);
                    let b = ctx.div(ctx.apply(tau, a), norm).unwrap();
                    let sb = PetitAlgebra::constacyclic(&rg, m, b).unwrap();
                    let cert = check_degree1_hom(&sa, &sb, tau, alpha).unwrap();
                    assert_eq!(cert.verdict, Verdict::Iso);
                    for d in 1..m {
                        for g in right_divisors(&sa, d, DEFAULT_CODE_BUDGET).unwrap() {
                            let code = code_from_generator(&sa, &g).unwrap();
                            let image = map_code(&sb, &cert.spec, &code).unwrap();
                            assert_eq!(image.dim(), code.dim());
                            for c in code.codewords(DEFAULT_CODE_BUDGET).unwrap() {
                                let gc = apply_hom(&sb, &cert.spec, &c);
                                assert_eq!(gc.hamming_weight(), c.hamming_weight());
                                assert!(image.contains(&gc));
                            }
                            assert_eq!(
                                weight_distribution(&code, DEFAULT_CODE_BUDGET).unwrap(),
                                weight_distribution(&image, DEFAULT_CODE_BUDGET).unwrap()
                            );
                            mapped += 1;
                        }
                    }
                }
            }
        }
        assert!(mapped > 0);
    }

    #[test]
    fn identity_maps_a_code_to_itself() {
        let rg = ring(2, 2, 1);
        let alg = PetitAlgebra::constacyclic(&rg, 4, Elem::ONE).unwrap();
        let id = MonomialHomSpec::new(FrobPower::identity(2), Elem::ONE, 1).unwrap().to_poly(&alg);
        for d in 1..4 {
            for g in right_divisors(&alg, d, DEFAULT_CODE_BUDGET).unwrap() {
                let code = code_from_generator(&alg, &g).unwrap();
                let image = map_code(&alg, &id, &code).unwrap();
                assert!(image.same_code(&code));
                assert_eq!(image.generator(), code.generator());
            }
        }
    }

    #[test]
    fn map_code_rejects_non_isomorphisms() {
        let rg = ring(3, 2, 1);
        let alg = PetitAlgebra::constacyclic(&rg, 3, Elem::ONE).unwrap();
        let code = code_from_generator(&alg, &rg.one()).unwrap();
        let zero = PolyHomSpec {
            tau: FrobPower::identity(2),
            image: alg.zero(),
        };
        assert!(map_code(&alg, &zero, &code).is_err());
    }

    #[test]
    fn budgets_are_enforced() {
        let rg = ring(5, 2, 1);
        let alg = PetitAlgebra::constacyclic(&rg, 4, Elem::ONE).unwrap();
        assert!(matches!(right_divisors(&alg, 3, 1000), Err(Error::Budget { .. })));
        let code = code_from_generator(&alg, &rg.one()).unwrap();
        assert!(matches!(weight_distribution(&code, 1000), Err(Error::Budget { .. })));
        assert!(matches!(right_divisors(&alg, 4, DEFAULT_CODE_BUDGET), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn table_rows_are_consistent() {
        let rg = ring(3, 2, 1);
        let alg = PetitAlgebra::constacyclic(&rg, 3, rg.ctx().xi_pow(4)).unwrap();
        let rows = code_table(&alg, DEFAULT_CODE_BUDGET).unwrap();
        for row in &rows {
            assert_eq!(row.dim, 3 + 1 - row.g.len());
            assert_eq!(row.weight_distribution.iter().sum::<u64>(), 9u64.pow(row.dim as u32));
        }
    }
}
