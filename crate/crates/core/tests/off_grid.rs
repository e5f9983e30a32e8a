//! Closed-form criteria against their oracles on fields outside the verify grid.

use std::sync::Arc;

use proptest::prelude::*;
use skewpetit::codes::{code_from_generator, right_divisors};
use skewpetit::homs::{brute_force_is_hom, check_monomial_hom, MonomialHomSpec};
use skewpetit::petit::{is_power_assoc_monomial, Monomial, PetitAlgebra, PowerAssocMode};
use skewpetit::{FieldCtx, FrobPower, SkewRing};

const FIELDS: [(u32, u32, u32); 6] = [(2, 3, 1), (3, 3, 1), (3, 3, 2), (7, 2, 1), (2, 4, 1), (2, 6, 2)];

fn ring(idx: usize) -> SkewRing {
    let (p, r, s) = FIELDS[idx];
    SkewRing::new(Arc::new(FieldCtx::new(p, r).unwrap()), s).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(96)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn monomial_criterion_matches_oracle(
        field in 0..FIELDS.len(),
        m in 2usize..=3,
        ea in any::<u32>(),
        eb in any::<u32>(),
        ealpha in any::<u32>(),
        tau_s in any::<u32>(),
        k_pick in any::<usize>(),
    ) {
        let ring = ring(field);
        let ctx = ring.ctx();
        let order = ctx.order();
        let r = ctx.degree();
        let (a, b) = (ctx.xi_pow((ea % order) as i64), ctx.xi_pow((eb % order) as i64));
        let source = PetitAlgebra::constacyclic(&ring, m, a).unwrap();
        let target = PetitAlgebra::constacyclic(&ring, m, b).unwrap();
        let spec = MonomialHomSpec::new(
            FrobPower::new(tau_s % r, r),
            ctx.xi_pow((ealpha % order) as i64),
            1 + k_pick % (m - 1),
        ).unwrap();
        let criterion = check_monomial_hom(&source, &target, spec).unwrap();
        let oracle = brute_force_is_hom(&source, &target, &spec.to_poly(&target)).unwrap();
        prop_assert_eq!(criterion.verdict, oracle.verdict);
    }

    #[test]
    fn power_associativity_criterion_matches_oracle(
        field in 0..FIELDS.len(),
        m in 2usize..=4,
        eb in any::<u32>(),
        ealpha in any::<u32>(),
        k_pick in any::<usize>(),
    ) {
        let ring = ring(field);
        let ctx = ring.ctx();
        let alg = PetitAlgebra::constacyclic(&ring, m, ctx.xi_pow((eb % ctx.order()) as i64)).unwrap();
        let z = Monomial::new(ctx.xi_pow((ealpha % ctx.order()) as i64), 1 + k_pick % (m - 1)).unwrap();
        prop_assert_eq!(
            is_power_assoc_monomial(&alg, z, PowerAssocMode::Criterion).unwrap(),
            is_power_assoc_monomial(&alg, z, PowerAssocMode::Oracle).unwrap()
        );
    }

    #[test]
    fn associativity_criterion_matches_scan(
        field in 0..FIELDS.len(),
        m in 1usize..=3,
        ea in any::<u32>(),
    ) {
        let ring = ring(field);
        let ctx = ring.ctx();
        let alg = PetitAlgebra::constacyclic(&ring, m, ctx.xi_pow((ea % ctx.order()) as i64)).unwrap();
        prop_assert_eq!(alg.is_associative().unwrap(), alg.associator_scan().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn divisor_codes_have_expected_dimension(
        field in 0..3usize,
        m in 2usize..=3,
        ea in any::<u32>(),
    ) {
        let ring = ring(field);
        let ctx = ring.ctx();
        let alg = PetitAlgebra::constacyclic(&ring, m, ctx.xi_pow((ea % ctx.order()) as i64)).unwrap();
        for d in 1..m {
            for g in right_divisors(&alg, d, 1_000_000).unwrap() {
                let code = code_from_generator(&alg, &g).unwrap();
                prop_assert_eq!(code.dim(), m - d);
                prop_assert!(code.is_left_ideal(1_000_000).unwrap());
            }
        }
    }
}
