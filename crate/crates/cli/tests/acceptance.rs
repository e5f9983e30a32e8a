//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use skewpetit::classify::{partition, three_way, ClassMode};
use skewpetit::codes::{code_from_generator, map_code, right_divisors, weight_distribution, DEFAULT_CODE_BUDGET};
use skewpetit::homs::{
    brute_force_is_hom, enumerate_homs, is_weight_preserving, nonmonomial_structure_check, PolyHomSpec, Restrict,
    Verdict, DEFAULT_BUDGET,
};
use skewpetit::petit::{is_power_assoc_monomial, Monomial, PetitAlgebra, PowerAssocMode};
use skewpetit::verify::{default_grid, run_cell, run_suite, Status, Suite, SuiteSpec};
use skewpetit::{Elem, FieldCtx, FrobPower, SkewRing};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ring(p: u32, r: u32, s: u32) -> SkewRing {
    SkewRing::new(Arc::new(FieldCtx::new(p, r).unwrap()), s).unwrap()
}

fn within(label: &str, start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{label} took {took:?}, limit {limit:?}"));
    }
    Ok(())
}

fn power_assoc_biconditional() -> Check {
    let start = Instant::now();
    let mut cases = 0u64;
    for (p, r) in [(3, 2), (5, 2)] {
        let ring = ring(p, r, 1);
        let ctx = ring.ctx();
        for m in 2..=4 {
            for b in ctx.units() {
                let alg = PetitAlgebra::constacyclic(&ring, m, b).unwrap();
                for k in 1..m {
                    for alpha in ctx.units() {
                        let z = Monomial::new(alpha, k).unwrap();
                        let crit = is_power_assoc_monomial(&alg, z, PowerAssocMode::Criterion).unwrap();
                        let oracle = is_power_assoc_monomial(&alg, z, PowerAssocMode::Oracle).unwrap();
                        if crit != oracle {
                            return Err(format!("{p}^{r} m={m} b={b:?} α={alpha:?} k={k}: criterion {crit}, oracle {oracle}"));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    within("sweep", start, Duration::from_secs(60))?;
    Ok(format!("{cases} tuples agree in {:?}", start.elapsed()))
}

fn hom_oracle_equivalence() -> Check {
    let mut cells = 0;
    for tuple in default_grid() {
        let start = Instant::now();
        let cell = run_cell(Suite::HomClassification, tuple, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if cell.status != Status::Pass {
            return Err(format!("{tuple}: {:?} {:?}", cell.status, cell.note));
        }
        within(&tuple.to_string(), start, Duration::from_secs(300))?;
        cells += 1;
    }
    Ok(format!("{cells} tuples, zero disagreements"))
}

fn only_degree_one_homs() -> Check {
    let card = run_suite(&SuiteSpec {
        suites: vec![Suite::WeightOne],
        grid: default_grid(),
        budget: DEFAULT_BUDGET,
    })
    .map_err(|e| e.to_string())?;
    if let Some(bad) = card.cells.iter().find(|c| c.status != Status::Pass) {
        return Err(format!("{}: {:?} {:?}", bad.tuple, bad.status, bad.note));
    }
    let f4 = ring(2, 2, 1);
    let source = PetitAlgebra::constacyclic(&f4, 3, f4.ctx().xi()).unwrap();
    let result = enumerate_homs(&source, &source, Restrict::All, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if result.candidates != 2 * 64 {
        return Err(format!("F_4 m=3 searched {} candidates", result.candidates));
    }
    for cert in &result.homs {
        if cert.spec.as_monomial().is_none_or(|mono| mono.k != 1) {
            return Err(format!("F_4 m=3: non degree-one hom {:?}", cert.spec.image));
        }
    }
    Ok(format!("{} cells; F_4 m=3 exhaustive over {} maps", card.cells.len(), result.candidates))
}

fn subgroup(ctx: &FieldCtx, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut seen = BTreeSet::from([Elem::ONE]);
    let mut frontier = vec![Elem::ONE];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ctx.mul(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn example_without_isomorphism() -> Check {
    let ring = ring(3, 2, 1);
    let ctx = ring.ctx();
    let (a, b) = (ctx.xi_pow(1), ctx.xi_pow(5));
    let sa = PetitAlgebra::constacyclic(&ring, 4, a).unwrap();
    let sb = PetitAlgebra::constacyclic(&ring, 4, b).unwrap();
    for (x, y, dir) in [(&sa, &sb, "a→b"), (&sb, &sa, "b→a")] {
        let result = enumerate_homs(x, y, Restrict::All, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if result.homs.iter().any(|c| c.verdict == Verdict::Iso) {
            return Err(format!("isomorphism found {dir}"));
        }
    }
    for mode in ClassMode::ALL {
        let report = partition(&ring, 4, mode).map_err(|e| e.to_string())?;
        if report.class_of(1) == report.class_of(5) {
            return Err(format!("ξ and ξ^5 share a class under {}", mode.name()));
        }
    }
    let whole: BTreeSet<Elem> = ctx.units().collect();
    let big = ctx.xi_pow(40);
    if subgroup(ctx, &[a, big]) != whole || subgroup(ctx, &[b, big]) != whole {
        return Err("⟨a, ξ^40⟩ or ⟨b, ξ^40⟩ is proper".into());
    }
    Ok("no isomorphism either way; distinct classes in all four modes".into())
}

fn nonmonomial_example() -> Check {
    let ring = ring(5, 2, 1);
    let ctx = ring.ctx();
    let four = ctx.from_int(4);
    let alg = PetitAlgebra::constacyclic(&ring, 4, four).unwrap();
    let one = Elem::ONE;
    let image = alg.elem(&[Elem::ZERO, one, Elem::ZERO, one]).unwrap();
    let spec = PolyHomSpec {
        tau: FrobPower::identity(2),
        image: image.clone(),
    };
    let cert = brute_force_is_hom(&alg, &alg, &spec).map_err(|e| e.to_string())?;
    if !cert.verdict.is_hom() {
        return Err("t + t^3 is not a homomorphism".into());
    }
    let weight = is_weight_preserving(&alg, &alg, &spec, DEFAULT_BUDGET, 0);
    if weight.preserving {
        return Err("t + t^3 preserves weight".into());
    }
    if !nonmonomial_structure_check(ring.n(), 4, &image) {
        return Err("structure check rejects t + t^3".into());
    }
    if alg.associator_scan().is_some() || !alg.is_associative().map_err(|e| e.to_string())? {
        return Err("target is not associative".into());
    }
    Ok(format!("verdict {:?}; weight counterexample {:?}", cert.verdict, weight.counterexample))
}

fn coset_counts() -> Check {
    let card = run_suite(&SuiteSpec {
        suites: vec![Suite::Counting],
        grid: default_grid(),
        budget: DEFAULT_BUDGET,
    })
    .map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let mut flagged = 0;
    for cell in &card.cells {
        match cell.status {
            Status::Pass | Status::Skipped => {}
            Status::Flagged => {
                flagged += 1;
                let listed = cell.witness.as_ref().and_then(|w| w.get("subfield_cosets")).is_some();
                if !listed {
                    problems.push(format!("{} flagged without subfield cosets", cell.tuple));
                }
            }
            Status::Fail => problems.push(format!(
                "{}: {} {}",
                cell.tuple,
                cell.note.as_deref().unwrap_or(""),
                cell.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
            )),
        }
    }
    if problems.is_empty() {
        Ok(format!("{} cells, {flagged} flagged", card.cells.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn partitions_coincide() -> Check {
    for tuple in default_grid() {
        let ring = tuple.ring().map_err(|e| e.to_string())?;
        let classes = |mode| -> Result<Vec<Vec<u32>>, String> {
            let report = partition(&ring, tuple.m, mode).map_err(|e| e.to_string())?;
            Ok(report.nonassociative_classes(&ring))
        };
        for (iso, eq) in [
            (ClassMode::MSigmaIsometry, ClassMode::MSigmaEquivalence),
            (ClassMode::Isometry, ClassMode::Equivalence),
        ] {
            if classes(iso)? != classes(eq)? {
                return Err(format!("{tuple}: {} differs from {}", iso.name(), eq.name()));
            }
        }
    }
    Ok(format!("{} tuples", default_grid().len()))
}

fn codes_preserved() -> Check {
    let start = Instant::now();
    let ring = ring(3, 2, 1);
    let m = 3;
    let report = partition(&ring, m, ClassMode::Equivalence).map_err(|e| e.to_string())?;
    let ctx = ring.ctx();
    let mut mapped = 0;
    for class in &report.classes {
        for &ea in class {
            for &eb in class {
                let sa = PetitAlgebra::constacyclic(&ring, m, ctx.xi_pow(ea as i64)).unwrap();
                let sb = PetitAlgebra::constacyclic(&ring, m, ctx.xi_pow(eb as i64)).unwrap();
                let homs = enumerate_homs(&sa, &sb, Restrict::Monomial, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let Some(iso) = homs.homs.iter().find(|c| c.verdict == Verdict::Iso) else {
                    return Err(format!("no isomorphism ξ^{ea} → ξ^{eb} inside one class"));
                };
                for d in 1..=2 {
                    for g in right_divisors(&sa, d, DEFAULT_CODE_BUDGET).map_err(|e| e.to_string())? {
                        let code = code_from_generator(&sa, &g).map_err(|e| e.to_string())?;
                        let image = map_code(&sb, &iso.spec, &code).map_err(|e| e.to_string())?;
                        let wa = weight_distribution(&code, DEFAULT_CODE_BUDGET).map_err(|e| e.to_string())?;
                        let wb = weight_distribution(&image, DEFAULT_CODE_BUDGET).map_err(|e| e.to_string())?;
                        if (code.length(), code.dim(), wa.min_distance()) != (image.length(), image.dim(), wb.min_distance())
                            || wa != wb
                        {
                            return Err(format!("ξ^{ea} → ξ^{eb}, g = {:?}: parameters change", g.coeffs()));
                        }
                        mapped += 1;
                    }
                }
            }
        }
    }
    within("code sweep", start, Duration::from_secs(120))?;
    Ok(format!("{mapped} codes mapped in {:?}", start.elapsed()))
}

fn three_statements_agree() -> Check {
    let ring = ring(3, 2, 1);
    let ctx = ring.ctx();
    let m = 4;
    let prime: Vec<Elem> = ctx.units().filter(|&x| ring.in_fixed_field(x)).collect();
    let mut tuples = 0;
    for &a in &prime {
        for &b in &prime {
            for tau in FrobPower::all(2) {
                for alpha in ctx.units() {
                    for k in (1..m).filter(|k| k % 2 == 1) {
                        let w = three_way(&ring, m, a, b, tau, alpha, k).map_err(|e| e.to_string())?;
                        if w.isometric != w.equivalent_to_power || w.equivalent_to_power != w.norm_equation {
                            return Err(format!("a={a:?} b={b:?} τ={tau:?} α={alpha:?} k={k}: {w:?}"));
                        }
                        tuples += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{tuples} tuples"))
}

fn scorecard_is_deterministic() -> Check {
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_skewpetit"))
            .args(["--jobs", jobs, "verify"])
            .output()
            .map_err(|e| e.to_string())?;
        Ok(out.stdout)
    };
    let (one, four) = (run("1")?, run("4")?);
    if one.is_empty() || one != four {
        return Err("scorecards differ between --jobs 1 and --jobs 4".into());
    }
    Ok(format!("{} identical bytes", one.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("power-associativity criterion equals oracle", power_assoc_biconditional),
        ("monomial hom criterion equals oracle on the grid", hom_oracle_equivalence),
        ("nonassociative homs are degree-one monomials", only_degree_one_homs),
        ("ξ and ξ^5 over F_9, m=4 are not isomorphic", example_without_isomorphism),
        ("t + t^3 over F_25 is a non-weight-preserving hom", nonmonomial_example),
        ("per-case coset counts match enumeration", coset_counts),
        ("isometry and equivalence partitions coincide", partitions_coincide),
        ("isomorphisms preserve code parameters", codes_preserved),
        ("three associative-sector statements agree", three_statements_agree),
        ("scorecard is byte-identical across --jobs", scorecard_is_deterministic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
