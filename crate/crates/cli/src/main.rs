//! `skewpetit`: field inspection, Petit algebras, homomorphism search,
//! classification, code tables and the verification scorecard.
//!
//! Exit codes: 0 ok, 1 fail cells, 2 usage error, 3 budget exceeded.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use skewpetit::classify::{partition, ClassMode, ClassReport};
use skewpetit::codes::{code_table, DEFAULT_CODE_BUDGET};
use skewpetit::encoding::{format_elem, format_vec, parse_unit, parse_vec};
use skewpetit::homs::{
    check_monomial_hom, enumerate_homs, is_weight_preserving, HomCertificate, HomEnumeration, HomSearch, Restrict,
    DEFAULT_BUDGET,
};
use skewpetit::petit::PetitAlgebra;
use skewpetit::verify::{parse_grid, run_suite, Suite, SuiteSpec, DEFAULT_VERIFY_BUDGET};
use skewpetit::{Error, FieldCtx, SkewRing};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "skewpetit", version, about = "Skew polynomial rings, Petit algebras and skew constacyclic codes")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Field as "p^r", e.g. "3^2".
    #[arg(long)]
    field: String,
    /// σ(x) = x^{p^s}.
    #[arg(long)]
    s: u32,
    /// Degree of t^m - a.
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters, modulus and optionally the exponent table.
    FieldInfo {
        #[arg(long)]
        field: String,
        /// Print the exponent ↔ polynomial-basis dictionary.
        #[arg(long)]
        show_table: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Structure of S_f for f = t^m - a, or for an explicit monic f.
    Algebra {
        #[arg(long)]
        field: String,
        #[arg(long)]
        s: u32,
        #[arg(long, required_unless_present = "f")]
        m: Option<usize>,
        /// Constant a (exponent encoding).
        #[arg(long, required_unless_present = "f", conflicts_with = "f")]
        a: Option<String>,
        /// Monic modulus, comma-separated coefficients low to high.
        #[arg(long)]
        f: Option<String>,
    },
    /// Homomorphisms S_a → S_b.
    Homs {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Search every image of t, not only monomials.
        #[arg(long)]
        all: bool,
        /// Also decide Hamming-weight preservation for each map.
        #[arg(long)]
        weight: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Equivalence or isometry classes of the constants a ∈ K^×.
    Classify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value = "m-sigma-equivalence")]
        mode: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Skew constacyclic codes of S_a with their weight distributions.
    Codes {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_CODE_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run verification suites over a parameter grid.
    Verify {
        /// Suite ids, comma-separated; default all.
        #[arg(long)]
        suite: Option<String>,
        /// Tuples "p,r,s,m;..."; default the standard grid.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::FieldInfo { field, show_table, format } => field_info(&field, show_table, format),
        Command::Algebra { field, s, m, a, f } => algebra(&field, s, m, a.as_deref(), f.as_deref()),
        Command::Homs {
            alg,
            a,
            b,
            all,
            weight,
            budget,
        } => homs(&alg, &a, &b, all, weight, budget),
        Command::Classify { alg, mode, format } => classify(&alg, &mode, format),
        Command::Codes { alg, a, budget, format } => codes(&alg, &a, budget, format),
        Command::Verify {
            suite,
            grid,
            budget,
            format,
        } => verify(suite.as_deref(), grid.as_deref(), budget, format),
    }
}

fn ring(field: &str, s: u32) -> Result<SkewRing, Failure> {
    let ctx = FieldCtx::from_spec(field)?;
    Ok(SkewRing::new(Arc::new(ctx), s)?)
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(ExitCode::SUCCESS)
}

fn emit_csv(rows: Vec<Vec<String>>) -> Outcome {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn field_info(spec: &str, show_table: bool, format: Format) -> Outcome {
    let ctx = FieldCtx::from_spec(spec)?;
    let table: Vec<Value> = if show_table {
        ctx.elements()
            .map(|x| json!({"exponent": format_elem(x), "packed": ctx.to_packed(x), "coords": ctx.coords(x)}))
            .collect()
    } else {
        Vec::new()
    };
    match format {
        Format::Json => {
            let mut out = json!({
                "schema_version": SCHEMA_VERSION,
                "field": ctx.spec(),
                "p": ctx.characteristic(),
                "r": ctx.degree(),
                "q": ctx.size(),
                "modulus": ctx.modulus(),
                "generator_power": ctx.generator_power(),
            });
            if show_table {
                out["table"] = Value::Array(table);
            }
            emit_json(&out)
        }
        Format::Csv => {
            let mut rows = vec![vec!["exponent".into(), "packed".into(), "coords".into()]];
            for x in ctx.elements() {
                let coords = ctx.coords(x).iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                rows.push(vec![format_elem(x), ctx.to_packed(x).to_string(), coords]);
            }
            emit_csv(rows)
        }
    }
}

fn algebra(field: &str, s: u32, m: Option<usize>, a: Option<&str>, f: Option<&str>) -> Outcome {
    let ring = ring(field, s)?;
    let ctx = ring.ctx();
    let alg = match (a, f) {
        (Some(a), _) => {
            let m = m.ok_or_else(|| Failure::Usage("--m is required with --a".into()))?;
            if m == 0 {
                return Err(Error::ZeroDegree.into());
            }
            PetitAlgebra::constacyclic(&ring, m, parse_unit(ctx, a)?)?
        }
        (None, Some(f)) => PetitAlgebra::new(&ring.poly(parse_vec(ctx, f)?))?,
        (None, None) => return Err(Failure::Usage("give either --a or --f".into())),
    };
    let witness = alg.associator_scan();
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "field": ctx.spec(),
        "s": ring.sigma().exponent(),
        "n": ring.n(),
        "m": alg.m(),
        "modulus": alg.modulus().coeffs(),
        "a": alg.constacyclic_a(),
        "associative": witness.is_none(),
    });
    if let Ok(expected) = alg.is_associative() {
        out["associative_criterion"] = json!(expected);
    }
    if let Some(w) = witness {
        out["associator_witness"] = json!(w);
    }
    emit_json(&out)
}

#[derive(Serialize)]
struct HomsOutput<'a> {
    schema_version: u32,
    field: String,
    s: u32,
    m: usize,
    a: skewpetit::Elem,
    b: skewpetit::Elem,
    restrict: &'a str,
    #[serde(flatten)]
    result: HomEnumeration,
}

fn homs(args: &AlgebraArgs, a: &str, b: &str, all: bool, weight: bool, budget: u64) -> Outcome {
    let ring = ring(&args.field, args.s)?;
    let ctx = ring.ctx();
    if args.m == 0 {
        return Err(Error::ZeroDegree.into());
    }
    let (a, b) = (parse_unit(ctx, a)?, parse_unit(ctx, b)?);
    let source = PetitAlgebra::constacyclic(&ring, args.m, a)?;
    let target = PetitAlgebra::constacyclic(&ring, args.m, b)?;
    let mut result = if all {
        HomSearch::new(&ring, args.m, budget)?.homs(a, b)?
    } else {
        enumerate_homs(&source, &target, Restrict::Monomial, budget)?
    };
    for cert in &mut result.homs {
        annotate(&source, &target, cert, weight, budget)?;
    }
    emit_json(&HomsOutput {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec(),
        s: ring.sigma().exponent(),
        m: args.m,
        a,
        b,
        restrict: if all { "all" } else { "monomial" },
        result,
    })
}

fn annotate(
    source: &PetitAlgebra,
    target: &PetitAlgebra,
    cert: &mut HomCertificate,
    weight: bool,
    budget: u64,
) -> Result<(), Failure> {
    if let Some(mono) = cert.spec.as_monomial() {
        if mono.k >= 1 && mono.k < source.m() {
            cert.structure_flags = check_monomial_hom(source, target, mono)?.structure_flags;
        }
    }
    if weight {
        cert.weight_preserving = Some(is_weight_preserving(source, target, &cert.spec, budget, 0));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput {
    schema_version: u32,
    #[serde(flatten)]
    report: ClassReport,
}

fn classify(args: &AlgebraArgs, mode: &str, format: Format) -> Outcome {
    let ring = ring(&args.field, args.s)?;
    let mode: ClassMode = mode.parse()?;
    let report = partition(&ring, args.m, mode)?;
    match format {
        Format::Json => emit_json(&ClassifyOutput {
            schema_version: SCHEMA_VERSION,
            report,
        }),
        Format::Csv => {
            let mut rows = vec![["mode", "representative", "size", "members", "contains_subfield", "associative_sector"]
                .map(String::from)
                .to_vec()];
            for (c, flags) in report.classes.iter().zip(&report.class_flags) {
                rows.push(vec![
                    mode.name().to_string(),
                    flags.representative.to_string(),
                    flags.size.to_string(),
                    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                    flags.contains_subfield.to_string(),
                    flags.associative_sector.to_string(),
                ]);
            }
            emit_csv(rows)
        }
    }
}

fn codes(args: &AlgebraArgs, a: &str, budget: u64, format: Format) -> Outcome {
    let ring = ring(&args.field, args.s)?;
    if args.m == 0 {
        return Err(Error::ZeroDegree.into());
    }
    let alg = PetitAlgebra::constacyclic(&ring, args.m, parse_unit(ring.ctx(), a)?)?;
    let rows = code_table(&alg, budget)?;
    match format {
        Format::Json => emit_json(&json!({"schema_version": SCHEMA_VERSION, "codes": rows})),
        Format::Csv => {
            let mut out = vec![["field", "s", "m", "a", "g", "dim", "d_min", "weight_distribution"]
                .map(String::from)
                .to_vec()];
            for r in rows {
                out.push(vec![
                    r.field,
                    r.s.to_string(),
                    r.m.to_string(),
                    format_elem(r.a),
                    format_vec(&r.g),
                    r.dim.to_string(),
                    r.d_min.map_or(String::new(), |d| d.to_string()),
                    r.weight_distribution.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                ]);
            }
            emit_csv(out)
        }
    }
}

fn verify(suite: Option<&str>, grid: Option<&str>, budget: u64, format: Format) -> Outcome {
    let suites = match suite {
        Some(list) => list.split(',').map(|s| s.trim().parse::<Suite>()).collect::<Result<Vec<_>, _>>()?,
        None => Suite::ALL.to_vec(),
    };
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => skewpetit::verify::default_grid(),
    };
    let card = run_suite(&SuiteSpec { suites, grid, budget })?;
    match format {
        Format::Json => {
            emit_json(&card)?;
        }
        Format::Csv => {
            emit_csv(card.to_csv_records().into_iter().map(Vec::from).collect())?;
        }
    }
    Ok(if card.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
