use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tsr_core::census::{self, CensusOptions, CountReport};
use tsr_core::poly::monic_irreducibles;
use tsr_core::verify;
use tsr_core::{Error, Field, MatrixFq, Poly, TsrSpec, TsrState};

/// Transformation shift registers over finite fields.
///
/// Exit codes: 0 success, 1 mathematical disagreement, 2 usage error,
/// 3 enumeration guard exceeded. Set TSR_GUARD_OVERRIDE=1 to relax the
/// soft enumeration guards.
#[derive(Parser)]
#[command(name = "tsr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial from the block companion matrix and from g^m psi_B(X^n/g)
    Charpoly {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive count next to its closed form
    Census(CensusArgs),
    /// Clock a register and report the period of the starting state
    Sequence {
        #[command(flatten)]
        spec: SpecArgs,
        /// Words separated by ';', coordinates by ','
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a named verification suite (or "all")
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Field F_q: "p", "p^r" or "p^r:<modulus>"
    #[arg(long)]
    q: String,
    /// Checked against the size of B when given
    #[arg(long)]
    m: Option<usize>,
    /// Checked against the number of feedback scalars when given
    #[arg(long)]
    n: Option<usize>,
    /// Feedback scalars c_1,...,c_{n-1}
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    c: String,
    /// Feedback matrix, rows separated by ';'
    #[arg(long = "B", alias = "b")]
    b: Option<String>,
    /// Leading scalar of the general form; used with --A instead of --B
    #[arg(long)]
    c0: Option<String>,
    #[arg(long = "A")]
    a: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum What {
    Tsri,
    Image,
    Fibers,
    Carlitz,
    Alpha,
    Compose,
    Primitive,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(value_enum)]
    what: What,
    #[arg(long)]
    q: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Irreducible polynomial (fibers) or inner polynomial g (alpha)
    #[arg(long)]
    poly: Option<String>,
    /// Numerator of the substitution (carlitz)
    #[arg(long, default_value = "x^2")]
    e: String,
    /// Denominator of the substitution (carlitz)
    #[arg(long)]
    g: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report elapsed_ms as 0 so output is reproducible byte for byte
    #[arg(long)]
    no_timing: bool,
}

enum Failure {
    Disagreement,
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationTooLarge { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Charpoly { spec, format } => charpoly(&spec, format),
        Command::Census(args) => run_census(&args),
        Command::Sequence { spec, state, steps, format } => sequence(&spec, &state, steps, format),
        Command::Verify { suite, jobs, format } => run_verify(&suite, jobs, format),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn options(jobs: usize) -> CensusOptions {
    CensusOptions {
        jobs: jobs.max(1),
        relax_guards: std::env::var("TSR_GUARD_OVERRIDE").is_ok_and(|v| v == "1"),
    }
}

fn build_spec(args: &SpecArgs) -> Result<TsrSpec, Failure> {
    let field = Field::parse(&args.q)?;
    let c = field.parse_elem_list(&args.c)?;
    let spec = match (&args.b, &args.c0, &args.a) {
        (Some(b), None, None) => TsrSpec::new(c, MatrixFq::parse(&field, b)?)?,
        (None, Some(c0), Some(a)) => {
            TsrSpec::from_general(field.parse_elem(c0)?, &c, &MatrixFq::parse(&field, a)?)?
        }
        _ => return Err(Failure::Usage("give either --B, or --c0 together with --A".into())),
    };
    if args.m.is_some_and(|m| m != spec.m()) || args.n.is_some_and(|n| n != spec.n()) {
        return Err(Failure::Usage(format!(
            "--m/--n disagree with the register (m={}, n={})",
            spec.m(),
            spec.n()
        )));
    }
    Ok(spec)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn charpoly(args: &SpecArgs, format: Format) -> Outcome {
    let spec = build_spec(args)?;
    let direct = spec.char_poly_direct();
    let structural = spec.char_poly_structural();
    let agree = direct == structural;
    let class = spec.classify()?;
    match format {
        Format::Json => print_json(&json!({
            "spec": spec.to_json(),
            "direct": direct.to_string(),
            "structural": structural.to_string(),
            "agree": agree,
            "irreducible": class.irreducible,
            "primitive": class.primitive,
        })),
        Format::Csv => {
            println!("direct,structural,agree,irreducible,primitive");
            println!("{direct},{structural},{agree},{},{}", class.irreducible, class.primitive);
        }
        Format::Text => {
            println!("direct:      {direct}");
            println!("structural:  {structural}");
            println!("agree:       {agree}");
            println!("irreducible: {}", class.irreducible);
            println!("primitive:   {}", class.primitive);
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn sequence(args: &SpecArgs, state: &str, steps: u64, format: Format) -> Outcome {
    let spec = build_spec(args)?;
    let field = spec.field().clone();
    let start = TsrState::parse(&field, state)?;
    let mut states = vec![start.clone()];
    let mut current = start.clone();
    for _ in 0..steps {
        current = spec.step(&current, 1)?;
        states.push(current.clone());
    }
    let period = spec.period(&start)?;
    let text: Vec<String> = states.iter().map(|s| s.format(&field)).collect();
    match format {
        Format::Json => print_json(&json!({ "states": text, "period": period.to_string() })),
        Format::Csv => {
            println!("step,state");
            for (i, s) in text.iter().enumerate() {
                println!("{i},\"{s}\"");
            }
            println!("period,{period}");
        }
        Format::Text => {
            for (i, s) in text.iter().enumerate() {
                println!("{i}: {s}");
            }
            println!("period: {period}");
        }
    }
    Ok(())
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{flag} is required for this census")))
}

fn run_census(args: &CensusArgs) -> Outcome {
    let field = Field::parse(&args.q)?;
    let opts = options(args.jobs);
    let mut reports: Vec<CountReport> = Vec::new();
    match args.what {
        What::Tsri => reports.push(census::count_tsri_brute(need(args.m, "--m")?, need(args.n, "--n")?, &field, &opts)?),
        What::Primitive => {
            reports.push(census::count_primitive_brute(need(args.m, "--m")?, need(args.n, "--n")?, &field, &opts)?)
        }
        What::Image => {
            reports.push(census::count_image_order_n(need(args.m, "--m")?, need(args.n, "--n")?, &field, &opts)?)
        }
        What::Compose => {
            reports.push(census::count_composition_forms(need(args.m, "--m")?, need(args.n, "--n")?, &field, &opts)?)
        }
        What::Fibers => match &args.poly {
            Some(p) => reports.push(census::fiber_count(&Poly::parse(&field, p)?, &opts)?),
            None => {
                for p in monic_irreducibles(&field, need(args.m, "--m or --poly")?) {
                    reports.push(census::fiber_count(&p, &opts)?);
                }
            }
        },
        What::Carlitz => {
            let e = Poly::parse(&field, &args.e)?;
            let g = Poly::parse(&field, args.g.as_deref().ok_or_else(|| Failure::Usage("--g is required".into()))?)?;
            reports.push(census::count_substitution_irreducibles(&e, &g, need(args.m, "--m")?, &opts)?);
        }
        What::Alpha => match &args.poly {
            Some(g) => reports.push(census::count_alpha_targets(&Poly::parse(&field, g)?, need(args.m, "--m")?, &opts)?),
            None => reports.push(census::count_relaxed(need(args.m, "--m")?, need(args.n, "--n or --poly")?, &field, &opts)?),
        },
    }
    if args.no_timing {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    match args.format {
        Format::Json => reports.iter().for_each(print_json),
        Format::Csv => {
            println!("{}", CountReport::CSV_HEADER);
            reports.iter().for_each(|r| println!("{}", r.csv_row()));
        }
        Format::Text => reports.iter().for_each(|r| println!("{}", describe(r))),
    }
    if reports.iter().all(CountReport::consistent) {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}

fn describe(r: &CountReport) -> String {
    let p = &r.params;
    let mut line = format!("{} q={}", r.census, p.q);
    for (k, v) in [("m", p.m), ("n", p.n)] {
        if let Some(v) = v {
            line += &format!(" {k}={v}");
        }
    }
    for (k, v) in [("e", &p.e), ("g", &p.g), ("poly", &p.poly)] {
        if let Some(v) = v {
            line += &format!(" {k}={v}");
        }
    }
    line += &format!(": brute {}", r.brute);
    if let Some(image) = r.image {
        line += &format!(", image {image}");
    }
    match &r.formula {
        Some(f) => line += &format!(", formula {} ({})", f.value, if r.matches { "match" } else { "MISMATCH" }),
        None => line += ", no formula",
    }
    if let Some(main) = &r.main_term {
        line += &format!(", main term {}", main.value);
    }
    line + &format!(", {} enumerated, {} ms", r.enumerated, r.elapsed_ms)
}

fn run_verify(suite: &str, jobs: usize, format: Format) -> Outcome {
    if suite != "all" && !verify::SUITES.contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite {suite:?}; expected one of {}, all",
            verify::SUITES.join(", ")
        )));
    }
    let checks = verify::run_suite(suite, &options(jobs))?;
    let passed = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => print_json(&json!({ "suite": suite, "checks": checks, "passed": passed })),
        Format::Csv => {
            println!("suite,check,passed,detail");
            for c in &checks {
                println!("{},\"{}\",{},\"{}\"", c.suite, c.name, c.passed, c.detail);
            }
        }
        Format::Text => {
            for c in &checks {
                println!("{} {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{} checks, {failed} failed", checks.len());
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Disagreement)
    }
}
