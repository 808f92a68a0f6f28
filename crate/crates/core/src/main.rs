use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use quatlat::analyze::{classify, AnalysisOptions, Classification, LatticeReport, DEFAULT_THETA_BOUND};
use quatlat::lattice::{construct_quadratic, construct_quartic, Construction};
use quatlat::quaternion::{is_maximal, is_order, maximal_order, order_disc_norm};
use quatlat::record::{parse_gram, CheckLine, EmbeddingRecord, OutputRecord};
use quatlat::scan::{constants, pell_census, scan_quadratic, scan_quartic, ScanOptions};
use quatlat::{field::RealField, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "quatlat",
    version,
    about = "Lattices from maximal orders of quaternion algebras over totally real fields"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Bits of precision for the floating-point generator matrix.
    #[arg(long, env = "QUATLAT_PRECISION", default_value_t = 128, global = true)]
    precision: u32,
    /// Omit timing fields so identical invocations give identical output.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Largest norm counted in the theta series.
    #[arg(long, default_value_t = DEFAULT_THETA_BOUND, global = true)]
    theta_bound: u32,
    /// Enumeration time budget in seconds.
    #[arg(long, default_value_t = 60, global = true)]
    time_budget: u64,
    /// Worker threads for scans; 0 uses all cores.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, analyze and classify one lattice.
    Construct {
        #[arg(value_enum)]
        family: ConstructFamily,
        /// `D` for quadratic fields, `m` for simplest quartic fields.
        parameter: u64,
    },
    /// Analyze a Gram matrix file.
    Analyze { file: PathBuf },
    /// Run a family scan.
    Scan {
        #[command(subcommand)]
        family: ScanFamily,
    },
    /// Check the reference constructions against the shipped fixtures.
    Verify,
    /// Density constants truncated at `P`.
    Constants {
        #[arg(long = "P", short = 'P', default_value_t = 100_000)]
        p_bound: u64,
    },
    /// Negative Pell census up to `X`.
    Census {
        #[arg(long = "x", short = 'x', default_value_t = 100_000)]
        x: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructFamily {
    Quadratic,
    Quartic,
}

#[derive(Debug, Subcommand)]
enum ScanFamily {
    /// `D = s^2 + 4` for odd `s <= smax`.
    Quadratic {
        #[arg(long)]
        smax: u64,
        /// Also scan `D = s^2 + 1` for even `s`.
        #[arg(long = "include-s2plus1")]
        include_s2plus1: bool,
    },
    /// `F_m` for `m <= mmax`.
    Quartic {
        #[arg(long)]
        mmax: u64,
    },
}

const E8_FIXTURE: &str = include_str!("../fixtures/e8_sqrt5.gram");
const BW16_FIXTURE: &str = include_str!("../fixtures/bw16_m20.gram");

struct Ctx {
    format: Format,
    precision: u32,
    timing: bool,
    analysis: AnalysisOptions,
    jobs: usize,
    argv: Vec<String>,
}

impl Ctx {
    fn record(&self) -> OutputRecord {
        OutputRecord { command: self.argv.clone(), ..Default::default() }
    }

    fn emit(&self, mut r: OutputRecord, start: Instant) {
        if self.timing {
            r.timing_ms = Some(start.elapsed().as_millis() as u64);
        }
        match self.format {
            Format::Json => println!("{}", r.to_json()),
            Format::Text => print!("{}", r.to_text()),
        }
    }
}

fn construct_record(ctx: &Ctx, c: &Construction) -> Result<OutputRecord> {
    let gram = c.lattice.gram();
    let mut r = ctx.record().with_construction(c, &gram)?;
    let gen = c.lattice.generator_matrix(ctx.precision)?;
    r.embedding = Some(EmbeddingRecord {
        precision_bits: gen.precision_bits(),
        relative_deviation: gen.relative_deviation(&gram),
    });
    r.report = Some(classify(&gram, &ctx.analysis)?);
    Ok(r)
}

fn summary(r: &LatticeReport) -> String {
    let show = |x: Option<String>| x.unwrap_or_else(|| "unknown".into());
    format!(
        "det {} min {} kissing {}",
        r.det,
        show(r.min_norm.map(|v| v.to_string())),
        show(r.kissing.map(|v| v.to_string()))
    )
}

fn check(name: &str, pass: bool, detail: String) -> CheckLine {
    CheckLine { name: name.into(), pass, detail }
}

fn verify_checks(ctx: &Ctx) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    let e8 = construct_quadratic(5)?;
    let g = e8.lattice.gram();
    let fixture = parse_gram(E8_FIXTURE)?;
    out.push(check("D=5 Gram equals the 8x8 fixture", g == fixture, format!("det {}", g.det())));
    let rep = classify(&g, &ctx.analysis)?;
    out.push(check("D=5 is E8", rep.classification == Classification::E8, summary(&rep)));

    let q6 = construct_quartic(6)?;
    let rep6 = classify(&q6.lattice.gram(), &ctx.analysis)?;
    out.push(check("m=6 is E8xE8", rep6.classification == Classification::E8xE8, summary(&rep6)));

    let q20 = construct_quartic(20)?;
    let rep20 = classify(&q20.lattice.gram(), &ctx.analysis)?;
    let fix20 = classify(&parse_gram(BW16_FIXTURE)?, &ctx.analysis)?;
    out.push(check("m=20 is BarnesWall16", rep20.classification == Classification::BarnesWall16, summary(&rep20)));
    out.push(check(
        "m=20 invariants equal the 16x16 fixture",
        (&rep20.det, rep20.min_norm, rep20.kissing) == (&fix20.det, fix20.min_norm, fix20.kissing),
        format!("fixture {}", summary(&fix20)),
    ));

    for (name, c) in [("D=5", &e8), ("m=6", &q6), ("m=20", &q20)] {
        let exact = c.lattice.gram().det();
        let formula = c.lattice.det_via_formula()?;
        out.push(check(&format!("{name} determinant formula"), exact == formula, format!("{exact} vs {formula}")));
        let dev = c.lattice.generator_matrix(ctx.precision)?.relative_deviation(&c.lattice.gram());
        out.push(check(&format!("{name} embedding deviation"), dev <= 1e-9, format!("{dev:e}")));
    }

    let fields = [2u64, 3, 5, 7, 13, 17]
        .into_iter()
        .map(RealField::quadratic)
        .chain([6u64, 20].into_iter().map(RealField::simplest_quartic));
    for f in fields {
        let f = f?;
        let o = maximal_order(&f)?;
        let ok = is_order(o.generators())? && is_maximal(&o)?;
        out.push(check(
            &format!("{} maximal order", f.name()),
            ok,
            format!("disc norm {}", order_disc_norm(&o)?.value),
        ));
    }
    Ok(out)
}

fn run(cli: Cli, argv: Vec<String>) -> Result<()> {
    let ctx = Ctx {
        format: cli.format,
        precision: cli.precision,
        timing: !cli.no_timing,
        analysis: AnalysisOptions { theta_bound: cli.theta_bound, time_budget: Duration::from_secs(cli.time_budget) },
        jobs: cli.jobs,
        argv,
    };
    let start = Instant::now();
    match cli.command {
        Command::Construct { family, parameter } => {
            let c = match family {
                ConstructFamily::Quadratic => construct_quadratic(parameter)?,
                ConstructFamily::Quartic => construct_quartic(parameter)?,
            };
            let r = construct_record(&ctx, &c)?;
            ctx.emit(r, start);
        }
        Command::Analyze { file } => {
            let gram = parse_gram(&std::fs::read_to_string(&file)?)?;
            let mut r = ctx.record();
            r.gram = gram.to_i64();
            r.report = Some(classify(&gram, &ctx.analysis)?);
            ctx.emit(r, start);
        }
        Command::Scan { family } => {
            let opts = ScanOptions { analysis: ctx.analysis, jobs: ctx.jobs, timing: ctx.timing };
            let items = match family {
                ScanFamily::Quadratic { smax, include_s2plus1 } => scan_quadratic(smax, include_s2plus1, &opts)?,
                ScanFamily::Quartic { mmax } => scan_quartic(mmax, &opts)?,
            };
            for item in items {
                let mut r = ctx.record();
                r.scan = Some(item);
                ctx.emit(r, start);
            }
        }
        Command::Verify => {
            let checks = verify_checks(&ctx)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            let mut r = ctx.record();
            r.checks = Some(checks);
            ctx.emit(r, start);
            if failed > 0 {
                return Err(Error::InvalidParameter(format!("{failed} verification checks failed")));
            }
        }
        Command::Constants { p_bound } => {
            let mut r = ctx.record();
            r.constants = Some(constants(p_bound)?);
            ctx.emit(r, start);
        }
        Command::Census { x } => {
            let mut r = ctx.record();
            r.census = Some(pell_census(x)?);
            ctx.emit(r, start);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
