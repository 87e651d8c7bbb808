//! `sepprob` — estimate separability/PPT probabilities of random density
//! matrices by quasirandom sampling, and evaluate the exact closed forms
//! they are checked against.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 exact-check
//! failure.

use std::fs::{File, OpenOptions};
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use sepprob::catalog;
use sepprob::estimator::{
    resume, run, write_sidecar, CheckpointMeta, Counters, RunOptions, CSV_HEADER,
};
use sepprob::exact;
use sepprob::plot::{render_ratio_svg, RatioPoint};
use sepprob::qrng::SequenceSpec;
use sepprob::rmt::{Measure, NumberField, Scenario};

#[derive(Parser)]
#[command(
    name = "sepprob",
    version,
    about = "Separability/PPT probabilities of random density matrices via quasirandom sampling"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run (or resume) a sampling estimation, streaming checkpoints to CSV.
    Estimate(EstimateArgs),
    /// Evaluate closed forms and verify exact identities.
    Exact(ExactArgs),
    /// Render a checkpoint CSV as an SVG ratio plot.
    Plot(PlotArgs),
}

#[derive(Args)]
struct EstimateArgs {
    /// Named scenario from the catalog (see `--scenario list`).
    #[arg(long)]
    scenario: Option<String>,

    /// Custom scenario `nA,nB,field,measure[,k|x]`,
    /// e.g. `2,3,complex,induced,0` or `2,2,real,osz,0.5`.
    #[arg(long, conflicts_with = "scenario")]
    custom: Option<String>,

    /// Sequence offset alpha0 in [0, 1).
    #[arg(long, default_value_t = 0.5)]
    alpha0: f64,

    /// End of the sample index range (accepts scientific notation, e.g. 1e7).
    #[arg(long, value_parser = parse_count)]
    n: Option<u64>,

    /// Start of the sample index range.
    #[arg(long, value_parser = parse_count, default_value = "0")]
    start: u64,

    /// Checkpoint interval in samples (default: scenario-dependent).
    #[arg(long, value_parser = parse_count)]
    interval: Option<u64>,

    /// Worker threads (0 = all available cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Checkpoint CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Resume from a checkpoint CSV (its sidecar supplies the parameters).
    #[arg(long, conflicts_with_all = ["scenario", "custom"])]
    resume: Option<PathBuf>,

    /// Also classify by the realignment criterion.
    #[arg(long)]
    realign: bool,

    /// Conjecture to divide estimates by (registry name, or `none`).
    #[arg(long)]
    conjecture: Option<String>,
}

#[derive(Args)]
struct ExactArgs {
    /// Which evaluation to run.
    #[arg(value_enum, default_value_t = ExactWhich::All)]
    which: ExactWhich,

    /// Dyson-like parameter for `psep` (1 real, 2 complex, 4 quaternionic).
    #[arg(long)]
    alpha: Option<f64>,

    /// Also write the table as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactWhich {
    All,
    Psep,
    Chi,
    Registry,
    Xstate,
}

#[derive(Args)]
struct PlotArgs {
    /// Checkpoint CSV produced by `estimate`.
    #[arg(long)]
    csv: PathBuf,

    /// Conjecture to recompute the ratio against (default: the ratio column).
    #[arg(long)]
    conjecture: Option<String>,

    /// Output SVG path (default: the CSV path with `.svg` appended).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if !(f.is_finite() && f >= 0.0 && f <= u64::MAX as f64) {
        return Err(format!("`{s}` is out of range"));
    }
    if (f.round() - f).abs() > 1e-6 * f.abs().max(1.0) {
        return Err(format!("`{s}` is not an integer count"));
    }
    Ok(f.round() as u64)
}

fn parse_custom(spec: &str) -> Result<Scenario> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() < 4 {
        bail!("--custom needs `nA,nB,field,measure[,k|x]`");
    }
    let n_a: usize = parts[0].parse().context("bad nA")?;
    let n_b: usize = parts[1].parse().context("bad nB")?;
    let field = match parts[2] {
        "real" => NumberField::Real,
        "complex" => NumberField::Complex,
        other => bail!("unknown field `{other}` (real|complex)"),
    };
    let measure = match parts[3] {
        "induced" | "hs" => {
            let k = parts
                .get(4)
                .map(|s| s.parse::<u32>())
                .transpose()
                .context("bad k")?
                .unwrap_or(0);
            Measure::Induced { k }
        }
        "osz" | "bures" => {
            let x = parts
                .get(4)
                .map(|s| s.parse::<f64>())
                .transpose()
                .context("bad x")?
                .unwrap_or(0.5);
            Measure::Osz { x }
        }
        other => bail!("unknown measure `{other}` (induced|osz)"),
    };
    Ok(Scenario::new(n_a, n_b, field, measure)?)
}

fn resolve_conjecture(name: &str) -> Result<(String, f64)> {
    let entry = exact::constant(name).ok_or_else(|| anyhow!("unknown constant `{name}`"))?;
    Ok((entry.name.to_string(), entry.value))
}

fn cmd_estimate(args: EstimateArgs) -> Result<i32> {
    if args.scenario.as_deref() == Some("list") {
        for row in catalog::CATALOG {
            println!(
                "{:24} d={:4} default conjecture: {}",
                row.name,
                row.scenario.variate_count(),
                row.default_conjecture.unwrap_or("-")
            );
        }
        return Ok(0);
    }

    // Assemble (scenario, id, alpha0, interval, realign, conjecture, start,
    // base counters, output path) from flags or from a resume point.
    let (scenario, scenario_id, alpha0, interval, realign, conjecture, start, base, out_path);
    if let Some(resume_path) = &args.resume {
        let resumed = resume(resume_path)?;
        scenario = resumed.meta.params;
        scenario_id = resumed.meta.scenario.clone();
        alpha0 = resumed.meta.alpha0;
        interval = args.interval.unwrap_or(resumed.meta.interval);
        realign = args.realign || resumed.meta.realign;
        conjecture = match &args.conjecture {
            Some(s) if s == "none" => None,
            Some(s) => Some(resolve_conjecture(s)?),
            None => resumed
                .meta
                .conjecture
                .as_deref()
                .map(resolve_conjecture)
                .transpose()?,
        };
        start = resumed.n;
        base = resumed.counters;
        out_path = Some(args.out.clone().unwrap_or_else(|| resume_path.clone()));
    } else {
        let named = match (&args.scenario, &args.custom) {
            (Some(name), _) => {
                let row = catalog::by_name(name)
                    .ok_or_else(|| anyhow!("unknown scenario `{name}` (try `--scenario list`)"))?;
                Some(row)
            }
            (None, Some(_)) => None,
            (None, None) => bail!("one of --scenario, --custom or --resume is required"),
        };
        scenario = match named {
            Some(row) => row.scenario,
            None => parse_custom(args.custom.as_deref().unwrap())?,
        };
        scenario_id = named
            .map(|r| r.name.to_string())
            .unwrap_or_else(|| "custom".to_string());
        alpha0 = args.alpha0;
        interval = args
            .interval
            .or(named.map(|r| r.default_interval))
            .unwrap_or(1_000_000);
        realign = args.realign;
        conjecture = match &args.conjecture {
            Some(s) if s == "none" => None,
            Some(s) => Some(resolve_conjecture(s)?),
            None => named
                .and_then(|r| r.default_conjecture)
                .map(resolve_conjecture)
                .transpose()?,
        };
        start = args.start;
        base = Counters::ZERO;
        out_path = args.out.clone();
    }

    let n_end = args.n.ok_or_else(|| anyhow!("--n is required"))?;
    if n_end < start {
        bail!("--n ({n_end}) must be >= the start index ({start})");
    }

    let d = scenario.variate_count();
    let spec = SequenceSpec::new(d, alpha0)?;

    let mut csv: Option<File> = match &out_path {
        Some(p) => {
            if args.resume.is_some() && p.exists() {
                Some(OpenOptions::new().append(true).open(p)?)
            } else {
                let mut f = File::create(p)?;
                writeln!(f, "{CSV_HEADER}")?;
                Some(f)
            }
        }
        None => None,
    };
    if let Some(p) = &out_path {
        let meta = CheckpointMeta {
            scenario: scenario_id.clone(),
            params: scenario,
            d,
            alpha0,
            realign,
            conjecture: conjecture.as_ref().map(|(n, _)| n.clone()),
            interval,
        };
        write_sidecar(p, &meta)?;
    }

    let opts = RunOptions {
        scenario_id: scenario_id.clone(),
        interval,
        threads: args.threads,
        realign,
        conjecture: conjecture.clone(),
        base,
    };
    eprintln!(
        "estimating `{scenario_id}` over [{start}, {n_end}) with d={d}, alpha0={alpha0}, interval={interval}"
    );
    let outcome = run(&scenario, &spec, start, n_end, &opts, |cp| {
        if let Some(f) = csv.as_mut() {
            writeln!(f, "{}", cp.csv_row())?;
        }
        Ok(())
    })?;

    let c = outcome.counters;
    println!("samples: {} (skipped {})", c.total, c.skipped);
    if c.total > 0 {
        println!("p_ppt: {} ({}/{})", c.p_ppt(), c.ppt, c.total);
        if c.ppt > 0 {
            println!("det-greater fraction among PPT: {}", c.det_greater_frac());
        }
        if realign {
            println!("realignment-entangled fraction: {}", c.realign_frac());
            println!("bound-entangled fraction: {}", c.bound_frac());
        }
        if let Some((name, value)) = &conjecture {
            println!("{name}: {value}");
            println!("ratio p_ppt/{name}: {}", c.p_ppt() / value);
        }
    }
    Ok(0)
}

fn write_table(csv: &Option<PathBuf>, content: &str) -> Result<()> {
    if let Some(p) = csv {
        std::fs::write(p, content)?;
    }
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> Result<i32> {
    let mut failed = false;

    if matches!(args.which, ExactWhich::Psep | ExactWhich::All) {
        println!("# Hilbert-Schmidt separability/PPT probability P(alpha)");
        let targets = [
            (1.0, Some(29.0 / 64.0)),
            (2.0, Some(8.0 / 33.0)),
            (4.0, Some(26.0 / 323.0)),
        ];
        let list: Vec<(f64, Option<f64>)> = match args.alpha {
            Some(a) => vec![(
                a,
                targets.iter().find(|(t, _)| *t == a).and_then(|(_, w)| *w),
            )],
            None => targets.to_vec(),
        };
        for (alpha, want) in list {
            let p = exact::psep_hs(alpha)?;
            match want {
                Some(w) => {
                    let ok = (p - w).abs() <= 1e-6;
                    failed |= !ok;
                    println!(
                        "alpha={alpha}: {p:.12}  target {w:.12}  {}",
                        if ok { "PASS" } else { "FAIL" }
                    );
                }
                None => println!("alpha={alpha}: {p:.12}"),
            }
        }
    }

    if matches!(args.which, ExactWhich::Chi | ExactWhich::All) {
        println!("# Separability functions");
        let mut worst_dk = 0.0f64;
        for d in [2u32, 4, 6] {
            for i in 1..10 {
                let z = i as f64 / 10.0;
                let diff = (exact::chi_dk(d, 0, z)? - exact::chi_master(d as f64, z.sqrt())?).abs();
                worst_dk = worst_dk.max(diff);
            }
        }
        let ok = worst_dk <= 1e-10;
        failed |= !ok;
        println!(
            "chi_dk(d,0,z) vs master formula, d in {{2,4,6}}: max |diff| = {worst_dk:.3e}  {}",
            if ok { "PASS" } else { "FAIL" }
        );
        let mut worst_10d = 0.0f64;
        for i in 1..20 {
            let eps = i as f64 / 20.0;
            worst_10d =
                worst_10d.max((exact::sep_function_10d(eps)? - exact::chi_master(1.0, eps)?).abs());
        }
        let ok = worst_10d <= 1e-8;
        failed |= !ok;
        println!(
            "dilogarithmic 10-dim function vs master d=1: max |diff| = {worst_10d:.3e}  {}",
            if ok { "PASS" } else { "FAIL" }
        );
        for d in [1.0, 2.0, 4.0] {
            println!("chi_{d}(1) = {}", exact::chi_master(d, 1.0)?);
        }
    }

    if matches!(args.which, ExactWhich::Registry | ExactWhich::All) {
        println!(
            "# Constants registry ({} entries)",
            exact::constants_registry().len()
        );
        println!(
            "{:36} {:34} {:22} {:11} source",
            "name", "closed form", "value", "status"
        );
        for e in exact::constants_registry() {
            println!(
                "{:36} {:34} {:<22} {:11} {}",
                e.name, e.closed_form, e.value, e.status, e.source
            );
        }
        write_table(&args.csv, &exact::registry_csv())?;
    }

    if matches!(args.which, ExactWhich::Xstate | ExactWhich::All) {
        println!("# X-state integral identities (tolerance 1e-8 relative)");
        let report = exact::verify_xstate_identities()?;
        let mut csv_body = String::from("name,computed,expected,rel_err,pass\n");
        for c in &report.checks {
            println!(
                "{:24} computed {:.12e}  expected {:.12e}  rel {:.2e}  {}",
                c.name,
                c.computed,
                c.expected,
                c.rel_err,
                if c.pass { "PASS" } else { "FAIL" }
            );
            csv_body.push_str(&format!(
                "{},{},{},{},{}\n",
                c.name, c.computed, c.expected, c.rel_err, c.pass
            ));
        }
        if args.which == ExactWhich::Xstate {
            write_table(&args.csv, &csv_body)?;
        }
        failed |= !report.all_pass();
    }

    Ok(if failed { 3 } else { 0 })
}

fn cmd_plot(args: PlotArgs) -> Result<i32> {
    let body = std::fs::read_to_string(&args.csv)
        .with_context(|| format!("reading {}", args.csv.display()))?;
    let mut lines = body.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| anyhow!("empty checkpoint CSV"))?;
    if header != CSV_HEADER {
        bail!("unexpected CSV header `{header}`");
    }
    let divisor = args
        .conjecture
        .as_deref()
        .map(resolve_conjecture)
        .transpose()?;
    let mut points = Vec::new();
    let mut title = String::new();
    for line in lines {
        let cp = sepprob::estimator::Checkpoint::parse_csv_row(line)?;
        let ratio = match &divisor {
            Some((_, v)) => cp.counters.p_ppt() / v,
            None => cp.conjecture_ratio.ok_or_else(|| {
                anyhow!("no ratio column in the CSV; pass --conjecture to compute one")
            })?,
        };
        title = match &divisor {
            Some((name, _)) => format!("{} / {}", cp.scenario, name),
            None => format!("{} / attached conjecture", cp.scenario),
        };
        points.push(RatioPoint { n: cp.n, ratio });
    }
    let svg = render_ratio_svg(&points, &title)?;
    let out = args.out.clone().unwrap_or_else(|| {
        let mut os = args.csv.as_os_str().to_os_string();
        os.push(".svg");
        PathBuf::from(os)
    });
    std::fs::write(&out, svg)?;
    println!("wrote {}", out.display());
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Estimate(a) => cmd_estimate(a),
        Cmd::Exact(a) => cmd_exact(a),
        Cmd::Plot(a) => cmd_plot(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
