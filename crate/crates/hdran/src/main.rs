//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 on runtime or validation failure, 2 on
//! usage errors (clap's default).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hdran::experiments::{
    self, concentration_probe, run_replicates, validate_against_theory, Measurement,
};
use hdran::generator::Network;
use hdran::io::csv::{format_float, CsvTable, Field};
use hdran::io::{load_network, save_network, svg};
use hdran::metrics::{class_lorenz_gini, clustering_profile, degree_histogram};
use hdran::theory::{self, fractions, theory_report};

#[derive(Parser)]
#[command(
    name = "hdran",
    about = "Generate random Apollonian networks, measure them, and check the measurements against closed forms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_index(s: &str) -> Result<u32, String> {
    let k: u32 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if k < 3 {
        return Err(format!("network index must be at least 3, got {k}"));
    }
    Ok(k)
}

#[derive(Args)]
struct GenerateArgs {
    /// Network index (clique size), at least 3
    #[arg(long, value_parser = parse_index)]
    k: u32,
    /// Number of evolution steps
    #[arg(long)]
    n: u64,
    /// Generator seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output network file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    /// Input network file
    #[arg(long = "in")]
    input: PathBuf,
    /// Prefix for the emitted CSV files
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long, value_parser = parse_index)]
    k: u32,
    #[arg(long)]
    n: u64,
    /// Cap on the number of degree classes in the report maps
    #[arg(long, default_value_t = 200)]
    degree_cap: u64,
    /// Optional JSON output path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, value_parser = parse_index)]
    k: u32,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Highest degree class compared against the limit fractions
    #[arg(long, default_value_t = 20)]
    degree_cap: u64,
    /// Also run the concentration probe (slower)
    #[arg(long)]
    probe: bool,
    /// Output CSV for the validation rows
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WienerArgs {
    #[arg(long, value_parser = parse_index, default_value = "3")]
    k: u32,
    /// Steps per replicate (defaults to the long scale under --long)
    #[arg(long)]
    n: Option<u64>,
    /// Replicates (defaults to the long scale under --long)
    #[arg(long)]
    reps: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the full-scale study (n=2000, 500 replicates)
    #[arg(long)]
    long: bool,
    /// Prefix for samples.csv and histogram.csv
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args)]
struct LorenzArgs {
    /// Network index; repeat the flag to overlay several curves
    #[arg(long, value_parser = parse_index, required = true)]
    k: Vec<u32>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output SVG path
    #[arg(long)]
    svg: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network and write it to a file
    Generate(GenerateArgs),
    /// Measure a stored network and emit CSV tables
    Stats(StatsArgs),
    /// Evaluate every closed form at (k, n)
    Theory(TheoryArgs),
    /// Replicate networks and compare measurements against the closed forms
    Validate(ValidateArgs),
    /// Replicated exact Wiener index study with a normality verdict
    WienerStudy(WienerArgs),
    /// Averaged empirical Lorenz curves as SVG
    Lorenz(LorenzArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Theory(args) => cmd_theory(args),
        Command::Validate(args) => cmd_validate(args),
        Command::WienerStudy(args) => cmd_wiener_study(args),
        Command::Lorenz(args) => cmd_lorenz(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let net = Network::generate(args.k, args.n, args.seed)?;
    save_network(&net, &args.out)?;
    let census = net.clique_census();
    println!(
        "k={} n={} seed={} vertices={} edges={} active_cliques={} total_depth={}",
        args.k,
        args.n,
        args.seed,
        net.vertex_count(),
        net.edge_count(),
        census.active_count,
        census.total_depth,
    );
    println!("wrote {}", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(args: StatsArgs) -> Result<ExitCode> {
    let net = load_network(&args.input)?;
    let k = net.index_k();
    let n = net.time_n();
    let hist = degree_histogram(&net);

    let mut degree_csv = CsvTable::new(&["j", "count_all", "count_newcomers", "fraction", "theory_b"]);
    for (&j, &count_all) in &hist.counts_all {
        let newcomers = hist.counts_newcomers.get(&j).copied().unwrap_or(0);
        let fraction = if n > 0 { newcomers as f64 / n as f64 } else { 0.0 };
        let theory_b = fractions::limit_fraction(j, k)
            .map(|b| fractions::rational_to_f64(&b))
            .unwrap_or(f64::NAN);
        degree_csv.push(vec![
            Field::Uint(j),
            Field::Uint(count_all),
            Field::Uint(newcomers),
            Field::Float(fraction),
            Field::Float(theory_b),
        ]);
    }
    degree_csv.write(&path_with(&args.out_prefix, "degree_hist.csv"))?;

    let clustering = if n > 0 {
        let profile = clustering_profile(&net)?;
        let mut clustering_csv =
            CsvTable::new(&["j", "mean_coefficient", "closed_form", "count_all"]);
        for (&j, &coeff) in &profile.per_degree {
            clustering_csv.push(vec![
                Field::Uint(j),
                Field::Float(coeff),
                Field::Float(theory::clustering::local_coefficient(j, k)),
                Field::Uint(hist.counts_all.get(&j).copied().unwrap_or(0)),
            ]);
        }
        clustering_csv.write(&path_with(&args.out_prefix, "clustering.csv"))?;
        Some(profile.average)
    } else {
        None
    };

    let degrees: Vec<u64> = (0..net.vertex_count() as u32)
        .map(|v| net.degree(v) as u64)
        .collect();
    let (lorenz_points, gini) = hdran::metrics::empirical_lorenz_gini(&degrees)?;
    let mut lorenz_csv = CsvTable::new(&["position", "cumulative"]);
    for (x, y) in &lorenz_points {
        lorenz_csv.push(vec![Field::Float(*x), Field::Float(*y)]);
    }
    lorenz_csv.write(&path_with(&args.out_prefix, "lorenz.csv"))?;

    let (_, gini_class) = class_lorenz_gini(&hist);
    let census = net.clique_census();
    let mut summary = CsvTable::new(&[
        "gini",
        "gini_class",
        "clustering_avg",
        "total_depth",
        "active_cliques",
    ]);
    summary.push(vec![
        Field::Float(gini),
        Field::Float(gini_class),
        clustering.into(),
        Field::Uint(census.total_depth),
        Field::Uint(census.active_count),
    ]);
    summary.write(&path_with(&args.out_prefix, "summary.csv"))?;

    println!(
        "k={k} n={n}: wrote degree_hist.csv, clustering.csv, lorenz.csv, summary.csv with prefix {}",
        args.out_prefix
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_theory(args: TheoryArgs) -> Result<ExitCode> {
    let report = theory_report(args.k, args.n, args.degree_cap)?;
    println!(
        "k={} n={}: clustering_limit={:.6} gini={:.7} (asymptotic form {:.7})",
        report.k, report.n, report.clustering_limit, report.gini_closed_form, report.gini_asymptotic_form
    );
    println!(
        "depth_mean={} depth_second_moment={} (closed-form comparison {}, relative gap {:.3})",
        format_float(report.depth_mean),
        format_float(report.depth_second_moment),
        format_float(report.depth_second_moment_closed_form),
        (report.depth_second_moment_closed_form - report.depth_second_moment).abs()
            / report.depth_second_moment,
    );
    println!(
        "diameter constants: eta_star={:.6} a={:.6} c={:.6}",
        report.diameter_constants.eta_star, report.diameter_constants.a, report.diameter_constants.c
    );
    if let Some(path) = args.out {
        let body = serde_json::to_string_pretty(&report)?;
        std::fs::write(&path, body + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode> {
    let measurements: BTreeSet<Measurement> = BTreeSet::from([
        Measurement::Degrees,
        Measurement::Clustering,
        Measurement::Gini,
        Measurement::Depth,
    ]);
    let summaries = run_replicates(args.k, args.n, args.reps, args.seed, &measurements)?;
    let theory = theory_report(args.k, args.n, args.degree_cap)?;
    let rows = validate_against_theory(&summaries, &theory, args.k, args.n)?;

    // The mean-count recurrences behind theory_b describe the newcomer
    // histogram view seeded with one degree-k vertex at n = 1; for k > 3
    // and degrees above k they use degree rather than clique incidence as
    // the recruitment weight, so degree rows are exact comparisons only
    // for k = 3.
    println!("note: degree rows compare the newcomer histogram view against the recurrence limit");
    println!("note: gini_vertex row is informational; the closed form describes the class-based curve");

    let mut table = CsvTable::new(&[
        "metric",
        "empirical_mean",
        "empirical_se",
        "theory",
        "abs_diff",
        "tolerance",
        "pass",
        "binding",
    ]);
    let mut failed = false;
    for r in &rows {
        if r.binding && !r.pass {
            failed = true;
        }
        println!(
            "{}: empirical={} theory={} diff={} tol={} {}{}",
            r.metric,
            format_float(r.empirical_mean),
            format_float(r.theory),
            format_float(r.abs_diff),
            format_float(r.tolerance),
            if r.pass { "PASS" } else { "FAIL" },
            if r.binding { "" } else { " (informational)" },
        );
        table.push(vec![
            Field::Text(r.metric.clone()),
            Field::Float(r.empirical_mean),
            Field::Float(r.empirical_se),
            Field::Float(r.theory),
            Field::Float(r.abs_diff),
            Field::Float(r.tolerance),
            Field::Text(if r.pass { "true" } else { "false" }.to_string()),
            Field::Text(if r.binding { "true" } else { "false" }.to_string()),
        ]);
    }
    if let Some(path) = &args.out {
        table.write(path)?;
        println!("wrote {}", path.display());
    }

    if args.probe {
        let scale = (8.0 * args.k as f64 * args.n as f64).sqrt();
        let grid: Vec<f64> = (1..=20).map(|i| i as f64 * scale / 20.0).collect();
        let rows = concentration_probe(args.k, args.n, args.reps, args.seed, args.k as u64, &grid)?;
        for r in &rows {
            println!(
                "lambda={:.2}: tail={:.4} bound={:.4}{}",
                r.lambda,
                r.empirical_tail,
                r.bound,
                if r.violation { " VIOLATION" } else { "" }
            );
            if r.violation {
                failed = true;
            }
        }
    }

    if failed {
        bail!("one or more binding validation rows failed");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_wiener_study(args: WienerArgs) -> Result<ExitCode> {
    let n = args.n.unwrap_or(if args.long {
        experiments::wiener::LONG_N
    } else {
        experiments::wiener::DEFAULT_N
    });
    let reps = args.reps.unwrap_or(if args.long {
        experiments::wiener::LONG_REPS
    } else {
        experiments::wiener::DEFAULT_REPS
    });
    if !args.long && (n > experiments::wiener::LONG_N || reps > experiments::wiener::LONG_REPS) {
        bail!(
            "requested scale n={n}, reps={reps} exceeds the default budget; pass --long to opt in"
        );
    }
    let study = experiments::wiener::wiener_study(args.k, n, reps, args.seed)?;

    let mut samples = CsvTable::new(&["replicate", "wiener"]);
    for (i, w) in study.samples.iter().enumerate() {
        samples.push(vec![Field::Uint(i as u64), Field::Uint(*w)]);
    }
    samples.write(&path_with(&args.out_prefix, "samples.csv"))?;

    let mut hist = CsvTable::new(&["bin_left", "count"]);
    for (left, count) in &study.histogram {
        hist.push(vec![Field::Float(*left), Field::Uint(*count)]);
    }
    hist.write(&path_with(&args.out_prefix, "histogram.csv"))?;

    println!(
        "k={} n={} reps={}: mean={} skewness={:.4} K2={:.3} p={:.3e} -> {}",
        study.k,
        study.n,
        study.samples.len(),
        format_float(study.mean),
        study.skewness,
        study.normality.statistic,
        study.normality.p_value,
        if study.normality.p_value < 0.01 {
            "normality rejected at alpha=0.01"
        } else {
            "normality not rejected at alpha=0.01"
        }
    );
    if let Some(ratio) = study.trend_ratio {
        println!("mean / (sqrt(3 pi) n^(5/2) / 22) = {ratio:.4}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lorenz(args: LorenzArgs) -> Result<ExitCode> {
    let mut curves = Vec::new();
    for &k in &args.k {
        // average the class-based cumulative sequences across replicates
        let mut avg: Vec<f64> = Vec::new();
        for i in 0..args.reps {
            let seed = hdran::rng::replicate_seed(args.seed, i as u64);
            let net = Network::generate(k, args.n, seed)?;
            let hist = degree_histogram(&net);
            let (points, _) = class_lorenz_gini(&hist);
            if avg.is_empty() {
                avg = vec![0.0; points.len()];
            }
            for (j, (_, y)) in points.iter().enumerate() {
                avg[j] += y / args.reps as f64;
            }
        }
        let classes = args.n + 1;
        let points: Vec<(f64, f64)> = avg
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as f64 / classes as f64, y))
            .collect();
        curves.push((format!("k={k}"), points));
    }
    let body = svg::lorenz_svg(&curves);
    std::fs::write(&args.svg, &body).with_context(|| format!("writing {}", args.svg.display()))?;
    println!(
        "wrote {} ({} curves plus the diagonal)",
        args.svg.display(),
        curves.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn path_with(prefix: &str, name: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}{name}"))
}
