mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use seidel_core::edgelist::{emit_edge_list, parse_edge_lists};
use seidel_core::error::GraphError;
use seidel_core::experiments::{
    self, Aggregates, EquivalenceConfig, ExhaustiveConfig, ExperimentConfig, ExperimentReport,
    GrowthConfig, MonteCarloConfig, SemicircleConfig,
};
use seidel_core::graph6::{emit_graph6_lines, parse_graph6_lines};
use seidel_core::seidel::det_meets_threshold;
use seidel_core::spectral::{p_energy_strict_bound, p_energy_threshold};
use seidel_core::{
    det_exact, eigenvalues, emit_graph6, p_energy, parse_graph6, seidel_energy, seidel_matrix,
    DetMode, Error, Graph,
};

use args::{Cli, Command, Format, GraphInput, Output, RunOptions, SeedArg};

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(msg) => CliError::Usage(msg),
            // Bad --n or --cap values are flag errors, not runtime failures.
            e @ Error::Graph(GraphError::InvalidOrder | GraphError::EnumerationCap { .. }) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Spectrum(a) => spectrum(&a.graphs, &a.output),
        Command::Det(a) => det(&a.graphs, a.mode.into(), &a.output),
        Command::Energy(a) => energy(&a.graphs, &a.p, &a.output),
        Command::Exhaustive(a) => {
            let cfg = ExhaustiveConfig {
                n: a.n,
                mode: a.mode.into(),
                p_grid: a.p,
                enumeration_cap: a.cap,
                record_graphs: a.records,
            };
            experiment(ExperimentConfig::Exhaustive(cfg), &a.run, &a.output)
        }
        Command::Montecarlo(a) => {
            let cfg = MonteCarloConfig {
                n: a.n,
                trials: a.trials,
                master_seed: resolve_seed(&a.seed),
                mode: a.mode.into(),
                record_graphs: a.records,
            };
            experiment(ExperimentConfig::Montecarlo(cfg), &a.run, &a.output)
        }
        Command::Semicircle(a) => {
            let cfg = SemicircleConfig {
                n: a.n,
                samples: a.samples,
                master_seed: resolve_seed(&a.seed),
                b_grid: a.b_grid,
                b: a.b,
                delta: a.delta,
                histogram_bins: a.bins,
                histogram_bin_width: a.bin_width,
            };
            let report = run_report(&ExperimentConfig::Semicircle(cfg), &a.run)?;
            if let Some(path) = &a.histogram {
                fs::write(path, histogram_csv(&report)?)?;
            }
            emit_report(&report, &a.output)
        }
        Command::Growth(a) => {
            let cfg = GrowthConfig {
                n_list: a.n_list,
                trials: a.trials,
                alpha: a.alpha,
                master_seed: resolve_seed(&a.seed),
            };
            experiment(ExperimentConfig::Growth(cfg), &a.run, &a.output)
        }
        Command::Equivalence(a) => {
            let cfg = EquivalenceConfig {
                n: a.n,
                trials: a.trials,
                master_seed: resolve_seed(&a.seed),
                mode: a.mode.into(),
                p_grid: a.p,
            };
            experiment(ExperimentConfig::Equivalence(cfg), &a.run, &a.output)
        }
        Command::Convert(a) => convert(a.from, a.to, a.input.as_deref(), a.out.as_deref()),
    }
}

fn resolve_seed(arg: &SeedArg) -> u64 {
    arg.seed.unwrap_or_else(|| {
        let seed = rand::random::<u64>();
        eprintln!("seed: {seed}");
        seed
    })
}

fn read_graphs(input: &GraphInput) -> CliResult<Vec<Graph>> {
    if let Some(s) = &input.graph6 {
        return parse_graph6(s.as_bytes())
            .map(|g| vec![g])
            .map_err(|e| CliError::Runtime(format!("--graph6: {e}")));
    }
    let path = input
        .input
        .as_ref()
        .expect("clap requires one of the inputs");
    let bytes = fs::read(path)?;
    parse_graph6_lines(&bytes)
        .map_err(|(line, e)| CliError::Runtime(format!("{}:{line}: {e}", path.display())))
}

fn write_text(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_json(output: &Output, value: &Value) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    write_text(output.out.as_deref(), &text)
}

/// Single graphs print as one object; files print as an array.
fn one_or_many(input: &GraphInput, mut items: Vec<Value>) -> Value {
    if input.graph6.is_some() && items.len() == 1 {
        items.remove(0)
    } else {
        Value::Array(items)
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
}

fn spectrum(input: &GraphInput, output: &Output) -> CliResult {
    let graphs = read_graphs(input)?;
    let mut rows = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let s = eigenvalues(&seidel_matrix(g)).map_err(Error::from)?;
        rows.push((emit_graph6(g), s));
    }
    if output.csv {
        let mut w = csv_writer();
        for (g6, s) in &rows {
            let mut record = vec![g6.clone()];
            record.extend(s.values().iter().map(|x| x.to_string()));
            w.write_record(&record)?;
        }
        return write_text(output.out.as_deref(), &finish_csv(w)?);
    }
    let items = rows
        .into_iter()
        .map(|(g6, s)| json!({ "graph6": g6, "n": s.order(), "eigenvalues": s.values() }))
        .collect();
    write_json(output, &one_or_many(input, items))
}

fn det(input: &GraphInput, mode: DetMode, output: &Output) -> CliResult {
    let graphs = read_graphs(input)?;
    let rows: Vec<_> = graphs
        .iter()
        .map(|g| {
            let n = g.order();
            let d = det_exact(&seidel_matrix(g));
            let absolute = det_meets_threshold(&d, n, DetMode::Absolute);
            let signed = det_meets_threshold(&d, n, DetMode::Signed);
            (emit_graph6(g), n, d, absolute, signed)
        })
        .collect();
    if output.csv {
        let mut w = csv_writer();
        w.write_record(["graph6", "n", "det", "threshold", "absolute", "signed"])?;
        for (g6, n, d, absolute, signed) in &rows {
            w.write_record([
                g6.clone(),
                n.to_string(),
                d.to_string(),
                (n - 1).to_string(),
                absolute.to_string(),
                signed.to_string(),
            ])?;
        }
        return write_text(output.out.as_deref(), &finish_csv(w)?);
    }
    let items = rows
        .into_iter()
        .map(|(g6, n, d, absolute, signed)| {
            json!({
                "graph6": g6,
                "n": n,
                "det": d,
                "threshold": n - 1,
                "mode": mode,
                "holds": if mode == DetMode::Absolute { absolute } else { signed },
                "holds_absolute": absolute,
                "holds_signed": signed,
                "within_hadamard_bound": d.within_hadamard_bound(n),
            })
        })
        .collect();
    write_json(output, &one_or_many(input, items))
}

fn energy(input: &GraphInput, grid: &[f64], output: &Output) -> CliResult {
    let graphs = read_graphs(input)?;
    let mut items = Vec::with_capacity(graphs.len());
    let mut w = csv_writer();
    if output.csv {
        w.write_record([
            "graph6",
            "n",
            "p",
            "p_energy",
            "threshold",
            "meets",
            "strict_bound",
        ])?;
    }
    for g in &graphs {
        let n = g.order();
        let s = eigenvalues(&seidel_matrix(g)).map_err(Error::from)?;
        let mut per_p = Vec::with_capacity(grid.len());
        for &p in grid {
            let value = p_energy(&s, p).map_err(Error::from)?;
            let threshold = p_energy_threshold(n, p);
            let bound = p_energy_strict_bound(n, p);
            let meets = value >= threshold - experiments::BOUND_TOLERANCE;
            if output.csv {
                w.write_record([
                    emit_graph6(g),
                    n.to_string(),
                    p.to_string(),
                    value.to_string(),
                    threshold.to_string(),
                    meets.to_string(),
                    bound.to_string(),
                ])?;
            }
            per_p.push(json!({
                "p": p, "value": value, "threshold": threshold,
                "meets_threshold": meets, "strict_bound": bound,
            }));
        }
        let e = seidel_energy(&s);
        let energy_floor = 2.0 * n as f64 - 2.0;
        items.push(json!({
            "graph6": emit_graph6(g),
            "n": n,
            "energy": e,
            "energy_bound": energy_floor,
            "meets_energy_bound": e >= energy_floor - experiments::BOUND_TOLERANCE,
            "p_energies": per_p,
        }));
    }
    if output.csv {
        return write_text(output.out.as_deref(), &finish_csv(w)?);
    }
    write_json(output, &one_or_many(input, items))
}

fn run_report(cfg: &ExperimentConfig, run: &RunOptions) -> CliResult<ExperimentReport> {
    let report = if run.timing {
        experiments::run_timed(cfg, run.workers)?
    } else {
        experiments::run(cfg, run.workers)?
    };
    Ok(report)
}

fn experiment(cfg: ExperimentConfig, run: &RunOptions, output: &Output) -> CliResult {
    let report = run_report(&cfg, run)?;
    emit_report(&report, output)
}

fn emit_report(report: &ExperimentReport, output: &Output) -> CliResult {
    if output.csv {
        return write_text(output.out.as_deref(), &report_csv(report)?);
    }
    let mut text = report.to_json();
    text.push('\n');
    write_text(output.out.as_deref(), &text)
}

fn report_csv(report: &ExperimentReport) -> CliResult<String> {
    let mut w = csv_writer();
    match &report.aggregates {
        Aggregates::Exhaustive(s) => {
            w.write_record([
                "p",
                "both",
                "det_only",
                "energy_only",
                "neither",
                "strict_bound_violations",
                "strict_bound_min_margin",
            ])?;
            for (eq, sb) in s.equivalence.iter().zip(&s.strict_bound) {
                w.write_record([
                    eq.p.to_string(),
                    eq.both.to_string(),
                    eq.det_only.to_string(),
                    eq.energy_only.to_string(),
                    eq.neither.to_string(),
                    sb.violations.to_string(),
                    sb.min_margin.to_string(),
                ])?;
            }
        }
        Aggregates::Montecarlo(_) => {
            w.write_record(["index", "seed", "det", "holds"])?;
            for t in &report.trials {
                w.write_record([
                    t.index.to_string(),
                    t.seed.map(|s| s.to_string()).unwrap_or_default(),
                    t.det.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                    t.holds.map(|h| h.to_string()).unwrap_or_default(),
                ])?;
            }
        }
        Aggregates::Semicircle(s) => {
            w.write_record(["b", "empirical", "closed_form", "deviation"])?;
            for row in &s.tails {
                w.write_record([
                    row.b.to_string(),
                    row.empirical.to_string(),
                    row.closed_form.to_string(),
                    row.deviation.to_string(),
                ])?;
            }
        }
        Aggregates::Growth(s) => {
            w.write_record([
                "n",
                "trials",
                "passing",
                "point",
                "wilson_low",
                "wilson_high",
                "median_statistic",
            ])?;
            for row in &s.rows {
                w.write_record([
                    row.n.to_string(),
                    row.estimate.trials.to_string(),
                    row.estimate.successes.to_string(),
                    row.estimate.point.to_string(),
                    row.estimate.wilson_low.to_string(),
                    row.estimate.wilson_high.to_string(),
                    row.median_statistic
                        .map(|m| m.to_string())
                        .unwrap_or_default(),
                ])?;
            }
        }
        Aggregates::Equivalence(s) => {
            w.write_record(["p", "both", "det_only", "energy_only", "neither"])?;
            for row in &s.rows {
                w.write_record([
                    row.p.to_string(),
                    row.both.to_string(),
                    row.det_only.to_string(),
                    row.energy_only.to_string(),
                    row.neither.to_string(),
                ])?;
            }
        }
    }
    finish_csv(w)
}

fn histogram_csv(report: &ExperimentReport) -> CliResult<String> {
    let Aggregates::Semicircle(s) = &report.aggregates else {
        unreachable!("histograms only come from semicircle runs")
    };
    let mut w = csv_writer();
    w.write_record(["bin_low", "bin_high", "count"])?;
    for bin in &s.scaled_min_abs_eigenvalue.histogram {
        w.write_record([
            bin.low.to_string(),
            bin.high
                .map(|h| h.to_string())
                .unwrap_or_else(|| "inf".into()),
            bin.count.to_string(),
        ])?;
    }
    finish_csv(w)
}

fn convert(from: Format, to: Format, input: Option<&Path>, out: Option<&Path>) -> CliResult {
    let text = match input {
        Some(path) => fs::read(path)?,
        None => {
            let mut buf = Vec::new();
            io::stdin().lock().read_to_end(&mut buf)?;
            buf
        }
    };
    let graphs = match from {
        Format::Graph6 => parse_graph6_lines(&text)
            .map_err(|(line, e)| CliError::Runtime(format!("line {line}: {e}")))?,
        Format::Edgelist => {
            let s = String::from_utf8(text)
                .map_err(|e| CliError::Runtime(format!("edge list is not UTF-8: {e}")))?;
            parse_edge_lists(&s).map_err(|e| CliError::Runtime(e.to_string()))?
        }
    };
    let rendered = match to {
        Format::Graph6 => emit_graph6_lines(&graphs),
        Format::Edgelist => graphs.iter().map(|g| emit_edge_list(g) + "\n").collect(),
    };
    write_text(out, &rendered)
}
