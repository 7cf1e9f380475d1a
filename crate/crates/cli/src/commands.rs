use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use qcr_core::bounds::{bound_free, success_bound_classical, success_bound_quantum, BoundCurve};
use qcr_core::format::g12;
use qcr_core::inequalities::{equality_cases, run_suite, EqualityCase, SuiteConfig, SuiteReport};
use qcr_core::protocols::{
    basis_protocol, forward_qubit, full_communication, measure_and_embed, output_min_entropy_with,
    seesaw_restarts, strategy_from_json, strategy_to_json, success, FreeStrategy, MinEntropyMode,
    Strategy,
};

use crate::args::{
    BoundsArgs, ExampleArgs, ExampleName, Format, OptimizeArgs, ProtocolArgs, VerifyArgs,
};
use crate::config::{CommandKind, RunConfig};
use crate::error::{CliError, CliResult};

/// Slack allowed when checking an optimized value against the free bound.
pub const OPTIMIZE_BOUND_TOL: f64 = 1e-8;

pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

// Console writes are best-effort: a closed stdout must not turn a finished
// computation into a failure.
macro_rules! say {
    ($w:expr, $($t:tt)*) => {{ let _ = writeln!($w, $($t)*); }};
}

fn write_output(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        action: "create directory",
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io {
        action: "write",
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

fn check_output_name(name: &str) -> CliResult<()> {
    let p = Path::new(name);
    if name.is_empty() || p.components().count() != 1 || p.file_name().is_none() {
        return Err(CliError::Usage(format!(
            "--output `{name}` must be a plain file name inside the output directory"
        )));
    }
    Ok(())
}

pub fn bounds(args: &BoundsArgs, out_dir: &Path, io: &mut Io) -> CliResult<()> {
    let cfg = RunConfig::for_bounds(args, out_dir)?;
    let CommandKind::Bounds { models, k, method } = &cfg.command else {
        unreachable!("built by for_bounds")
    };
    // evaluate everything before writing so a domain error leaves no partial output
    let curves = models
        .iter()
        .map(|&m| BoundCurve::evaluate(m, &cfg.rho, &cfg.gamma, *k, *method))
        .collect::<Result<Vec<_>, _>>()?;
    for (model, curve) in models.iter().zip(&curves) {
        let name = format!("bounds_{}.{}", model.name(), cfg.format.extension());
        let text = match cfg.format {
            Format::Csv => curve.to_csv(),
            Format::Json => curve.to_json(),
        };
        write_output(&cfg.out_dir, &name, &text)?;
        say!(
            io.out,
            "{}: {} rows -> {}",
            model.name(),
            curve.samples.len(),
            name
        );
        if let [row] = curve.samples.as_slice() {
            if model.uses_gamma() {
                say!(
                    io.out,
                    "  rho={} gamma={} value={}",
                    g12(row.rho),
                    g12(row.gamma),
                    g12(row.value)
                );
            } else {
                say!(io.out, "  rho={} value={}", g12(row.rho), g12(row.value));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a SuiteConfig,
    suites: &'a [SuiteReport],
    equality_cases: &'a [EqualityCase],
    passed: bool,
}

fn verify_csv(suites: &[SuiteReport], equality: &[EqualityCase]) -> String {
    let mut s = String::from("kind,name,cases,tolerance,min_slack,failures,passed\n");
    for r in suites {
        s.push_str(&format!(
            "suite,{},{},{},{},{},{}\n",
            r.suite,
            r.cases,
            g12(r.tolerance),
            g12(r.min_slack),
            r.failure_count,
            r.passed
        ));
    }
    for c in equality {
        s.push_str(&format!(
            "equality,{},1,{},{},{},{}\n",
            c.name,
            g12(qcr_core::inequalities::EQUALITY_TOL),
            g12(c.report.slack),
            u8::from(!c.holds()),
            c.holds()
        ));
    }
    s
}

pub fn verify(args: &VerifyArgs, out_dir: &Path, io: &mut Io) -> CliResult<()> {
    let cfg = RunConfig::for_verify(args, out_dir)?;
    let CommandKind::Verify { suites: names, .. } = &cfg.command else {
        unreachable!("built by for_verify")
    };
    let suite_cfg = cfg.suite_config();
    let suites = names
        .iter()
        .map(|&s| run_suite(s, &suite_cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let equality = equality_cases(cfg.seed)?;
    let passed = suites.iter().all(|r| r.passed) && equality.iter().all(EqualityCase::holds);

    let (name, text) = match cfg.format {
        Format::Json => (
            "verify_report.json",
            to_json_text(&VerifyReport {
                config: &suite_cfg,
                suites: &suites,
                equality_cases: &equality,
                passed,
            }),
        ),
        Format::Csv => ("verify_report.csv", verify_csv(&suites, &equality)),
    };
    write_output(&cfg.out_dir, name, &text)?;

    for r in &suites {
        say!(
            io.out,
            "{:<20} {} cases={} min_slack={} failures={}",
            r.suite.name(),
            if r.passed { "PASS" } else { "FAIL" },
            r.cases,
            g12(r.min_slack),
            r.failure_count
        );
        if !r.passed {
            if let Some(first) = r.failures.first() {
                say!(
                    io.err,
                    "{} witness: {}",
                    r.suite,
                    serde_json::to_string(first).expect("serializable")
                );
            }
        }
    }
    let eq_failed: Vec<&EqualityCase> = equality.iter().filter(|c| !c.holds()).collect();
    say!(
        io.out,
        "{:<20} {} cases={} failures={}",
        "equality-cases",
        if eq_failed.is_empty() { "PASS" } else { "FAIL" },
        equality.len(),
        eq_failed.len()
    );
    for c in &eq_failed {
        say!(
            io.err,
            "equality case {} slack {:e}",
            c.name,
            c.report.slack
        );
    }
    say!(io.out, "report -> {name}");

    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            "one or more inequality checks failed".into(),
        ))
    }
}

#[derive(Debug, Serialize)]
struct ProtocolRecord {
    model: &'static str,
    n: usize,
    t: usize,
    rho: f64,
    success_probability: f64,
    min_entropy_mode: MinEntropyMode,
    output_min_entropy: f64,
    /// Min-entropy fed to the bound; the classical bound needs the joint one.
    bound_min_entropy: f64,
    bound: f64,
    within_bound: bool,
}

fn parse_mode(s: &str) -> CliResult<MinEntropyMode> {
    match s {
        "marginal" => Ok(MinEntropyMode::Marginal),
        "joint" => Ok(MinEntropyMode::Joint),
        _ => Err(CliError::Usage(format!(
            "unknown min-entropy mode `{s}` (expected marginal or joint)"
        ))),
    }
}

fn check_rho(rho: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--rho {rho} must lie in [0, 1]")))
    }
}

pub fn protocol(args: &ProtocolArgs, io: &mut Io) -> CliResult<()> {
    check_rho(args.rho)?;
    let mode = parse_mode(&args.min_entropy)?;
    let text = fs::read_to_string(&args.strategy).map_err(|source| CliError::Io {
        action: "read",
        path: args.strategy.clone(),
        source,
    })?;
    let strategy = strategy_from_json(&text).map_err(|e| {
        CliError::Usage(format!(
            "invalid strategy file {}: {e}",
            args.strategy.display()
        ))
    })?;

    let p = success(&strategy, args.rho)?;
    let h = output_min_entropy_with(&strategy, mode)?;
    let t = strategy.t();
    let (bound_h, bound) = match &strategy {
        Strategy::Free(_) => (h, bound_free(args.rho, h)?),
        Strategy::Classical(_) => {
            let hj = output_min_entropy_with(&strategy, MinEntropyMode::Joint)?;
            (hj, success_bound_classical(args.rho, hj, t as f64)?)
        }
        Strategy::Quantum(_) => (h, success_bound_quantum(args.rho, h, t as f64)?),
    };
    let record = ProtocolRecord {
        model: strategy.model(),
        n: strategy.n(),
        t,
        rho: args.rho,
        success_probability: p,
        min_entropy_mode: mode,
        output_min_entropy: h,
        bound_min_entropy: bound_h,
        bound,
        within_bound: p <= bound + OPTIMIZE_BOUND_TOL,
    };
    if args.json {
        let _ = io.out.write_all(to_json_text(&record).as_bytes());
    } else {
        say!(io.out, "model: {}", record.model);
        say!(io.out, "n: {}", record.n);
        say!(io.out, "t: {}", record.t);
        say!(io.out, "rho: {}", g12(record.rho));
        say!(
            io.out,
            "success_probability: {}",
            g12(record.success_probability)
        );
        say!(
            io.out,
            "output_min_entropy: {}",
            g12(record.output_min_entropy)
        );
        if record.bound_min_entropy != record.output_min_entropy {
            say!(
                io.out,
                "bound_min_entropy: {}",
                g12(record.bound_min_entropy)
            );
        }
        say!(io.out, "bound: {}", g12(record.bound));
    }
    if !record.within_bound {
        say!(io.err, "warning: success probability exceeds the bound");
    }
    Ok(())
}

#[derive(Serialize)]
struct OptimizeSummary {
    rho: f64,
    n: usize,
    k: usize,
    restarts: usize,
    iters: usize,
    seed: u64,
    probability: f64,
    bound: f64,
    output: String,
}

pub fn optimize(args: &OptimizeArgs, out_dir: &Path, io: &mut Io) -> CliResult<()> {
    check_rho(args.rho)?;
    let name = args
        .output
        .clone()
        .unwrap_or_else(|| format!("seesaw_n{}_k{}.json", args.n, args.k));
    check_output_name(&name)?;
    let result = seesaw_restarts(
        args.rho,
        args.n,
        args.k,
        args.iters,
        args.restarts,
        args.seed,
    )?;
    let bound = bound_free(args.rho, args.k as f64)?;
    if result.probability > bound + OPTIMIZE_BOUND_TOL {
        return Err(CliError::Verification(format!(
            "optimized value {} exceeds the bound {}",
            g12(result.probability),
            g12(bound)
        )));
    }
    let strategy = Strategy::Free(FreeStrategy::new(args.n, result.alice, result.bob)?);
    write_output(out_dir, &name, &strategy_to_json(&strategy))?;
    let summary = OptimizeSummary {
        rho: args.rho,
        n: args.n,
        k: args.k,
        restarts: args.restarts,
        iters: args.iters,
        seed: args.seed,
        probability: result.probability,
        bound,
        output: name,
    };
    let _ = io.out.write_all(to_json_text(&summary).as_bytes());
    Ok(())
}

pub fn example(args: &ExampleArgs, out_dir: &Path, io: &mut Io) -> CliResult<()> {
    if !(1..=6).contains(&args.n) {
        return Err(CliError::Usage(
            "--n must lie in 1..=6 for the examples".into(),
        ));
    }
    let n = args.n;
    let (label, strategy) = match args.name {
        ExampleName::Basis => {
            let (a, b) = basis_protocol(n)?;
            ("basis", Strategy::Free(FreeStrategy::new(n, a, b)?))
        }
        ExampleName::FullCommunication => (
            "full-communication",
            Strategy::Classical(full_communication(n)?),
        ),
        ExampleName::ForwardQubit => ("forward-qubit", Strategy::Quantum(forward_qubit(n)?)),
        ExampleName::MeasureAndEmbed => {
            let (a, b) = basis_protocol(n)?;
            (
                "measure-and-embed",
                Strategy::Quantum(measure_and_embed(&a, &b, n)?),
            )
        }
    };
    let name = args
        .output
        .clone()
        .unwrap_or_else(|| format!("{label}_n{n}.json"));
    check_output_name(&name)?;
    write_output(out_dir, &name, &strategy_to_json(&strategy))?;
    say!(io.out, "{label} (n={n}, t={}) -> {name}", strategy.t());
    Ok(())
}
