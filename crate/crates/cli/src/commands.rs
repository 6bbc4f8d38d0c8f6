use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use qlearn::bounds::{bound_report, BoundReport};
use qlearn::classical::{
    greedy_exact_learner, hard_pac_distribution, AdversaryRule, MembershipOracle, PacParams,
    RunRecord,
};
use qlearn::concept::{
    builtin_classes, format_point, gamma_hat, vc_dimension, ClassSpec, MAX_QUANTUM_N,
};
use qlearn::learners::{build_parity_learner, certify_learner, Certification, DEFAULT_THRESHOLD};
use qlearn::quantum::QueryNetwork;
use qlearn::verify::{
    forced_queries, greedy_worst_case, pac_trial, run_suites, Suite, SuiteReport, VerifyOptions,
};
use qlearn::{ConceptClass, Distribution};

use crate::args::{
    BoundsArgs, ClassArgs, ClassSource, DistKind, LearnArgs, Mode, PacArgs, ReportArgs, Task,
    VerifyArgs,
};
use crate::output::{num, Report};
use crate::Violation;

struct LoadedClass {
    label: String,
    class: ConceptClass,
}

fn load_class(source: &ClassSource) -> Result<LoadedClass> {
    let spec = match (&source.class, &source.class_file) {
        (Some(inline), None) => inline.parse::<ClassSpec>()?,
        (None, Some(path)) => ClassSpec::from_json(&read(path)?)?,
        _ => bail!("exactly one of --class or --class-file is required"),
    };
    let class = spec.build()?;
    Ok(LoadedClass {
        label: spec.label(),
        class,
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn pac_params(pac: &PacArgs) -> Result<PacParams> {
    Ok(PacParams::new(pac.epsilon, pac.delta)?)
}

fn hex_list(class: &ConceptClass, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| class.concepts()[i].to_hex()).collect()
}

#[derive(Serialize)]
struct ClassSummary {
    class: String,
    n: usize,
    size: usize,
    gamma_hat: String,
    gamma_witness_subset: Vec<String>,
    gamma_witness_query: String,
    vc_dimension: usize,
    vc_witness: Vec<String>,
    concepts: Vec<String>,
}

pub fn class(args: &ClassArgs) -> Result<()> {
    let LoadedClass { label, class } = load_class(&args.source)?;
    let n = class.n();
    let gamma = gamma_hat(&class)?;
    let vc = vc_dimension(&class)?;
    let summary = ClassSummary {
        class: label,
        n,
        size: class.len(),
        gamma_hat: gamma.gamma_hat.to_string(),
        gamma_witness_subset: hex_list(&class, &gamma.witness_subset),
        gamma_witness_query: format_point(n, gamma.witness_query),
        vc_dimension: vc.d,
        vc_witness: vc.set.iter().map(|&x| format_point(n, x)).collect(),
        concepts: class.iter().map(|c| c.to_hex()).collect(),
    };
    let rows = vec![
        vec!["class".into(), summary.class.clone()],
        vec!["n".into(), n.to_string()],
        vec!["size".into(), summary.size.to_string()],
        vec!["gamma_hat".into(), summary.gamma_hat.clone()],
        vec!["gamma_witness_subset".into(), summary.gamma_witness_subset.join(" ")],
        vec!["gamma_witness_query".into(), summary.gamma_witness_query.clone()],
        vec!["vc_dimension".into(), vc.d.to_string()],
        vec!["vc_witness".into(), summary.vc_witness.join(" ")],
        vec!["concepts".into(), summary.concepts.join(" ")],
    ];
    Report::new(&summary, &["field", "value"], rows)?.emit(&args.output)
}

pub fn bounds(args: &BoundsArgs) -> Result<()> {
    let LoadedClass { label, class } = load_class(&args.source)?;
    let report = bound_report(&label, &class, Some(pac_params(&args.pac)?))?;
    bounds_report(&report)?.emit(&args.output)
}

fn bounds_report(report: &BoundReport) -> Result<Report> {
    let rows = report
        .rows()
        .into_iter()
        .map(|r| vec![r.class, r.model.into(), r.bound.into(), num(r.value)])
        .collect();
    Report::new(report, &["class", "model", "bound", "value"], rows)
}

pub fn learn(args: &LearnArgs) -> Result<()> {
    match args.task {
        Task::ExactClassical => exact_classical(args),
        Task::ExactQuantum => exact_quantum(args),
        Task::PacClassical => pac(args, false),
        Task::PacQuantum => pac(args, true),
        Task::Bounds => {
            let LoadedClass { label, class } = load_class(&args.source)?;
            let report = bound_report(&label, &class, Some(pac_params(&args.pac)?))?;
            bounds_report(&report)?.emit(&args.output)
        }
        Task::Verify => run_verify(&args.suites, args.seed, false, &args.output),
    }
}

#[derive(Serialize)]
struct ExactClassicalSummary {
    max_queries: usize,
    exact_lower: f64,
    upper: usize,
    all_success: bool,
    guarantee_holds: bool,
}

#[derive(Serialize)]
struct ExactClassicalReport {
    task: &'static str,
    class: String,
    mode: String,
    seed: u64,
    records: Vec<RunRecord>,
    summary: ExactClassicalSummary,
    bounds: BoundReport,
}

fn adversary_record(
    class: &ConceptClass,
    label: &str,
    rule: AdversaryRule,
    seed: u64,
) -> Result<RunRecord> {
    let (mut oracle, name) = match rule {
        AdversaryRule::Majority => (MembershipOracle::majority_adversary(class)?, "majority"),
        AdversaryRule::Similarity => (MembershipOracle::similarity_adversary(class)?, "similarity"),
    };
    let (hypothesis, success) = match greedy_exact_learner(class, &mut oracle) {
        Ok(run) => {
            let consistent = oracle
                .live_set()
                .is_some_and(|live| live.contains(&run.hypothesis));
            (Some(run.hypothesis.to_hex()), consistent)
        }
        Err(qlearn::Error::Conceded { .. }) => (None, true),
        Err(e) => return Err(e.into()),
    };
    Ok(RunRecord {
        target: None,
        class: label.to_string(),
        mode: name.to_string(),
        queries: oracle.query_count(),
        hypothesis,
        success,
        seed,
    })
}

fn exact_classical(args: &LearnArgs) -> Result<()> {
    let LoadedClass { label, class } = load_class(&args.source)?;
    let bounds = bound_report(&label, &class, Some(pac_params(&args.pac)?))?;
    let records: Vec<RunRecord> = match args.mode {
        Mode::Honest => class
            .concepts()
            .par_iter()
            .map(|target| {
                let run = greedy_exact_learner(&class, &mut MembershipOracle::honest(target.clone()))?;
                Ok(RunRecord {
                    target: Some(target.to_hex()),
                    class: label.clone(),
                    mode: "honest".into(),
                    queries: run.queries,
                    success: &run.hypothesis == target,
                    hypothesis: Some(run.hypothesis.to_hex()),
                    seed: args.seed,
                })
            })
            .collect::<qlearn::Result<_>>()?,
        Mode::Adversary => vec![
            adversary_record(&class, &label, AdversaryRule::Majority, args.seed)?,
            adversary_record(&class, &label, AdversaryRule::Similarity, args.seed)?,
        ],
        Mode::Majority => vec![adversary_record(&class, &label, AdversaryRule::Majority, args.seed)?],
        Mode::Similarity => {
            vec![adversary_record(&class, &label, AdversaryRule::Similarity, args.seed)?]
        }
    };
    let max_queries = records.iter().map(|r| r.queries).max().unwrap_or(0);
    let all_success = records.iter().all(|r| r.success);
    let lower = bounds.classical.exact_lower;
    let upper = bounds.classical.upper;
    let guarantee_holds = all_success && max_queries as f64 >= lower && max_queries <= upper;
    let violation = records
        .iter()
        .find(|r| !r.success || r.queries > upper)
        .map(serde_json::to_string)
        .transpose()?
        .or_else(|| {
            (!guarantee_holds).then(|| {
                format!("max queries {max_queries} outside [{}, {upper}]", num(lower))
            })
        });

    let rows = records
        .iter()
        .map(|r| {
            vec![
                r.target.clone().unwrap_or_default(),
                r.class.clone(),
                r.mode.clone(),
                r.queries.to_string(),
                r.hypothesis.clone().unwrap_or_default(),
                r.success.to_string(),
                r.seed.to_string(),
                num(lower),
                upper.to_string(),
            ]
        })
        .collect();
    let report = ExactClassicalReport {
        task: "exact-classical",
        class: label,
        mode: format!("{:?}", args.mode).to_lowercase(),
        seed: args.seed,
        records,
        summary: ExactClassicalSummary {
            max_queries,
            exact_lower: lower,
            upper,
            all_success,
            guarantee_holds,
        },
        bounds,
    };
    Report::new(
        &report,
        &[
            "target", "class", "mode", "queries", "hypothesis", "success", "seed",
            "classical_exact_lower", "classical_upper",
        ],
        rows,
    )?
    .emit(&args.output)?;
    finish(violation)
}

#[derive(Serialize)]
struct ExactQuantumReport {
    task: &'static str,
    class: String,
    network: String,
    seed: u64,
    queries: usize,
    certification: Certification,
    verdict: &'static str,
    bounds: BoundReport,
}

fn exact_quantum(args: &LearnArgs) -> Result<()> {
    let LoadedClass { label, class } = load_class(&args.source)?;
    let (network, network_label) = match &args.network_file {
        Some(path) => (QueryNetwork::from_json(&read(path)?)?, path.display().to_string()),
        None => {
            if class.n() > MAX_QUANTUM_N {
                return Err(qlearn::Error::CapExceeded {
                    what: "n",
                    limit: MAX_QUANTUM_N,
                    got: class.n(),
                }
                .into());
            }
            (build_parity_learner(class.n())?, "parity learner".to_string())
        }
    };
    let bounds = bound_report(&label, &class, Some(pac_params(&args.pac)?))?;
    let cert = certify_learner(&network, &class, DEFAULT_THRESHOLD)?;
    let lower = bounds.quantum.exact_lower;
    let holds = cert.passed && cert.queries as f64 >= lower;
    let violation = if !cert.passed {
        let worst = cert
            .targets
            .iter()
            .min_by(|a, b| a.success.total_cmp(&b.success))
            .ok_or_else(|| anyhow!("empty class"))?;
        Some(serde_json::to_string(worst)?)
    } else if !holds {
        Some(format!("T = {} below the quantum lower bound {}", cert.queries, num(lower)))
    } else {
        None
    };
    let rows = cert
        .targets
        .iter()
        .map(|t| {
            vec![
                label.clone(),
                t.target.clone(),
                cert.queries.to_string(),
                num(t.success),
                num(t.undefined_mass),
                num(lower),
                num(bounds.quantum.size),
            ]
        })
        .collect();
    let report = ExactQuantumReport {
        task: "exact-quantum",
        class: label,
        network: network_label,
        seed: args.seed,
        queries: cert.queries,
        verdict: if holds { "pass" } else { "fail" },
        certification: cert,
        bounds,
    };
    Report::new(
        &report,
        &[
            "class", "target", "queries", "success", "undefined_mass", "quantum_exact_lower",
            "quantum_size",
        ],
        rows,
    )?
    .emit(&args.output)?;
    finish(violation)
}

#[derive(Serialize)]
struct PacRecord {
    trial: u64,
    target: String,
    hypothesis: String,
    samples: usize,
    error: f64,
    success: bool,
}

#[derive(Serialize)]
struct PacReport {
    task: &'static str,
    class: String,
    distribution: String,
    epsilon: f64,
    delta: f64,
    seed: u64,
    trials: u64,
    success_rate: f64,
    required_rate: f64,
    guarantee_holds: bool,
    records: Vec<PacRecord>,
    bounds: BoundReport,
}

fn pac(args: &LearnArgs, quantum: bool) -> Result<()> {
    let LoadedClass { label, class } = load_class(&args.source)?;
    let params = pac_params(&args.pac)?;
    if args.trials == 0 {
        bail!("--trials must be positive");
    }
    let dist = match args.distribution {
        DistKind::Uniform => Distribution::uniform(class.n())?,
        DistKind::Shattered => hard_pac_distribution(&class)?,
    };
    let bounds = bound_report(&label, &class, Some(params))?;
    let records: Vec<PacRecord> = (0..args.trials)
        .into_par_iter()
        .map(|trial| {
            let run = pac_trial(&class, &dist, params, args.seed, trial, quantum)?;
            Ok(PacRecord {
                trial,
                target: run.target.to_hex(),
                hypothesis: run.hypothesis.to_hex(),
                samples: run.samples,
                error: run.error,
                success: run.error <= params.epsilon(),
            })
        })
        .collect::<qlearn::Result<_>>()?;
    let successes = records.iter().filter(|r| r.success).count();
    let success_rate = successes as f64 / args.trials as f64;
    let required_rate = 1.0 - params.delta();
    let holds = success_rate >= required_rate;
    let violation = (!holds).then(|| {
        format!(
            "success rate {} below {}",
            num(success_rate),
            num(required_rate)
        )
    });
    let rows = records
        .iter()
        .map(|r| {
            vec![
                r.trial.to_string(),
                r.target.clone(),
                r.hypothesis.clone(),
                r.samples.to_string(),
                num(r.error),
                r.success.to_string(),
                num(success_rate),
                num(required_rate),
            ]
        })
        .collect();
    let report = PacReport {
        task: if quantum { "pac-quantum" } else { "pac-classical" },
        class: label,
        distribution: format!("{:?}", args.distribution).to_lowercase(),
        epsilon: params.epsilon(),
        delta: params.delta(),
        seed: args.seed,
        trials: args.trials,
        success_rate,
        required_rate,
        guarantee_holds: holds,
        records,
        bounds,
    };
    Report::new(
        &report,
        &[
            "trial", "target", "hypothesis", "samples", "error", "success", "success_rate",
            "required_rate",
        ],
        rows,
    )?
    .emit(&args.output)?;
    finish(violation)
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    passed: bool,
    suites: Vec<SuiteReport>,
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    run_verify(&args.suites, args.seed, args.inject_fault, &args.output)
}

fn run_verify(
    names: &[String],
    seed: u64,
    inject_fault: bool,
    output: &crate::args::OutputArgs,
) -> Result<()> {
    let only = names
        .iter()
        .map(|s| s.parse::<Suite>())
        .collect::<qlearn::Result<Vec<_>>>()?;
    let suites = run_suites(&only, &VerifyOptions { seed, inject_fault })?;
    let passed = suites.iter().all(|s| s.passed);
    let violation = suites.iter().find(|s| !s.passed).map(|s| {
        let names: Vec<_> = s.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        format!("suite {} failed: {}", s.suite, names.join("; "))
    });
    let rows = suites
        .iter()
        .flat_map(|s| {
            s.checks.iter().map(move |c| {
                vec![
                    s.suite.to_string(),
                    c.name.clone(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ]
            })
        })
        .collect();
    let report = VerifyReport {
        seed,
        passed,
        suites,
    };
    Report::new(&report, &["suite", "check", "passed", "detail"], rows)?.emit(output)?;
    finish(violation)
}

#[derive(Serialize)]
struct ReportRow {
    class: String,
    quantity: &'static str,
    measured: f64,
    bound: f64,
    relation: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct FullReport {
    seed: u64,
    epsilon: f64,
    delta: f64,
    all_hold: bool,
    rows: Vec<ReportRow>,
    bounds: Vec<BoundReport>,
}

/// Measured complexity of every shipped learner on every built-in class,
/// each printed next to the bound it must respect.
pub fn report(args: &ReportArgs) -> Result<()> {
    let params = pac_params(&args.pac)?;
    let per_class: Vec<(Vec<ReportRow>, BoundReport)> = builtin_classes()
        .into_par_iter()
        .map(|(label, class)| class_rows(&label, &class, params, args.seed))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut bounds = Vec::new();
    for (r, b) in per_class {
        rows.extend(r);
        bounds.push(b);
    }
    let all_hold = rows.iter().all(|r| r.holds);
    let violation = rows
        .iter()
        .find(|r| !r.holds)
        .map(serde_json::to_string)
        .transpose()?;
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.class.clone(),
                r.quantity.to_string(),
                num(r.measured),
                num(r.bound),
                r.relation.to_string(),
                r.holds.to_string(),
            ]
        })
        .collect();
    let report = FullReport {
        seed: args.seed,
        epsilon: params.epsilon(),
        delta: params.delta(),
        all_hold,
        rows,
        bounds,
    };
    Report::new(
        &report,
        &["class", "quantity", "measured", "bound", "relation", "holds"],
        csv_rows,
    )?
    .emit(&args.output)?;
    finish(violation)
}

fn class_rows(
    label: &str,
    class: &ConceptClass,
    params: PacParams,
    seed: u64,
) -> Result<(Vec<ReportRow>, BoundReport)> {
    let b = bound_report(label, class, Some(params))?;
    let mut rows = Vec::new();
    let mut push = |quantity, measured: f64, bound: f64, at_least: bool| {
        rows.push(ReportRow {
            class: label.to_string(),
            quantity,
            measured,
            bound,
            relation: if at_least { ">=" } else { "<=" },
            holds: if at_least { measured >= bound } else { measured <= bound },
        });
    };
    let (worst, exact) = greedy_worst_case(class)?;
    push("greedy worst-case queries", worst as f64, b.classical.upper as f64, false);
    push("greedy worst-case queries", worst as f64, b.classical.exact_lower, true);
    push("greedy exact identification", f64::from(u8::from(exact)), 1.0, true);
    let forced = forced_queries(class, seed)?;
    push("majority adversary forced queries", forced.majority_min as f64, b.classical.size, true);
    push(
        "similarity adversary forced queries",
        forced.similarity_min as f64,
        b.classical.similarity,
        true,
    );
    let m = b.classical.pac_upper.unwrap_or(0) as f64;
    push("consistent learner samples", m, b.classical.vc as f64 / 2.0, true);
    push("qex learner samples", m, b.quantum.vc, true);
    if class.n() <= MAX_QUANTUM_N {
        let cert = certify_learner(&build_parity_learner(class.n())?, class, DEFAULT_THRESHOLD)?;
        if cert.passed {
            push("parity learner queries", cert.queries as f64, b.quantum.exact_lower, true);
        }
    }
    Ok((rows, b))
}

fn finish(violation: Option<String>) -> Result<()> {
    match violation {
        Some(record) => Err(Violation(record).into()),
        None => Ok(()),
    }
}
