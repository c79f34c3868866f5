use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use altafini_core::dynamics::{
    self, converged_transition_matrix, rank_one_residual, random_initial_condition, run_to_verdict,
    simulate_lifted, HorizonOptions, LimitKind, WindowFinding,
};
use altafini_core::graph::{Condensation, GraphClass, NegativeCycleCertificate};
use altafini_core::lifting::{lift_signed_graph, lifted_vertex_label};
use altafini_core::rate::{
    absolute_probability_sequence, empirical_rate, rate_bound_auto, rate_bound_balanced,
    rate_bound_period_product, rate_bound_unbalanced, EmpiricalRate, RateBound, RateKind, SpreadMeasure,
};
use altafini_core::{
    analyze_lifted_structure, analyze_spectrum, check_balance, classify_class, classify_sequence,
    find_negative_directed_cycle, io, lift, BalanceVerdict, Digraph, Error, LimitVerdict,
    LiftedGraphStructure, Prediction, SequenceClassification, SignedDigraph, SpectralReport,
    SwitchingSignal, Trajectory, Vector,
};

use crate::report::{CrossCheck, InputFile, Inputs, Stage, Tool, TOOL};
use crate::{
    AnalyzeArgs, ClassifyArgs, Cli, Command, CrossCheckFailed, Format, FullArgs, GraphSource, LiftArgs,
    RateArgs, RateMode, SimulateArgs, SpectrumArgs,
};

/// Tolerance for the absolute-probability identity check.
const APS_IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for `Φ(T, 1) ≈ b c'`.
const RANK_ONE_TOL: f64 = 1e-8;

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Analyze(args) => analyze(cli, args),
        Command::Lift(args) => lift_cmd(cli, args),
        Command::Simulate(args) => simulate(cli, args),
        Command::Classify(args) => classify(cli, args),
        Command::Rate(args) => rate(cli, args),
        Command::Spectrum(args) => spectrum(cli, args),
        Command::Full(args) => full(cli, args),
    }
}

/// Errors that mean a stage does not apply are turned into a skipped
/// stage; self-check failures propagate.
fn stage<T>(r: altafini_core::Result<T>) -> Result<Stage<T>> {
    match r {
        Err(e @ (Error::InternalInconsistency(_) | Error::PropositionViolation(_))) => Err(e.into()),
        other => Ok(Stage::from_result(other)),
    }
}

fn emit_text(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => io::write_text(path, text).map_err(Into::into),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    emit_text(cli, &serde_json::to_string_pretty(value)?)
}

fn json_only(cli: &Cli, command: &str) -> Result<()> {
    if cli.format == Format::Csv {
        return Err(Error::InvalidArgument(format!("{command} has no CSV output")).into());
    }
    Ok(())
}

fn inputs(cli: &Cli, files: &[&Path]) -> Result<Inputs> {
    Ok(Inputs {
        files: files.iter().map(|p| InputFile::of(p)).collect::<Result<_>>()?,
        seed: cli.seed,
        detection_tolerance: cli.tol,
        row_sum_tolerance: cli.row_sum_tol,
    })
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn load_graph(cli: &Cli, source: &GraphSource) -> Result<(SignedDigraph, Option<altafini_core::WeightMatrix>)> {
    if let Some(path) = &source.graph {
        Ok((io::read_graph(path)?, None))
    } else {
        let path = source.matrix.as_ref().expect("clap enforces one source");
        let a = io::read_weight_matrix(path, cli.row_sum_tol)?;
        Ok((a.graph(), Some(a)))
    }
}

fn source_path(source: &GraphSource) -> &Path {
    source.graph.as_deref().or(source.matrix.as_deref()).expect("clap enforces one source")
}

#[derive(Serialize)]
struct GraphFindings {
    n: usize,
    arc_count: usize,
    simple: bool,
    strongly_connected: bool,
    weakly_connected: bool,
    rooted: bool,
    roots: Vec<usize>,
    components: Condensation,
    balance: BalanceVerdict,
    class: Stage<GraphClass>,
    negative_directed_cycle: Stage<NegativeCycleCertificate>,
    lifted_structure: Stage<LiftedGraphStructure>,
}

fn graph_findings(g: &SignedDigraph) -> Result<GraphFindings> {
    let negative_directed_cycle = match find_negative_directed_cycle(g) {
        Ok(Some(c)) => Stage::done(c),
        Ok(None) => Stage::skipped("graph is structurally balanced"),
        Err(e) => stage::<NegativeCycleCertificate>(Err(e))?,
    };
    Ok(GraphFindings {
        n: g.n(),
        arc_count: g.arc_count(),
        simple: g.is_simple(),
        strongly_connected: g.is_strongly_connected(),
        weakly_connected: g.is_weakly_connected(),
        rooted: g.is_rooted(),
        roots: one_based(&g.to_digraph().roots()),
        components: g.mutually_reachable_classes(),
        balance: check_balance(g),
        class: stage(classify_class(g))?,
        negative_directed_cycle,
        lifted_structure: stage(analyze_lifted_structure(g))?,
    })
}

#[derive(Serialize)]
struct AnalyzeReport {
    tool: Tool,
    inputs: Inputs,
    graph: GraphFindings,
}

fn analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<()> {
    json_only(cli, "analyze")?;
    let (g, _) = load_graph(cli, &args.source)?;
    let report = AnalyzeReport {
        tool: TOOL,
        inputs: inputs(cli, &[source_path(&args.source)])?,
        graph: graph_findings(&g)?,
    };
    emit_json(cli, &report)
}

#[derive(Serialize)]
struct LiftReport {
    tool: Tool,
    inputs: Inputs,
    n: usize,
    /// Lifted entries, when the input was a matrix.
    lifted_entries: Option<Vec<Vec<f64>>>,
    /// Arcs of the lifted graph; `i⁻` is the negated copy of agent `i`.
    lifted_arcs: Vec<String>,
    structure: Stage<LiftedGraphStructure>,
}

fn arc_labels(d: &Digraph, n: usize) -> Vec<String> {
    (0..d.n())
        .flat_map(|u| d.successors(u).iter().map(move |&v| (u, v)))
        .filter(|(u, v)| u != v)
        .map(|(u, v)| format!("{} -> {}", lifted_vertex_label(u, n), lifted_vertex_label(v, n)))
        .collect()
}

fn lift_cmd(cli: &Cli, args: &LiftArgs) -> Result<()> {
    let (g, a) = load_graph(cli, &args.source)?;
    let lifted = a.as_ref().map(lift);
    if cli.format == Format::Csv {
        let m = lifted.ok_or_else(|| Error::InvalidArgument("CSV lift output needs --matrix".into()))?;
        return emit_text(cli, &io::matrix_to_csv(m.matrix()));
    }
    let report = LiftReport {
        tool: TOOL,
        inputs: inputs(cli, &[source_path(&args.source)])?,
        n: g.n(),
        lifted_entries: lifted.map(|m| m.matrix().row_iter().map(|r| r.iter().copied().collect()).collect()),
        lifted_arcs: arc_labels(&lift_signed_graph(&g), g.n()),
        structure: stage(analyze_lifted_structure(&g))?,
    };
    emit_json(cli, &report)
}

fn initial_state(s: &SwitchingSignal, x0: Option<&Path>, seed: u64) -> Result<(Vector, &'static str)> {
    match x0 {
        Some(path) => {
            let x = io::read_vector(path)?;
            if x.len() != s.n() {
                return Err(Error::DimensionMismatch { expected: s.n(), found: x.len() }.into());
            }
            Ok((x, "file"))
        }
        None => Ok((random_initial_condition(s.n(), seed), "random_unit_sphere")),
    }
}

fn run_simulation(
    s: &SwitchingSignal,
    x1: &Vector,
    steps: Option<usize>,
    tol: f64,
    lifted: bool,
) -> Result<(Trajectory, LimitVerdict)> {
    Ok(match steps {
        Some(t) => {
            let traj = if lifted {
                simulate_lifted(s, x1, t)?
            } else {
                dynamics::simulate(s, x1, t)?
            };
            let verdict = dynamics::detect_limit(&traj, tol);
            (traj, verdict)
        }
        None => run_to_verdict(s, x1, HorizonOptions { tol, lifted, ..HorizonOptions::default() })?,
    })
}

fn measure_for(verdict: &LimitVerdict) -> Option<SpreadMeasure> {
    match &verdict.kind {
        LimitKind::ZeroConsensus => Some(SpreadMeasure::MaxAbs),
        LimitKind::NonzeroModulusConsensus { b, .. } => Some(SpreadMeasure::Gauged { b: b.clone() }),
        LimitKind::Undetermined => None,
    }
}

fn verdict_rate(traj: &Trajectory, verdict: &LimitVerdict) -> Result<Stage<EmpiricalRate>> {
    match measure_for(verdict) {
        Some(m) => stage(empirical_rate(traj, m)),
        None => Ok(Stage::skipped("limit undetermined; no contraction regime to fit")),
    }
}

fn non_increasing(traj: &Trajectory) -> bool {
    traj.max_abs().windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
}

#[derive(Serialize)]
struct SimulationFindings {
    initial_state_source: &'static str,
    x1: Vec<f64>,
    horizon: usize,
    adaptive_horizon: bool,
    verdict: LimitVerdict,
    final_state: Vec<f64>,
    max_abs_non_increasing: bool,
    empirical_rate: Stage<EmpiricalRate>,
}

#[derive(Serialize)]
struct SimulateReport {
    tool: Tool,
    inputs: Inputs,
    signal_extended_from_finite_list: bool,
    simulation: SimulationFindings,
}

fn simulation_findings(
    cli: &Cli,
    s: &SwitchingSignal,
    x0: Option<&Path>,
    seed: u64,
    steps: Option<usize>,
    lifted: bool,
) -> Result<(Trajectory, SimulationFindings)> {
    let (x1, source) = initial_state(s, x0, seed)?;
    let (traj, verdict) = run_simulation(s, &x1, steps, cli.tol, lifted)?;
    let findings = SimulationFindings {
        initial_state_source: source,
        x1: x1.iter().copied().collect(),
        horizon: traj.horizon(),
        adaptive_horizon: steps.is_none(),
        empirical_rate: verdict_rate(&traj, &verdict)?,
        verdict,
        final_state: traj.last().iter().copied().collect(),
        max_abs_non_increasing: non_increasing(&traj),
    };
    Ok((traj, findings))
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> Result<()> {
    let s = io::read_signal(&args.signal, cli.row_sum_tol)?;
    let seed = args.random_seed.unwrap_or(cli.seed);
    let (traj, findings) = simulation_findings(cli, &s, args.x0.as_deref(), seed, args.steps, args.lifted)?;
    if let Some(path) = &args.out_trajectory {
        io::write_text(path, &io::trajectory_to_csv(&traj))?;
    }
    if let Some(path) = &args.out_spread {
        io::write_text(path, &io::spread_to_csv(&traj))?;
    }
    let mut files = vec![args.signal.as_path()];
    files.extend(args.x0.as_deref());
    let mut inputs = inputs(cli, &files)?;
    inputs.seed = seed;
    let report = SimulateReport {
        tool: TOOL,
        inputs,
        signal_extended_from_finite_list: s.is_extended(),
        simulation: findings,
    };
    if let Some(path) = &args.out_report {
        io::write_text(path, &serde_json::to_string_pretty(&report)?)?;
    }
    match cli.format {
        Format::Csv => emit_text(cli, &io::trajectory_to_csv(&traj)),
        Format::Json => emit_json(cli, &report),
    }
}

#[derive(Serialize)]
struct AgreementCheck {
    verdict: LimitVerdict,
    agrees: bool,
}

#[derive(Serialize)]
struct ClassifyReport {
    tool: Tool,
    inputs: Inputs,
    classification: SequenceClassification,
    simulation: Stage<AgreementCheck>,
}

fn classify(cli: &Cli, args: &ClassifyArgs) -> Result<()> {
    json_only(cli, "classify")?;
    let s = io::read_signal(&args.signal, cli.row_sum_tol)?;
    let classification = classify_sequence(&s, args.p, args.q)?;
    let simulation = if args.simulate {
        let x1 = random_initial_condition(s.n(), cli.seed);
        let (_, verdict) = run_simulation(&s, &x1, None, cli.tol, false)?;
        let agrees = classification.prediction.matches(&verdict);
        Stage::done(AgreementCheck { verdict, agrees })
    } else {
        Stage::skipped("not requested (--simulate)")
    };
    let failed = simulation.get().is_some_and(|c| !c.agrees);
    let report = ClassifyReport {
        tool: TOOL,
        inputs: inputs(cli, &[&args.signal])?,
        classification,
        simulation,
    };
    emit_json(cli, &report)?;
    if failed {
        return Err(CrossCheckFailed(vec!["prediction does not match the simulated limit".into()]).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct ApsSummary {
    lifted: bool,
    delta: f64,
    prefix_delta: Option<f64>,
    identity_residual: f64,
    tolerance: f64,
}

fn aps_summary(s: &SwitchingSignal, bound: &RateBound) -> Result<Stage<ApsSummary>> {
    let lifted = match bound.kind {
        RateKind::Balanced { .. } => false,
        RateKind::Unbalanced => true,
        RateKind::PeriodProduct { .. } => {
            return Ok(Stage::skipped("period-product bound uses the Perron vector of the product"))
        }
    };
    Ok(stage(absolute_probability_sequence(s, lifted))?.map_result(|aps| ApsSummary {
        lifted,
        delta: aps.delta,
        prefix_delta: aps.prefix_delta,
        identity_residual: aps.identity_residual(s),
        tolerance: APS_IDENTITY_TOL,
    }))
}

trait StageExt<T> {
    fn map_result<U>(self, f: impl FnOnce(T) -> U) -> Stage<U>;
}

impl<T> StageExt<T> for Stage<T> {
    fn map_result<U>(self, f: impl FnOnce(T) -> U) -> Stage<U> {
        Stage { result: self.result.map(f), reason: self.reason }
    }
}

fn measure_for_bound(bound: &RateBound) -> SpreadMeasure {
    match &bound.kind {
        RateKind::Balanced { b } | RateKind::PeriodProduct { b: Some(b), .. } => SpreadMeasure::Gauged { b: b.clone() },
        _ => SpreadMeasure::MaxAbs,
    }
}

#[derive(Serialize)]
struct BoundComparison {
    empirical: EmpiricalRate,
    /// `ρ - ρ_emp`; negative means the bound is violated.
    slack: f64,
}

fn compare(bound: &RateBound, traj: &Trajectory) -> Result<Stage<BoundComparison>> {
    Ok(stage(empirical_rate(traj, measure_for_bound(bound)))?.map_result(|empirical| BoundComparison {
        slack: bound.rho - empirical.rho,
        empirical,
    }))
}

#[derive(Serialize)]
struct RateReport {
    tool: Tool,
    inputs: Inputs,
    bound: RateBound,
    absolute_probability: Stage<ApsSummary>,
    comparison: Stage<BoundComparison>,
}

fn rate(cli: &Cli, args: &RateArgs) -> Result<()> {
    json_only(cli, "rate")?;
    let s = io::read_signal(&args.signal, cli.row_sum_tol)?;
    let bound = match args.mode {
        RateMode::Balanced => rate_bound_balanced(&s),
        RateMode::Unbalanced => rate_bound_unbalanced(&s),
        RateMode::Period => rate_bound_period_product(&s),
        RateMode::Auto => rate_bound_auto(&s),
    }?;
    let comparison = match &args.trajectory {
        Some(path) => compare(&bound, &io::read_trajectory(path)?)?,
        None => Stage::skipped("no trajectory supplied"),
    };
    let mut failures = Vec::new();
    if comparison.get().is_some_and(|c| c.slack < 0.0) {
        failures.push("empirical rate exceeds the bound".to_string());
    }
    if !bound.lifted_depth_checks_hold() {
        failures.push("lifted depth exceeds 2p* + c*".to_string());
    }
    let mut files = vec![args.signal.as_path()];
    files.extend(args.trajectory.as_deref());
    let report = RateReport {
        tool: TOOL,
        inputs: inputs(cli, &files)?,
        absolute_probability: aps_summary(&s, &bound)?,
        bound,
        comparison,
    };
    emit_json(cli, &report)?;
    if !failures.is_empty() {
        return Err(CrossCheckFailed(failures).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumReport {
    tool: Tool,
    inputs: Inputs,
    spectrum: SpectralReport,
}

fn spectrum(cli: &Cli, args: &SpectrumArgs) -> Result<()> {
    let a = io::read_weight_matrix(&args.matrix, cli.row_sum_tol)?;
    let spectrum = analyze_spectrum(&a)?;
    if cli.format == Format::Csv {
        let mut text = String::from("re,im,modulus\n");
        for &(re, im) in &spectrum.eigenvalues {
            text.push_str(&format!("{re:?},{im:?},{:?}\n", re.hypot(im)));
        }
        return emit_text(cli, &text);
    }
    emit_json(cli, &SpectrumReport { tool: TOOL, inputs: inputs(cli, &[&args.matrix])?, spectrum })
}

#[derive(Serialize)]
struct StepFindings {
    time: usize,
    strongly_connected: bool,
    balance: BalanceVerdict,
    lifted_structure: Stage<LiftedGraphStructure>,
}

#[derive(Serialize)]
struct RankOne {
    horizon: usize,
    c: Vec<f64>,
    residual: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct RateFindings {
    bound: RateBound,
    absolute_probability: Stage<ApsSummary>,
    comparison: Stage<BoundComparison>,
}

#[derive(Serialize)]
struct FullReport {
    tool: Tool,
    inputs: Inputs,
    signal: SignalSummary,
    steps: Vec<StepFindings>,
    classification: Stage<SequenceClassification>,
    windows: Vec<WindowFinding>,
    simulation: SimulationFindings,
    rank_one: Stage<RankOne>,
    rate: Stage<RateFindings>,
    spectrum: Stage<SpectralReport>,
    cross_checks: Vec<CrossCheck>,
}

#[derive(Serialize)]
struct SignalSummary {
    n: usize,
    prefix_len: usize,
    period_len: usize,
    beta: f64,
    extended_from_finite_list: bool,
}

fn full(cli: &Cli, args: &FullArgs) -> Result<()> {
    json_only(cli, "full")?;
    let s = io::read_signal(&args.signal, cli.row_sum_tol)?;
    let mut checks = Vec::new();

    let steps = (1..=s.prefix_len() + s.period_len())
        .map(|t| {
            let g = s.matrix_at(t).graph();
            Ok(StepFindings {
                time: t,
                strongly_connected: g.is_strongly_connected(),
                balance: check_balance(&g),
                lifted_structure: stage(analyze_lifted_structure(&g))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let classification = stage(classify_sequence(&s, None, None))?;
    let (traj, simulation) = simulation_findings(cli, &s, args.x0.as_deref(), cli.seed, args.steps, false)
        .context("simulation stage")?;
    if let Some(path) = &args.out_spread {
        io::write_text(path, &io::spread_to_csv(&traj))?;
    }
    checks.push(CrossCheck::new(
        "max_abs_non_increasing",
        simulation.max_abs_non_increasing,
        "max_i |x_i(t)| along the trajectory",
    ));

    let prediction = classification.get().map(|c| c.prediction.clone());
    if let Some(p) = &prediction {
        checks.push(CrossCheck::new(
            "prediction_vs_simulation",
            p.matches(&simulation.verdict),
            format!("predicted {p}, simulated {}", simulation.verdict.kind),
        ));
    }

    let rank_one = match &prediction {
        Some(Prediction::NonzeroModulusConsensus { b }) => {
            let (phi, horizon) = converged_transition_matrix(&s)?;
            let (c, residual) = rank_one_residual(&phi, b);
            checks.push(CrossCheck::new(
                "transition_matrix_rank_one",
                residual <= RANK_ONE_TOL,
                format!("max |Φ(T,1) - b c'| = {residual:e} at T = {horizon}"),
            ));
            Stage::done(RankOne { horizon, c: c.iter().copied().collect(), residual, tolerance: RANK_ONE_TOL })
        }
        Some(Prediction::ZeroConsensus) => Stage::skipped("prediction is zero consensus"),
        None => Stage::skipped("no classification"),
    };

    let rate = match stage(rate_bound_auto(&s))? {
        Stage { result: Some(bound), .. } => {
            let absolute_probability = aps_summary(&s, &bound)?;
            if let Some(aps) = absolute_probability.get() {
                checks.push(CrossCheck::new(
                    "absolute_probability_identity",
                    aps.identity_residual <= APS_IDENTITY_TOL && aps.delta > 0.0,
                    format!("residual {:e}, delta {:e}", aps.identity_residual, aps.delta),
                ));
            }
            if !bound.lifted_depth_checks.is_empty() {
                checks.push(CrossCheck::new(
                    "lifted_depth_bound",
                    bound.lifted_depth_checks_hold(),
                    "p̄* <= 2p* + c* per step",
                ));
            }
            let comparison = if simulation.verdict.kind == LimitKind::Undetermined {
                Stage::skipped("limit undetermined")
            } else {
                compare(&bound, &traj)?
            };
            if let Some(c) = comparison.get() {
                checks.push(CrossCheck::new(
                    "rate_bound_vs_empirical",
                    c.slack >= 0.0,
                    format!("bound {:.12} vs empirical {:.12}", bound.rho, c.empirical.rho),
                ));
            }
            Stage::done(RateFindings { bound, absolute_probability, comparison })
        }
        Stage { reason, .. } => Stage::skipped(format!(
            "no rate bound applies: {}",
            reason.unwrap_or_default()
        )),
    };

    let spectrum = match &s {
        SwitchingSignal::Constant(a) => {
            let report = stage(analyze_spectrum(a))?;
            if let (Some(r), Some(p)) = (report.get(), &prediction) {
                let expected = matches!(p, Prediction::NonzeroModulusConsensus { .. });
                let got = r.verdict == altafini_core::SpectralVerdict::SingleEigenvalueAtOne;
                checks.push(CrossCheck::new(
                    "spectrum_vs_prediction",
                    expected == got,
                    format!("spectral verdict {:?}, prediction {p}", r.verdict),
                ));
            }
            if let (SwitchingSignal::Constant(a), Some(p)) = (&s, &prediction) {
                let from_graph = check_balance(&a.graph()).clustering().cloned();
                let from_prediction = match p {
                    Prediction::NonzeroModulusConsensus { b } => Some(b.clone()),
                    Prediction::ZeroConsensus => None,
                };
                let from_simulation = simulation.verdict.clustering().cloned();
                checks.push(CrossCheck::new(
                    "clustering_consistency",
                    from_graph == from_prediction && from_prediction == from_simulation,
                    format!("balance {}, classifier {}, simulation {}", show(&from_graph), show(&from_prediction), show(&from_simulation)),
                ));
            }
            report
        }
        _ => Stage::skipped("spectral analysis applies to constant signals only"),
    };

    let mut files = vec![args.signal.as_path()];
    files.extend(args.x0.as_deref());
    let windows = classification.get().map(|c| c.windows.clone()).unwrap_or_default();
    let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let report = FullReport {
        tool: TOOL,
        inputs: inputs(cli, &files)?,
        signal: SignalSummary {
            n: s.n(),
            prefix_len: s.prefix_len(),
            period_len: s.period_len(),
            beta: s.beta(),
            extended_from_finite_list: s.is_extended(),
        },
        steps,
        classification,
        windows,
        simulation,
        rank_one,
        rate,
        spectrum,
        cross_checks: checks,
    };
    emit_json(cli, &report)?;
    if !failures.is_empty() {
        return Err(CrossCheckFailed(failures).into());
    }
    Ok(())
}

fn show(b: &Option<altafini_core::Clustering>) -> String {
    b.as_ref().map_or_else(|| "none".to_string(), |b| b.to_string())
}
