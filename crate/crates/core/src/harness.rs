//! Verification runs over graph streams: exhaustive checks, the conjecture
//! scan, the one-negative-edge complete family and randomized signed trials.
//!
//! Inputs are evaluated in fixed-size chunks on the worker pool and collected
//! in input order, so summaries and CSV output do not depend on the number of
//! workers.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{full_report, names, signed_report, BoundRecord, BoundReport, ReportOptions, EQUALITY_TOL};
use crate::enumerate::enumerate_connected_graphs;
use crate::error::{Error, Result};
use crate::graph::{gamma_n, random_connected, Graph, Sign, SignedGraph, WeightedSignedGraph};
use crate::graph6::{parse_graph6, write_graph6};
use crate::matrix::{build_matrix, MatrixKind};
use crate::par;
use crate::sg::{parse_sg, write_sg};
use crate::spectra::{eigen_sym, DEFAULT_EIGEN_TOL};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const MAX_RANDOM_ORDER: usize = 12;
pub const FAMILY_MAX: usize = 50;
/// Near-equality threshold for the weighted signed bound, which has no
/// stated equality characterization.
pub const NEAR_EQUALITY: f64 = 1e-6;
pub const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.8];
pub const MAX_REJECTIONS: usize = 10_000;
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Conjecture,
    Counterexample,
    RandomSigned,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Conjecture => "conjecture",
            Command::Counterexample => "counterexample",
            Command::RandomSigned => "random-signed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    /// graph6 document, one graph per line.
    Graph6File(PathBuf),
    /// A single `.sg` signed/weighted edge list.
    SgFile(PathBuf),
    /// Native enumeration of connected graphs with `min..=max` vertices.
    Enumerate { min: usize, max: usize },
    /// The signed complete graphs with one negative edge, `n_min..=n_max`.
    Family { n_min: usize, n_max: usize },
    Random { n_max: usize, trials: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: InputSource,
    /// Bound-name selectors; a record is kept when its name equals a selector
    /// or starts with `selector` followed by `-` or `(`. `None` keeps all.
    pub theorems: Option<Vec<String>>,
    pub alphas: Vec<f64>,
    pub tol: f64,
    pub threads: usize,
    pub fail_fast: bool,
}

impl RunConfig {
    pub fn new(command: Command, input: InputSource) -> Self {
        RunConfig {
            command,
            input,
            theorems: None,
            alphas: crate::bounds::DEFAULT_ALPHAS.to_vec(),
            tol: DEFAULT_TOL,
            threads: 1,
            fail_fast: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Argument(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.threads == 0 {
            return Err(Error::Argument("worker count must be at least 1".into()));
        }
        for &a in &self.alphas {
            if !(0.0..=0.5).contains(&a) {
                return Err(Error::Argument(format!("alpha = {a} outside [0, 1/2]")));
            }
        }
        if let Some(sel) = &self.theorems {
            for s in sel {
                if !KNOWN_SELECTORS.contains(&s.as_str()) {
                    return Err(Error::Argument(format!(
                        "unknown theorem '{s}'; expected one of {}",
                        KNOWN_SELECTORS.join(", ")
                    )));
                }
            }
        }
        match (&self.command, &self.input) {
            (Command::Counterexample, InputSource::Family { n_min, n_max }) => {
                if !(4 <= *n_min && n_min <= n_max && *n_max <= FAMILY_MAX) {
                    return Err(Error::Argument(format!(
                        "family range must satisfy 4 <= n-min <= n-max <= {FAMILY_MAX}"
                    )));
                }
            }
            (Command::Counterexample, _) => {
                return Err(Error::Argument("counterexample takes --n-min/--n-max".into()));
            }
            (Command::RandomSigned, InputSource::Random { n_max, trials, .. }) => {
                if !(2..=MAX_RANDOM_ORDER).contains(n_max) {
                    return Err(Error::Argument(format!(
                        "random-signed needs 2 <= n-max <= {MAX_RANDOM_ORDER}"
                    )));
                }
                if *trials == 0 {
                    return Err(Error::Argument("at least one trial is required".into()));
                }
            }
            (Command::RandomSigned, _) => {
                return Err(Error::Argument("random-signed takes --n-max/--trials/--seed".into()));
            }
            (_, InputSource::Family { .. } | InputSource::Random { .. }) => {
                return Err(Error::Argument(format!(
                    "{} takes --input or --enumerate",
                    self.command.name()
                )));
            }
            (_, InputSource::Enumerate { min, max }) if !(1 <= *min && min <= max) => {
                return Err(Error::Argument("empty enumeration range".into()));
            }
            _ => {}
        }
        Ok(())
    }

    fn report_options(&self) -> ReportOptions {
        ReportOptions {
            alphas: self.alphas.clone(),
            eigen_tol: DEFAULT_EIGEN_TOL,
            equality_tol: EQUALITY_TOL,
        }
    }

    fn selects(&self, name: &str) -> bool {
        match &self.theorems {
            None => true,
            Some(sel) => sel.iter().any(|s| selector_matches(s, name)),
        }
    }
}

pub const KNOWN_SELECTORS: &[&str] = &[
    names::EDGE_LAMBDA,
    names::VERTEX_LAMBDA,
    names::ABREU_NIKIFOROV,
    names::VERTEX_Q,
    names::A_ALPHA,
    "sandwich",
    names::EDGE_Q_CONJECTURE,
    names::SIGNED_ORDER,
    names::SIGNED_SIZE,
    names::SIGNED_FRUSTRATION,
    "signed-local",
    names::WEIGHTED_SIGNED_Q,
    names::SIGNED_EDGE_Q_ANALOGUE,
];

fn selector_matches(sel: &str, name: &str) -> bool {
    name == sel
        || name
            .strip_prefix(sel)
            .is_some_and(|rest| rest.starts_with('-') || rest.starts_with('('))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputErrorRecord {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub graph: String,
    pub bound: String,
    pub slack: f64,
    /// graph6 line or `.sg` document reproducing the failure.
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityCase {
    pub graph: String,
    pub bound: String,
    pub classification: String,
}

/// Equality observed where the characterization predicts none, or missing
/// where it predicts one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub graph: String,
    pub bound: String,
    pub equality: bool,
    pub classification: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinSlack {
    pub n: usize,
    pub graphs: usize,
    pub min_slack: f64,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub q: f64,
    pub q_closed_form: f64,
    pub rhs: f64,
    pub rhs_closed_form: f64,
    pub omega_b: usize,
    pub negative_edge_cb: usize,
    pub quotient_eigenvalues_found: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunSummary {
    pub command: String,
    pub processed: usize,
    pub skipped_disconnected: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub input_errors: Vec<InputErrorRecord>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub characterization_mismatches: Vec<Mismatch>,
    pub equality_cases: Vec<EqualityCase>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub near_equality: Vec<EqualityCase>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub min_slack: Vec<MinSlack>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidate_counterexamples: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub family: Vec<FamilyRow>,
    #[serde(skip_serializing_if = "is_zero")]
    pub low_p_fallbacks: usize,
    /// Stopped early on an input error.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub aborted: bool,
    /// Kept out of the JSON so identical runs serialize identically.
    #[serde(skip)]
    pub wall_time: Duration,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl RunSummary {
    /// 0 clean, 2 violations, 3 input errors under fail-fast.
    pub fn exit_code(&self, fail_fast: bool) -> i32 {
        if fail_fast && !self.input_errors.is_empty() {
            3
        } else if !self.violations.is_empty() || !self.characterization_mismatches.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// A finished run: the summary plus the per-graph reports, filtered to the
/// selected bounds, in input order.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub summary: RunSummary,
    pub reports: Vec<BoundReport>,
}

impl RunOutput {
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.reports {
            for row in r.csv_rows() {
                w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
            }
        }
        if self.reports.iter().all(|r| r.bounds.is_empty()) {
            w.write_record([
                "graph",
                "n",
                "m",
                "omega",
                "bound_name",
                "bound_value",
                "measured",
                "slack",
                "equality",
                "classification",
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    /// One JSON object per line, one line per report.
    pub fn reports_jsonl(&self) -> String {
        self.reports
            .iter()
            .map(|r| serde_json::to_string(r).expect("report serializes") + "\n")
            .collect()
    }
}

#[derive(Debug, Clone)]
enum Item {
    Plain { id: String, graph: Graph },
    Signed { id: String, ws: WeightedSignedGraph },
}

impl Item {
    fn certificate(&self) -> String {
        match self {
            Item::Plain { graph, .. } => write_graph6(graph).unwrap_or_else(|_| String::new()),
            Item::Signed { ws, .. } => write_sg(ws),
        }
    }
}

enum Outcome {
    Report(Box<BoundReport>),
    Disconnected,
    Failed(String),
}

fn evaluate(item: &Item, opts: &ReportOptions) -> Outcome {
    let (connected, result) = match item {
        Item::Plain { id, graph } => (graph.is_connected(), full_report(graph, id, opts)),
        Item::Signed { id, ws } => (
            ws.signed().underlying().is_connected(),
            signed_report(ws, id, opts),
        ),
    };
    if !connected {
        return Outcome::Disconnected;
    }
    match result {
        Ok(r) => Outcome::Report(Box::new(r)),
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

/// Stream of work items with their source line (0 when not file-backed).
type Produced = (usize, Result<Item>);

fn produce(config: &RunConfig) -> Result<Vec<Produced>> {
    match &config.input {
        InputSource::Graph6File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| {
                    let l = l.trim_end();
                    let item = parse_graph6(l).map(|graph| Item::Plain {
                        id: l.strip_prefix(crate::graph6::HEADER).unwrap_or(l).to_string(),
                        graph,
                    });
                    (i + 1, item)
                })
                .collect())
        }
        InputSource::SgFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let id = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sg".into());
            Ok(vec![(1, parse_sg(&text).map(|ws| Item::Signed { id, ws }))])
        }
        InputSource::Enumerate { min, max } => {
            let mut out = Vec::new();
            for n in *min..=*max {
                for g in enumerate_connected_graphs(n)? {
                    let id = write_graph6(&g)?;
                    out.push((0, Ok(Item::Plain { id, graph: g })));
                }
            }
            Ok(out)
        }
        InputSource::Family { n_min, n_max } => (*n_min..=*n_max)
            .map(|n| {
                let ws = WeightedSignedGraph::unit(gamma_n(n)?);
                Ok((0, Ok(Item::Signed { id: format!("gamma_n({n})"), ws })))
            })
            .collect(),
        InputSource::Random { .. } => Err(Error::Argument("random input is generated per trial".into())),
    }
}

/// Runs `config` on a pool of `config.threads` workers.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let start = Instant::now();
    let mut out = par::with_workers(config.threads, || match config.command {
        Command::Verify => cmd_verify(config),
        Command::Conjecture => cmd_conjecture(config),
        Command::Counterexample => cmd_counterexample(config),
        Command::RandomSigned => cmd_random_signed(config),
    })??;
    out.summary.wall_time = start.elapsed();
    Ok(out)
}

/// Evaluates produced items chunk by chunk, handing every report (in input
/// order) to `sink`.
fn stream(
    config: &RunConfig,
    items: Vec<Produced>,
    summary: &mut RunSummary,
    mut sink: impl FnMut(&Item, BoundReport, &mut RunSummary),
) {
    let opts = config.report_options();
    let mut pending: Vec<Item> = Vec::with_capacity(CHUNK);
    let mut flush = |pending: &mut Vec<Item>, summary: &mut RunSummary| {
        let outcomes = par::map(pending, |item| evaluate(item, &opts));
        for (item, outcome) in pending.drain(..).zip(outcomes) {
            match outcome {
                Outcome::Report(r) => {
                    summary.processed += 1;
                    sink(&item, *r, summary);
                }
                Outcome::Disconnected => summary.skipped_disconnected += 1,
                Outcome::Failed(message) => summary.input_errors.push(InputErrorRecord {
                    line: 0,
                    message: format!("{}: {message}", item_id(&item)),
                }),
            }
        }
    };
    for (line, item) in items {
        match item {
            Ok(item) => {
                pending.push(item);
                if pending.len() == CHUNK {
                    flush(&mut pending, summary);
                }
            }
            Err(e) => {
                summary.input_errors.push(InputErrorRecord {
                    line,
                    message: e.to_string(),
                });
                if config.fail_fast {
                    summary.aborted = true;
                    break;
                }
            }
        }
    }
    flush(&mut pending, summary);
}

fn item_id(item: &Item) -> &str {
    match item {
        Item::Plain { id, .. } | Item::Signed { id, .. } => id,
    }
}

/// Recomputes `item` with a ten times tighter eigensolver tolerance and
/// returns the bound's slack there.
fn reverify(item: &Item, bound: &str, alphas: &[f64]) -> Option<f64> {
    let opts = ReportOptions {
        alphas: alphas.to_vec(),
        eigen_tol: DEFAULT_EIGEN_TOL / 10.0,
        equality_tol: EQUALITY_TOL,
    };
    match evaluate(item, &opts) {
        Outcome::Report(r) => r.record(bound).map(|b| b.slack),
        _ => None,
    }
}

fn keep_selected(config: &RunConfig, mut report: BoundReport) -> BoundReport {
    report.bounds.retain(|b| config.selects(&b.name));
    report
}

/// Equality expected by the characterization of `record`, if it has one.
fn expected_equality(record: &BoundRecord, report: &BoundReport) -> Option<bool> {
    let c = report.classification;
    match record.name.as_str() {
        names::VERTEX_Q | names::ABREU_NIKIFOROV | names::EDGE_LAMBDA => Some(c.attains_q_bound()),
        names::VERTEX_LAMBDA => Some(c.is_regular_complete_multipartite()),
        _ => None,
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<RunOutput> {
    let items = produce(config)?;
    let mut summary = RunSummary {
        command: Command::Verify.name().into(),
        ..Default::default()
    };
    let mut reports = Vec::new();
    stream(config, items, &mut summary, |item, report, summary| {
        let report = keep_selected(config, report);
        record_violations(config, item, &report, summary);
        if !report.degenerate {
            let signed = matches!(item, Item::Signed { .. });
            for b in report.bounds.iter().filter(|b| b.asserted) {
                if b.equality {
                    summary.equality_cases.push(EqualityCase {
                        graph: report.graph.clone(),
                        bound: b.name.clone(),
                        classification: report.classification.to_string(),
                    });
                }
                if signed && b.name == names::WEIGHTED_SIGNED_Q && b.slack < NEAR_EQUALITY {
                    summary.near_equality.push(EqualityCase {
                        graph: report.graph.clone(),
                        bound: b.name.clone(),
                        classification: report.classification.to_string(),
                    });
                }
                if signed {
                    continue;
                }
                if let Some(expected) = expected_equality(b, &report) {
                    if expected != b.equality {
                        summary.characterization_mismatches.push(Mismatch {
                            graph: report.graph.clone(),
                            bound: b.name.clone(),
                            equality: b.equality,
                            classification: report.classification.to_string(),
                        });
                    }
                }
            }
        }
        reports.push(report);
    });
    Ok(RunOutput { summary, reports })
}

fn record_violations(config: &RunConfig, item: &Item, report: &BoundReport, summary: &mut RunSummary) {
    for b in report.violations(config.tol) {
        // Confirm at a tighter eigensolver tolerance before reporting.
        let Some(slack) = reverify(item, &b.name, &config.alphas) else {
            continue;
        };
        if slack < -config.tol {
            summary.violations.push(Violation {
                graph: report.graph.clone(),
                bound: b.name.clone(),
                slack,
                certificate: item.certificate(),
            });
        }
    }
}

/// Scans the edge-localized conjecture. Reports and never fails.
pub fn cmd_conjecture(config: &RunConfig) -> Result<RunOutput> {
    let items = produce(config)?;
    let mut summary = RunSummary {
        command: Command::Conjecture.name().into(),
        ..Default::default()
    };
    let mut reports = Vec::new();
    stream(config, items, &mut summary, |item, mut report, summary| {
        let target = match item {
            Item::Plain { .. } => names::EDGE_Q_CONJECTURE,
            Item::Signed { .. } => names::SIGNED_EDGE_Q_ANALOGUE,
        };
        report.bounds.retain(|b| b.name == target);
        let Some(b) = report.bounds.first() else {
            reports.push(report);
            return;
        };
        if !report.degenerate {
            match summary.min_slack.iter_mut().find(|m| m.n == report.n) {
                Some(m) => {
                    m.graphs += 1;
                    if b.slack < m.min_slack {
                        m.min_slack = b.slack;
                        m.graph = report.graph.clone();
                    }
                }
                None => summary.min_slack.push(MinSlack {
                    n: report.n,
                    graphs: 1,
                    min_slack: b.slack,
                    graph: report.graph.clone(),
                }),
            }
            if b.equality {
                summary.equality_cases.push(EqualityCase {
                    graph: report.graph.clone(),
                    bound: b.name.clone(),
                    classification: report.classification.to_string(),
                });
            } else if b.slack < -config.tol {
                if let Some(slack) = reverify(item, &b.name, &config.alphas) {
                    if slack < -config.tol {
                        summary.candidate_counterexamples.push(Violation {
                            graph: report.graph.clone(),
                            bound: b.name.clone(),
                            slack,
                            certificate: item.certificate(),
                        });
                    }
                }
            }
        }
        reports.push(report);
    });
    Ok(RunOutput { summary, reports })
}

/// Closed form of `λ₁(Q(Γ_n))` for the one-negative-edge complete graph.
pub fn gamma_q_closed_form(n: usize) -> f64 {
    let n = n as f64;
    (3.0 * n - 6.0 + (n * n + 4.0 * n - 12.0).sqrt()) / 2.0
}

/// Closed form of the signed edge-localized right-hand side on `Γ_n`.
pub fn gamma_rhs_closed_form(n: usize) -> f64 {
    let n = n as f64;
    2.0 * (n - 1.0) - 4.0 * (n - 2.0) / ((n - 1.0) * (n - 1.0))
}

/// Eigenvalues of the two-class quotient of `A(Γ_n)`.
pub fn gamma_quotient_eigenvalues(n: usize) -> [f64; 2] {
    let n = n as f64;
    let d = (n * n + 4.0 * n - 12.0).sqrt();
    [(n - 4.0 + d) / 2.0, (n - 4.0 - d) / 2.0]
}

fn family_row(n: usize, report: &BoundReport, tol: f64) -> Result<FamilyRow> {
    let s = gamma_n(n)?;
    let rhs = report
        .record(names::SIGNED_EDGE_Q_ANALOGUE)
        .map(|b| b.value)
        .ok_or_else(|| Error::Numerical("missing edge-localized record".into()))?;
    let q_closed_form = gamma_q_closed_form(n);
    let rhs_closed_form = gamma_rhs_closed_form(n);
    let bprofile = report.balanced_clique.as_ref().expect("signed report");
    let e01 = s.underlying().edge_index(0, 1).expect("complete graph");
    let spectrum = eigen_sym(&build_matrix(&s, MatrixKind::SignedAdjacency)?, DEFAULT_EIGEN_TOL)?.values;
    let quotient_eigenvalues_found = gamma_quotient_eigenvalues(n)
        .iter()
        .all(|ev| spectrum.iter().any(|x| (x - ev).abs() < tol));
    let omega_b = report.omega_b.expect("signed report");
    let negative_edge_cb = bprofile.per_edge[e01];
    let passed = (report.q - q_closed_form).abs() < tol
        && (rhs - rhs_closed_form).abs() < tol
        && rhs < report.q
        && omega_b == n - 1
        && negative_edge_cb == 2
        && quotient_eigenvalues_found;
    Ok(FamilyRow {
        n,
        q: report.q,
        q_closed_form,
        rhs,
        rhs_closed_form,
        omega_b,
        negative_edge_cb,
        quotient_eigenvalues_found,
        passed,
    })
}

/// Checks the one-negative-edge complete graphs against their closed forms
/// and confirms the signed edge-localized analogue fails on each.
pub fn cmd_counterexample(config: &RunConfig) -> Result<RunOutput> {
    let InputSource::Family { n_min, n_max } = config.input else {
        return Err(Error::Argument("counterexample takes a family range".into()));
    };
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let opts = config.report_options();
    let results = par::map(&ns, |&n| -> Result<(BoundReport, FamilyRow)> {
        let ws = WeightedSignedGraph::unit(gamma_n(n)?);
        let report = signed_report(&ws, &format!("gamma_n({n})"), &opts)?;
        let row = family_row(n, &report, config.tol)?;
        Ok((report, row))
    });
    let mut summary = RunSummary {
        command: Command::Counterexample.name().into(),
        ..Default::default()
    };
    let mut reports = Vec::new();
    for (n, result) in ns.into_iter().zip(results) {
        let (report, row) = result?;
        summary.processed += 1;
        let certificate = write_sg(&WeightedSignedGraph::unit(gamma_n(n)?));
        if !row.passed {
            summary.violations.push(Violation {
                graph: report.graph.clone(),
                bound: names::SIGNED_EDGE_Q_ANALOGUE.into(),
                slack: row.rhs - row.q,
                certificate: certificate.clone(),
            });
        }
        for b in report.violations(config.tol) {
            summary.violations.push(Violation {
                graph: report.graph.clone(),
                bound: b.name.clone(),
                slack: b.slack,
                certificate: certificate.clone(),
            });
        }
        summary.family.push(row);
        reports.push(keep_selected(config, report));
    }
    Ok(RunOutput { summary, reports })
}

/// Random weighted signed graph for trial `index`. Each trial draws from its
/// own ChaCha stream, so trials are independent of evaluation order.
pub fn random_trial(seed: u64, index: u64, n_max: usize) -> Result<(WeightedSignedGraph, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = rng.random_range(2..=n_max);
    let mut pi = rng.random_range(0..EDGE_PROBABILITIES.len());
    let mut fell_back = false;
    let g = loop {
        match random_connected(n, EDGE_PROBABILITIES[pi], &mut rng, MAX_REJECTIONS)? {
            Some(g) => break g,
            None if pi + 1 < EDGE_PROBABILITIES.len() => {
                pi += 1;
                fell_back = true;
            }
            None => return Err(Error::Numerical(format!("no connected sample on {n} vertices"))),
        }
    };
    let signs = (0..g.size())
        .map(|_| if rng.random_bool(0.5) { Sign::Positive } else { Sign::Negative })
        .collect();
    // (0.1, 10]
    let weights = (0..n).map(|_| 10.0 - 9.9 * rng.random::<f64>()).collect();
    Ok((WeightedSignedGraph::new(SignedGraph::new(g, signs)?, weights)?, fell_back))
}

/// Randomized check of the weighted signed bound and the signed spectral
/// Turán forms.
pub fn cmd_random_signed(config: &RunConfig) -> Result<RunOutput> {
    let InputSource::Random { n_max, trials, seed } = config.input else {
        return Err(Error::Argument("random-signed takes a random input".into()));
    };
    let mut summary = RunSummary {
        command: Command::RandomSigned.name().into(),
        ..Default::default()
    };
    let mut items = Vec::with_capacity(trials);
    for i in 0..trials {
        let (ws, fell_back) = random_trial(seed, i as u64, n_max)?;
        summary.low_p_fallbacks += fell_back as usize;
        items.push((
            0,
            Ok(Item::Signed {
                id: format!("trial-{i}"),
                ws,
            }),
        ));
    }
    let mut reports = Vec::new();
    stream(config, items, &mut summary, |item, report, summary| {
        let report = keep_selected(config, report);
        record_violations(config, item, &report, summary);
        if let Some(b) = report.record(names::WEIGHTED_SIGNED_Q) {
            if b.slack < NEAR_EQUALITY && !report.degenerate {
                summary.near_equality.push(EqualityCase {
                    graph: report.graph.clone(),
                    bound: b.name.clone(),
                    classification: report.classification.to_string(),
                });
            }
        }
        reports.push(report);
    });
    Ok(RunOutput { summary, reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert!(selector_matches("a-alpha", "a-alpha(0.25)"));
        assert!(selector_matches("sandwich", "sandwich-lower"));
        assert!(selector_matches("vertex-q", "vertex-q"));
        assert!(!selector_matches("vertex-q", "vertex-lambda"));
        assert!(selector_matches("signed-local", "signed-local-edge"));
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig::new(Command::Verify, InputSource::Enumerate { min: 3, max: 3 });
        assert!(c.validate().is_ok());
        c.tol = 0.0;
        assert!(c.validate().is_err());
        c.tol = 1e-8;
        c.theorems = Some(vec!["nope".into()]);
        assert!(c.validate().is_err());
        let c = RunConfig::new(Command::Counterexample, InputSource::Family { n_min: 3, n_max: 5 });
        assert!(c.validate().is_err());
        let c = RunConfig::new(Command::RandomSigned, InputSource::Random { n_max: 13, trials: 1, seed: 0 });
        assert!(c.validate().is_err());
        let c = RunConfig::new(Command::Verify, InputSource::Family { n_min: 4, n_max: 5 });
        assert!(c.validate().is_err());
    }

    #[test]
    fn verify_single_vertex() {
        let c = RunConfig::new(Command::Verify, InputSource::Enumerate { min: 1, max: 1 });
        let out = run(&c).unwrap();
        assert_eq!(out.summary.processed, 1);
        assert!(out.summary.violations.is_empty());
        assert!(out.reports[0].degenerate);
        assert_eq!(out.summary.exit_code(false), 0);
    }

    #[test]
    fn conjecture_on_two_vertices() {
        let c = RunConfig::new(Command::Conjecture, InputSource::Enumerate { min: 2, max: 2 });
        let out = run(&c).unwrap();
        assert_eq!(out.summary.equality_cases.len(), 1);
        assert!(out.summary.min_slack[0].min_slack.abs() < 1e-12);
    }

    #[test]
    fn counterexample_small_range() {
        let c = RunConfig::new(Command::Counterexample, InputSource::Family { n_min: 4, n_max: 6 });
        let out = run(&c).unwrap();
        assert!(out.summary.family.iter().all(|r| r.passed));
        let r4 = &out.summary.family[0];
        assert!((r4.q - (3.0 + 5f64.sqrt())).abs() < 1e-10);
        assert!((r4.rhs - 46.0 / 9.0).abs() < 1e-10);
        assert_eq!(out.summary.exit_code(false), 0);
    }

    #[test]
    fn exit_codes() {
        let mut s = RunSummary::default();
        assert_eq!(s.exit_code(true), 0);
        s.violations.push(Violation {
            graph: "C~".into(),
            bound: names::VERTEX_Q.into(),
            slack: -1.0,
            certificate: "C~".into(),
        });
        assert_eq!(s.exit_code(false), 2);
        s.input_errors.push(InputErrorRecord {
            line: 3,
            message: "bad".into(),
        });
        assert_eq!(s.exit_code(false), 2);
        assert_eq!(s.exit_code(true), 3);
    }

    #[test]
    fn random_trials_are_reproducible() {
        let (a, _) = random_trial(42, 7, 10).unwrap();
        let (b, _) = random_trial(42, 7, 10).unwrap();
        assert_eq!(a, b);
        assert!(a.weights().iter().all(|&w| w > 0.1 && w <= 10.0));
        assert!(a.signed().underlying().is_connected());
    }
}
