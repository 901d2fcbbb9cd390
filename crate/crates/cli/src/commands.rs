use std::time::Instant;

use serde::Serialize;
use zforce::bounds::{
    abajo_dianez_ex, davila_kenter_bound, extremal_bruteforce, mantel_ex, EXTREMAL_MAX_N,
};
use zforce::graph::{parse_graph_line, write_graph6, Graph, NamedGraph};
use zforce::machinery::{run_all_checks, LemmaReport, MachineryError};
use zforce::solver::{brute_force_oracle, zero_forcing_number, SolveOutcome, SolverConfig};
use zforce::VertexSet;

use crate::record::{LemmaSummary, RunRecord, Status, ZValue};

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn describe(mut r: RunRecord, g: &Graph) -> RunRecord {
    r.n = Some(g.n());
    r.edges = Some(g.edge_count());
    r.girth = Some(g.girth());
    r.min_degree = Some(g.min_degree());
    r.dk_bound = davila_kenter_bound(g.girth(), g.min_degree()).ok();
    r
}

fn with_outcome(mut r: RunRecord, outcome: &SolveOutcome) -> RunRecord {
    r.z = Some(ZValue::from(outcome));
    match outcome {
        SolveOutcome::Exact(res) => {
            r.witness = Some(res.witness.to_vec());
            r.lower_bound_used = Some(res.lower_bound_used);
            r.slack = r.dk_bound.map(|b| res.z as i64 - b as i64);
        }
        SolveOutcome::Budget(b) => {
            r.witness = Some(b.upper_witness.to_vec());
            r.reason = Some(format!(
                "node budget exhausted after {} nodes",
                b.nodes_explored
            ));
        }
    }
    r
}

fn parse(index: usize, line: &str) -> Result<Graph, Box<RunRecord>> {
    parse_graph_line(line).map_err(|e| Box::new(RunRecord::new(index, line).error(e)))
}

/// `Z(G)` for one input line, optionally cross-checked by enumeration.
pub fn number(index: usize, line: &str, cfg: &SolverConfig, oracle: bool) -> RunRecord {
    let start = Instant::now();
    let mut r = match parse(index, line) {
        Ok(g) => number_graph(RunRecord::new(index, line), &g, cfg, oracle),
        Err(r) => *r,
    };
    r.wall_time_ms = elapsed_ms(start);
    r
}

fn number_graph(r: RunRecord, g: &Graph, cfg: &SolverConfig, oracle: bool) -> RunRecord {
    let r = describe(r, g);
    let outcome = match zero_forcing_number(g, cfg) {
        Ok(o) => o,
        Err(e) => return r.error(e),
    };
    let mut r = with_outcome(r, &outcome);
    if oracle {
        match brute_force_oracle(g) {
            Ok(res) => {
                r.oracle_z = Some(res.z);
                if let SolveOutcome::Exact(fast) = &outcome {
                    if fast.z != res.z {
                        r.status = Status::Violation;
                        r.reason = Some(format!(
                            "solver gave {} but enumeration gave {}",
                            fast.z, res.z
                        ));
                    }
                }
            }
            Err(e) => return r.error(format!("oracle: {e}")),
        }
    }
    r
}

/// Compares `Z(G)` with the girth/degree bound. The solver is not seeded
/// with the bound here, so a violation could actually be observed.
pub fn check_bound(index: usize, line: &str, cfg: &SolverConfig) -> RunRecord {
    let start = Instant::now();
    let mut r = match parse(index, line) {
        Ok(g) => check_bound_graph(RunRecord::new(index, line), &g, cfg),
        Err(r) => *r,
    };
    r.wall_time_ms = elapsed_ms(start);
    r
}

fn check_bound_graph(r: RunRecord, g: &Graph, cfg: &SolverConfig) -> RunRecord {
    let r = describe(r, g);
    let Some(bound) = r.dk_bound else {
        let reason = if g.girth().finite().is_none() {
            "acyclic graph has no girth"
        } else {
            "minimum degree below 2"
        };
        return r.skipped(reason);
    };
    let cfg = SolverConfig {
        use_structural_bound: false,
        ..cfg.clone()
    };
    let outcome = match zero_forcing_number(g, &cfg) {
        Ok(o) => o,
        Err(e) => return r.error(e),
    };
    let mut r = with_outcome(r, &outcome);
    let (lower, upper) = outcome.bounds();
    if upper < bound {
        r.status = Status::Violation;
        r.slack = Some(upper as i64 - bound as i64);
        r.reason = Some(format!(
            "a zero forcing set of size {upper} is below the bound {bound}"
        ));
    } else if lower < bound {
        r.status = Status::Inconclusive;
    } else if r.slack.is_none() {
        // interval entirely above the bound: report the slack it guarantees
        r.slack = Some(lower as i64 - bound as i64);
    }
    r
}

#[derive(Debug, Clone)]
pub enum LemmaSet {
    Given(Vec<usize>),
    Minimum,
}

/// The full check suite for one graph and initial set.
pub fn lemmas(index: usize, line: &str, set: &LemmaSet, cfg: &SolverConfig) -> RunRecord {
    let start = Instant::now();
    let mut r = match parse(index, line) {
        Ok(g) => lemmas_graph(RunRecord::new(index, line), &g, set, cfg),
        Err(r) => *r,
    };
    r.wall_time_ms = elapsed_ms(start);
    r
}

fn lemmas_graph(r: RunRecord, g: &Graph, set: &LemmaSet, cfg: &SolverConfig) -> RunRecord {
    let mut r = describe(r, g);
    match g.girth().finite() {
        None => return r.skipped("acyclic graph; girth at least 5 is required"),
        Some(gi) if gi < 5 => return r.skipped(format!("girth {gi} is below 5")),
        Some(_) => {}
    }
    let s = match set {
        LemmaSet::Given(vs) => match VertexSet::from_vertices(g.n(), vs.iter().copied()) {
            Ok(s) => s,
            Err(v) => return r.error(format!("vertex {v} is out of range for {} vertices", g.n())),
        },
        LemmaSet::Minimum => match zero_forcing_number(g, cfg) {
            Ok(SolveOutcome::Exact(res)) => {
                r.z = Some(ZValue::Exact(res.z));
                res.witness
            }
            Ok(SolveOutcome::Budget(b)) => {
                r.status = Status::Inconclusive;
                r.z = Some(ZValue::Interval {
                    lower: b.lower,
                    upper: b.upper,
                });
                r.reason = Some("node budget exhausted before a minimum set was found".into());
                return r;
            }
            Err(e) => return r.error(e),
        },
    };
    r.set = Some(s.to_vec());
    match run_all_checks(g, &s) {
        Ok(report) => attach_report(r, report),
        Err(e @ MachineryError::NotZeroForcing { .. }) => r.error(e),
        Err(e) => r.skipped(e),
    }
}

fn attach_report(mut r: RunRecord, report: LemmaReport) -> RunRecord {
    r.lemma_summary = Some(LemmaSummary {
        pass: report.summary.pass,
        fail: report.summary.fail,
        skipped: report.summary.inapplicable,
    });
    if !report.passed {
        r.status = Status::Violation;
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        r.reason = Some(format!("failed checks: {}", names.join(", ")));
    }
    r.lemmas = Some(report);
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub ell: usize,
    pub rule: &'static str,
    pub formula: usize,
    pub oracle: Option<usize>,
    pub agree: Option<bool>,
    pub witness_graph6: Option<String>,
    pub wall_time_ms: f64,
}

/// `ex(n; {C3, ..., Cl})` from the closed forms, optionally checked by
/// exhaustive search. Errors are usage errors.
pub fn extremal(n: usize, ell: usize, oracle: bool) -> Result<ExtremalRecord, String> {
    let start = Instant::now();
    let (rule, formula) = match ell {
        0..=2 => return Err(format!("l = {ell} is below 3")),
        3 => ("mantel", mantel_ex(n)),
        _ => (
            "girth_window",
            abajo_dianez_ex(n, ell).map_err(|e| e.to_string())?,
        ),
    };
    let mut rec = ExtremalRecord {
        n,
        ell,
        rule,
        formula,
        oracle: None,
        agree: None,
        witness_graph6: None,
        wall_time_ms: 0.0,
    };
    if oracle {
        if n > EXTREMAL_MAX_N {
            return Err(format!("--oracle needs n <= {EXTREMAL_MAX_N}"));
        }
        let (edges, witness) = extremal_bruteforce(n, ell).map_err(|e| e.to_string())?;
        rec.oracle = Some(edges);
        rec.agree = Some(edges == formula);
        rec.witness_graph6 = Some(write_graph6(&witness));
    }
    rec.wall_time_ms = elapsed_ms(start);
    Ok(rec)
}

/// Full report for a named graph: invariants, exact `Z`, the bound and,
/// when the girth is at least 5, the check suite on the solver's witness.
pub fn named_report(name: NamedGraph, cfg: &SolverConfig) -> RunRecord {
    let start = Instant::now();
    let g = name.build().expect("parsed names build");
    let r = RunRecord::new(0, write_graph6(&g));
    let mut r = number_graph(r, &g, cfg, false);
    if r.status == Status::Ok && g.girth().finite().is_some_and(|gi| gi >= 5) {
        if let Some(witness) = r.witness.clone() {
            r = lemmas_graph(r, &g, &LemmaSet::Given(witness), cfg);
            // keep records compact; the summary says what ran
            r.lemmas = None;
        }
    }
    r.wall_time_ms = elapsed_ms(start);
    r
}
