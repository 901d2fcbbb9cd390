//! Browser bindings: step through a forcing chronology, compute `Z(G)` and
//! run the check suite. Every entry point takes plain strings and returns a
//! JSON string so the page needs no glue beyond `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use zforce::bounds::BoundReport;
use zforce::forcing::{derived_set, ForceEvent};
use zforce::graph::{named_graph, parse_graph_line, write_graph6, Graph};
use zforce::machinery::run_all_checks;
use zforce::solver::{zero_forcing_number, SolveOutcome, SolverConfig};
use zforce::VertexSet;

/// Keeps a single click from freezing the tab on large inputs.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Accepts a named graph (`petersen`, `cycle(7)`, ...) or a graph6/sparse6
/// line.
pub fn load_graph(text: &str) -> Result<Graph, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("enter a graph name or a graph6 line".into());
    }
    named_graph(text).or_else(|named_err| {
        parse_graph_line(text)
            .map_err(|g6_err| format!("not a known name ({named_err}) nor graph6 ({g6_err})"))
    })
}

pub fn parse_vertices(text: &str, n: usize) -> Result<VertexSet, String> {
    let vs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format!("{t:?} is not a vertex index"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    VertexSet::from_vertices(n, vs).map_err(|v| format!("vertex {v} is out of range 0..{n}"))
}

#[derive(Serialize)]
struct GraphView {
    graph6: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphView {
    fn of(g: &Graph) -> Self {
        GraphView {
            graph6: write_graph6(g),
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

#[derive(Serialize)]
struct Simulation {
    graph: GraphView,
    initial: Vec<usize>,
    events: Vec<ForceEvent>,
    closure: Vec<usize>,
    zero_forcing: bool,
}

pub fn simulate_json(graph: &str, initial: &str) -> Result<String, String> {
    let g = load_graph(graph)?;
    let s = parse_vertices(initial, g.n())?;
    let (closure, chron) = derived_set(&g, &s);
    let sim = Simulation {
        graph: GraphView::of(&g),
        initial: s.to_vec(),
        events: chron.events,
        zero_forcing: closure.is_full(),
        closure: closure.to_vec(),
    };
    serde_json::to_string(&sim).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Solution {
    graph: GraphView,
    exact: bool,
    lower: usize,
    upper: usize,
    witness: Vec<usize>,
    nodes_explored: u64,
    bounds: BoundReport,
}

pub fn solve_json(graph: &str, budget: Option<u64>) -> Result<String, String> {
    let g = load_graph(graph)?;
    let cfg = SolverConfig {
        node_budget: Some(budget.unwrap_or(DEFAULT_NODE_BUDGET)),
        ..Default::default()
    };
    let outcome = zero_forcing_number(&g, &cfg).map_err(|e| e.to_string())?;
    let (lower, upper) = outcome.bounds();
    let (exact, witness) = match &outcome {
        SolveOutcome::Exact(r) => (true, r.witness.to_vec()),
        SolveOutcome::Budget(b) => (false, b.upper_witness.to_vec()),
    };
    let sol = Solution {
        graph: GraphView::of(&g),
        exact,
        lower,
        upper,
        witness,
        nodes_explored: outcome.nodes_explored(),
        bounds: BoundReport::new(&g, exact.then_some(lower)),
    };
    serde_json::to_string(&sol).map_err(|e| e.to_string())
}

pub fn lemmas_json(graph: &str, initial: &str) -> Result<String, String> {
    let g = load_graph(graph)?;
    let s = parse_vertices(initial, g.n())?;
    let report = run_all_checks(&g, &s).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// Canonical chronology for `initial` on `graph`, with the graph's edge list.
#[wasm_bindgen]
pub fn simulate(graph: &str, initial: &str) -> Result<String, JsValue> {
    simulate_json(graph, initial).map_err(|e| JsValue::from_str(&e))
}

/// Exact `Z(G)` and a minimum witness, or an interval if `budget` runs out.
#[wasm_bindgen]
pub fn solve(graph: &str, budget: Option<f64>) -> Result<String, JsValue> {
    let budget = budget.filter(|b| *b >= 1.0).map(|b| b as u64);
    solve_json(graph, budget).map_err(|e| JsValue::from_str(&e))
}

/// The check suite for a zero forcing set on a graph of girth at least 5.
#[wasm_bindgen]
pub fn lemmas(graph: &str, initial: &str) -> Result<String, JsValue> {
    lemmas_json(graph, initial).map_err(|e| JsValue::from_str(&e))
}
