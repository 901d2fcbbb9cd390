//! Auxiliary structures built from a forcing chronology on a graph of girth
//! at least 5, and checks of the identities relating them.
//!
//! Given an initial black set `S` and its chronology `x_1 → y_1, …, x_t → y_t`,
//! let `X = (x_1, …, x_m)` with `m = min(t, g − 2)`. Then
//!
//! * `S_i` is the set of vertices of `S ∩ N(x_i)` not adjacent to any earlier
//!   `x_j`; `S*_X` is their union and `S_X = (S ∩ X) \ S*_X`;
//! * `H1 = (X, E1)` is the subgraph of `G` induced by `X`;
//! * `H2 = (X, E2)` joins `x_j, x_i` (`j < i`) when `N(x_i)` meets
//!   `S_j ∪ {y_j}`; the vertex it meets is the unique common neighbor of the
//!   pair, stored as the edge's witness;
//! * the components `X_1, …, X_k` of `H1` split `E2` into `E2'` (inside a
//!   component) and `E2''` (between components);
//! * `H3 = (X, E1 ∪ E2'')`, and `H4` is the graph on component indices with
//!   an edge wherever `E2''` joins two components.
//!
//! Indices into `X` are 0-based positions throughout this module.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::forcing::{derived_set, Chronology, ForceEvent, ReplayError};
use crate::graph::{write_graph6, Girth, Graph};
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineryError {
    #[error("graph is acyclic; girth at least 5 is required")]
    Acyclic,
    #[error("girth {0} is below 5")]
    GirthTooSmall(usize),
    #[error("invalid chronology: {0}")]
    InvalidChronology(#[from] ReplayError),
    #[error("initial set is not zero forcing: closure has {closure} of {n} vertices")]
    NotZeroForcing { closure: usize, n: usize },
}

/// An `E2` edge between positions `earlier < later` of `X`, with the common
/// neighbor that certifies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E2Edge {
    pub earlier: usize,
    pub later: usize,
    pub witness: usize,
}

#[derive(Debug, Clone)]
pub struct Machinery<'g> {
    pub graph: &'g Graph,
    pub chronology: Chronology,
    pub girth: usize,
    pub min_degree: usize,
    /// Forcing vertices `x_1, …, x_m`.
    pub x: Vec<usize>,
    /// Forced vertices `y_1, …, y_m`.
    pub y: Vec<usize>,
    pub s_sets: Vec<VertexSet>,
    pub s_x_star: VertexSet,
    pub s_x_isolated: VertexSet,
    /// `H1` edges as position pairs `(j, i)` with `j < i`.
    pub e1: Vec<(usize, usize)>,
    pub e2: Vec<E2Edge>,
    /// Pairs whose `N(x_i) ∩ (S_j ∪ {y_j})` held more than one vertex.
    pub e2_ambiguous: Vec<(usize, usize)>,
    /// Components of `H1` as sorted position lists, largest first, ties by
    /// smallest position.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// Number of components with at least two vertices.
    pub l: usize,
    /// Indices into `e2`.
    pub e2_prime: Vec<usize>,
    pub e2_double_prime: Vec<usize>,
    /// `H4` edge multiplicities keyed by component pair `(p, q)`, `p < q`.
    pub h4: BTreeMap<(usize, usize), usize>,
    /// Set when the chronology has fewer than `g − 2` events.
    pub truncated: bool,
}

impl<'g> Machinery<'g> {
    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// Number of components of `H1`.
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn initial(&self) -> &VertexSet {
        &self.chronology.initial
    }

    pub fn h4_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.h4.keys().copied()
    }

    fn e2_lookup(&self) -> HashMap<(usize, usize), usize> {
        self.e2
            .iter()
            .enumerate()
            .map(|(idx, e)| ((e.earlier, e.later), idx))
            .collect()
    }

    fn position_of(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.graph.n()];
        for (p, &v) in self.x.iter().enumerate() {
            pos[v] = Some(p);
        }
        pos
    }

    /// Number of `j < i` with `{x_j, x_i} ∈ E2`.
    fn e2_back_degree(&self, i: usize) -> usize {
        self.e2.iter().filter(|e| e.later == i).count()
    }

    pub fn replay(&self) -> Replay {
        Replay {
            graph6: write_graph6(self.graph),
            initial: self.chronology.initial.to_vec(),
            events: self.chronology.events.clone(),
        }
    }

    fn fail(&self, message: String, indices: Vec<usize>) -> Verdict {
        Verdict::Fail(Box::new(Counterexample {
            message,
            indices,
            replay: self.replay(),
        }))
    }
}

fn girth_at_least_5(g: &Graph) -> Result<usize, MachineryError> {
    match g.girth() {
        Girth::Acyclic => Err(MachineryError::Acyclic),
        Girth::Finite(gi) if gi < 5 => Err(MachineryError::GirthTooSmall(gi)),
        Girth::Finite(gi) => Ok(gi),
    }
}

/// Builds every structure from a valid chronology of a zero forcing set.
pub fn build_machinery<'g>(
    g: &'g Graph,
    chron: &Chronology,
) -> Result<Machinery<'g>, MachineryError> {
    let girth = girth_at_least_5(g)?;
    let closure = chron.replay(g)?;
    if !closure.is_full() {
        return Err(MachineryError::NotZeroForcing {
            closure: closure.len(),
            n: g.n(),
        });
    }
    let n = g.n();
    let s = &chron.initial;
    let m = chron.t().min(girth - 2);
    let truncated = chron.t() < girth - 2;
    let x: Vec<usize> = chron.events[..m].iter().map(|e| e.forcer).collect();
    let y: Vec<usize> = chron.events[..m].iter().map(|e| e.forced).collect();

    let mut s_sets = Vec::with_capacity(m);
    let mut seen_nbrs = VertexSet::empty(n);
    for &xi in &x {
        let mut si = s.intersection(g.row(xi));
        si.difference_with(&seen_nbrs);
        seen_nbrs.union_with(g.row(xi));
        s_sets.push(si);
    }
    let mut s_x_star = VertexSet::empty(n);
    for si in &s_sets {
        s_x_star.union_with(si);
    }
    let x_set = VertexSet::from_vertices(n, x.iter().copied()).expect("forcers are vertices");
    let s_x_isolated = s.intersection(&x_set).difference(&s_x_star);

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    let mut e2_ambiguous = Vec::new();
    for i in 0..m {
        for j in 0..i {
            if g.has_edge(x[j], x[i]) {
                e1.push((j, i));
            }
            let mut target = s_sets[j].clone();
            target.insert(y[j]);
            target.intersect_with(g.row(x[i]));
            if let Some(witness) = target.first() {
                if target.len() > 1 {
                    e2_ambiguous.push((j, i));
                }
                e2.push(E2Edge {
                    earlier: j,
                    later: i,
                    witness,
                });
            }
        }
    }

    // components of H1
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = a;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(j, i) in &e1 {
        let (a, b) = (find(&mut parent, j), find(&mut parent, i));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..m {
        let r = find(&mut parent, p);
        groups.entry(r).or_default().push(p);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut component_of = vec![0; m];
    for (c, comp) in components.iter().enumerate() {
        for &p in comp {
            component_of[p] = c;
        }
    }
    let l = components.iter().filter(|c| c.len() >= 2).count();

    let mut e2_prime = Vec::new();
    let mut e2_double_prime = Vec::new();
    let mut h4 = BTreeMap::new();
    for (idx, e) in e2.iter().enumerate() {
        let (p, q) = (component_of[e.earlier], component_of[e.later]);
        if p == q {
            e2_prime.push(idx);
        } else {
            e2_double_prime.push(idx);
            *h4.entry((p.min(q), p.max(q))).or_insert(0) += 1;
        }
    }

    Ok(Machinery {
        graph: g,
        chronology: chron.clone(),
        girth,
        min_degree: g.min_degree(),
        x,
        y,
        s_sets,
        s_x_star,
        s_x_isolated,
        e1,
        e2,
        e2_ambiguous,
        components,
        component_of,
        l,
        e2_prime,
        e2_double_prime,
        h4,
        truncated,
    })
}

/// Initial set, chronology and graph needed to reproduce a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    pub graph6: String,
    pub initial: Vec<usize>,
    pub events: Vec<ForceEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub message: String,
    /// Positions in `X`, vertices, or component indices, as the message says.
    pub indices: Vec<usize>,
    pub replay: Replay,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(Box<Counterexample>),
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    fn inapplicable(reason: &str) -> Verdict {
        Verdict::Inapplicable {
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    /// How many instances (indices, vertices, components, cycles) were checked.
    pub instances: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl CheckEntry {
    fn new(name: &str, instances: usize, verdict: Verdict) -> Self {
        CheckEntry {
            name: name.to_string(),
            instances,
            verdict,
        }
    }
}

/// Unconditional structural facts: disjointness, the forest property, the
/// isolated-vertex description of `S_X`, witness uniqueness and the `E2`
/// partition.
pub fn check_structure(m: &Machinery<'_>) -> Vec<CheckEntry> {
    let g = m.graph;
    let s = m.initial();
    let mut out = Vec::new();

    let events = &m.chronology.events;
    let mut forced = VertexSet::empty(g.n());
    let mut verdict = Verdict::Pass;
    for e in events {
        if s.contains(e.forced) || !forced.insert(e.forced) {
            verdict = m.fail(
                format!("forced vertex {} repeats or is initially black", e.forced),
                vec![e.step],
            );
            break;
        }
    }
    out.push(CheckEntry::new(
        "forced_vertices_distinct",
        events.len(),
        verdict,
    ));

    let mut verdict = Verdict::Pass;
    'outer: for i in 0..m.m() {
        for j in 0..i {
            if !m.s_sets[i].is_disjoint(&m.s_sets[j]) {
                verdict = m.fail(format!("S_{} and S_{} intersect", j + 1, i + 1), vec![j, i]);
                break 'outer;
            }
        }
    }
    out.push(CheckEntry::new("s_sets_disjoint", m.m(), verdict));

    let mut union = VertexSet::empty(g.n());
    let mut nbr_union = VertexSet::empty(g.n());
    for (p, si) in m.s_sets.iter().enumerate() {
        union.union_with(si);
        nbr_union.union_with(g.row(m.x[p]));
    }
    let verdict = if union != m.s_x_star || s.intersection(&nbr_union) != m.s_x_star {
        m.fail(
            "S*_X differs from the union of the S_i or from S ∩ N(X)".into(),
            m.s_x_star.to_vec(),
        )
    } else {
        Verdict::Pass
    };
    out.push(CheckEntry::new("s_x_star_union", m.m(), verdict));

    let verdict = if !m.s_x_star.is_disjoint(&m.s_x_isolated)
        || !m.s_x_star.is_subset(s)
        || !m.s_x_isolated.is_subset(s)
    {
        m.fail(
            "S*_X and S_X are not disjoint subsets of S".into(),
            m.s_x_star.intersection(&m.s_x_isolated).to_vec(),
        )
    } else {
        Verdict::Pass
    };
    out.push(CheckEntry::new("s_x_disjoint", 1, verdict));

    let e1_pairs: std::collections::HashSet<(usize, usize)> = m.e1.iter().copied().collect();
    let verdict = match m
        .e2
        .iter()
        .find(|e| e1_pairs.contains(&(e.earlier, e.later)))
    {
        Some(e) => m.fail(
            "edge lies in both E1 and E2".into(),
            vec![e.earlier, e.later],
        ),
        None => Verdict::Pass,
    };
    out.push(CheckEntry::new("e1_e2_disjoint", m.e2.len(), verdict));

    let mut verdict = Verdict::Pass;
    if let Some(&(j, i)) = m.e2_ambiguous.first() {
        verdict = m.fail(
            format!("N(x_{}) meets S_{} ∪ {{y_{}}} twice", i + 1, j + 1, j + 1),
            vec![j, i],
        );
    }
    if verdict.is_pass() {
        for e in &m.e2 {
            let (xj, xi) = (m.x[e.earlier], m.x[e.later]);
            let common = g.row(xj).intersection(g.row(xi));
            let in_target = m.s_sets[e.earlier].contains(e.witness) || m.y[e.earlier] == e.witness;
            if common.len() != 1 || !common.contains(e.witness) || !in_target {
                verdict = m.fail(
                    format!(
                        "pair (x_{}, x_{}) has {} common neighbors, witness {}",
                        e.earlier + 1,
                        e.later + 1,
                        common.len(),
                        e.witness
                    ),
                    vec![e.earlier, e.later, e.witness],
                );
                break;
            }
        }
    }
    out.push(CheckEntry::new("e2_unique_witness", m.e2.len(), verdict));

    let verdict = if m.e1.len() + m.k() != m.m() {
        m.fail(
            format!(
                "H1 has {} edges, {} vertices and {} components",
                m.e1.len(),
                m.m(),
                m.k()
            ),
            vec![],
        )
    } else {
        Verdict::Pass
    };
    out.push(CheckEntry::new("h1_forest", m.m(), verdict));

    let mut h1_deg = vec![0usize; m.m()];
    for &(j, i) in &m.e1 {
        h1_deg[j] += 1;
        h1_deg[i] += 1;
    }
    let isolated = VertexSet::from_vertices(
        g.n(),
        (0..m.m()).filter(|&p| h1_deg[p] == 0).map(|p| m.x[p]),
    )
    .expect("in range");
    let verdict = if !isolated.is_subset(s) {
        m.fail(
            "an isolated vertex of H1 is not initially black".into(),
            isolated.difference(s).to_vec(),
        )
    } else if isolated != m.s_x_isolated {
        m.fail(
            "S_X differs from the isolated vertices of H1".into(),
            isolated
                .union(&m.s_x_isolated)
                .difference(&isolated.intersection(&m.s_x_isolated))
                .to_vec(),
        )
    } else {
        Verdict::Pass
    };
    out.push(CheckEntry::new("s_x_isolated", m.m(), verdict));

    let mut verdict = Verdict::Pass;
    let mut covered = vec![0u8; m.e2.len()];
    for &idx in &m.e2_prime {
        covered[idx] += 1;
        let e = m.e2[idx];
        if m.component_of[e.earlier] != m.component_of[e.later] || m.component_of[e.earlier] >= m.l
        {
            verdict = m.fail(
                "E2' edge does not lie inside a nontrivial component".into(),
                vec![e.earlier, e.later],
            );
        }
    }
    for &idx in &m.e2_double_prime {
        covered[idx] += 1;
        let e = m.e2[idx];
        if m.component_of[e.earlier] == m.component_of[e.later] {
            verdict = m.fail(
                "E2'' edge lies inside one component".into(),
                vec![e.earlier, e.later],
            );
        }
    }
    if verdict.is_pass() {
        if let Some(idx) = covered.iter().position(|&c| c != 1) {
            verdict = m.fail(
                "E2' and E2'' do not partition E2".into(),
                vec![m.e2[idx].earlier, m.e2[idx].later],
            );
        }
    }
    out.push(CheckEntry::new("e2_partition", m.e2.len(), verdict));

    let verdict = if m.l + m.s_x_isolated.len() != m.k() {
        m.fail(
            format!(
                "l = {} but k - |S_X| = {} - {}",
                m.l,
                m.k(),
                m.s_x_isolated.len()
            ),
            vec![],
        )
    } else {
        Verdict::Pass
    };
    out.push(CheckEntry::new("component_count", m.k(), verdict));

    out
}

/// `|S_i| = deg(x_i) − 1 − #{j < i : {x_j, x_i} ∈ E2}` for every position.
pub fn check_si_identity(m: &Machinery<'_>) -> CheckEntry {
    for i in 0..m.m() {
        let lhs = m.s_sets[i].len() as i64;
        let rhs = m.graph.degree(m.x[i]) as i64 - 1 - m.e2_back_degree(i) as i64;
        if lhs != rhs {
            let verdict = m.fail(format!("|S_{}| = {lhs}, expected {rhs}", i + 1), vec![i]);
            return CheckEntry::new("si_identity", i + 1, verdict);
        }
    }
    CheckEntry::new("si_identity", m.m(), Verdict::Pass)
}

/// `|S*_X| = Σ|S_i| = Σ(deg(x_i) − 1) − |E2|`.
pub fn check_sum_identity(m: &Machinery<'_>) -> CheckEntry {
    let sum_si: usize = m.s_sets.iter().map(VertexSet::len).sum();
    let sum_deg: i64 = m.x.iter().map(|&v| m.graph.degree(v) as i64 - 1).sum();
    let rhs = sum_deg - m.e2.len() as i64;
    let verdict = if m.s_x_star.len() != sum_si || sum_si as i64 != rhs {
        m.fail(
            format!(
                "|S*_X| = {}, Σ|S_i| = {sum_si}, Σ(deg − 1) − |E2| = {rhs}",
                m.s_x_star.len()
            ),
            vec![],
        )
    } else {
        Verdict::Pass
    };
    CheckEntry::new("sum_identity", m.m(), verdict)
}

/// For `N = N(u) ∩ X` nonempty with earliest member `x_j`, the `E2` edges
/// inside `N` are exactly `{x_j, v}` for the other `v ∈ N`.
pub fn check_star(m: &Machinery<'_>, u: usize) -> Verdict {
    let members: Vec<usize> = (0..m.m())
        .filter(|&p| m.graph.has_edge(u, m.x[p]))
        .collect();
    let Some(&j) = members.first() else {
        return Verdict::inapplicable("N(u) ∩ X is empty");
    };
    let inside: Vec<(usize, usize)> =
        m.e2.iter()
            .filter(|e| members.contains(&e.earlier) && members.contains(&e.later))
            .map(|e| (e.earlier, e.later))
            .collect();
    let expected: Vec<(usize, usize)> = members[1..].iter().map(|&i| (j, i)).collect();
    let mut sorted = inside.clone();
    sorted.sort_unstable();
    if sorted == expected {
        Verdict::Pass
    } else {
        let mut indices = vec![u];
        indices.extend(&members);
        m.fail(
            format!("E2 inside N({u}) ∩ X is {sorted:?}, expected the star {expected:?}"),
            indices,
        )
    }
}

/// [`check_star`] over every vertex of the graph.
pub fn check_star_all(m: &Machinery<'_>) -> CheckEntry {
    let verdicts = map_vertices(m.graph.n(), |u| check_star(m, u));
    let applicable = verdicts
        .iter()
        .filter(|v| !matches!(v, Verdict::Inapplicable { .. }))
        .count();
    let verdict = verdicts
        .into_iter()
        .find(Verdict::is_fail)
        .unwrap_or(if applicable == 0 {
            Verdict::inapplicable("no vertex has a neighbor in X")
        } else {
            Verdict::Pass
        });
    CheckEntry::new("star", applicable, verdict)
}

#[cfg(feature = "parallel")]
fn map_vertices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_vertices<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// For each component `X_p` with at least two vertices,
/// `|E2(X_p)| = |X_p| − 2` and every witness of such an edge lies in `X_p`.
pub fn check_component_identity(m: &Machinery<'_>) -> CheckEntry {
    if m.truncated {
        return CheckEntry::new(
            "component_identity",
            0,
            Verdict::inapplicable("chronology shorter than g - 2"),
        );
    }
    let pos = m.position_of();
    for (p, comp) in m.components.iter().enumerate().take(m.l) {
        let internal: Vec<&E2Edge> =
            m.e2.iter()
                .filter(|e| m.component_of[e.earlier] == p && m.component_of[e.later] == p)
                .collect();
        if internal.len() + 2 != comp.len() {
            let verdict = m.fail(
                format!(
                    "component {p} has {} vertices but {} internal E2 edges",
                    comp.len(),
                    internal.len()
                ),
                comp.clone(),
            );
            return CheckEntry::new("component_identity", p + 1, verdict);
        }
        if let Some(e) = internal
            .iter()
            .find(|e| pos[e.witness].is_none_or(|w| m.component_of[w] != p))
        {
            let verdict = m.fail(
                format!(
                    "witness {} of (x_{}, x_{}) lies outside component {p}",
                    e.witness,
                    e.earlier + 1,
                    e.later + 1
                ),
                vec![e.earlier, e.later, e.witness],
            );
            return CheckEntry::new("component_identity", p + 1, verdict);
        }
    }
    if m.l == 0 {
        return CheckEntry::new(
            "component_identity",
            0,
            Verdict::inapplicable("H1 has no edges"),
        );
    }
    CheckEntry::new("component_identity", m.l, Verdict::Pass)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("a cycle needs at least 3 distinct vertices")]
    TooShort,
    #[error("vertex {0} is not in X or repeats")]
    NotInX(usize),
    #[error("{0} -- {1} is not an edge of H3")]
    NotAnEdge(usize, usize),
    #[error("witness {witness} certifies {count} cycle edges that do not form a path of length at most 2")]
    StarViolated { witness: usize, count: usize },
    #[error("replacement produced {0:?}, which is not a cycle of G")]
    NotACycle(Vec<usize>),
}

/// A cycle of `G` obtained from a cycle of `H3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedCycle {
    pub cycle: Vec<usize>,
    /// Length of the input cycle.
    pub lambda: usize,
    /// `E2''` edges on the input cycle.
    pub s: usize,
}

enum H3Edge {
    E1,
    E2(usize),
}

/// Turns a cycle of `H3` (given as vertices of `X` in cyclic order) into a
/// cycle of `G` of length at most `λ + s`.
///
/// An `E2''` edge whose witness `u` certifies no other cycle edge becomes the
/// path `v – u – w`; two consecutive edges `v – v' – v''` certified by the
/// same `u` become `v – u – v''`.
pub fn lift_cycle(m: &Machinery<'_>, cycle: &[usize]) -> Result<LiftedCycle, LiftError> {
    let g = m.graph;
    let lambda = cycle.len();
    if lambda < 3 {
        return Err(LiftError::TooShort);
    }
    let pos = m.position_of();
    let mut seen = VertexSet::empty(g.n());
    let mut positions = Vec::with_capacity(lambda);
    for &v in cycle {
        match pos.get(v).copied().flatten() {
            Some(p) if seen.insert(v) => positions.push(p),
            _ => return Err(LiftError::NotInX(v)),
        }
    }
    let lookup = m.e2_lookup();
    let double: std::collections::HashSet<usize> = m.e2_double_prime.iter().copied().collect();

    let mut kinds = Vec::with_capacity(lambda);
    let mut by_witness: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in 0..lambda {
        let (a, b) = (positions[t], positions[(t + 1) % lambda]);
        let key = (a.min(b), a.max(b));
        if g.has_edge(m.x[a], m.x[b]) {
            kinds.push(H3Edge::E1);
        } else if let Some(&idx) = lookup.get(&key).filter(|idx| double.contains(idx)) {
            by_witness.entry(m.e2[idx].witness).or_default().push(t);
            kinds.push(H3Edge::E2(m.e2[idx].witness));
        } else {
            return Err(LiftError::NotAnEdge(cycle[t], cycle[(t + 1) % lambda]));
        }
    }

    let s = by_witness.values().map(Vec::len).sum();
    let mut removed = vec![false; lambda];
    for (&witness, edges) in &by_witness {
        match edges.as_slice() {
            [_] => {}
            [a, b] if (a + 1) % lambda == *b || (b + 1) % lambda == *a => {
                let second = if (a + 1) % lambda == *b { *b } else { *a };
                removed[second] = true;
            }
            _ => {
                return Err(LiftError::StarViolated {
                    witness,
                    count: edges.len(),
                })
            }
        }
    }
    let start = removed
        .iter()
        .position(|r| !r)
        .ok_or(LiftError::StarViolated {
            witness: usize::MAX,
            count: lambda,
        })?;

    let mut out = Vec::with_capacity(lambda + s);
    let mut t = start;
    loop {
        out.push(cycle[t]);
        t = match kinds[t] {
            H3Edge::E1 => (t + 1) % lambda,
            H3Edge::E2(u) => {
                out.push(u);
                if removed[(t + 1) % lambda] {
                    (t + 2) % lambda
                } else {
                    (t + 1) % lambda
                }
            }
        };
        if t == start {
            break;
        }
    }

    if !is_cycle_of(g, &out) {
        return Err(LiftError::NotACycle(out));
    }
    Ok(LiftedCycle {
        cycle: out,
        lambda,
        s,
    })
}

fn is_cycle_of(g: &Graph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    let mut seen = VertexSet::empty(g.n());
    len >= 3
        && cycle.iter().all(|&v| v < g.n() && seen.insert(v))
        && (0..len).all(|t| g.has_edge(cycle[t], cycle[(t + 1) % len]))
}

/// Fundamental cycles of `H3` with respect to a breadth-first spanning
/// forest, as vertex lists.
pub fn h3_cycles(m: &Machinery<'_>) -> Vec<Vec<usize>> {
    let size = m.m();
    let mut adj = vec![Vec::new(); size];
    let mut edges: Vec<(usize, usize)> = m.e1.clone();
    edges.extend(
        m.e2_double_prime
            .iter()
            .map(|&idx| (m.e2[idx].earlier, m.e2[idx].later)),
    );
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; size];
    let mut depth = vec![usize::MAX; size];
    let mut queue = VecDeque::new();
    for root in 0..size {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        queue.push_back(root);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if depth[b] == usize::MAX {
                    depth[b] = depth[a] + 1;
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for &(a, b) in &edges {
        if parent[a] == b || parent[b] == a {
            continue;
        }
        let (mut pa, mut pb) = (vec![a], vec![b]);
        let (mut ca, mut cb) = (a, b);
        while ca != cb {
            if depth[ca] >= depth[cb] {
                ca = parent[ca];
                pa.push(ca);
            } else {
                cb = parent[cb];
                pb.push(cb);
            }
        }
        // pa ends at the common ancestor; pb also does, drop the duplicate
        pb.pop();
        pb.reverse();
        pa.extend(pb);
        cycles.push(pa.into_iter().map(|p| m.x[p]).collect());
    }
    cycles
}

/// Lifts every fundamental cycle of `H3` and checks the result.
pub fn check_lift_cycles(m: &Machinery<'_>) -> (CheckEntry, Vec<CycleObservation>) {
    let cycles = h3_cycles(m);
    if cycles.is_empty() {
        return (
            CheckEntry::new("lift_cycles", 0, Verdict::inapplicable("H3 is a forest")),
            Vec::new(),
        );
    }
    let need = (m.k() + 2).div_ceil(2);
    let mut observations = Vec::new();
    for c in &cycles {
        match lift_cycle(m, c) {
            Ok(lifted) if lifted.cycle.len() <= lifted.lambda + lifted.s => {
                observations.push(CycleObservation {
                    h3_cycle: c.clone(),
                    lambda: lifted.lambda,
                    e2_double_prime_edges: lifted.s,
                    lifted_length: lifted.cycle.len(),
                    edges_needed_under_hypothesis: need,
                })
            }
            Ok(lifted) => {
                let verdict = m.fail(
                    format!(
                        "lifted cycle has length {} > {} + {}",
                        lifted.cycle.len(),
                        lifted.lambda,
                        lifted.s
                    ),
                    lifted.cycle,
                );
                return (
                    CheckEntry::new("lift_cycles", observations.len() + 1, verdict),
                    observations,
                );
            }
            Err(err) => {
                let verdict = m.fail(format!("lifting failed: {err}"), c.clone());
                return (
                    CheckEntry::new("lift_cycles", observations.len() + 1, verdict),
                    observations,
                );
            }
        }
    }
    (
        CheckEntry::new("lift_cycles", cycles.len(), Verdict::Pass),
        observations,
    )
}

/// Reported, not asserted: how a cycle of `H3` compares with the count of
/// `E2''` edges a short-set hypothesis would force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleObservation {
    pub h3_cycle: Vec<usize>,
    pub lambda: usize,
    pub e2_double_prime_edges: usize,
    pub lifted_length: usize,
    /// `⌈(k + 2)/2⌉`.
    pub edges_needed_under_hypothesis: usize,
}

/// Quantities of the counting argument for one initial set. Only
/// `hypothesis_satisfied` is checked; the rest are observations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub set_size: usize,
    pub girth: usize,
    pub min_degree: usize,
    /// `(δ − 2)(g − 3) + δ − 1`.
    pub threshold: i64,
    /// `|S| ≤ threshold`.
    pub hypothesis_satisfied: bool,
    pub x_len: usize,
    pub truncated: bool,
    pub k: usize,
    pub l: usize,
    pub s_x_star_size: usize,
    pub s_x_size: usize,
    /// `|S*_X|` against `(g − 2)(δ − 1) − |E2|`.
    pub s_x_star_rhs: i64,
    pub e2_size: usize,
    /// `g − 3 + |S_X|`.
    pub e2_rhs: i64,
    pub e2_prime_size: usize,
    pub e2_double_prime_size: usize,
    /// `2k − 1`.
    pub e2_double_prime_rhs: i64,
    pub h4_edges: usize,
    pub h4_max_multiplicity: usize,
    pub h3_cycles: Vec<CycleObservation>,
}

pub fn hypothesis_report(g: &Graph, m: &Machinery<'_>) -> (HypothesisReport, CheckEntry) {
    let gi = m.girth as i64;
    let delta = g.min_degree() as i64;
    let threshold = (delta - 2) * (gi - 3) + delta - 1;
    let set_size = m.initial().len();
    let satisfied = set_size as i64 <= threshold;
    let (_, observations) = check_lift_cycles(m);
    let report = HypothesisReport {
        set_size,
        girth: m.girth,
        min_degree: g.min_degree(),
        threshold,
        hypothesis_satisfied: satisfied,
        x_len: m.m(),
        truncated: m.truncated,
        k: m.k(),
        l: m.l,
        s_x_star_size: m.s_x_star.len(),
        s_x_size: m.s_x_isolated.len(),
        s_x_star_rhs: (gi - 2) * (delta - 1) - m.e2.len() as i64,
        e2_size: m.e2.len(),
        e2_rhs: gi - 3 + m.s_x_isolated.len() as i64,
        e2_prime_size: m.e2_prime.len(),
        e2_double_prime_size: m.e2_double_prime.len(),
        e2_double_prime_rhs: 2 * m.k() as i64 - 1,
        h4_edges: m.h4.len(),
        h4_max_multiplicity: m.h4.values().copied().max().unwrap_or(0),
        h3_cycles: observations,
    };
    // every zero forcing set has at least Z(G) >= δ + (δ − 2)(g − 3) vertices
    let verdict = if delta < 2 {
        Verdict::inapplicable("minimum degree below 2")
    } else if satisfied {
        m.fail(
            format!("zero forcing set of size {set_size} is within the threshold {threshold}"),
            m.initial().to_vec(),
        )
    } else {
        Verdict::Pass
    };
    (report, CheckEntry::new("hypothesis_refuted", 1, verdict))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub initial: Vec<usize>,
    pub forcers: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub checks: Vec<CheckEntry>,
    pub hypothesis: HypothesisReport,
    pub summary: CheckSummary,
    pub passed: bool,
}

impl LemmaReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }
}

/// Runs every check on an already built machinery.
pub fn check_machinery(g: &Graph, m: &Machinery<'_>) -> LemmaReport {
    let mut checks = check_structure(m);
    checks.push(check_si_identity(m));
    checks.push(check_sum_identity(m));
    checks.push(check_star_all(m));
    checks.push(check_component_identity(m));
    checks.push(check_lift_cycles(m).0);
    let (hypothesis, refuted) = hypothesis_report(g, m);
    checks.push(refuted);

    let mut summary = CheckSummary::default();
    for c in &checks {
        match c.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail(_) => summary.fail += 1,
            Verdict::Inapplicable { .. } => summary.inapplicable += 1,
        }
    }
    LemmaReport {
        initial: m.initial().to_vec(),
        forcers: m.x.clone(),
        components: m
            .components
            .iter()
            .map(|c| c.iter().map(|&p| m.x[p]).collect())
            .collect(),
        checks,
        hypothesis,
        passed: summary.fail == 0,
        summary,
    }
}

/// Closure, canonical chronology, machinery and every check for the initial
/// set `s`.
pub fn run_all_checks(g: &Graph, s: &VertexSet) -> Result<LemmaReport, MachineryError> {
    girth_at_least_5(g)?;
    let (closure, chron) = derived_set(g, s);
    if !closure.is_full() {
        return Err(MachineryError::NotZeroForcing {
            closure: closure.len(),
            n: g.n(),
        });
    }
    let m = build_machinery(g, &chron)?;
    Ok(check_machinery(g, &m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn c5_machinery(g: &Graph) -> Machinery<'_> {
        let (_, chron) = derived_set(g, &set(5, &[0, 1]));
        build_machinery(g, &chron).unwrap()
    }

    #[test]
    fn c5_hand_example() {
        let g = named_graph("cycle(5)").unwrap();
        let m = c5_machinery(&g);
        assert_eq!(m.x, vec![0, 1, 2]);
        let s: Vec<Vec<usize>> = m.s_sets.iter().map(VertexSet::to_vec).collect();
        assert_eq!(s, vec![vec![1], vec![0], vec![]]);
        assert_eq!(m.e1, vec![(0, 1), (1, 2)]);
        assert_eq!(
            m.e2,
            vec![E2Edge {
                earlier: 0,
                later: 2,
                witness: 1
            }]
        );
        assert_eq!((m.k(), m.l), (1, 1));
        assert!(m.s_x_isolated.is_empty());
        assert_eq!(m.e2_prime, vec![0]);
        assert!(m.e2_double_prime.is_empty());
        assert!(!m.truncated);
    }

    #[test]
    fn c5_checks() {
        let g = named_graph("cycle(5)").unwrap();
        let m = c5_machinery(&g);
        assert!(check_si_identity(&m).verdict.is_pass());
        assert!(check_star(&m, 1).is_pass());
        assert!(check_component_identity(&m).verdict.is_pass());
        let (entry, _) = check_lift_cycles(&m);
        assert!(matches!(entry.verdict, Verdict::Inapplicable { .. }));
        let (h, refuted) = hypothesis_report(&g, &m);
        assert_eq!(h.threshold, 1);
        assert!(!h.hypothesis_satisfied);
        assert!(refuted.verdict.is_pass());
        let report = run_all_checks(&g, &set(5, &[0, 1])).unwrap();
        assert!(report.passed, "{report:#?}");
    }

    #[test]
    fn refusals() {
        let c5 = named_graph("cycle(5)").unwrap();
        assert!(matches!(
            run_all_checks(&c5, &set(5, &[0, 2])),
            Err(MachineryError::NotZeroForcing { .. })
        ));
        let c4 = named_graph("cycle(4)").unwrap();
        assert_eq!(
            run_all_checks(&c4, &set(4, &[0, 1])),
            Err(MachineryError::GirthTooSmall(4))
        );
        let p = named_graph("path(5)").unwrap();
        assert_eq!(
            run_all_checks(&p, &set(5, &[0])),
            Err(MachineryError::Acyclic)
        );
    }

    #[test]
    fn star_with_single_member_and_empty() {
        let g = named_graph("cycle(5)").unwrap();
        let m = c5_machinery(&g);
        // N(3) ∩ X = {x_3 = 2}
        assert!(check_star(&m, 3).is_pass());
        let g7 = named_graph("cycle(7)").unwrap();
        let (_, chron) = derived_set(&g7, &set(7, &[0, 1]));
        let m7 = build_machinery(&g7, &chron).unwrap();
        assert_eq!(m7.x, vec![0, 1, 2, 3, 4]);
        // vertex 5 only touches x_5 = 4
        assert!(check_star(&m7, 5).is_pass());
    }

    #[test]
    fn tampered_machinery_fails_with_replay() {
        let g = named_graph("cycle(5)").unwrap();
        let mut m = c5_machinery(&g);
        m.s_sets[2].insert(3);
        let entry = check_si_identity(&m);
        match entry.verdict {
            Verdict::Fail(cx) => {
                assert_eq!(cx.indices, vec![2]);
                assert_eq!(cx.replay.initial, vec![0, 1]);
                assert_eq!(cx.replay.events.len(), 3);
            }
            other => panic!("expected failure, got {other:?}"),
        }
        let mut m = c5_machinery(&g);
        m.e2.clear();
        assert!(check_star(&m, 1).is_fail());
    }

    #[test]
    fn truncated_chronology_skips_component_identity() {
        let g = named_graph("cycle(7)").unwrap();
        // everything but one vertex is black: one force
        let s = VertexSet::from_vertices(7, 0..6).unwrap();
        let report = run_all_checks(&g, &s).unwrap();
        assert!(report.hypothesis.truncated);
        let comp = report
            .checks
            .iter()
            .find(|c| c.name == "component_identity")
            .unwrap();
        assert!(matches!(comp.verdict, Verdict::Inapplicable { .. }));
        assert!(report.passed);
    }

    #[test]
    fn lift_rejects_non_cycles() {
        let g = named_graph("cycle(5)").unwrap();
        let m = c5_machinery(&g);
        assert_eq!(lift_cycle(&m, &[0, 1]), Err(LiftError::TooShort));
        assert_eq!(lift_cycle(&m, &[0, 1, 4]), Err(LiftError::NotInX(4)));
        // {0, 2} is an E2' edge, not part of H3
        assert_eq!(lift_cycle(&m, &[0, 1, 2]), Err(LiftError::NotAnEdge(2, 0)));
    }
}
