//! The color-change rule: a black vertex whose only white neighbor is `u`
//! turns `u` black.
//!
//! The closure (derived set) of an initial black set does not depend on the
//! order in which forces are applied. The chronology does, so it is fixed by a
//! canonical rule: at every step the eligible force with the smallest forcer
//! index fires.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::set::VertexSet;

/// A black set over a particular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorState<'g> {
    graph: &'g Graph,
    black: VertexSet,
}

impl<'g> ColorState<'g> {
    pub fn new(graph: &'g Graph, black: VertexSet) -> Self {
        assert_eq!(black.universe(), graph.n(), "black set universe mismatch");
        ColorState { graph, black }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn black(&self) -> &VertexSet {
        &self.black
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black.contains(v)
    }

    /// The unique white neighbor of `v`, if `v` is black and has exactly one.
    pub fn forced_by(&self, v: usize) -> Option<usize> {
        if !self.black.contains(v) {
            return None;
        }
        let mut white = self
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&w| !self.black.contains(w));
        match (white.next(), white.next()) {
            (Some(&u), None) => Some(u),
            _ => None,
        }
    }

    /// All currently valid `(forcer, forced)` pairs, sorted.
    pub fn eligible_forces(&self) -> Vec<(usize, usize)> {
        self.black
            .iter()
            .filter_map(|v| self.forced_by(v).map(|u| (v, u)))
            .collect()
    }

    /// Applies a force by `forcer`, returning the successor state, or `None`
    /// if `forcer` is not eligible.
    pub fn force(&self, forcer: usize) -> Option<(usize, ColorState<'g>)> {
        let u = self.forced_by(forcer)?;
        let mut black = self.black.clone();
        black.insert(u);
        Some((
            u,
            ColorState {
                graph: self.graph,
                black,
            },
        ))
    }
}

/// All eligible forces for `black` on `g`; see [`ColorState::eligible_forces`].
pub fn eligible_forces(g: &Graph, black: &VertexSet) -> Vec<(usize, usize)> {
    ColorState::new(g, black.clone()).eligible_forces()
}

/// One application of the color-change rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForceEvent {
    /// 1-based position in the chronology.
    pub step: usize,
    pub forcer: usize,
    pub forced: usize,
}

/// An initial black set and the sequence of forces applied to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chronology {
    pub initial: VertexSet,
    pub events: Vec<ForceEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("initial set lives on {found} vertices, graph has {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("event {index} has step {found}, expected {expected}")]
    BadStep {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("step {step}: vertex {forcer} is not black")]
    ForcerWhite { step: usize, forcer: usize },
    #[error("step {step}: {forcer} does not have {forced} as its unique white neighbor")]
    NotUniqueWhite {
        step: usize,
        forcer: usize,
        forced: usize,
    },
}

impl Chronology {
    /// Number of force events.
    pub fn t(&self) -> usize {
        self.events.len()
    }

    pub fn forcers(&self) -> impl Iterator<Item = usize> + '_ {
        self.events.iter().map(|e| e.forcer)
    }

    /// Re-applies every event from the initial set, checking the
    /// unique-white-neighbor condition at each step. Returns the final black
    /// set.
    pub fn replay(&self, g: &Graph) -> Result<VertexSet, ReplayError> {
        if self.initial.universe() != g.n() {
            return Err(ReplayError::UniverseMismatch {
                expected: g.n(),
                found: self.initial.universe(),
            });
        }
        let mut state = ColorState::new(g, self.initial.clone());
        for (index, ev) in self.events.iter().enumerate() {
            if ev.step != index + 1 {
                return Err(ReplayError::BadStep {
                    index,
                    expected: index + 1,
                    found: ev.step,
                });
            }
            if ev.forcer >= g.n() || !state.is_black(ev.forcer) {
                return Err(ReplayError::ForcerWhite {
                    step: ev.step,
                    forcer: ev.forcer,
                });
            }
            match state.force(ev.forcer) {
                Some((u, next)) if u == ev.forced => state = next,
                _ => {
                    return Err(ReplayError::NotUniqueWhite {
                        step: ev.step,
                        forcer: ev.forcer,
                        forced: ev.forced,
                    })
                }
            }
        }
        Ok(state.black)
    }
}

/// Closure of `initial` under the color-change rule, with its canonical
/// chronology.
pub fn derived_set(g: &Graph, initial: &VertexSet) -> (VertexSet, Chronology) {
    assert_eq!(initial.universe(), g.n(), "initial set universe mismatch");
    let n = g.n();
    let mut black = initial.clone();
    let mut white_deg: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| !black.contains(w))
                .count()
        })
        .collect();
    // black vertices with exactly one white neighbor
    let mut active: BTreeSet<usize> = black.iter().filter(|&v| white_deg[v] == 1).collect();
    let mut events = Vec::new();

    while let Some(x) = active.pop_first() {
        let y = *g
            .neighbors(x)
            .iter()
            .find(|&&w| !black.contains(w))
            .expect("active vertex has a white neighbor");
        black.insert(y);
        events.push(ForceEvent {
            step: events.len() + 1,
            forcer: x,
            forced: y,
        });
        for &w in g.neighbors(y) {
            white_deg[w] -= 1;
            if black.contains(w) {
                match white_deg[w] {
                    1 => {
                        active.insert(w);
                    }
                    0 => {
                        active.remove(&w);
                    }
                    _ => {}
                }
            }
        }
        if white_deg[y] == 1 {
            active.insert(y);
        }
    }

    let chron = Chronology {
        initial: initial.clone(),
        events,
    };
    (black, chron)
}

pub fn is_zero_forcing_set(g: &Graph, s: &VertexSet) -> bool {
    derived_set(g, s).0.is_full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    fn ev(step: usize, forcer: usize, forced: usize) -> ForceEvent {
        ForceEvent {
            step,
            forcer,
            forced,
        }
    }

    #[test]
    fn eligible_on_c5_and_k4() {
        let c5 = named_graph("cycle(5)").unwrap();
        assert_eq!(eligible_forces(&c5, &set(5, &[0, 1])), vec![(0, 4), (1, 2)]);
        let k4 = named_graph("complete(4)").unwrap();
        assert!(eligible_forces(&k4, &set(4, &[0, 1])).is_empty());
        assert!(eligible_forces(&k4, &VertexSet::full(4)).is_empty());
    }

    #[test]
    fn c5_canonical_chronology() {
        let c5 = named_graph("cycle(5)").unwrap();
        let (closure, chron) = derived_set(&c5, &set(5, &[0, 1]));
        assert!(closure.is_full());
        assert_eq!(chron.events, vec![ev(1, 0, 4), ev(2, 1, 2), ev(3, 2, 3)]);
        assert_eq!(chron.replay(&c5).unwrap(), closure);
    }

    #[test]
    fn single_cycle_vertex_stalls() {
        let c5 = named_graph("cycle(5)").unwrap();
        let (closure, chron) = derived_set(&c5, &set(5, &[0]));
        assert_eq!(closure.to_vec(), vec![0]);
        assert_eq!(chron.t(), 0);
    }

    #[test]
    fn path_endpoint_forces_everything() {
        let p4 = named_graph("path(4)").unwrap();
        let (closure, chron) = derived_set(&p4, &set(4, &[0]));
        assert!(closure.is_full());
        assert_eq!(chron.t(), 3);
    }

    #[test]
    fn zero_forcing_examples() {
        let c7 = named_graph("cycle(7)").unwrap();
        assert!(is_zero_forcing_set(&c7, &set(7, &[0, 1])));
        assert!(!is_zero_forcing_set(&c7, &set(7, &[0, 3])));
        let k5 = named_graph("complete(5)").unwrap();
        for skip in 0..5 {
            let s = VertexSet::from_vertices(5, (0..5).filter(|&v| v != skip)).unwrap();
            assert!(is_zero_forcing_set(&k5, &s));
        }
    }

    #[test]
    fn replay_rejects_bad_events() {
        let c5 = named_graph("cycle(5)").unwrap();
        let mut chron = derived_set(&c5, &set(5, &[0, 1])).1;
        chron.events[2].forced = 4;
        assert!(matches!(
            chron.replay(&c5),
            Err(ReplayError::NotUniqueWhite { step: 3, .. })
        ));

        let white_forcer = Chronology {
            initial: set(5, &[0, 1]),
            events: vec![ev(1, 3, 2)],
        };
        assert!(matches!(
            white_forcer.replay(&c5),
            Err(ReplayError::ForcerWhite { .. })
        ));

        let bad_step = Chronology {
            initial: set(5, &[0, 1]),
            events: vec![ev(2, 0, 4)],
        };
        assert!(matches!(
            bad_step.replay(&c5),
            Err(ReplayError::BadStep { .. })
        ));
    }

    #[test]
    fn functional_force_leaves_original_untouched() {
        let c5 = named_graph("cycle(5)").unwrap();
        let s0 = ColorState::new(&c5, set(5, &[0, 1]));
        let (u, s1) = s0.force(1).unwrap();
        assert_eq!(u, 2);
        assert_eq!(s0.black().len(), 2);
        assert_eq!(s1.black().to_vec(), vec![0, 1, 2]);
        assert!(s0.force(3).is_none());
    }
}
