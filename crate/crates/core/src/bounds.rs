//! Girth/degree lower bound on `Z(G)` and the extremal numbers
//! `ex(n; {C3, ..., Cl})` (max edges on `n` vertices with girth > `l`).

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Girth, Graph};

/// Largest order accepted by [`extremal_bruteforce`].
pub const EXTREMAL_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("graph is acyclic; the bound needs a finite girth")]
    Acyclic,
    #[error("girth {0} is below the minimum of {1}")]
    GirthTooSmall(usize, usize),
    #[error("minimum degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("n = {n} is outside the window {lo} <= n <= {hi} for l = {ell}")]
    OutOfWindow {
        n: usize,
        ell: usize,
        lo: usize,
        hi: usize,
    },
    #[error("l = {0} is below 4")]
    CycleLengthTooSmall(usize),
    #[error("n = {n} exceeds the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// `δ + (δ − 2)(g − 3)`, the lower bound on `Z(G)` for graphs of girth
/// `g ≥ 3` and minimum degree `δ ≥ 2`.
pub fn davila_kenter_bound(girth: Girth, min_degree: usize) -> Result<usize, BoundError> {
    let g = girth.finite().ok_or(BoundError::Acyclic)?;
    if g < 3 {
        return Err(BoundError::GirthTooSmall(g, 3));
    }
    if min_degree < 2 {
        return Err(BoundError::DegreeTooSmall(min_degree));
    }
    Ok(min_degree + (min_degree - 2) * (g - 3))
}

/// `g(δ − 1)`: a shortest cycle plus `δ − 2` private outside neighbors per
/// cycle vertex, which are distinct once `g ≥ 5`.
pub fn min_order_bound(girth: usize, min_degree: usize) -> Result<usize, BoundError> {
    if girth < 5 {
        return Err(BoundError::GirthTooSmall(girth, 5));
    }
    if min_degree < 2 {
        return Err(BoundError::DegreeTooSmall(min_degree));
    }
    Ok(girth * (min_degree - 1))
}

/// Mantel: `ex(n; {C3}) = ⌊n²/4⌋`.
pub fn mantel_ex(n: usize) -> usize {
    n * n / 4
}

/// `ex(n; {C3, ..., Cl})` for `l ≥ 4` and `l + 1 ≤ n ≤ 2l`. Inputs outside
/// that window are rejected rather than extrapolated.
pub fn abajo_dianez_ex(n: usize, ell: usize) -> Result<usize, BoundError> {
    if ell < 4 {
        return Err(BoundError::CycleLengthTooSmall(ell));
    }
    if n < ell + 1 || n > 2 * ell {
        return Err(BoundError::OutOfWindow {
            n,
            ell,
            lo: ell + 1,
            hi: 2 * ell,
        });
    }
    let knee = 3 * ell / 2;
    Ok(if n <= knee {
        n
    } else if n < 2 * ell {
        n + 1
    } else {
        n + 2
    })
}

/// Exhaustive maximum edge count over all labelled graphs on `n ≤ 8`
/// vertices with girth at least `ell + 1` (forests qualify), with the first
/// extremal graph found.
///
/// Edges are decided in lexicographic order; an edge is only added when its
/// endpoints are at distance at least `ell`, so no cycle of length `≤ ell`
/// ever forms. Branches that cannot beat the incumbent are cut.
pub fn extremal_bruteforce(n: usize, ell: usize) -> Result<(usize, Graph), BoundError> {
    if n > EXTREMAL_MAX_N {
        return Err(BoundError::TooLarge {
            n,
            max: EXTREMAL_MAX_N,
        });
    }
    if ell < 3 {
        return Err(BoundError::CycleLengthTooSmall(ell));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();

    struct Search<'a> {
        pairs: &'a [(usize, usize)],
        ell: usize,
        adj: Vec<u16>,
        chosen: Vec<usize>,
        best: usize,
        best_edges: Vec<usize>,
    }

    impl Search<'_> {
        /// Whether `v` is within distance `ell - 1` of `u`.
        fn close(&self, u: usize, v: usize) -> bool {
            let mut seen: u16 = 1 << u;
            let mut frontier: u16 = 1 << u;
            for _ in 0..self.ell - 1 {
                let mut next = 0u16;
                let mut f = frontier;
                while f != 0 {
                    let w = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[w];
                }
                next &= !seen;
                if next >> v & 1 == 1 {
                    return true;
                }
                if next == 0 {
                    return false;
                }
                seen |= next;
                frontier = next;
            }
            false
        }

        fn go(&mut self, idx: usize) {
            if self.chosen.len() + (self.pairs.len() - idx) <= self.best {
                return;
            }
            if idx == self.pairs.len() {
                self.best = self.chosen.len();
                self.best_edges = self.chosen.clone();
                return;
            }
            let (u, v) = self.pairs[idx];
            if !self.close(u, v) {
                self.adj[u] |= 1 << v;
                self.adj[v] |= 1 << u;
                self.chosen.push(idx);
                self.go(idx + 1);
                self.chosen.pop();
                self.adj[u] &= !(1 << v);
                self.adj[v] &= !(1 << u);
            }
            self.go(idx + 1);
        }
    }

    let mut search = Search {
        pairs: &pairs,
        ell,
        adj: vec![0; n],
        chosen: Vec::new(),
        best: 0,
        best_edges: Vec::new(),
    };
    // the empty graph is always admissible
    search.go(0);
    let witness = Graph::from_edges(n, search.best_edges.iter().map(|&i| pairs[i]))
        .expect("pairs are simple edges");
    Ok((search.best, witness))
}

/// Girth, degree and bound summary for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub girth: Girth,
    pub min_degree: usize,
    /// `δ + (δ − 2)(g − 3)`, when the graph has a cycle and `δ ≥ 2`.
    pub bound: Option<usize>,
    pub z: Option<usize>,
    /// `z − bound`.
    pub slack: Option<i64>,
    /// `g(δ − 1)`, when `g ≥ 5` and `δ ≥ 2`.
    pub min_order: Option<usize>,
}

impl BoundReport {
    pub fn new(g: &Graph, z: Option<usize>) -> Self {
        let girth = g.girth();
        let min_degree = g.min_degree();
        let bound = davila_kenter_bound(girth, min_degree).ok();
        let min_order = girth
            .finite()
            .and_then(|gi| min_order_bound(gi, min_degree).ok());
        let slack = match (z, bound) {
            (Some(z), Some(b)) => Some(z as i64 - b as i64),
            _ => None,
        };
        BoundReport {
            girth,
            min_degree,
            bound,
            z,
            slack,
            min_order,
        }
    }
}
