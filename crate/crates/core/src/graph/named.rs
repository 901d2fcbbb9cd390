use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Graph;

/// Standard graph families and the small cages used for tight cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    Petersen,
    Heawood,
    McGee,
}

pub const KNOWN_NAMES: &[&str] = &[
    "cycle(n)",
    "path(n)",
    "complete(n)",
    "complete_bipartite(a,b)",
    "hypercube(d)",
    "petersen",
    "heawood",
    "mcgee",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NamedGraphError {
    #[error("unknown graph name {0:?}; known: {known}", known = KNOWN_NAMES.join(", "))]
    Unknown(String),
    #[error("invalid size for {family}: {detail}")]
    BadSize {
        family: &'static str,
        detail: String,
    },
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Cycle(n) => write!(f, "cycle({n})"),
            NamedGraph::Path(n) => write!(f, "path({n})"),
            NamedGraph::Complete(n) => write!(f, "complete({n})"),
            NamedGraph::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            NamedGraph::Hypercube(d) => write!(f, "hypercube({d})"),
            NamedGraph::Petersen => f.write_str("petersen"),
            NamedGraph::Heawood => f.write_str("heawood"),
            NamedGraph::McGee => f.write_str("mcgee"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = NamedGraphError;

    /// Accepts `petersen`, `heawood`, `mcgee` and `family(args)` forms such
    /// as `cycle(7)` or `complete_bipartite(3,3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let unknown = || NamedGraphError::Unknown(s.clone());
        let (family, args) = match s.split_once('(') {
            Some((family, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split(',')
                    .map(|a| a.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| unknown())?;
                (family.trim().to_string(), args)
            }
            None => (s.clone(), Vec::new()),
        };
        let sizes = |family: &'static str, want: usize| -> Result<Vec<usize>, NamedGraphError> {
            if args.len() != want {
                return Err(NamedGraphError::BadSize {
                    family,
                    detail: format!("expected {want} argument(s), got {}", args.len()),
                });
            }
            args.iter()
                .map(|&a| {
                    usize::try_from(a).ok().filter(|&a| a >= 1).ok_or_else(|| {
                        NamedGraphError::BadSize {
                            family,
                            detail: format!("{a} is not a positive size"),
                        }
                    })
                })
                .collect()
        };
        let graph = match family.as_str() {
            "petersen" if args.is_empty() => NamedGraph::Petersen,
            "heawood" if args.is_empty() => NamedGraph::Heawood,
            "mcgee" if args.is_empty() => NamedGraph::McGee,
            "cycle" => NamedGraph::Cycle(sizes("cycle", 1)?[0]),
            "path" => NamedGraph::Path(sizes("path", 1)?[0]),
            "complete" => NamedGraph::Complete(sizes("complete", 1)?[0]),
            "complete_bipartite" => {
                let ab = sizes("complete_bipartite", 2)?;
                NamedGraph::CompleteBipartite(ab[0], ab[1])
            }
            "hypercube" => NamedGraph::Hypercube(sizes("hypercube", 1)?[0]),
            _ => return Err(unknown()),
        };
        graph.validate()?;
        Ok(graph)
    }
}

impl NamedGraph {
    fn validate(self) -> Result<(), NamedGraphError> {
        let bad = |family, detail: &str| {
            Err(NamedGraphError::BadSize {
                family,
                detail: detail.to_string(),
            })
        };
        match self {
            NamedGraph::Cycle(n) if n < 3 => bad("cycle", "a cycle needs at least 3 vertices"),
            NamedGraph::Path(0) | NamedGraph::Complete(0) => {
                bad("path/complete", "size must be positive")
            }
            NamedGraph::CompleteBipartite(a, b) if a == 0 || b == 0 => {
                bad("complete_bipartite", "both sides must be nonempty")
            }
            NamedGraph::Hypercube(d) if d == 0 || d > 20 => {
                bad("hypercube", "dimension must be in 1..=20")
            }
            _ => Ok(()),
        }
    }

    pub fn build(self) -> Result<Graph, NamedGraphError> {
        self.validate()?;
        let g = match self {
            NamedGraph::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
            NamedGraph::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            NamedGraph::Complete(n) => {
                Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            NamedGraph::CompleteBipartite(a, b) => {
                Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
            NamedGraph::Hypercube(d) => {
                let n = 1usize << d;
                Graph::from_edges(
                    n,
                    (0..n).flat_map(|v| {
                        (0..d)
                            .map(move |b| (v, v ^ (1 << b)))
                            .filter(|&(v, w)| v < w)
                    }),
                )
            }
            NamedGraph::Petersen => {
                // outer 5-cycle 0..5, spokes i -- i+5, inner pentagram
                let edges =
                    (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
                Graph::from_edges(10, edges)
            }
            NamedGraph::Heawood => Ok(lcf(14, &[5, -5], 7)),
            NamedGraph::McGee => Ok(lcf(24, &[12, 7, -7], 8)),
        };
        Ok(g.expect("constructions are simple graphs"))
    }
}

/// Hamiltonian cycle `0..n` plus chords from LCF notation `[jumps]^repeats`.
fn lcf(n: usize, jumps: &[i64], repeats: usize) -> Graph {
    assert_eq!(jumps.len() * repeats, n);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
        edges.push((i, j));
    }
    Graph::from_edges(n, edges).expect("LCF chords are simple")
}

/// Parses and builds a named graph in one step.
pub fn named_graph(spec: &str) -> Result<Graph, NamedGraphError> {
    spec.parse::<NamedGraph>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn cages_have_expected_shape() {
        let cases = [
            ("petersen", 10, 15, 5),
            ("heawood", 14, 21, 6),
            ("mcgee", 24, 36, 7),
        ];
        for (name, n, m, g) in cases {
            let graph = named_graph(name).unwrap();
            assert_eq!(graph.n(), n, "{name}");
            assert_eq!(graph.edge_count(), m, "{name}");
            assert_eq!(graph.girth(), Girth::Finite(g), "{name}");
            assert_eq!(graph.min_degree(), 3, "{name}");
            assert_eq!(graph.max_degree(), 3, "{name}");
        }
    }

    #[test]
    fn families() {
        let q3 = named_graph("hypercube(3)").unwrap();
        assert_eq!(
            (q3.n(), q3.edge_count(), q3.girth()),
            (8, 12, Girth::Finite(4))
        );
        let k33 = named_graph("complete_bipartite(3, 3)").unwrap();
        assert_eq!((k33.n(), k33.edge_count()), (6, 9));
        assert_eq!(named_graph("path(6)").unwrap().girth(), Girth::Acyclic);
        assert_eq!(named_graph("complete(5)").unwrap().edge_count(), 10);
        assert_eq!(named_graph("Petersen").unwrap().n(), 10);
    }

    #[test]
    fn invalid_names_and_sizes() {
        assert!(matches!(
            named_graph("cycle(2)"),
            Err(NamedGraphError::BadSize { .. })
        ));
        assert!(matches!(
            named_graph("path(0)"),
            Err(NamedGraphError::BadSize { .. })
        ));
        assert!(matches!(
            named_graph("complete(-3)"),
            Err(NamedGraphError::BadSize { .. })
        ));
        assert!(matches!(
            named_graph("frucht"),
            Err(NamedGraphError::Unknown(_))
        ));
        assert!(matches!(
            named_graph("cycle(5"),
            Err(NamedGraphError::Unknown(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for name in [
            "cycle(7)",
            "complete_bipartite(2,5)",
            "hypercube(4)",
            "mcgee",
        ] {
            let parsed: NamedGraph = name.parse().unwrap();
            assert_eq!(parsed.to_string(), name);
        }
    }
}
