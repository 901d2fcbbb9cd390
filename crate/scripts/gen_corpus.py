#!/usr/bin/env python3
"""Enumerate small graphs up to isomorphism and write graph6 corpus files.

Graphs on n vertices are obtained by attaching one new vertex to every graph
on n-1 vertices in every possible way, then deduplicating with nauty
canonical certificates (pynauty). Girth >= 5 is hereditary, so the girth
corpus is grown the same way while discarding graphs with short cycles.

Usage: python3 scripts/gen_corpus.py [OUTDIR]   (default: corpus/)
"""

import itertools
import os
import sys

import networkx as nx
import pynauty

KNOWN_GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
KNOWN_CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def certificate(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


def canonical_edges(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    lab = pynauty.canon_label(pynauty.Graph(n, adjacency_dict=adj))
    pos = {old: new for new, old in enumerate(lab)}
    return sorted(tuple(sorted((pos[u], pos[v]))) for u, v in edges)


def extend(graphs, n, keep):
    """All graphs on n vertices whose deletion of vertex n-1 is in `graphs`."""
    seen = {}
    for edges in graphs:
        for r in range(n):
            for nbrs in itertools.combinations(range(n - 1), r):
                cand = list(edges) + [(u, n - 1) for u in nbrs]
                if keep is not None and not keep(n, cand):
                    continue
                cert = certificate(n, cand)
                if cert not in seen:
                    seen[cert] = canonical_edges(n, cand)
    return sorted(seen.values())


def to_nx(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def girth_at_least_5(n, edges):
    g = to_nx(n, edges)
    return nx.girth(g) >= 5


def g6(n, edges):
    return nx.to_graph6_bytes(to_nx(n, edges), header=False).decode().strip()


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    os.makedirs(outdir, exist_ok=True)

    # every graph up to 8 vertices
    layers = {1: [[]]}
    for n in range(2, 9):
        layers[n] = extend(layers[n - 1], n, None)
    for n, gs in layers.items():
        assert len(gs) == KNOWN_GRAPH_COUNTS[n], (n, len(gs))

    with open(os.path.join(outdir, "connected_le8.g6"), "w") as out:
        for n in range(1, 9):
            conn = [e for e in layers[n] if nx.is_connected(to_nx(n, e))]
            assert len(conn) == KNOWN_CONNECTED_COUNTS[n], (n, len(conn))
            for e in conn:
                out.write(g6(n, e) + "\n")

    # girth >= 5 (forests included while growing), connected with min degree >= 2 kept
    girth_layers = {1: [[]]}
    for n in range(2, 11):
        girth_layers[n] = extend(girth_layers[n - 1], n, girth_at_least_5)
    with open(os.path.join(outdir, "girth5_mindeg2_le10.g6"), "w") as out:
        for n in range(1, 11):
            for e in girth_layers[n]:
                g = to_nx(n, e)
                if nx.is_connected(g) and min(d for _, d in g.degree()) >= 2:
                    out.write(g6(n, e) + "\n")


if __name__ == "__main__":
    main()
