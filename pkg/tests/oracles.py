"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools


def brute_chordless_cycles(vertices, edges) -> set:
    """Every chordless cycle as a frozenset of its edges, by plain DFS."""
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    order = {v: i for i, v in enumerate(vertices)}
    found = set()

    def extend(path):
        last = path[-1]
        for w in adj[last]:
            if order[w] < order[path[0]]:
                continue
            if w == path[0] and len(path) >= 3:
                cyc = path
                chord = any(
                    cyc[j] in adj[cyc[i]]
                    for i in range(len(cyc)) for j in range(i + 2, len(cyc))
                    if not (i == 0 and j == len(cyc) - 1)
                )
                if not chord:
                    found.add(frozenset(frozenset(e) for e in zip(cyc, cyc[1:] + [cyc[0]])))
            elif w not in path:
                extend(path + [w])

    for v in vertices:
        extend([v])
    return found


def brute_connected(vertices, edges, subset) -> bool:
    subset = set(subset)
    if not subset:
        return False
    start = next(iter(subset))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for a, b in edges:
            for p, q in ((a, b), (b, a)):
                if p == u and q in subset and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen == subset


def brute_min_pre_cycle_core(vertices, edges):
    """All minimum-size connected vertex sets containing every chordless cycle."""
    cycles = brute_chordless_cycles(vertices, edges)
    cyc_verts = [set().union(*c) for c in cycles]
    for size in range(1, len(vertices) + 1):
        hits = [
            frozenset(sub) for sub in itertools.combinations(vertices, size)
            if all(cv <= set(sub) for cv in cyc_verts) and brute_connected(vertices, edges, sub)
        ]
        if hits:
            return hits
    return []
