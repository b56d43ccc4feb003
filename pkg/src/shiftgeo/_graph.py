"""Small exact graph algorithms shared across the library.

Everything here works on integer-indexed nodes and integer edge weights, and
returns exact ``Fraction`` values where ratios appear.  All iteration orders
are deterministic.
"""

from __future__ import annotations

from fractions import Fraction


def strongly_connected_components(n: int, succ) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  ``succ[v]`` lists successors of v.

    Components are returned in reverse topological order (a component is
    emitted only after everything it can reach), each sorted ascending.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            work.pop()
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def condensation_reach(n: int, succ, comps: list[list[int]]):
    """Reachability between SCCs.  Returns (comp_of, reach) where
    reach[c] is the set of component indices reachable from component c
    (including c itself)."""
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    k = len(comps)
    dag: list[set[int]] = [set() for _ in range(k)]
    for v in range(n):
        cv = comp_of[v]
        for w in succ[v]:
            cw = comp_of[w]
            if cw != cv:
                dag[cv].add(cw)
    reach: list[set[int]] = [set() for _ in range(k)]
    # comps come out of Tarjan in reverse topological order, so successors
    # of component c have smaller indices and are already complete.
    for c in range(k):
        r = {c}
        for d in dag[c]:
            r |= reach[d]
        reach[c] = r
    return comp_of, reach


def karp_min_mean(nodes: list[int], edges) -> tuple[Fraction, list[int]]:
    """Minimum mean cycle of a strongly connected weighted graph.

    ``nodes`` are the node ids of one SCC; ``edges[v]`` lists (target, weight)
    pairs with both endpoints inside the SCC.  Returns the exact minimum mean
    and one cycle (as a node list) achieving it.
    """
    n = len(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    s = 0
    INF = None
    # dist[k][v] = min weight of a walk with exactly k edges from s to v
    dist = [[INF] * n for _ in range(n + 1)]
    parent = [[-1] * n for _ in range(n + 1)]
    dist[0][s] = 0
    for k in range(1, n + 1):
        dk, dk1, pk = dist[k], dist[k - 1], parent[k]
        for u in range(n):
            du = dk1[u]
            if du is None:
                continue
            for (t, w) in edges[nodes[u]]:
                v = idx[t]
                cand = du + w
                if dk[v] is None or cand < dk[v] or (cand == dk[v] and u < pk[v]):
                    dk[v] = cand
                    pk[v] = u
    best = None
    best_v = -1
    for v in range(n):
        if dist[n][v] is None:
            continue
        worst = None
        for k in range(n):
            if dist[k][v] is None:
                continue
            val = Fraction(dist[n][v] - dist[k][v], n - k)
            if worst is None or val > worst:
                worst = val
        if worst is not None and (best is None or worst < best):
            best = worst
            best_v = v
    if best is None:
        raise ValueError("graph has no cycle")
    # Recover a cycle of mean `best` from the optimal n-edge walk into best_v.
    walk = [best_v]
    v, k = best_v, n
    while k > 0:
        v = parent[k][v]
        walk.append(v)
        k -= 1
    walk.reverse()  # length n+1, indices into `nodes`
    weight_of = {}
    for u in nodes:
        for (t, w) in edges[u]:
            key = (idx[u], idx[t])
            if key not in weight_of or w < weight_of[key]:
                weight_of[key] = w
    for clen in range(1, n + 1):
        for i in range(n + 1 - clen):
            if walk[i] == walk[i + clen]:
                total = sum(weight_of[(walk[i + j], walk[i + j + 1])]
                            for j in range(clen))
                if Fraction(total, clen) == best:
                    return best, [nodes[w] for w in walk[i:i + clen]]
    raise AssertionError("min mean cycle not found on optimal walk")
