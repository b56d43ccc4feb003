"""Sofic shift presentations and SFT specifications.

A :class:`ShiftPresentation` is a finite labeled directed graph; the subshift
it presents is the set of bi-infinite label sequences along bi-infinite
paths.  SFTs given by forbidden-word lists compile to presentations via the
standard higher-block construction.  On top of this the module provides
language queries, minimal deterministic presentations (Shannon covers),
transitive components, mixing distances, synchronizing/unbordered word
search, an exact entropy-positivity test, intersections, and membership of
eventually periodic configurations.

All operations are pure; presentations are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from . import _graph
from .configs import (Alphabet, Configuration, is_primitive, is_unbordered,
                      least_rotation)
from .errors import CapError, EmptyShiftError, PreconditionError


def _state_key(s):
    """Deterministic sort key for heterogeneous state names."""
    if isinstance(s, frozenset):
        return (2, tuple(sorted(_state_key(x) for x in s)))
    if isinstance(s, tuple):
        return (1, tuple(_state_key(x) for x in s))
    return (0, str(s))


class ShiftPresentation:
    """Labeled directed graph presenting a sofic shift.

    ``states`` is a sequence of hashable names and ``edges`` a sequence of
    ``(src, dst, label)`` triples.  The graph is trimmed to its essential
    part (every state on a bi-infinite path) on construction; the empty
    presentation (no states) is valid and presents the empty shift.
    """

    __slots__ = ("alphabet", "states", "edges", "_out", "_in")

    def __init__(self, alphabet: Alphabet, states, edges, _trim=True):
        self.alphabet = alphabet
        states = list(states)
        seen = set()
        for s in states:
            if s in seen:
                raise ValueError(f"duplicate state {s!r}")
            seen.add(s)
        edges = [(s, t, a) for (s, t, a) in edges]
        for (s, t, a) in edges:
            if s not in seen or t not in seen:
                raise ValueError(f"edge {s!r}->{t!r} uses unknown state")
            if a not in alphabet:
                raise ValueError(f"edge label {a!r} not in alphabet")
        if len(set(edges)) != len(edges):
            edges = list(dict.fromkeys(edges))
        if _trim:
            states, edges = _trim_essential(states, edges)
        self.states = tuple(sorted(states, key=_state_key))
        self.edges = tuple(sorted(edges,
                                  key=lambda e: (_state_key(e[0]), e[2],
                                                 _state_key(e[1]))))
        out: dict = {s: {} for s in self.states}
        inc: dict = {s: {} for s in self.states}
        for (s, t, a) in self.edges:
            out[s].setdefault(a, set()).add(t)
            inc[t].setdefault(a, set()).add(s)
        self._out = out
        self._in = inc

    # -- basic queries -------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.states

    def is_deterministic(self) -> bool:
        return all(len(ts) == 1 for m in self._out.values()
                   for ts in m.values())

    def successors(self, state, symbol) -> frozenset:
        return frozenset(self._out[state].get(symbol, ()))

    def step(self, state_set, symbol) -> frozenset:
        out = set()
        for s in state_set:
            out |= self._out[s].get(symbol, set())
        return frozenset(out)

    def step_back(self, state_set, symbol) -> frozenset:
        out = set()
        for s in state_set:
            out |= self._in[s].get(symbol, set())
        return frozenset(out)

    def read(self, state_set, word: str) -> frozenset:
        cur = frozenset(state_set)
        for a in word:
            if not cur:
                break
            cur = self.step(cur, a)
        return cur

    def accepts_word(self, word: str) -> bool:
        """True iff word is a factor of the presented shift."""
        return bool(self.read(self.states, word))

    def renamed(self) -> "ShiftPresentation":
        """Relabel states to q0..qn in canonical order."""
        name = {s: f"q{i}" for i, s in enumerate(self.states)}
        return ShiftPresentation(
            self.alphabet, [name[s] for s in self.states],
            [(name[s], name[t], a) for (s, t, a) in self.edges], _trim=False)

    def to_dict(self) -> dict:
        return {"alphabet": "".join(self.alphabet.symbols),
                "states": [str(s) for s in self.states],
                "edges": [{"from": str(s), "to": str(t), "label": a}
                          for (s, t, a) in self.edges]}

    @staticmethod
    def from_dict(d: dict) -> "ShiftPresentation":
        ab = Alphabet(d["alphabet"])
        return ShiftPresentation(
            ab, list(d["states"]),
            [(e["from"], e["to"], e["label"]) for e in d["edges"]])

    def __repr__(self) -> str:
        return (f"ShiftPresentation(|Q|={len(self.states)}, "
                f"|E|={len(self.edges)})")


def _trim_essential(states, edges):
    """Drop states not lying on a bi-infinite path."""
    states = set(states)
    while True:
        out_deg = {s: 0 for s in states}
        in_deg = {s: 0 for s in states}
        kept = [(s, t, a) for (s, t, a) in edges
                if s in states and t in states]
        for (s, t, _a) in kept:
            out_deg[s] += 1
            in_deg[t] += 1
        bad = {s for s in states if out_deg[s] == 0 or in_deg[s] == 0}
        if not bad:
            return sorted(states, key=_state_key), kept
        states -= bad


# ---------------------------------------------------------------------------
# constructors


@dataclass(frozen=True)
class SftSpec:
    """SFT given by an alphabet and a list of forbidden words."""

    alphabet: Alphabet
    forbidden: tuple = ()

    def __post_init__(self):
        words = []
        for w in self.forbidden:
            if not w:
                raise ValueError("forbidden words must be nonempty")
            self.alphabet.check_word(w)
            if w not in words:
                words.append(w)
        object.__setattr__(self, "forbidden", tuple(sorted(words)))


def compile_sft(spec: SftSpec) -> ShiftPresentation:
    """Deterministic essential presentation of an SFT (higher-block graph)."""
    ab = spec.alphabet
    m = max((len(w) for w in spec.forbidden), default=1)
    if m == 1:
        allowed = [a for a in ab if a not in spec.forbidden]
        if not allowed:
            raise EmptyShiftError("every symbol is forbidden")
        pres = ShiftPresentation(ab, ["q0"], [("q0", "q0", a) for a in allowed])
        return pres
    clean = lambda w: not any(f in w for f in spec.forbidden)
    states = ["".join(u) for u in itertools.product(ab.symbols, repeat=m - 1)
              if clean("".join(u))]
    edges = []
    for u in states:
        for a in ab:
            w = u + a
            if clean(w):
                edges.append((u, w[1:], a))
    pres = ShiftPresentation(ab, states, edges)
    if pres.is_empty:
        raise EmptyShiftError("the forbidden words rule out every point")
    return pres.renamed()


def full_shift(alphabet: Alphabet) -> ShiftPresentation:
    return ShiftPresentation(alphabet, ["q0"],
                             [("q0", "q0", a) for a in alphabet])


def golden_mean() -> ShiftPresentation:
    """Binary shift forbidding the word 11."""
    from .configs import BINARY
    return compile_sft(SftSpec(BINARY, ("11",)))


def even_shift() -> ShiftPresentation:
    """Binary shift in which maximal 0-runs between 1s have even length."""
    from .configs import BINARY
    return ShiftPresentation(
        BINARY, ["e", "o"],
        [("e", "e", "1"), ("e", "o", "0"), ("o", "e", "0")])


def disjoint_union(*parts: ShiftPresentation) -> ShiftPresentation:
    """Presentation of the union, over the common alphabet of the parts."""
    syms = []
    for p in parts:
        for a in p.alphabet:
            if a not in syms:
                syms.append(a)
    ab = Alphabet(syms)
    states, edges = [], []
    for i, p in enumerate(parts):
        states += [(i, s) for s in p.states]
        edges += [((i, s), (i, t), a) for (s, t, a) in p.edges]
    return ShiftPresentation(ab, states, edges)


# ---------------------------------------------------------------------------
# language queries


def language(X: ShiftPresentation, n: int) -> list[str]:
    """All length-n factors of X, lexicographically sorted."""
    if X.is_empty:
        return []
    frontier = {"": frozenset(X.states)}
    for _ in range(n):
        nxt: dict[str, frozenset] = {}
        for w, S in frontier.items():
            for a in X.alphabet:
                T = X.step(S, a)
                if T:
                    nxt[w + a] = T
        frontier = nxt
    return sorted(frontier)


def _separating_word(A: ShiftPresentation, B: ShiftPresentation):
    """A word that is a factor of A but not of B, or None."""
    if A.is_empty:
        return None
    if B.is_empty:
        return ""
    start = (frozenset(A.states), frozenset(B.states))
    seen = {start}
    queue = [(start, "")]
    while queue:
        (SA, SB), w = queue.pop(0)
        for a in A.alphabet:
            TA = A.step(SA, a)
            if not TA:
                continue
            TB = B.step(SB, a) if a in B.alphabet else frozenset()
            if not TB:
                return w + a
            key = (TA, TB)
            if key not in seen:
                seen.add(key)
                queue.append((key, w + a))
    return None


def language_subset(A: ShiftPresentation, B: ShiftPresentation) -> bool:
    """Exact: every factor of A is a factor of B."""
    return _separating_word(A, B) is None


def language_equal(A: ShiftPresentation, B: ShiftPresentation) -> bool:
    return language_subset(A, B) and language_subset(B, A)


# ---------------------------------------------------------------------------
# Shannon cover


def _determinize(X: ShiftPresentation) -> ShiftPresentation:
    start = frozenset(X.states)
    seen = {start}
    queue = [start]
    edges = []
    while queue:
        S = queue.pop(0)
        for a in X.alphabet:
            T = X.step(S, a)
            if not T:
                continue
            edges.append((S, T, a))
            if T not in seen:
                seen.add(T)
                queue.append(T)
    return ShiftPresentation(X.alphabet, list(seen), edges)


def _merge_equivalent(X: ShiftPresentation) -> ShiftPresentation:
    """Merge states of a deterministic presentation with equal follower sets
    (Moore partition refinement on the partial transition function)."""
    states = list(X.states)
    sig0 = {s: frozenset(X._out[s]) for s in states}
    classes = {}
    for s in states:
        classes.setdefault(sig0[s], []).append(s)
    part = {s: i for i, (_k, grp) in enumerate(sorted(
        classes.items(), key=lambda kv: _state_key(kv[1][0]))) for s in grp}
    while True:
        sig = {}
        for s in states:
            sig[s] = (part[s], tuple(
                (a, part[next(iter(X._out[s][a]))] if a in X._out[s] else -1)
                for a in X.alphabet))
        groups: dict = {}
        for s in states:
            groups.setdefault(sig[s], []).append(s)
        new_part = {s: i for i, (_k, grp) in enumerate(sorted(
            groups.items(), key=lambda kv: _state_key(kv[1][0])))
            for s in grp}
        if len(set(new_part.values())) == len(set(part.values())):
            break
        part = new_part
    reps: dict[int, list] = {}
    for s in states:
        reps.setdefault(part[s], []).append(s)
    name = {c: frozenset(grp) for c, grp in reps.items()}
    edges = set()
    for (s, t, a) in X.edges:
        edges.add((name[part[s]], name[part[t]], a))
    return ShiftPresentation(X.alphabet, list(name.values()), sorted(
        edges, key=lambda e: (_state_key(e[0]), e[2], _state_key(e[1]))))


def shannon_cover(X: ShiftPresentation) -> ShiftPresentation:
    """Minimal deterministic presentation of the shift presented by X.

    Determinize from the full state set, merge follower-equivalent states,
    then greedily delete states whose removal leaves the language unchanged
    (this strips subset-construction artifacts whose factors are covered
    elsewhere).  The result is language-equal to X and is a fixed point of
    the procedure.
    """
    if X.is_empty:
        raise EmptyShiftError("empty shift has no cover")
    M = _merge_equivalent(_determinize(X))
    changed = True
    while changed:
        changed = False
        for s in M.states:
            if len(M.states) == 1:
                break
            rest = [t for t in M.states if t != s]
            Y = ShiftPresentation(
                M.alphabet, rest,
                [e for e in M.edges if e[0] != s and e[1] != s])
            if not Y.is_empty and language_equal(Y, M):
                M = _merge_equivalent(Y)
                changed = True
                break
    return M.renamed()


def is_irreducible(X: ShiftPresentation) -> bool:
    """True iff the presented shift is irreducible (nonempty)."""
    if X.is_empty:
        return False
    C = shannon_cover(X)
    idx = {s: i for i, s in enumerate(C.states)}
    succ = [[] for _ in C.states]
    for (s, t, _a) in C.edges:
        succ[idx[s]].append(idx[t])
    return len(_graph.strongly_connected_components(len(C.states), succ)) == 1


# ---------------------------------------------------------------------------
# transitive components


@dataclass
class ComponentDecomposition:
    components: list  # maximal irreducible subshifts, canonical order
    dropped: list = field(default_factory=list)  # (presentation, kept_index)


def transitive_components(X: ShiftPresentation) -> ComponentDecomposition:
    """Maximal irreducible subshifts of X.

    Computed from the SCCs of the Shannon cover, dropping SCC subshifts whose
    language is contained in another's.
    """
    if X.is_empty:
        return ComponentDecomposition([])
    C = shannon_cover(X)
    idx = {s: i for i, s in enumerate(C.states)}
    succ = [[] for _ in C.states]
    for (s, t, _a) in C.edges:
        succ[idx[s]].append(idx[t])
    comps = _graph.strongly_connected_components(len(C.states), succ)
    cands = []
    for comp in comps:
        names = {C.states[i] for i in comp}
        edges = [e for e in C.edges if e[0] in names and e[1] in names]
        if not edges:
            continue
        cands.append(ShiftPresentation(C.alphabet, sorted(names, key=_state_key),
                                       edges).renamed())
    cands.sort(key=lambda p: (len(p.states), p.edges))
    keep: list = []
    dropped = []
    for p in cands:
        inside = next((i for i, q in enumerate(keep)
                       if language_subset(p, q)), None)
        if inside is None:
            keep = [q for q in keep if not language_subset(q, p)]
            keep.append(p)
        else:
            dropped.append((p, inside))
    keep.sort(key=lambda p: (len(p.states), sorted(language(p, 1)),
                             p.edges))
    return ComponentDecomposition(keep, dropped)


# ---------------------------------------------------------------------------
# mixing distance


def _cover_period(C: ShiftPresentation) -> int:
    """gcd of cycle lengths of a strongly connected presentation."""
    idx = {s: i for i, s in enumerate(C.states)}
    level = {0: 0}
    queue = [0]
    g = 0
    succ = [[] for _ in C.states]
    for (s, t, _a) in C.edges:
        succ[idx[s]].append(idx[t])
    while queue:
        v = queue.pop(0)
        for w in succ[v]:
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
            else:
                g = gcd(g, level[v] + 1 - level[w])
    return abs(g) if g else 1


def _forward_subset_family(C: ShiftPresentation) -> list[frozenset]:
    seen = {frozenset(C.states)}
    queue = [frozenset(C.states)]
    while queue:
        S = queue.pop(0)
        for a in C.alphabet:
            T = C.step(S, a)
            if T and T not in seen:
                seen.add(T)
                queue.append(T)
    return sorted(seen, key=lambda S: (len(S), _state_key(S)))


def _backward_subset_family(C: ShiftPresentation) -> list[frozenset]:
    seen = {frozenset(C.states)}
    queue = [frozenset(C.states)]
    while queue:
        S = queue.pop(0)
        for a in C.alphabet:
            T = C.step_back(S, a)
            if T and T not in seen:
                seen.add(T)
                queue.append(T)
    return sorted(seen, key=lambda S: (len(S), _state_key(S)))


def _minimal_sets(family: list[frozenset]) -> list[frozenset]:
    return [S for S in family
            if not any(T < S for T in family)]


def mixing_distance(X: ShiftPresentation) -> int:
    """Least m such that every gap length n >= m is realizable between any
    two factors of X.  Raises for non-mixing input (with the period)."""
    if X.is_empty:
        raise EmptyShiftError("empty shift")
    C = shannon_cover(X)
    if not is_irreducible(C):
        raise PreconditionError("shift is not irreducible")
    g = _cover_period(C)
    if g > 1:
        raise PreconditionError(f"shift is not mixing (period {g})")
    idx = {s: i for i, s in enumerate(C.states)}
    n_states = len(C.states)
    adj = [[False] * n_states for _ in range(n_states)]
    for (s, t, _a) in C.edges:
        adj[idx[s]][idx[t]] = True
    ends = _minimal_sets(_forward_subset_family(C))
    starts = _minimal_sets(_backward_subset_family(C))
    end_sets = [sorted(idx[s] for s in S) for S in ends]
    start_sets = [frozenset(idx[s] for s in S) for S in starts]

    def condition(power) -> bool:
        # every reachable end-of-word state set can reach every
        # start-of-word state set with a path of this exact length
        for E in end_sets:
            for S in start_sets:
                if not any(power[p][q] for p in E for q in S):
                    return False
        return True

    powers = [[[i == j for j in range(n_states)] for i in range(n_states)]]
    cap = (n_states - 1) ** 2 + n_states + 2
    N = None
    for n in range(1, cap + 1):
        prev = powers[-1]
        cur = [[any(prev[i][k] and adj[k][j] for k in range(n_states))
                for j in range(n_states)] for i in range(n_states)]
        powers.append(cur)
        if all(all(row) for row in cur):
            N = n
            break
    if N is None:
        raise PreconditionError("shift is not mixing (no positive power)")
    m = N
    while m > 0 and condition(powers[m - 1]):
        m -= 1
    return m


# ---------------------------------------------------------------------------
# synchronizing words, entropy, the SFT-inside construction


def _words_by_length(ab: Alphabet, length: int):
    for tup in itertools.product(ab.symbols, repeat=length):
        yield "".join(tup)


def find_unbordered_synchronizing(X: ShiftPresentation,
                                  cap: int = 16) -> str:
    """Lexicographically least among the shortest words that synchronize the
    Shannon cover and are unbordered."""
    C = shannon_cover(X)
    for length in range(1, cap + 1):
        for w in _words_by_length(C.alphabet, length):
            if not is_unbordered(w):
                continue
            reached = C.read(C.states, w)
            if len(reached) == 1:
                return w
    raise CapError(f"no unbordered synchronizing word of length <= {cap}")


def positive_entropy(X: ShiftPresentation) -> bool:
    """True iff the shift has positive entropy.

    On a deterministic cover this holds iff some strongly connected
    component carries more internal edges than states, i.e. some state lies
    on two distinct first-return cycles.
    """
    if X.is_empty:
        return False
    C = shannon_cover(X)
    idx = {s: i for i, s in enumerate(C.states)}
    succ = [[] for _ in C.states]
    for (s, t, _a) in C.edges:
        succ[idx[s]].append(idx[t])
    comps = _graph.strongly_connected_components(len(C.states), succ)
    for comp in comps:
        members = set(comp)
        internal = sum(1 for (s, t, _a) in C.edges
                       if idx[s] in members and idx[t] in members)
        if internal > len(comp):
            return True
    return False


def concatenation_closure(alphabet: Alphabet, words) -> ShiftPresentation:
    """Presentation of the closure of all bi-infinite concatenations of the
    given nonempty words (a flower of cycles through one hub state)."""
    words = sorted(set(words))
    if not words or any(not w for w in words):
        raise ValueError("need nonempty words")
    states: list = ["hub"]
    edges = []
    for w in words:
        prev = "hub"
        for i, a in enumerate(w[:-1]):
            s = (w, i)
            states.append(s)
            edges.append((prev, s, a))
            prev = s
        edges.append((prev, "hub", w[-1]))
    return ShiftPresentation(alphabet, states, edges).renamed()


@dataclass
class SftInside:
    shift: ShiftPresentation
    w: str
    u: str
    v: str


def mixing_sft_inside(X: ShiftPresentation, word_cap: int = 16,
                      pad_cap: int = 8) -> SftInside:
    """A mixing positive-entropy SFT inside X, presented as the closure of
    concatenations of w*u and w*v with w unbordered synchronizing, u and v
    avoiding w, w u w and w v w factors of X, and |v| = |u| + 1."""
    if not positive_entropy(X):
        raise PreconditionError("shift does not have positive entropy")
    mixing_distance(X)  # raises unless X is mixing
    C = shannon_cover(X)
    for length in range(1, word_cap + 1):
        for w in _words_by_length(C.alphabet, length):
            if not is_unbordered(w):
                continue
            if len(C.read(C.states, w)) != 1:
                continue
            for k in range(0, pad_cap + 1):
                us = [u for u in _words_by_length(C.alphabet, k)
                      if w not in u and C.accepts_word(w + u + w)]
                vs = [v for v in _words_by_length(C.alphabet, k + 1)
                      if w not in v and C.accepts_word(w + v + w)]
                if us and vs:
                    u, v = us[0], vs[0]
                    Y = concatenation_closure(C.alphabet, [w + u, w + v])
                    if (language_subset(Y, C) and positive_entropy(Y)
                            and _is_mixing(Y)):
                        return SftInside(Y, w, u, v)
    raise CapError("no (w, u, v) triple found within the search caps")


def _is_mixing(X: ShiftPresentation) -> bool:
    try:
        mixing_distance(X)
        return True
    except PreconditionError:
        return False


# ---------------------------------------------------------------------------
# intersection and membership


def intersect(X: ShiftPresentation, Y: ShiftPresentation) -> ShiftPresentation:
    """Product-automaton presentation of the intersection (may be empty)."""
    if X.alphabet != Y.alphabet:
        raise ValueError("alphabet mismatch")
    states = [(s, t) for s in X.states for t in Y.states]
    edges = []
    for (s1, t1, a) in X.edges:
        for s2 in Y.states:
            for t2 in Y._out[s2].get(a, ()):
                edges.append(((s1, s2), (t1, t2), a))
    return ShiftPresentation(X.alphabet, states, edges).renamed()


def _stable_block_set(X: ShiftPresentation, word: str,
                      outgoing: bool) -> frozenset:
    """States carrying an infinite aligned run of `word`-blocks: leaving the
    state when ``outgoing``, arriving into it otherwise."""
    cur = frozenset(X.states)
    while True:
        if outgoing:
            nxt = frozenset(s for s in X.states
                            if X.read({s}, word) & cur)
        else:
            nxt = X.read(cur, word)
        if nxt == cur:
            return cur
        cur = nxt


def contains_config(X: ShiftPresentation, x: Configuration) -> bool:
    """Exact membership of an eventually periodic configuration."""
    if X.is_empty:
        return False
    if x.alphabet != X.alphabet:
        # symbols outside the presentation alphabet can still be compared
        for part in (x.left_period, x.left_finite, x.right_finite,
                     x.right_period):
            if any(a not in X.alphabet for a in part):
                return False
    left_stable = _stable_block_set(X, x.left_period, outgoing=False)
    mid = X.read(left_stable, x.left_finite + x.right_finite)
    if not mid:
        return False
    right_stable = _stable_block_set(X, x.right_period, outgoing=True)
    return bool(mid & right_stable)


def periodic_orbits(X: ShiftPresentation, max_period: int) -> list[str]:
    """Lex-least primitive representatives of the periodic orbits of X with
    least period <= max_period."""
    from .configs import periodic_config
    out = []
    seen = set()
    for p in range(1, max_period + 1):
        for w in _words_by_length(X.alphabet, p):
            if w in seen:
                continue
            if not is_primitive(w) or least_rotation(w) != w:
                continue
            seen.add(w)
            if contains_config(X, periodic_config(w, X.alphabet)):
                out.append(w)
    return out
