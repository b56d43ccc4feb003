import itertools
import random
from fractions import Fraction as F

import pytest

from shiftgeo.configs import Alphabet, BINARY, parse_config, periodic_config, \
    shift
from shiftgeo.errors import PreconditionError
from shiftgeo.automata import (CellularAutomaton, apply_ca, apply_cyclic,
                               ca_pseudometric, check_on_subshift,
                               classify_full_shift, elementary_ca,
                               isometric_ca_precondition,
                               isometry_decomposition, minimal_neighborhood,
                               minimal_neighborhood_on, preserves_shift)
from shiftgeo.metrics import d_besicovitch
from shiftgeo.shifts import (ShiftPresentation, SftSpec, compile_sft,
                             disjoint_union, even_shift, full_shift,
                             golden_mean)
from oracle_utils import apply_cyclic_oracle, eca_table, rand_config

A4 = Alphabet("0123")


def and_rule():
    """Turns every 01 into 00: output is min(left, center)."""
    return CellularAutomaton(BINARY, -1, 0,
                             {"00": "0", "01": "0", "10": "0", "11": "1"})


def test_table_validation():
    with pytest.raises(ValueError):
        CellularAutomaton(BINARY, 0, 0, {"0": "0"})
    with pytest.raises(ValueError):
        CellularAutomaton(BINARY, 1, 0, {})
    with pytest.raises(ValueError):
        elementary_ca(256)


def test_apply_examples():
    x = parse_config("inf(0).1inf(1)", BINARY)
    assert apply_ca(elementary_ca(204), x) == x
    shift_rule = CellularAutomaton(BINARY, 1, 1, {"0": "0", "1": "1"})
    assert apply_ca(shift_rule, x) == shift(x, 1)
    x01 = periodic_config("01", BINARY)
    assert apply_ca(elementary_ca(90), x01) == \
        parse_config("inf(0).inf(0)", BINARY)


def test_apply_commutes_with_shift():
    rng = random.Random(6)
    for _ in range(50):
        f = elementary_ca(rng.randrange(256))
        x = rand_config(rng, BINARY)
        k = rng.randint(-5, 5)
        assert apply_ca(f, shift(x, k)) == shift(apply_ca(f, x), k)


def test_apply_cyclic_matches_oracle():
    rng = random.Random(9)
    for _ in range(40):
        rule = rng.randrange(256)
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 7)))
        assert apply_cyclic(elementary_ca(rule), w) == \
            apply_cyclic_oracle(eca_table(rule), -1, 1, w)


def test_minimal_neighborhood():
    assert minimal_neighborhood(elementary_ca(204)).span == (0, 0)
    assert minimal_neighborhood(elementary_ca(170)).span == (1, 1)
    info = minimal_neighborhood(elementary_ca(90))
    assert info.span == (-1, 1) and info.mask == (True, False, True)
    assert info.essential == (-1, 1)
    assert minimal_neighborhood(elementary_ca(0)).span is None


def test_classify_isometries():
    rep = classify_full_shift(elementary_ca(204))
    assert rep.isometric and rep.expanding and rep.contracting
    assert rep.decomposition == (0, {"0": "0", "1": "1"})
    assert isometry_decomposition(elementary_ca(170)) == \
        (1, {"0": "0", "1": "1"})
    assert isometry_decomposition(elementary_ca(51)) == \
        (0, {"0": "1", "1": "0"})
    with pytest.raises(PreconditionError):
        isometry_decomposition(elementary_ca(232))


def test_classify_witnesses():
    rep = classify_full_shift(elementary_ca(232))
    assert not rep.contracting
    x, y, din, dout = rep.witness
    assert din == F(1, 5) and dout >= F(2, 5)
    assert d_besicovitch(x, y) == din
    f = elementary_ca(232)
    assert d_besicovitch(apply_ca(f, x), apply_ca(f, y)) == dout


def test_classify_contracting_set():
    # the eight single-cell rules: two constants plus identity/negation at
    # each of the three offsets
    contracting = {rule for rule in range(256)
                   if classify_full_shift(elementary_ca(rule)).contracting}
    assert contracting == {0, 255, 204, 51, 240, 15, 170, 85}
    isometric = {rule for rule in range(256)
                 if classify_full_shift(elementary_ca(rule)).isometric}
    assert isometric == {204, 51, 240, 15, 170, 85}


def test_minimal_neighborhood_on_subshift():
    # rule 4 fires exactly on isolated ones, so it is the identity on the
    # no-11 shift although its full-shift neighborhood has size 3
    f4 = elementary_ca(4)
    assert minimal_neighborhood(f4).size == 3
    assert minimal_neighborhood_on(f4, golden_mean()) == (0,)
    # rule 138 restricted to the even shift reads only its right neighbor
    assert minimal_neighborhood_on(elementary_ca(138), even_shift()) == (1,)
    assert minimal_neighborhood_on(elementary_ca(0), golden_mean()) == ()


def test_preserves_shift():
    g111 = compile_sft(SftSpec(BINARY, ("111",)))
    assert preserves_shift(and_rule(), g111)
    assert preserves_shift(elementary_ca(204), golden_mean())
    assert not preserves_shift(elementary_ca(90), golden_mean())
    assert not preserves_shift(elementary_ca(255), golden_mean())


def test_contracting_example_small():
    g111 = compile_sft(SftSpec(BINARY, ("111",)))
    chk = check_on_subshift(and_rule(), g111, 6)
    assert chk.contracting is None
    # but it is not an isometry
    assert chk.isometric is not None


def test_identity_isometric_on_golden():
    chk = check_on_subshift(elementary_ca(204), golden_mean(), 6)
    assert chk.isometric is None and chk.contracting is None \
        and chk.expanding is None


def test_two_component_isometry_with_wide_neighborhood():
    # identity on one full shift, shift on the other: isometric although the
    # true neighborhood has size two
    X = disjoint_union(full_shift(BINARY), full_shift(Alphabet("23")))
    table = {}
    for a in "0123":
        for b in "0123":
            table[a + b] = a if a in "01" else b
    f = CellularAutomaton(A4, 0, 1, table)
    assert minimal_neighborhood(f).size == 2
    chk = check_on_subshift(f, X, 4)
    assert chk.isometric is None


def test_conjugacy_probe():
    # pair tracks: symbol s encodes (s >> 1, s & 1); swapping tracks is an
    # isometry, its conjugate by the half-track shift is not
    swap = CellularAutomaton(
        A4, 0, 0, {s: "0123"[((int(s) & 1) << 1) | (int(s) >> 1)]
                   for s in "0123"})
    X = full_shift(A4)
    chk = check_on_subshift(swap, X, 3)
    assert chk.isometric is None
    conj_table = {}
    for a, b, c in itertools.product("0123", repeat=3):
        out = ((int(a) & 1) << 1) | (int(c) >> 1)
        conj_table[a + b + c] = "0123"[out]
    conj = CellularAutomaton(A4, -1, 1, conj_table)
    chk2 = check_on_subshift(conj, X, 4)
    assert chk2.isometric is not None
    w = chk2.isometric
    assert w.d_in != w.d_out
    assert d_besicovitch(apply_ca(conj, w.x), apply_ca(conj, w.y)) == w.d_out


def test_rigidity_precondition():
    assert isometric_ca_precondition(golden_mean(), "0", 4, 9).passed
    assert isometric_ca_precondition(even_shift(), "0", 4, 9).passed
    orbit = ShiftPresentation(BINARY, ["a", "b"],
                              [("a", "b", "0"), ("b", "a", "1")])
    assert not isometric_ca_precondition(orbit, "0", 1, 4).passed


def test_ca_dict_roundtrip():
    f = elementary_ca(110)
    g = CellularAutomaton.from_dict(f.to_dict())
    assert g.table == f.table and (g.left, g.right) == (-1, 1)


def test_ca_pseudometric():
    ident, neg = elementary_ca(204), elementary_ca(51)
    assert ca_pseudometric(ident, ident, "0110", "0", origin=2) == 0
    assert ca_pseudometric(ident, neg, "0", "0") == 1
    assert ca_pseudometric(elementary_ca(170), ident, "00", "0") == 0
