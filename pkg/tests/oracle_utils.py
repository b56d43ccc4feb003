"""Independent brute-force oracles used to pin expected values in the tests.

These deliberately avoid the library's own machinery where they serve as a
cross check: densities are counted over explicit unfolded windows, languages
are enumerated from forbidden words, and CA act on explicitly repeated
words.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from shiftgeo.configs import Alphabet, Configuration, is_primitive, \
    least_rotation


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def cyclic_density_oracle(u: str, v: str) -> Fraction:
    n = lcm(len(u), len(v))
    mism = sum(u[i % len(u)] != v[i % len(v)] for i in range(n))
    return Fraction(mism, n)


def necklaces(symbols: str, p: int) -> list[str]:
    """Primitive lex-least rotation representatives of length p."""
    return [
        "".join(t) for t in itertools.product(symbols, repeat=p)
        if is_primitive("".join(t)) and least_rotation("".join(t)) == "".join(t)
    ]


def avoiding_words(symbols: str, n: int, forbidden) -> list[str]:
    return ["".join(t) for t in itertools.product(symbols, repeat=n)
            if not any(f in "".join(t) for f in forbidden)]


def factor_oracle(symbols: str, w: str, forbidden, pad: int = 8) -> bool:
    """Brute extendability oracle: w is a factor of the SFT iff it has legal
    neighborhoods `pad` cells deep on both sides."""
    if any(f in w for f in forbidden):
        return False
    for u in itertools.product(symbols, repeat=pad):
        for v in itertools.product(symbols, repeat=pad):
            if not any(f in "".join(u) + w + "".join(v) for f in forbidden):
                return True
    return False


def cyclic_avoids(w: str, forbidden) -> bool:
    """True iff the periodic point with period w avoids every forbidden word."""
    horizon = w * (max(len(f) for f in forbidden) // len(w) + 2) \
        if forbidden else w
    return not any(f in horizon for f in forbidden)


def eca_table(rule: int) -> dict:
    table = {}
    for bits in itertools.product("01", repeat=3):
        idx = (int(bits[0]) << 2) | (int(bits[1]) << 1) | int(bits[2])
        table["".join(bits)] = "01"[(rule >> idx) & 1]
    return table


def apply_cyclic_oracle(table: dict, lo: int, hi: int, w: str) -> str:
    p = len(w)
    return "".join(
        table["".join(w[(i + o) % p] for o in range(lo, hi + 1))]
        for i in range(p))


def rand_config(rng, alphabet: Alphabet, max_period: int = 4,
                max_finite: int = 3) -> Configuration:
    syms = alphabet.symbols

    def word(lo, hi):
        return "".join(rng.choice(syms)
                       for _ in range(rng.randint(lo, hi)))

    return Configuration(alphabet, word(1, max_period),
                         word(0, max_finite), word(0, max_finite),
                         word(1, max_period))


def unfolded_density(x: Configuration, y: Configuration,
                     N: int) -> Fraction:
    mism = sum(x.symbol_at(i) != y.symbol_at(i) for i in range(-N, N + 1))
    return Fraction(mism, 2 * N + 1)
