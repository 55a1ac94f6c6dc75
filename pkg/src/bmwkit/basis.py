"""The normal-form monomial basis of the BMW algebra B_n.

A basis monomial (f, u, sigma, d) stands for the product
T_u T_sigma E^hat_f T_d where E^hat_f = E_1 E_3 ... E_{2f-1}, the inverse
of u lies in the transversal H_f, sigma fixes {1..2f} pointwise, and d
lies in H_f.  The monomial count over all f is (2n-1)!!.

Each monomial has a Brauer-diagram shadow: the perfect matching obtained
by composing the permutation diagrams of u*sigma and d with the
f-horizontal-edge pattern of E^hat_f.
"""

from __future__ import annotations

from itertools import permutations as _all_perms
from typing import NamedTuple

from .symgroup import (
    Perm,
    apply,
    h_f,
    identity,
    length,
    perm_inv,
    perm_mul,
    perm_str,
    perm_from_str,
    reduced_word,
)


class BmwMonomial(NamedTuple):
    n: int
    f: int
    u: Perm
    sigma: Perm
    d: Perm

    def word_length(self) -> int:
        return length(self.u) + length(self.sigma) + length(self.d)

    def __str__(self) -> str:
        return monomial_str(self)


def identity_monomial(n: int) -> BmwMonomial:
    e = identity(n)
    return BmwMonomial(n, 0, e, e, e)


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1 * 3 * 5 * ... * (2n-1)."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def validate_monomial(m: BmwMonomial) -> None:
    n, f = m.n, m.f
    if not 0 <= 2 * f <= n:
        raise ValueError(f"bad f={f} for n={n}")
    if perm_inv(m.u) not in h_f(n, f):
        raise ValueError(f"u^-1 not in H_{f}({n}): {m.u}")
    if m.d not in h_f(n, f):
        raise ValueError(f"d not in H_{f}({n}): {m.d}")
    if any(apply(a, m.sigma) != a for a in range(1, 2 * f + 1)):
        raise ValueError(f"sigma moves a point of {{1..{2*f}}}: {m.sigma}")


def enumerate_basis(n: int) -> list:
    """All basis monomials of B_n in the canonical (f, u, sigma, d) order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for f in range(n // 2 + 1):
        hf = list(h_f(n, f))
        us = sorted(perm_inv(d) for d in hf)
        sigmas = _tail_perms(n, f)
        for u in us:
            for sigma in sigmas:
                for d in hf:
                    out.append(BmwMonomial(n, f, u, sigma, d))
    return out


def _tail_perms(n: int, f: int) -> list:
    """Permutations fixing {1..2f} pointwise, sorted by image sequence."""
    head = tuple(range(1, 2 * f + 1))
    return sorted(head + tail for tail in _all_perms(range(2 * f + 1, n + 1)))


# -- generator words ------------------------------------------------------

# GenWord tokens: ("T", i), ("Ti", i) for the inverse, ("E", i)


def canonical_word(m: BmwMonomial) -> tuple:
    """Positive generator word T_u T_sigma E_1 E_3 ... E_{2f-1} T_d."""
    word = [("T", i) for i in reduced_word(m.u)]
    word += [("T", i) for i in reduced_word(m.sigma)]
    word += [("E", 2 * k - 1) for k in range(1, m.f + 1)]
    word += [("T", i) for i in reduced_word(m.d)]
    return tuple(word)


def check_word(n: int, word) -> None:
    for kind, i in word:
        if kind not in ("T", "Ti", "E"):
            raise ValueError(f"unknown generator kind {kind!r}")
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for n={n}")


# -- internal (f, u, w) coordinates ---------------------------------------
#
# Folding sigma into the bottom word gives T_u E^hat_f T_w with w = sigma*d;
# w ranges over permutations whose pair slots are sorted ((2i-1)w < (2i)w)
# with increasing odd-slot values, the tail being unconstrained.


def to_internal(m: BmwMonomial):
    return m.f, m.u, perm_mul(m.sigma, m.d)


def cups_of_w(w: Perm, f: int) -> list:
    """Bottom edge value pairs [(min, max), ...] in slot order."""
    return [(w[2 * k - 2], w[2 * k - 1]) for k in range(1, f + 1)]


def encode_h(n: int, cups) -> Perm:
    """The H_f element with the given cups (tail values ascending)."""
    cups = sorted(tuple(sorted(c)) for c in cups)
    used = {v for c in cups for v in c}
    tail = sorted(v for v in range(1, n + 1) if v not in used)
    im = []
    for lo, hi in cups:
        im += [lo, hi]
    return tuple(im + tail)


def encode_w(n: int, cups, through: dict) -> Perm:
    """The W_f element with the given cups and through map {slot: value}."""
    cups = sorted(tuple(sorted(c)) for c in cups)
    im = []
    for lo, hi in cups:
        im += [lo, hi]
    for p in range(2 * len(cups) + 1, n + 1):
        im.append(through[p])
    return tuple(im)


def from_internal(n: int, f: int, u: Perm, w: Perm) -> BmwMonomial:
    """Split the bottom word w back into (sigma, d) with d in H_f."""
    d = encode_h(n, cups_of_w(w, f))
    sigma = perm_mul(w, perm_inv(d))
    return BmwMonomial(n, f, u, sigma, d)


# -- Brauer diagram shadow ------------------------------------------------


def shadow(m: BmwMonomial) -> frozenset:
    """Perfect matching on {1..n} and {-1..-n} (bottom points negative)."""
    n, f = m.n, m.f
    uinv = perm_inv(m.u)
    edges = []
    for k in range(1, f + 1):
        edges.append(frozenset((uinv[2 * k - 2], uinv[2 * k - 1])))
        edges.append(frozenset((-m.d[2 * k - 2], -m.d[2 * k - 1])))
    usd = perm_mul(perm_mul(m.u, m.sigma), m.d)
    for a in range(1, n + 1):
        if apply(a, m.u) > 2 * f:
            edges.append(frozenset((a, -apply(a, usd))))
    return frozenset(edges)


def brauer_edges_sorted(diagram: frozenset) -> list:
    """Edges as sorted pairs, each sorted by absolute value, list canonical."""
    out = []
    for e in diagram:
        a, b = sorted(e, key=lambda v: (abs(v), v < 0))
        out.append([a, b])
    out.sort(key=lambda e: (abs(e[0]), e[0] < 0, abs(e[1]), e[1] < 0))
    return out


def horizontal_top_edges(diagram: frozenset) -> int:
    return sum(1 for e in diagram if all(v > 0 for v in e))


# -- serialization --------------------------------------------------------


def monomial_str(m: BmwMonomial) -> str:
    return (
        f"f={m.f}|u={perm_str(m.u)}|s={perm_str(m.sigma)}|d={perm_str(m.d)}"
    )


def monomial_from_str(n: int, s: str) -> BmwMonomial:
    parts = dict(p.split("=", 1) for p in s.split("|"))
    return BmwMonomial(
        n,
        int(parts["f"]),
        perm_from_str(parts["u"]),
        perm_from_str(parts["s"]),
        perm_from_str(parts["d"]),
    )
