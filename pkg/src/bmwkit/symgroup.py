"""Permutation combinatorics for the symmetric group S_n.

Permutations are tuples of images in one-line notation over {1..n} and act
on the RIGHT: evaluating w at a point a gives (a)w = w[a-1], so that
((a)x)y = (a)(xy).

The module provides lengths, deterministic reduced words, Young subgroups
and their distinguished (minimal-length) right coset representatives, the
horizontal-edge transversals H_f with their five-class partition, and the
block permutation group generated by s_{2i} s_{2i-1} s_{2i+1} s_{2i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_perms
from math import factorial

Perm = tuple  # images (1-based), e.g. (2, 1, 3) is the transposition s_1


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_perm(w) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def apply(a: int, w: Perm) -> int:
    """(a)w for a point a in {1..n}."""
    return w[a - 1]


def perm_mul(x: Perm, y: Perm) -> Perm:
    """Product xy under the right-action convention: (a)(xy) = ((a)x)y."""
    return tuple(y[v - 1] for v in x)


def perm_inv(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, v in enumerate(w):
        inv[v - 1] = i + 1
    return tuple(inv)


def simple(n: int, i: int) -> Perm:
    """The adjacent transposition s_i swapping i and i+1."""
    im = list(range(1, n + 1))
    im[i - 1], im[i] = im[i], im[i - 1]
    return tuple(im)


def mul_simple_right(w: Perm, i: int) -> Perm:
    """w * s_i: swaps the values i and i+1 inside w."""
    im = list(w)
    a, b = im.index(i), im.index(i + 1)
    im[a], im[b] = im[b], im[a]
    return tuple(im)


def length(w: Perm) -> int:
    """Inversion count of w.

    >>> length((1, 2, 3))
    0
    >>> length((3, 2, 1))
    3
    """
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def reduced_word(w: Perm) -> tuple:
    """The lexicographically smallest reduced word for w.

    Repeatedly takes the smallest position descent i (where (i)w > (i+1)w)
    and strips s_i from the left, so that w = s_{i_1} s_{i_2} ... s_{i_l}.

    >>> reduced_word((1, 2, 3))
    ()
    >>> reduced_word((1, 3, 2))
    (2,)
    """
    im = list(w)
    word = []
    n = len(im)
    while True:
        for i in range(n - 1):
            if im[i] > im[i + 1]:
                word.append(i + 1)
                im[i], im[i + 1] = im[i + 1], im[i]
                break
        else:
            return tuple(word)


def word_to_perm(n: int, word) -> Perm:
    w = identity(n)
    for i in word:
        w = perm_mul(w, simple(n, i))
    return w


def right_descents(w: Perm):
    inv = perm_inv(w)
    return [i for i in range(1, len(w)) if inv[i - 1] > inv[i]]


# -- compositions and coset representatives -----------------------------


def check_composition(mu, n: int):
    if any(p < 0 for p in mu) or sum(mu) != n:
        raise ValueError(f"{mu} is not a composition of {n}")


def blocks_of(mu):
    """Consecutive index blocks of a composition: (2,1) -> [(1,2), (3,)]."""
    out = []
    start = 1
    for part in mu:
        out.append(tuple(range(start, start + part)))
        start += part
    return out


@dataclass(frozen=True)
class CosetSet:
    """A labelled, explicitly enumerated set of permutations."""

    label: str
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in set(self.elements)


def _sorted_set(label: str, elems) -> CosetSet:
    return CosetSet(label, tuple(sorted(set(elems))))


def multinomial(n: int, mu) -> int:
    out = factorial(n)
    for p in mu:
        out //= factorial(p)
    return out


def young_subgroup(n: int, mu) -> CosetSet:
    """All elements of the Young subgroup S_mu (block-preserving permutations)."""
    check_composition(mu, n)
    blocks = blocks_of(mu)
    elems = []
    for w in _all_perms(range(1, n + 1)):
        if all(set(w[b[0] - 1 : b[-1]]) == set(b) for b in blocks if b):
            elems.append(tuple(w))
    return _sorted_set(f"S_{tuple(mu)}", elems)


def coset_reps(n: int, mu) -> CosetSet:
    """Distinguished minimal-length right coset representatives D_mu.

    d is distinguished iff d is increasing on every block of mu; then every
    w in S_n factors uniquely as w = s*d with s in S_mu, d in D_mu and
    lengths adding.
    """
    check_composition(mu, n)
    blocks = [b for b in blocks_of(mu) if len(b) > 1]
    elems = []
    for w in _all_perms(range(1, n + 1)):
        if all(all(w[b[k] - 1] < w[b[k + 1] - 1] for k in range(len(b) - 1)) for b in blocks):
            elems.append(tuple(w))
    return _sorted_set(f"D_{tuple(mu)}", elems)


def h_f(n: int, f: int) -> CosetSet:
    """The transversal H_f of f-horizontal-edge configurations.

    d belongs to H_f iff (1)d < (3)d < ... < (2f-1)d, each (2i-1)d < (2i)d,
    and (2f+1)d < (2f+2)d < ... < (n)d.
    """
    if not 0 <= 2 * f <= n:
        raise ValueError(f"need 0 <= 2f <= n, got n={n}, f={f}")
    elems = [w for w in _all_perms(range(1, n + 1)) if _in_h_f(w, f)]
    return _sorted_set(f"H_{f}({n})", elems)


def _in_h_f(w, f: int) -> bool:
    n = len(w)
    if any(w[2 * i] > w[2 * i + 1] for i in range(f)):
        return False
    if any(w[2 * i - 2] > w[2 * i] for i in range(1, f)):
        return False
    return all(w[p] < w[p + 1] for p in range(2 * f, n - 1))


def h_f_cardinality(n: int, f: int) -> int:
    return factorial(n) // (2 ** f * factorial(f) * factorial(n - 2 * f))


def h_f_partition(n: int, f: int) -> dict:
    """Split H_f into the five classes keyed by ((1)d^{-1}, (2)d^{-1}).

    Classes: (a) (1,2); (b) (1,3); (c) (1,2f+1); (d) (2f+1,1);
    (e) (2f+1,2f+2).
    """
    if not 1 <= f <= n // 2:
        raise ValueError(f"need 1 <= f <= n//2, got n={n}, f={f}")
    keys = {
        (1, 2): "a",
        (1, 3): "b",
        (1, 2 * f + 1): "c",
        (2 * f + 1, 1): "d",
        (2 * f + 1, 2 * f + 2): "e",
    }
    out = {c: [] for c in "abcde"}
    for d in h_f(n, f):
        inv = perm_inv(d)
        cls = keys.get((inv[0], inv[1]))
        if cls is None:
            raise AssertionError(f"element {d} fits no class of the partition")
        out[cls].append(d)
    return {
        c: CosetSet(f"H_{f}({n})^({c})", tuple(sorted(elems)))
        for c, elems in out.items()
    }


def embed(w: Perm, offset: int, n: int) -> Perm:
    """Shift a permutation of {1..m} to act on {offset+1..offset+m} inside S_n."""
    m = len(w)
    if offset + m > n:
        raise ValueError("embedded window exceeds n")
    im = list(range(1, n + 1))
    for a in range(1, m + 1):
        im[offset + a - 1] = offset + w[a - 1]
    return tuple(im)


def embed_set(S: CosetSet, offset: int, n: int, label: str | None = None) -> CosetSet:
    elems = tuple(sorted(embed(w, offset, n) for w in S))
    return CosetSet(label or f"{S.label}^shift{offset}", elems)


def set_product(Y, Z, label="product") -> CosetSet:
    return _sorted_set(label, (perm_mul(y, z) for y in Y for z in Z))


def inverse_set(S: CosetSet, label: str | None = None) -> CosetSet:
    return _sorted_set(label or f"{S.label}^-1", (perm_inv(w) for w in S))


def check_length_additive_factorization(S, Y, Z) -> bool:
    """True iff every w in S factors uniquely as yz with lengths adding.

    Requires |S| = |Y| * |Z|, the products to be pairwise distinct, to
    exhaust S, and l(yz) = l(y) + l(z) throughout.
    """
    sset = set(S)
    if len(Y) * len(Z) != len(sset):
        return False
    seen = set()
    for y in Y:
        ly = length(y)
        for z in Z:
            w = perm_mul(y, z)
            if w in seen or w not in sset:
                return False
            if length(w) != ly + length(z):
                return False
            seen.add(w)
    return seen == sset


# -- the block permutation group inside S_{2f} ---------------------------


def block_generator(f: int, i: int) -> Perm:
    """The generator s_{2i} s_{2i-1} s_{2i+1} s_{2i} = (2i-1,2i+1)(2i,2i+2)."""
    n = 2 * f
    im = list(range(1, n + 1))
    im[2 * i - 2], im[2 * i] = im[2 * i], im[2 * i - 2]
    im[2 * i - 1], im[2 * i + 1] = im[2 * i + 1], im[2 * i - 1]
    return tuple(im)


def block_perm_group(f: int) -> tuple:
    """The group generated by the block transpositions, plus its coset chain.

    Returns (Bbb_S, Bbb_D): the full group of order f! and the
    representatives {bs_1 bs_2 ... bs_k | k = 0..f-1}.
    """
    if f < 1:
        raise ValueError("f must be >= 1")
    n = 2 * f
    gens = [block_generator(f, i) for i in range(1, f)]
    group = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                x = perm_mul(w, g)
                if x not in group:
                    group.add(x)
                    new.append(x)
        frontier = new
    chain = [identity(n)]
    for i in range(1, f):
        chain.append(perm_mul(chain[-1], block_generator(f, i)))
    return (
        CosetSet(f"Bbb_S({f})", tuple(sorted(group))),
        CosetSet(f"Bbb_D(1,{f - 1})", tuple(chain)),
    )


def descending_chain(n: int, top: int, bottom: int) -> Perm:
    """The permutation s_top s_{top-1} ... s_bottom (empty when top < bottom)."""
    return word_to_perm(n, list(range(top, bottom - 1, -1)))


def perm_str(w: Perm) -> str:
    return "[" + ",".join(str(v) for v in w) + "]"


def perm_from_str(s: str) -> Perm:
    return tuple(int(v) for v in s.strip()[1:-1].split(","))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
