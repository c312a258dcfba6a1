"""Bitmask combinatorics for canonical basis blades.

A blade over a d-dimensional space is encoded as a d-bit mask: bit i set
means the basis element of index i is a factor, factors always taken in
ascending index order.  Every sign rule of the exterior calculus (wedge
reordering, reversion, contraction of a sub-blade) reduces to counting
transpositions between masks, which is what this module does.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np


def grade(mask: int) -> int:
    """Number of factors of the blade (popcount)."""
    return mask.bit_count()


def bits(mask: int) -> list[int]:
    """Ascending factor indices of the blade."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def wedge_sign(a: int, b: int) -> int:
    """Sign of merging blade ``a`` with blade ``b`` into ascending order.

    Zero when the blades share a factor; otherwise (-1)**t with t the
    number of transpositions needed to sort the concatenation a then b.
    """
    if a & b:
        return 0
    swaps = 0
    # factors of a above each factor of b must hop over it
    bb = b
    while bb:
        low = bb & -bb
        swaps += grade(a & ~(low - 1) & ~low)
        bb &= bb - 1
    return -1 if swaps & 1 else 1


def reversion_sign(k: int) -> int:
    """(-1)**(k(k-1)/2): sign pattern +,+,-,-,... by grade."""
    return -1 if (k * (k - 1) // 2) & 1 else 1


def involution_sign(k: int) -> int:
    """(-1)**k."""
    return -1 if k & 1 else 1


def conjugation_sign(k: int) -> int:
    """(-1)**(k(k+1)/2): composition of reversion and grade involution."""
    return -1 if (k * (k + 1) // 2) & 1 else 1


def blades_of_grade(dim: int, k: int) -> list[int]:
    """All k-factor masks of a dim-dimensional space, ascending."""
    return sorted(mask_of(c) for c in combinations(range(dim), k))


def subblade_signs(b: int):
    """Yield (a, rest, sign) with a ⊆ b, rest = b \\ a, sign = wedge_sign(a, rest)."""
    sub = b
    while True:
        yield sub, b ^ sub, wedge_sign(sub, b ^ sub)
        if sub == 0:
            break
        sub = (sub - 1) & b


# Left/right contraction of a dual blade into a primal blade (or the
# mirrored pairing): single-output rules in the canonical dual bases.

def lcontr_blade(a: int, b: int) -> tuple[int, int]:
    """(sign, mask) of contracting blade ``a`` into blade ``b`` from the left.

    Nonzero only for a ⊆ b; result keeps the factors b \\ a.
    """
    if a & ~b:
        return 0, 0
    rest = b ^ a
    return reversion_sign(grade(a)) * wedge_sign(a, rest), rest


def rcontr_blade(a: int, b: int) -> tuple[int, int]:
    """(sign, mask) of contracting blade ``b`` out of blade ``a`` from the right."""
    if b & ~a:
        return 0, 0
    rest = a ^ b
    return reversion_sign(grade(b)) * wedge_sign(rest, b), rest


@dataclass(frozen=True)
class ProductTable:
    """COO structure constants of a bilinear blade product on a 2**dim space."""

    dim: int
    left: np.ndarray
    right: np.ndarray
    out: np.ndarray
    sign: np.ndarray

    def apply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        w = a[self.left] * b[self.right] * self.sign
        return np.bincount(self.out, weights=w, minlength=1 << self.dim)


def table_from_rule(dim: int, rule) -> ProductTable:
    """Build a ProductTable from rule(a_mask, b_mask) -> iterable of (mask, coeff)."""
    size = 1 << dim
    li, ri, oi, sg = [], [], [], []
    for a in range(size):
        for b in range(size):
            for m, c in rule(a, b):
                if c != 0:
                    li.append(a)
                    ri.append(b)
                    oi.append(m)
                    sg.append(float(c))
    return ProductTable(
        dim,
        np.asarray(li, dtype=np.intp),
        np.asarray(ri, dtype=np.intp),
        np.asarray(oi, dtype=np.intp),
        np.asarray(sg, dtype=np.float64),
    )


@lru_cache(maxsize=None)
def wedge_table(dim: int) -> ProductTable:
    def rule(a, b):
        s = wedge_sign(a, b)
        if s:
            yield a | b, s
    return table_from_rule(dim, rule)


@lru_cache(maxsize=None)
def dual_lcontr_table(dim: int) -> ProductTable:
    def rule(a, b):
        s, m = lcontr_blade(a, b)
        if s:
            yield m, s
    return table_from_rule(dim, rule)


@lru_cache(maxsize=None)
def dual_rcontr_table(dim: int) -> ProductTable:
    def rule(a, b):
        s, m = rcontr_blade(a, b)
        if s:
            yield m, s
    return table_from_rule(dim, rule)
