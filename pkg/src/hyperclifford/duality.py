"""Duality products pairing ⋀V with ⋀V*.

These pairings are metric-free: a multiform eats a multivector (and the
other way round) through the canonical dual bases.  In those bases the
scalar product is grade-orthogonal and diagonal on blades, the left
contraction of a p-blade into a q-blade keeps the q-p complementary
factors, and the right contraction mirrors it.  Contracting two elements
of the same side is a caller bug and raises, rather than returning 0;
the isotropy relations of the hyperbolic algebra live in
:mod:`hyperclifford.hyperbolic`, where both operands share ⋀H_V.
"""

from __future__ import annotations

import numpy as np

from . import blades
from .exterior import DimensionMismatch, Kind, Multivector, PairingError


def _check_pair(a: Multivector, b: Multivector) -> None:
    if a.space.dim_v != b.space.dim_v:
        raise DimensionMismatch(f"dimension mismatch: {a.space} vs {b.space}")
    kinds = {a.space.kind, b.space.kind}
    if kinds != {Kind.PRIMAL, Kind.DUAL}:
        raise PairingError(
            f"duality product needs one multiform and one multivector, got {a.space} and {b.space}"
        )


def dsp(a: Multivector, b: Multivector) -> float:
    """Duality scalar product ⟨Φ, X⟩ = ⟨X, Φ⟩.

    Symmetric, bilinear, grade-orthogonal and non-degenerate; on the
    canonical blade bases it is the sum of products of matching
    coefficients.
    """
    _check_pair(a, b)
    return float(np.dot(a.coeffs, b.coeffs))


def lcontr(a: Multivector, b: Multivector) -> Multivector:
    """Left contracted product: ⟨Φ, X| (a multivector) or ⟨X, Φ| (a multiform).

    For homogeneous arguments of grades p ≤ q the result has grade q−p
    and lives on the side of the second operand; p > q contributes zero.
    """
    _check_pair(a, b)
    table = blades.dual_lcontr_table(a.space.dim)
    return Multivector(b.space, table.apply(a.coeffs, b.coeffs))


def rcontr(a: Multivector, b: Multivector) -> Multivector:
    """Right contracted product: |Φ, X⟩ (a multiform) or |X, Φ⟩ (a multivector).

    Mirror of :func:`lcontr`: grades p ≥ q survive with result grade p−q,
    on the side of the first operand.
    """
    _check_pair(a, b)
    table = blades.dual_rcontr_table(a.space.dim)
    return Multivector(a.space, table.apply(a.coeffs, b.coeffs))


def dual_space(space):
    """The partner base space of the pairing (V ↔ V*)."""
    from .exterior import BaseSpace

    if space.kind is Kind.PRIMAL:
        return BaseSpace(Kind.DUAL, space.dim_v)
    if space.kind is Kind.DUAL:
        return BaseSpace(Kind.PRIMAL, space.dim_v)
    raise PairingError("the hyperbolic algebra is self-paired")
