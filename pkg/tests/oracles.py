"""Brute-force reference implementations used only by the tests.

A deliberately naive exterior calculus over index tuples: multivectors
are dicts mapping ascending index tuples to coefficients, products are
computed by permutation-sign bookkeeping, and the contracted products,
adjoints and operator extensions are evaluated from their defining sums
over all (redundant) index tuples with the factorial weights written out.
Nothing here shares code with the package's blade machinery.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def sort_sign(indices):
    """(sign, ascending tuple); sign 0 when an index repeats."""
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def o_zero():
    return {}


def o_scalar(c):
    return {(): float(c)} if c else {}


def o_vector(comps):
    return {(i,): float(c) for i, c in enumerate(comps) if c}


def o_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0.0) + v
    return {k: v for k, v in out.items() if v != 0.0}


def o_scale(c, a):
    return {k: c * v for k, v in a.items() if c * v != 0.0}


def o_wedge(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            s, key = sort_sign(ka + kb)
            if s:
                out[key] = out.get(key, 0.0) + s * va * vb
    return {k: v for k, v in out.items() if v != 0.0}


def o_wedge_many(factors):
    acc = o_scalar(1.0)
    for f in factors:
        acc = o_wedge(acc, f)
    return acc


def o_reversion(a):
    return {k: v * (-1.0) ** (len(k) * (len(k) - 1) // 2) for k, v in a.items()}


def o_dsp(a, b):
    """Diagonal pairing of a multiform dict with a multivector dict."""
    return sum(v * b.get(k, 0.0) for k, v in a.items())


def o_lcontr(phi, x, n):
    """Left contracted product from the defining redundant-tuple sum."""
    out = {}
    rphi = o_reversion(phi)
    for p in range(n + 1):
        phi_p = {k: v for k, v in rphi.items() if len(k) == p}
        if not phi_p:
            continue
        for q in range(p, n + 1):
            x_q = {k: v for k, v in x.items() if len(k) == q}
            if not x_q:
                continue
            r = q - p
            if r == 0:
                out[()] = out.get((), 0.0) + o_dsp(phi_p, x_q)
                continue
            w = 1.0 / math.factorial(r)
            for js in itertools.product(range(n), repeat=r):
                cov = o_wedge(phi_p, o_wedge_many(o_vector(np.eye(n)[j]) for j in js))
                coeff = o_dsp(cov, x_q)
                if coeff:
                    base = o_wedge_many(o_vector(np.eye(n)[j]) for j in js)
                    for k, v in base.items():
                        out[k] = out.get(k, 0.0) + w * coeff * v
    return {k: v for k, v in out.items() if v != 0.0}


def o_rcontr(phi, x, n):
    """Right contracted product from the defining redundant-tuple sum."""
    out = {}
    rx = o_reversion(x)
    for q in range(n + 1):
        x_q = {k: v for k, v in rx.items() if len(k) == q}
        if not x_q:
            continue
        for p in range(q, n + 1):
            phi_p = {k: v for k, v in phi.items() if len(k) == p}
            if not phi_p:
                continue
            r = p - q
            if r == 0:
                out[()] = out.get((), 0.0) + o_dsp(phi_p, x_q)
                continue
            w = 1.0 / math.factorial(r)
            for js in itertools.product(range(n), repeat=r):
                basis = o_wedge_many(o_vector(np.eye(n)[j]) for j in js)
                cov = o_wedge(basis, x_q)
                coeff = o_dsp(phi_p, cov)
                if coeff:
                    for k, v in basis.items():
                        out[k] = out.get(k, 0.0) + w * coeff * v
    return {k: v for k, v in out.items() if v != 0.0}


def from_mv(mv):
    """Package multivector -> oracle dict."""
    out = {}
    for mask in range(mv.space.size):
        c = float(mv.coeffs[mask])
        if c:
            key = tuple(i for i in range(mv.space.dim) if (mask >> i) & 1)
            out[key] = c
    return out


def to_coeffs(d, dim):
    out = np.zeros(1 << dim)
    for k, v in d.items():
        mask = 0
        for i in k:
            mask |= 1 << i
        out[mask] += v
    return out


def max_diff(d, mv) -> float:
    return float(np.max(np.abs(to_coeffs(d, mv.space.dim) - mv.coeffs)))


def o_epe_apply(lam, x, n):
    """Exterior-power extension from the defining redundant-tuple sum."""
    out = o_scalar(x.get((), 0.0))
    for k in range(1, n + 1):
        w = 1.0 / math.factorial(k)
        for js in itertools.product(range(n), repeat=k):
            cov = o_wedge_many(o_vector(np.eye(n)[j]) for j in js)
            coeff = o_dsp(cov, x)
            if coeff:
                img = o_wedge_many(o_vector(lam[:, j]) for j in js)
                out = o_add(out, o_scale(w * coeff, img))
    return out


def o_ce_apply(gam, x, n):
    """Contracted extension from the defining sum over the dual basis."""
    out = o_zero()
    for j in range(n):
        contracted = o_lcontr(o_vector(np.eye(n)[j]), x, n)
        out = o_add(out, o_wedge(o_vector(gam[:, j]), contracted))
    return out


def o_hv_inner(x, y):
    return float(x.dual @ y.primal + y.dual @ x.primal)


def o_gram_simple(xs, ys):
    """Pairing of two simple mixed multivectors given by their vector factors."""
    if len(xs) != len(ys):
        return 0.0
    if not xs:
        return 1.0
    mat = np.array([[o_hv_inner(a, b) for b in ys] for a in xs])
    return float(np.linalg.det(mat))
