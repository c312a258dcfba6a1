"""Randomized identity suites over the whole kernel.

Every algebraic or differential law the library promises is registered
here as a named check: one function that draws a random instance and
returns the worst absolute residual between the two sides.  Suites are
deterministic — the generator for (suite seed, identity, dimension, case
index) is fixed — so a report is reproducible byte for byte, and case
evaluation is order-independent (the report keeps the max residual and a
sorted failure list).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import duality, hyperbolic as hb
from . import connection as cn
from . import extensor as ex
from . import fields as fl
from . import geometry as gm
from .exterior import BaseSpace, Kind, Multivector, dual, hyperbolic, primal
from .extensor import ExtSignature, VSpaceSig
from .scalarfield import ONE, ZERO, Const, Coord, Cos, ScalarField, Sin

SUITE_NAMES = (
    "exterior",
    "duality",
    "hyperbolic",
    "cliffmap",
    "extensor",
    "differential",
    "geometry",
)


@dataclass(frozen=True)
class Check:
    name: str
    group: str
    dims: tuple[int, ...]
    fn: Callable[[np.random.Generator, int], float]


REGISTRY: list[Check] = []


def register(group: str, name: str, dims=(2, 3)):
    def deco(fn):
        REGISTRY.append(Check(f"{group}.{name}", group, tuple(dims), fn))
        return fn

    return deco


@dataclass(frozen=True)
class Failure:
    identity: str
    dim: int
    case: int
    seed: tuple[int, ...]
    residual: float


@dataclass
class SuiteReport:
    suite: str
    dim: int
    cases: int
    tol: float
    identities: int
    max_residual: float = 0.0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [
            f"suite={self.suite} dim={self.dim} cases={self.cases} "
            f"identities={self.identities} max_residual={self.max_residual:.3e} "
            f"failures={len(self.failures)}"
        ]
        for f in self.failures:
            out.append(
                f"  FAIL {f.identity} dim={f.dim} case={f.case} "
                f"seed={list(f.seed)} residual={f.residual:.3e}"
            )
        return out


def checks_for(suite: str, dim: int) -> list[Check]:
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)} or all")
    return [c for c in REGISTRY if c.group == suite and dim in c.dims]


def case_rng(seed: int, identity: str, dim: int, case: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(identity.encode()), dim, case])


def run_suite(suite: str, dim: int, cases: int, seed: int, tol: float) -> SuiteReport:
    selected = checks_for(suite, dim)
    report = SuiteReport(suite, dim, cases, tol, identities=len(selected))
    for chk in selected:
        for case in range(cases):
            rng = case_rng(seed, chk.name, dim, case)
            residual = float(chk.fn(rng, dim))
            report.max_residual = max(report.max_residual, residual)
            if not residual <= tol:
                report.failures.append(
                    Failure(chk.name, dim, case, (seed, zlib.crc32(chk.name.encode()), dim, case), residual)
                )
    report.failures.sort(key=lambda f: (f.identity, f.case))
    return report


def run_all(dim: int, cases: int, seed: int, tol: float) -> list[SuiteReport]:
    return [run_suite(s, dim, cases, seed, tol) for s in SUITE_NAMES]


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------

def rand_mv(rng, space: BaseSpace, scalar_free: bool = False) -> Multivector:
    c = rng.uniform(-1.0, 1.0, space.size)
    if scalar_free:
        c[0] = 0.0
    return Multivector(space, c)


def rand_homogeneous(rng, space: BaseSpace, k: int) -> Multivector:
    return rand_mv(rng, space).part(k)


def rand_hvector(rng, n: int) -> hb.HVector:
    return hb.HVector(rng.uniform(-1, 1, n), rng.uniform(-1, 1, n))


def rand_invertible(rng, n: int) -> np.ndarray:
    while True:
        a = rng.uniform(-1.0, 1.0, (n, n))
        if abs(np.linalg.det(a)) > 0.2:
            return a


def rand_sig(rng, n: int, side: Kind, max_grades: int = 2) -> VSpaceSig:
    count = int(rng.integers(1, max_grades + 1))
    grades = tuple(sorted(rng.choice(range(n + 1), size=count, replace=False)))
    return VSpaceSig(side, grades, n)


def rand_ext_1slot(rng, n: int, in_side: Kind, out_side: Kind) -> ex.Extensor:
    i, o = rand_sig(rng, n, in_side), rand_sig(rng, n, out_side)
    sig = ex.ExtSignature((i,), (), o) if in_side is Kind.PRIMAL else ex.ExtSignature((), (i,), o)
    return ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))


def rand_slot_value(rng, slot: VSpaceSig) -> Multivector:
    c = np.zeros(slot.space.size)
    for m in slot.basis():
        c[m] = rng.uniform(-1, 1)
    return Multivector(slot.space, c)


def rand_poly(rng, n: int, trig: bool = True, deg: int = 2) -> ScalarField:
    f: ScalarField = Const(rng.uniform(-1, 1))
    for _ in range(int(rng.integers(1, 3))):
        term: ScalarField = Const(rng.uniform(-1, 1))
        for _ in range(int(rng.integers(1, deg + 1))):
            term = term * Coord(int(rng.integers(0, n)))
        f = f + term
    if trig and rng.random() < 0.4:
        g = Coord(int(rng.integers(0, n)))
        f = f + Const(rng.uniform(-1, 1)) * (Sin(g) if rng.random() < 0.5 else Cos(g))
    return f


def rand_vf(rng, chart: fl.Chart, trig: bool = True) -> fl.MultivectorField:
    return fl.vector_field(chart, [rand_poly(rng, chart.dim, trig) for _ in range(chart.dim)])


def rand_ff(rng, chart: fl.Chart, trig: bool = True) -> fl.MultivectorField:
    return fl.form_field(chart, [rand_poly(rng, chart.dim, trig) for _ in range(chart.dim)])


def rand_mvf(rng, chart: fl.Chart, side: Kind = Kind.PRIMAL) -> fl.MultivectorField:
    sp = BaseSpace(side, chart.dim)
    return fl.MultivectorField(sp, chart, [rand_poly(rng, chart.dim, False) for _ in range(sp.size)])


def rand_conn(rng, chart: fl.Chart, symmetric: bool = False, trig: bool = False) -> cn.Connection:
    n = chart.dim
    g = [[[rand_poly(rng, n, trig) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    if symmetric:
        for s in range(n):
            for m in range(n):
                for v in range(m + 1, n):
                    g[s][v][m] = g[s][m][v]
    return cn.Connection(chart, g)


def rand_opfield(rng, chart: fl.Chart) -> fl.OperatorField:
    """Triangular with positive diagonal: invertible across the whole box."""
    n = chart.dim
    mat: list[list[ScalarField]] = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = ONE + Coord(i) * Coord(i) if rng.random() < 0.5 else ONE
        for j in range(i + 1, n):
            if rng.random() < 0.7:
                mat[i][j] = rand_poly(rng, n, False, 1)
    return fl.OperatorField(Kind.PRIMAL, chart, mat)


def rand_frame(rng, chart: fl.Chart, shift: int = 0) -> fl.FrameField:
    n = chart.dim
    mat = [
        [
            rand_poly(rng, n, False, 1) if i != j else ONE + Coord((i + shift) % n) * Coord((i + shift) % n)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return fl.FrameField(chart, mat)


def rand_extf(rng, chart: fl.Chart, in_side: Kind, out_side: Kind, gi=(1,), go=(1,)) -> fl.ExtensorField:
    n = chart.dim
    i = VSpaceSig(in_side, gi, n)
    o = VSpaceSig(out_side, go, n)
    sig = ExtSignature((i,), (), o) if in_side is Kind.PRIMAL else ExtSignature((), (i,), o)
    arr = np.empty(sig.shape, dtype=object)
    for idx in np.ndindex(*sig.shape):
        arr[idx] = rand_poly(rng, n, False)
    return fl.ExtensorField(sig, chart, arr)


def rand_slot_field(rng, chart: fl.Chart, slot: VSpaceSig) -> fl.MultivectorField:
    sp = slot.space
    comps: list[ScalarField] = [ZERO] * sp.size
    for m in slot.basis():
        comps[m] = rand_poly(rng, chart.dim, False)
    return fl.MultivectorField(sp, chart, comps)


def mdiff(a: Multivector, b: Multivector) -> float:
    return a.max_diff(b)


def field_resid(x, pts) -> float:
    if isinstance(x, fl.MultivectorField):
        return float(np.max(np.abs(x.at_many(pts))))
    if isinstance(x, fl.ExtensorField):
        return max(float(x.at(p).norm_inf()) for p in pts)
    return float(np.max(np.abs(x(pts))))


def field_diff(a, b, pts) -> float:
    return field_resid(a - b, pts)


# ---------------------------------------------------------------------------
# exterior
# ---------------------------------------------------------------------------

@register("exterior", "wedge.associativity", dims=(1, 2, 3))
def _(rng, n):
    sp = primal(n)
    x, y, z = (rand_mv(rng, sp) for _ in range(3))
    return mdiff(x.wedge(y).wedge(z), x.wedge(y.wedge(z)))


@register("exterior", "wedge.graded_anticommutativity", dims=(1, 2, 3))
def _(rng, n):
    sp = primal(n)
    p, q = int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1))
    x, y = rand_homogeneous(rng, sp, p), rand_homogeneous(rng, sp, q)
    return mdiff(x.wedge(y), ((-1.0) ** (p * q)) * y.wedge(x))


@register("exterior", "wedge.bilinearity", dims=(1, 2, 3))
def _(rng, n):
    sp = dual(n)
    x, y, z = (rand_mv(rng, sp) for _ in range(3))
    a, b = rng.uniform(-2, 2, 2)
    return mdiff((a * x + b * y).wedge(z), a * x.wedge(z) + b * y.wedge(z))


@register("exterior", "part.projection_sum", dims=(1, 2, 3))
def _(rng, n):
    sp = primal(n)
    x = rand_mv(rng, sp)
    total = Multivector.zero(sp)
    for k in range(n + 1):
        total = total + x.part(k)
    d = mdiff(total, x)
    k = int(rng.integers(0, n + 1))
    d = max(d, mdiff(x.part(k).part(k), x.part(k)))
    j = (k + 1) % (n + 1)
    return max(d, x.part(k).part(j).norm_inf())


@register("exterior", "involution.squares", dims=(1, 2, 3))
def _(rng, n):
    x = rand_mv(rng, hyperbolic(n))
    return max(
        mdiff(x.grade_involution().grade_involution(), x),
        mdiff(x.reversion().reversion(), x),
        mdiff(x.conjugation().conjugation(), x),
    )


@register("exterior", "involution.composition", dims=(1, 2, 3))
def _(rng, n):
    x = rand_mv(rng, primal(n))
    return mdiff(x.conjugation(), x.reversion().grade_involution())


@register("exterior", "parity.split_recombine", dims=(1, 2, 3))
def _(rng, n):
    x = rand_mv(rng, hyperbolic(n))
    even, odd = x.even_odd_split()
    return max(
        mdiff(even + odd, x),
        mdiff(even.grade_involution(), even),
        mdiff(odd.grade_involution(), -1.0 * odd),
    )


@register("exterior", "algebra.dimension", dims=(1, 2, 3))
def _(rng, n):
    ok = (
        primal(n).size == 2 ** n
        and dual(n).size == 2 ** n
        and hyperbolic(n).size == 2 ** (2 * n)
    )
    return 0.0 if ok else 1.0


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

@register("duality", "dsp.symmetry")
def _(rng, n):
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    return abs(duality.dsp(phi, x) - duality.dsp(x, phi))


@register("duality", "dsp.grade_orthogonality")
def _(rng, n):
    p = int(rng.integers(0, n + 1))
    q = (p + 1 + int(rng.integers(0, n))) % (n + 1)
    phi = rand_homogeneous(rng, dual(n), p)
    x = rand_homogeneous(rng, primal(n), q)
    return 0.0 if p == q else abs(duality.dsp(phi, x))


@register("duality", "dsp.bilinearity")
def _(rng, n):
    phi, psi = rand_mv(rng, dual(n)), rand_mv(rng, dual(n))
    x, y = rand_mv(rng, primal(n)), rand_mv(rng, primal(n))
    d1 = abs(duality.dsp(phi + psi, x) - duality.dsp(phi, x) - duality.dsp(psi, x))
    d2 = abs(duality.dsp(phi, x + y) - duality.dsp(phi, x) - duality.dsp(phi, y))
    return max(d1, d2)


@register("duality", "dsp.nondegeneracy_basis")
def _(rng, n):
    sp, sd = primal(n), dual(n)
    worst = 0.0
    for mask in range(sp.size):
        b = Multivector.blade(sp, mask)
        beta = Multivector.blade(sd, mask)
        worst = max(worst, abs(duality.dsp(beta, b) - 1.0))
        other = int(rng.integers(0, sp.size))
        if other != mask:
            worst = max(worst, abs(duality.dsp(beta, Multivector.blade(sp, other))))
    return worst


@register("duality", "dsp.vector_action")
def _(rng, n):
    w = rng.uniform(-1, 1, n)
    v = rng.uniform(-1, 1, n)
    omega = ex._grade1(dual(n), w)
    vec = ex._grade1(primal(n), v)
    return abs(duality.dsp(omega, vec) - float(w @ v))


@register("duality", "dsp.simple_determinant")
def _(rng, n):
    p = int(rng.integers(1, min(n, 3) + 1))
    ws = rng.uniform(-1, 1, (p, n))
    vs = rng.uniform(-1, 1, (p, n))
    phi = Multivector.scalar(dual(n), 1.0)
    for row in ws:
        phi = phi.wedge(ex._grade1(dual(n), row))
    x = Multivector.scalar(primal(n), 1.0)
    for row in vs:
        x = x.wedge(ex._grade1(primal(n), row))
    det = np.linalg.det(ws @ vs.T)
    return abs(duality.dsp(phi, x) - det)


@register("duality", "lcontr.equal_grade_scalar")
def _(rng, n):
    p = int(rng.integers(0, n + 1))
    phi = rand_homogeneous(rng, dual(n), p)
    x = rand_homogeneous(rng, primal(n), p)
    want = duality.dsp(phi.reversion(), x)
    d1 = abs(duality.lcontr(phi, x).scalar_part() - want)
    d2 = abs(duality.lcontr(x, phi).scalar_part() - want)
    d3 = abs(duality.dsp(phi, x.reversion()) - want)
    return max(d1, d2, d3)


@register("duality", "lcontr.grade_arithmetic")
def _(rng, n):
    p = int(rng.integers(0, n + 1))
    q = int(rng.integers(0, n + 1))
    phi = rand_homogeneous(rng, dual(n), p)
    x = rand_homogeneous(rng, primal(n), q)
    out = duality.lcontr(phi, x)
    if p > q:
        return out.norm_inf()
    return mdiff(out, out.part(q - p))


@register("duality", "lcontr.multigrade_expansion")
def _(rng, n):
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    total = Multivector.zero(primal(n))
    for p in range(n + 1):
        for q in range(p, n + 1):
            total = total + duality.lcontr(phi.part(p), x.part(q))
    return mdiff(duality.lcontr(phi, x), total)


@register("duality", "lcontr.adjoint_form_vector")
def _(rng, n):
    worst = 0.0
    for p in range(n + 1):
        for q in range(p, n + 1):
            phi = rand_homogeneous(rng, dual(n), p)
            x = rand_homogeneous(rng, primal(n), q)
            psi = rand_homogeneous(rng, dual(n), q - p)
            lhs = duality.dsp(duality.lcontr(phi, x), psi)
            rhs = duality.dsp(x, phi.reversion().wedge(psi))
            worst = max(worst, abs(lhs - rhs))
    return worst


@register("duality", "lcontr.adjoint_vector_form")
def _(rng, n):
    worst = 0.0
    for p in range(n + 1):
        for q in range(p, n + 1):
            x = rand_homogeneous(rng, primal(n), p)
            phi = rand_homogeneous(rng, dual(n), q)
            y = rand_homogeneous(rng, primal(n), q - p)
            lhs = duality.dsp(duality.lcontr(x, phi), y)
            rhs = duality.dsp(phi, x.reversion().wedge(y))
            worst = max(worst, abs(lhs - rhs))
    return worst


@register("duality", "lcontr.adjoint_mixed_forms")
def _(rng, n):
    phi, psi = rand_mv(rng, dual(n)), rand_mv(rng, dual(n))
    x = rand_mv(rng, primal(n))
    return abs(
        duality.dsp(duality.lcontr(phi, x), psi) - duality.dsp(x, phi.reversion().wedge(psi))
    )


@register("duality", "lcontr.adjoint_mixed_vectors")
def _(rng, n):
    x, y = rand_mv(rng, primal(n)), rand_mv(rng, primal(n))
    phi = rand_mv(rng, dual(n))
    return abs(
        duality.dsp(duality.lcontr(x, phi), y) - duality.dsp(phi, x.reversion().wedge(y))
    )


@register("duality", "lcontr.distributivity")
def _(rng, n):
    phi, psi = rand_mv(rng, dual(n)), rand_mv(rng, dual(n))
    x, y = rand_mv(rng, primal(n)), rand_mv(rng, primal(n))
    d1 = mdiff(duality.lcontr(phi + psi, x), duality.lcontr(phi, x) + duality.lcontr(psi, x))
    d2 = mdiff(duality.lcontr(phi, x + y), duality.lcontr(phi, x) + duality.lcontr(phi, y))
    return max(d1, d2)


@register("duality", "rcontr.equal_grade_scalar")
def _(rng, n):
    p = int(rng.integers(0, n + 1))
    phi = rand_homogeneous(rng, dual(n), p)
    x = rand_homogeneous(rng, primal(n), p)
    want = duality.dsp(phi.reversion(), x)
    return max(
        abs(duality.rcontr(phi, x).scalar_part() - want),
        abs(duality.rcontr(x, phi).scalar_part() - want),
    )


@register("duality", "rcontr.grade_arithmetic")
def _(rng, n):
    p = int(rng.integers(0, n + 1))
    q = int(rng.integers(0, n + 1))
    phi = rand_homogeneous(rng, dual(n), p)
    x = rand_homogeneous(rng, primal(n), q)
    out = duality.rcontr(phi, x)
    if p < q:
        return out.norm_inf()
    return mdiff(out, out.part(p - q))


@register("duality", "rcontr.multigrade_expansion")
def _(rng, n):
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    total = Multivector.zero(dual(n))
    for q in range(n + 1):
        for p in range(q, n + 1):
            total = total + duality.rcontr(phi.part(p), x.part(q))
    return mdiff(duality.rcontr(phi, x), total)


@register("duality", "rcontr.adjoint_form_vector_mirror")
def _(rng, n):
    worst = 0.0
    for q in range(n + 1):
        for p in range(q, n + 1):
            phi = rand_homogeneous(rng, dual(n), p)
            x = rand_homogeneous(rng, primal(n), q)
            y = rand_homogeneous(rng, primal(n), p - q)
            lhs = duality.dsp(duality.rcontr(phi, x), y)
            rhs = duality.dsp(phi, y.wedge(x.reversion()))
            worst = max(worst, abs(lhs - rhs))
    return worst


@register("duality", "rcontr.adjoint_vector_form_mirror")
def _(rng, n):
    worst = 0.0
    for q in range(n + 1):
        for p in range(q, n + 1):
            x = rand_homogeneous(rng, primal(n), p)
            phi = rand_homogeneous(rng, dual(n), q)
            psi = rand_homogeneous(rng, dual(n), p - q)
            lhs = duality.dsp(duality.rcontr(x, phi), psi)
            rhs = duality.dsp(x, psi.wedge(phi.reversion()))
            worst = max(worst, abs(lhs - rhs))
    return worst


@register("duality", "rcontr.adjoint_mixed_mirror")
def _(rng, n):
    phi = rand_mv(rng, dual(n))
    x, y = rand_mv(rng, primal(n)), rand_mv(rng, primal(n))
    d1 = abs(
        duality.dsp(duality.rcontr(phi, x), y) - duality.dsp(phi, y.wedge(x.reversion()))
    )
    psi = rand_mv(rng, dual(n))
    d2 = abs(
        duality.dsp(duality.rcontr(x, phi), psi) - duality.dsp(x, psi.wedge(phi.reversion()))
    )
    return max(d1, d2)


@register("duality", "rcontr.distributivity_mirror")
def _(rng, n):
    phi, psi = rand_mv(rng, dual(n)), rand_mv(rng, dual(n))
    x, y = rand_mv(rng, primal(n)), rand_mv(rng, primal(n))
    d1 = mdiff(duality.rcontr(phi + psi, x), duality.rcontr(phi, x) + duality.rcontr(psi, x))
    d2 = mdiff(duality.rcontr(phi, x + y), duality.rcontr(phi, x) + duality.rcontr(phi, y))
    return max(d1, d2)


@register("duality", "frame_independence")
def _(rng, n):
    lam = rand_invertible(rng, n)
    x2 = rand_mv(rng, primal(n))
    phi2 = rand_mv(rng, dual(n))
    to1_vec = ex.epe(lam, n, Kind.PRIMAL)
    to1_form = ex.epe(np.linalg.inv(lam).T, n, Kind.DUAL)
    x1, phi1 = to1_vec.apply(x2), to1_form.apply(phi2)
    d = abs(duality.dsp(phi1, x1) - duality.dsp(phi2, x2))
    d = max(d, mdiff(duality.lcontr(phi1, x1), to1_vec.apply(duality.lcontr(phi2, x2))))
    d = max(d, mdiff(duality.rcontr(phi1, x1), to1_form.apply(duality.rcontr(phi2, x2))))
    return d


# ---------------------------------------------------------------------------
# hyperbolic
# ---------------------------------------------------------------------------

def _h(rng, n, scalar_free=False):
    return rand_mv(rng, hyperbolic(n), scalar_free)


@register("hyperbolic", "contraction.adjunction_left", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return abs(
        hb.gram_inner(hb.hv_lcontr(u, v), w) - hb.gram_inner(v, u.reversion().wedge(w))
    )


@register("hyperbolic", "contraction.adjunction_right", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return abs(
        hb.gram_inner(hb.hv_rcontr(v, u), w) - hb.gram_inner(v, w.wedge(u.reversion()))
    )


@register("hyperbolic", "contraction.vector_pair", dims=(1, 2, 3))
def _(rng, n):
    x, y = rand_hvector(rng, n), rand_hvector(rng, n)
    xe, ye = x.embed(), y.embed()
    want = hb.hv_inner(x, y)
    return max(
        abs(hb.hv_lcontr(xe, ye).scalar_part() - want),
        abs(hb.hv_rcontr(xe, ye).scalar_part() - want),
    )


@register("hyperbolic", "contraction.unit_rules", dims=(1, 2, 3))
def _(rng, n):
    u = _h(rng, n)
    x = rand_hvector(rng, n).embed()
    one = Multivector.scalar(hyperbolic(n), 1.0)
    return max(
        mdiff(hb.hv_lcontr(one, u), u),
        mdiff(hb.hv_rcontr(u, one), u),
        hb.hv_lcontr(x, one).norm_inf(),
        hb.hv_rcontr(one, x).norm_inf(),
    )


@register("hyperbolic", "contraction.involution_transfer", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    d1 = mdiff(
        hb.hv_lcontr(u, v).grade_involution(),
        hb.hv_lcontr(u.grade_involution(), v.grade_involution()),
    )
    d2 = mdiff(
        hb.hv_rcontr(u, v).grade_involution(),
        hb.hv_rcontr(u.grade_involution(), v.grade_involution()),
    )
    return max(d1, d2)


@register("hyperbolic", "contraction.reversion_exchange", dims=(1, 2, 3))
def _(rng, n):
    # reversion swaps the two contractions (the adjunction-consistent law)
    u, v = _h(rng, n), _h(rng, n)
    d1 = mdiff(hb.hv_lcontr(u, v).reversion(), hb.hv_rcontr(v.reversion(), u.reversion()))
    d2 = mdiff(hb.hv_rcontr(u, v).reversion(), hb.hv_lcontr(v.reversion(), u.reversion()))
    return max(d1, d2)


@register("hyperbolic", "contraction.composition_left", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return mdiff(hb.hv_lcontr(u, hb.hv_lcontr(v, w)), hb.hv_lcontr(u.wedge(v), w))


@register("hyperbolic", "contraction.composition_right", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return mdiff(hb.hv_rcontr(hb.hv_rcontr(u, v), w), hb.hv_rcontr(u, v.wedge(w)))


@register("hyperbolic", "contraction.composition_mixed", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return mdiff(hb.hv_rcontr(hb.hv_lcontr(u, v), w), hb.hv_lcontr(u, hb.hv_rcontr(v, w)))


@register("hyperbolic", "contraction.vector_leibniz_left", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    v, w = _h(rng, n), _h(rng, n)
    lhs = hb.hv_lcontr(x, v.wedge(w))
    rhs = hb.hv_lcontr(x, v).wedge(w) + v.grade_involution().wedge(hb.hv_lcontr(x, w))
    return mdiff(lhs, rhs)


@register("hyperbolic", "contraction.vector_leibniz_right", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    u, v = _h(rng, n), _h(rng, n)
    lhs = hb.hv_rcontr(u.wedge(v), x)
    rhs = u.wedge(hb.hv_rcontr(v, x)) + hb.hv_rcontr(u, x).wedge(v.grade_involution())
    return mdiff(lhs, rhs)


@register("hyperbolic", "contraction.mixed_expansion_left", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    v, w = _h(rng, n), _h(rng, n)
    vh = v.grade_involution()
    lhs = x.wedge(hb.hv_lcontr(v, w))
    rhs = hb.hv_lcontr(vh, x.wedge(w)) - hb.hv_lcontr(hb.hv_rcontr(vh, x), w)
    return mdiff(lhs, rhs)


@register("hyperbolic", "contraction.mixed_expansion_right", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    u, v = _h(rng, n), _h(rng, n)
    vh = v.grade_involution()
    lhs = hb.hv_rcontr(u, v).wedge(x)
    rhs = hb.hv_rcontr(u.wedge(x), vh) - hb.hv_rcontr(u, hb.hv_lcontr(x, vh))
    return mdiff(lhs, rhs)


@register("hyperbolic", "contraction.parity_exchange", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    up, um = u.even_odd_split()
    d1 = mdiff(hb.hv_lcontr(up, v), hb.hv_rcontr(v, up))
    d2 = mdiff(
        hb.hv_lcontr(um, v),
        hb.hv_rcontr(v.grade_involution(), um.grade_involution()),
    )
    return max(d1, d2)


@register("hyperbolic", "contraction.orientation_rules", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    sig = hb.sigma(n)
    d1 = mdiff(u.wedge(hb.hv_lcontr(v, sig)), hb.hv_lcontr(hb.hv_lcontr(u, v), sig))
    d2 = mdiff(hb.hv_rcontr(sig, v).wedge(w), hb.hv_rcontr(sig, hb.hv_rcontr(v, w)))
    return max(d1, d2)


@register("hyperbolic", "isotropy.embedded_subalgebras", dims=(1, 2, 3))
def _(rng, n):
    pu = rand_mv(rng, primal(n), scalar_free=True)
    pv = rand_mv(rng, primal(n), scalar_free=True)
    fu = rand_mv(rng, dual(n), scalar_free=True)
    fv = rand_mv(rng, dual(n), scalar_free=True)
    us, vs = hb.embed_primal(pu), hb.embed_primal(pv)
    uf, vf = hb.embed_dual(fu), hb.embed_dual(fv)
    return max(
        hb.hv_lcontr(us, vs).norm_inf(),
        hb.hv_rcontr(us, vs).norm_inf(),
        hb.hv_lcontr(uf, vf).norm_inf(),
        hb.hv_rcontr(uf, vf).norm_inf(),
        abs(hb.gram_inner(us, vs)),
        abs(hb.gram_inner(uf, vf)),
    )


@register("hyperbolic", "gram.symmetry_and_bilinearity", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    a, b = rng.uniform(-2, 2, 2)
    d1 = abs(hb.gram_inner(u, v) - hb.gram_inner(v, u))
    d2 = abs(hb.gram_inner(a * u + b * w, v) - a * hb.gram_inner(u, v) - b * hb.gram_inner(w, v))
    p = int(rng.integers(0, 2 * n + 1))
    q = (p + 1) % (2 * n + 1)
    d3 = abs(hb.gram_inner(u.part(p), v.part(q)))
    return max(d1, d2, d3)


@register("hyperbolic", "gram.determinant_simple", dims=(1, 2, 3))
def _(rng, n):
    r = int(rng.integers(1, min(2 * n, 3) + 1))
    xs = [rand_hvector(rng, n) for _ in range(r)]
    ys = [rand_hvector(rng, n) for _ in range(r)]
    u = Multivector.scalar(hyperbolic(n), 1.0)
    v = Multivector.scalar(hyperbolic(n), 1.0)
    for z in xs:
        u = u.wedge(z.embed())
    for z in ys:
        v = v.wedge(z.embed())
    mat = np.array([[hb.hv_inner(a, b) for b in ys] for a in xs])
    return abs(hb.gram_inner(u, v) - np.linalg.det(mat))


@register("hyperbolic", "gram.mixed_split_formula", dims=(1, 2, 3))
def _(rng, n):
    r = int(rng.integers(0, n + 1))
    s = int(rng.integers(0, n + 1))

    def w_prim(k):
        acc = Multivector.scalar(hyperbolic(n), 1.0)
        raw = Multivector.scalar(primal(n), 1.0)
        for _ in range(k):
            z = rng.uniform(-1, 1, n)
            acc = acc.wedge(hb.HVector(z, np.zeros(n)).embed())
            raw = raw.wedge(ex._grade1(primal(n), z))
        return acc, raw

    def w_dual(k):
        acc = Multivector.scalar(hyperbolic(n), 1.0)
        raw = Multivector.scalar(dual(n), 1.0)
        for _ in range(k):
            z = rng.uniform(-1, 1, n)
            acc = acc.wedge(hb.HVector(np.zeros(n), z).embed())
            raw = raw.wedge(ex._grade1(dual(n), z))
        return acc, raw

    ul, u_low = w_prim(r)
    uf, u_star = w_dual(s)
    vl, v_low = w_prim(s)
    vf, v_star = w_dual(r)
    lhs = hb.gram_inner(ul.wedge(uf), vl.wedge(vf))
    rhs = ((-1.0) ** (r * s)) * duality.dsp(u_star, v_low) * duality.dsp(v_star, u_low)
    return abs(lhs - rhs)


@register("hyperbolic", "orientation.self_pairing", dims=(1, 2, 3))
def _(rng, n):
    sig = hb.sigma(n)
    return abs(hb.gram_inner(sig, sig) - (-1.0) ** n)


@register("hyperbolic", "orientation.orthonormal_wedge", dims=(1, 2, 3))
def _(rng, n):
    w = Multivector.scalar(hyperbolic(n), 1.0)
    for k in range(1, 2 * n + 1):
        w = w.wedge(hb.orthonormal_basis_vector(n, k).embed())
    return mdiff(w, hb.sigma(n))


@register("hyperbolic", "orientation.basis_change_invariance", dims=(1, 2, 3))
def _(rng, n):
    lam = rand_invertible(rng, n)
    lam_inv_t = np.linalg.inv(lam).T
    w = Multivector.scalar(hyperbolic(n), 1.0)
    for j in range(n):
        w = w.wedge(hb.HVector(lam[:, j], np.zeros(n)).embed())
    for j in range(n):
        w = w.wedge(hb.HVector(np.zeros(n), lam_inv_t[:, j]).embed())
    return mdiff(w, hb.sigma(n))


@register("hyperbolic", "orientation.clifford_square", dims=(1, 2, 3))
def _(rng, n):
    sig = hb.sigma(n)
    return mdiff(hb.clifford(sig, sig), Multivector.scalar(hyperbolic(n), 1.0))


@register("hyperbolic", "witt.anticommutation", dims=(1, 2, 3))
def _(rng, n):
    k = int(rng.integers(1, n + 1))
    l = int(rng.integers(1, n + 1))
    ek, el = hb.basis_e(n, k).embed(), hb.basis_e(n, l).embed()
    tk, tl = hb.basis_t(n, k).embed(), hb.basis_t(n, l).embed()
    zero = Multivector.zero(hyperbolic(n))
    d1 = mdiff(hb.clifford(ek, el) + hb.clifford(el, ek), zero)
    d2 = mdiff(hb.clifford(tk, tl) + hb.clifford(tl, tk), zero)
    want = Multivector.scalar(hyperbolic(n), 2.0 if k == l else 0.0)
    d3 = mdiff(hb.clifford(tk, el) + hb.clifford(el, tk), want)
    return max(d1, d2, d3)


@register("hyperbolic", "witt.orthonormal_relations", dims=(1, 2, 3))
def _(rng, n):
    k = int(rng.integers(1, 2 * n + 1))
    l = int(rng.integers(1, 2 * n + 1))
    sk = hb.orthonormal_basis_vector(n, k).embed()
    sl = hb.orthonormal_basis_vector(n, l).embed()
    anti = hb.clifford(sk, sl) + hb.clifford(sl, sk)
    want = 0.0
    if k == l:
        want = 2.0 if k <= n else -2.0
    return mdiff(anti, Multivector.scalar(hyperbolic(n), want))


@register("hyperbolic", "witt.component_roundtrip", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n)
    comps = hb.witt_to_orthonormal(x)
    back = hb.orthonormal_to_witt(n, comps)
    rebuilt = Multivector.zero(hyperbolic(n))
    for k in range(1, 2 * n + 1):
        rebuilt = rebuilt + comps[k - 1] * hb.orthonormal_basis_vector(n, k).embed()
    return max(
        float(np.max(np.abs(back.primal - x.primal))),
        float(np.max(np.abs(back.dual - x.dual))),
        mdiff(rebuilt, x.embed()),
    )


@register("hyperbolic", "clifford.associativity", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    return mdiff(hb.clifford(hb.clifford(u, v), w), hb.clifford(u, hb.clifford(v, w)))


@register("hyperbolic", "clifford.vector_anticommutator", dims=(1, 2, 3))
def _(rng, n):
    x, y = rand_hvector(rng, n), rand_hvector(rng, n)
    xe, ye = x.embed(), y.embed()
    want = Multivector.scalar(hyperbolic(n), 2.0 * hb.hv_inner(x, y))
    return mdiff(hb.clifford(xe, ye) + hb.clifford(ye, xe), want)


@register("hyperbolic", "clifford.antiautomorphisms", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    d1 = mdiff(hb.clifford(u, v).reversion(), hb.clifford(v.reversion(), u.reversion()))
    d2 = mdiff(
        hb.clifford(u, v).grade_involution(),
        hb.clifford(u.grade_involution(), v.grade_involution()),
    )
    d3 = mdiff(hb.clifford(u, v).conjugation(), hb.clifford(v.conjugation(), u.conjugation()))
    return max(d1, d2, d3)


@register("hyperbolic", "clifford.mixed_element_formula", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n)
    ulow = hb.embed_primal(rand_mv(rng, primal(n)))
    ustar = hb.embed_dual(rand_mv(rng, dual(n)))
    mixed = ulow.wedge(ustar)
    x_dual = hb.HVector(np.zeros(n), x.dual).embed()
    x_prim = hb.HVector(x.primal, np.zeros(n)).embed()
    lhs = hb.clifford(x.embed(), mixed)
    rhs = hb.clifford(x_dual, ulow).wedge(ustar) + ulow.grade_involution().wedge(
        hb.clifford(x_prim, ustar)
    )
    return mdiff(lhs, rhs)


@register("hyperbolic", "clifford.triple_pairing", dims=(1, 2, 3))
def _(rng, n):
    u, v, w = _h(rng, n), _h(rng, n), _h(rng, n)
    base = hb.gram_inner(u, hb.clifford(v, w))
    d1 = abs(base - hb.gram_inner(hb.clifford(v.reversion(), u), w))
    d2 = abs(base - hb.gram_inner(hb.clifford(u, w.reversion()), v))
    return max(d1, d2)


@register("hyperbolic", "clifford.half_decompositions", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    u = _h(rng, n)
    uh = u.grade_involution()
    c = hb.clifford
    return max(
        mdiff(x.wedge(u), 0.5 * (c(x, u) + c(uh, x))),
        mdiff(u.wedge(x), 0.5 * (c(u, x) + c(x, uh))),
        mdiff(hb.hv_lcontr(x, u), 0.5 * (c(x, u) - c(uh, x))),
        mdiff(hb.hv_rcontr(u, x), 0.5 * (c(u, x) - c(x, uh))),
    )


@register("hyperbolic", "clifford.contraction_expansions", dims=(1, 2, 3))
def _(rng, n):
    # x⌟(uv) expands through the product; the right companion carries a
    # plus sign, as reversion of the left rule demands
    x = rand_hvector(rng, n).embed()
    u, v = _h(rng, n), _h(rng, n)
    uh = u.grade_involution()
    vh = v.grade_involution()
    c = hb.clifford
    d1 = mdiff(
        hb.hv_lcontr(x, c(u, v)),
        c(hb.hv_lcontr(x, u), v) + c(uh, hb.hv_lcontr(x, v)),
    )
    d2 = mdiff(
        hb.hv_rcontr(c(u, v), x),
        c(u, hb.hv_rcontr(v, x)) + c(hb.hv_rcontr(u, x), vh),
    )
    return max(d1, d2)


@register("hyperbolic", "clifford.wedge_expansions", dims=(1, 2, 3))
def _(rng, n):
    x = rand_hvector(rng, n).embed()
    u, v = _h(rng, n), _h(rng, n)
    uh = u.grade_involution()
    vh = v.grade_involution()
    c = hb.clifford
    d1 = mdiff(x.wedge(c(u, v)), c(hb.hv_lcontr(x, u), v) + c(uh, x.wedge(v)))
    d2 = mdiff(x.wedge(c(u, v)), c(x.wedge(u), v) - c(uh, hb.hv_lcontr(x, v)))
    d3 = mdiff(c(u, v).wedge(x), c(u, v.wedge(x)) - c(hb.hv_rcontr(u, x), vh))
    d4 = mdiff(c(u, v).wedge(x), c(u, hb.hv_rcontr(v, x)) + c(u.wedge(x), vh))
    return max(d1, d2, d3, d4)


@register("hyperbolic", "clifford.orientation_absorption", dims=(1, 2, 3))
def _(rng, n):
    u = _h(rng, n)
    sig = hb.sigma(n)
    return max(
        mdiff(hb.hv_lcontr(u, sig), hb.clifford(u, sig)),
        mdiff(hb.hv_rcontr(sig, u), hb.clifford(sig, u)),
    )


@register("hyperbolic", "clifford.table_matches_recursion", dims=(1, 2, 3))
def _(rng, n):
    size = 1 << (2 * n)
    a = int(rng.integers(0, size))
    b = int(rng.integers(0, size))
    via_table = hb.clifford(
        Multivector.blade(hyperbolic(n), a), Multivector.blade(hyperbolic(n), b)
    )
    direct = np.zeros(size)
    for m, c in hb._clifford_blades(n, a, b):
        direct[m] += c
    return mdiff(via_table, Multivector(hyperbolic(n), direct))


@register("hyperbolic", "hodge.roundtrip", dims=(1, 2, 3))
def _(rng, n):
    u = _h(rng, n)
    return max(
        mdiff(hb.hodge_inv(hb.hodge(u)), u),
        mdiff(hb.hodge(hb.hodge_inv(u)), u),
    )


@register("hyperbolic", "hodge.orientation_values", dims=(1, 2, 3))
def _(rng, n):
    sig = hb.sigma(n)
    one = Multivector.scalar(hyperbolic(n), 1.0)
    return max(
        mdiff(hb.hodge(sig), ((-1.0) ** n) * one),
        mdiff(hb.hodge_inv(sig), one),
        mdiff(hb.hodge(one), sig),
    )


@register("hyperbolic", "hodge.pairing_scale", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    return abs(hb.gram_inner(hb.hodge(u), hb.hodge(v)) - ((-1.0) ** n) * hb.gram_inner(u, v))


@register("hyperbolic", "hodge.wedge_rules", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    d1 = mdiff(hb.hodge(u.wedge(v)), hb.hv_lcontr(v.reversion(), hb.hodge(u)))
    d2 = mdiff(hb.hodge_inv(u.wedge(v)), hb.hv_rcontr(hb.hodge_inv(v), u.reversion()))
    d3 = mdiff(hb.hodge(hb.hv_rcontr(u, v)), v.reversion().wedge(hb.hodge(u)))
    d4 = mdiff(hb.hodge_inv(hb.hv_lcontr(u, v)), hb.hodge_inv(v).wedge(u.reversion()))
    return max(d1, d2, d3, d4)


@register("hyperbolic", "hodge.clifford_forms", dims=(1, 2, 3))
def _(rng, n):
    u, v = _h(rng, n), _h(rng, n)
    sig = hb.sigma(n)
    d1 = mdiff(hb.hodge(u), hb.clifford(u.reversion(), sig))
    d2 = mdiff(hb.hodge_inv(u), hb.clifford(sig.reversion(), u.reversion()))
    d3 = mdiff(hb.hodge(hb.clifford(u, v)), hb.clifford(v.reversion(), hb.hodge(u)))
    # the inverse product rule needs the reversion of the left factor
    d4 = mdiff(hb.hodge_inv(hb.clifford(u, v)), hb.clifford(hb.hodge_inv(v), u.reversion()))
    return max(d1, d2, d3, d4)


@register("hyperbolic", "poincare.factorizations", dims=(1, 2, 3))
def _(rng, n):
    uf = hb.embed_dual(rand_mv(rng, dual(n)))
    us = hb.embed_primal(rand_mv(rng, primal(n)))
    d1 = mdiff(hb.hodge(uf), hb.poincare_down(uf).wedge(hb.theta_star(n)))
    d2 = mdiff(hb.hodge(us), hb.e_star(n).wedge(hb.poincare_up(us)))
    d3 = mdiff(hb.hodge(us.wedge(uf)), hb.poincare_down(uf).wedge(hb.poincare_up(us)))
    return max(d1, d2, d3)


@register("hyperbolic", "conjugate.orthonormal_generation", dims=(1, 2, 3))
def _(rng, n):
    # the hyperbolic conjugate of the k-th positive basis vector is the
    # matching negative one, and the outermorphism fixes the dual part
    k = int(rng.integers(1, n + 1))
    sk = hb.orthonormal_basis_vector(n, k)
    want = hb.orthonormal_basis_vector(n, n + k).embed()
    d1 = mdiff(hb.hyperbolic_conjugate(sk.embed()), want)
    d2 = mdiff(sk.hyperbolic_conjugate().embed(), want)
    u = rand_mv(rng, dual(n))
    d3 = mdiff(hb.hyperbolic_conjugate(hb.embed_dual(u)), hb.embed_dual(u))
    return max(d1, d2, d3)


# ---------------------------------------------------------------------------
# cliffmap
# ---------------------------------------------------------------------------

@register("cliffmap", "endo.anticommutator", dims=(1, 2, 3))
def _(rng, n):
    x, y = rand_hvector(rng, n), rand_hvector(rng, n)
    a, b = hb.hvector_endomorphism(x), hb.hvector_endomorphism(y)
    return float(
        np.max(np.abs(a @ b + b @ a - 2.0 * hb.hv_inner(x, y) * np.eye(1 << n)))
    )


def _blade_rep(n: int, mask: int) -> np.ndarray:
    """Representation of a basis blade: peel the lowest factor through
    g∧rest = g·rest − g⌟rest, exactly as the Clifford recursion does."""
    size = 1 << n
    if mask == 0:
        return np.eye(size)
    g = mask & -mask
    rest = mask ^ g
    i = g.bit_length() - 1
    if i < n:
        xg = hb.HVector(np.eye(n)[i], np.zeros(n))
    else:
        xg = hb.HVector(np.zeros(n), np.eye(n)[i - n])
    out = hb.hvector_endomorphism(xg) @ _blade_rep(n, rest)
    s, m = hb._hv_lcontr_blade(n, g, rest)
    if s:
        out = out - s * _blade_rep(n, m)
    return out


def _rep(u: Multivector) -> np.ndarray:
    n = u.space.dim_v
    size = 1 << n
    out = np.zeros((size, size))
    for mask in np.nonzero(u.coeffs)[0]:
        out += u.coeffs[mask] * _blade_rep(n, int(mask))
    return out


@register("cliffmap", "endo.homomorphism_low_degree", dims=(1, 2, 3))
def _(rng, n):
    def low(rng):
        u = rand_hvector(rng, n).embed() + Multivector.scalar(hyperbolic(n), rng.uniform(-1, 1))
        if rng.random() < 0.5:
            u = hb.clifford(u, rand_hvector(rng, n).embed())
        return u

    u, v = low(rng), low(rng)
    return float(np.max(np.abs(_rep(hb.clifford(u, v)) - _rep(u) @ _rep(v))))


@register("cliffmap", "split.metric_clifford_map", dims=(1, 2, 3))
def _(rng, n):
    b = rand_invertible(rng, n)
    b = 0.5 * (b + b.T) + n * np.eye(n)
    m = hb.Metric(b)
    x = rand_hvector(rng, n)
    xp, xm = hb.split_by_metric(m, x)
    return abs(float(xp @ m.b @ xp - xm @ m.b @ xm) - hb.hv_inner(x, x))


# ---------------------------------------------------------------------------
# extensor
# ---------------------------------------------------------------------------

@register("extensor", "adjoint.fundamental_vec_to_vec")
def _(rng, n):
    return _adjoint_case(rng, n, Kind.PRIMAL, Kind.PRIMAL)


@register("extensor", "adjoint.fundamental_form_to_vec")
def _(rng, n):
    return _adjoint_case(rng, n, Kind.DUAL, Kind.PRIMAL)


@register("extensor", "adjoint.fundamental_vec_to_form")
def _(rng, n):
    return _adjoint_case(rng, n, Kind.PRIMAL, Kind.DUAL)


@register("extensor", "adjoint.fundamental_form_to_form")
def _(rng, n):
    return _adjoint_case(rng, n, Kind.DUAL, Kind.DUAL)


def _adjoint_case(rng, n, ins, outs):
    tau = rand_ext_1slot(rng, n, ins, outs)
    adj = ex.duality_adjoint(tau)
    x = rand_slot_value(rng, tau.sig.slots[0])
    phi = rand_slot_value(rng, adj.sig.slots[0])
    d = abs(duality.dsp(ex.ext_eval(tau, x), phi) - duality.dsp(x, ex.ext_eval(adj, phi)))
    return max(d, ex.duality_adjoint(adj).max_diff(tau))


@register("extensor", "part.signature_projection")
def _(rng, n):
    sig = rand_sig(rng, n, Kind.PRIMAL, max_grades=3)
    x = rand_mv(rng, primal(n))
    proj = ex.part_diamond(x, sig)
    want = Multivector.zero(primal(n))
    for k in sig.grades:
        want = want + x.part(k)
    return max(
        mdiff(proj, want),
        mdiff(ex.part_diamond(proj, sig), proj),
    )


@register("extensor", "epe.characterization")
def _(rng, n):
    lam = rand_invertible(rng, n)
    op = ex.epe(lam, n, Kind.PRIMAL)
    sp = primal(n)
    a, b = rand_mv(rng, sp), rand_mv(rng, sp)
    k = int(rng.integers(0, n + 1))
    v = rng.uniform(-1, 1, n)
    lv = lam @ v
    d = abs(op.apply(Multivector.scalar(sp, 2.5)).scalar_part() - 2.5)
    d = max(d, mdiff(op.apply(ex._grade1(sp, v)), ex._grade1(sp, lv)))
    d = max(d, mdiff(op.apply(a.wedge(b)), op.apply(a).wedge(op.apply(b))))
    d = max(d, mdiff(op.apply(a.part(k)), op.apply(a.part(k)).part(k)))
    return d


@register("extensor", "epe.form_characterization")
def _(rng, n):
    lam = rand_invertible(rng, n)
    op = ex.epe(lam, n, Kind.DUAL)
    sp = dual(n)
    a, b = rand_mv(rng, sp), rand_mv(rng, sp)
    k = int(rng.integers(0, n + 1))
    w = rng.uniform(-1, 1, n)
    d = abs(op.apply(Multivector.scalar(sp, -1.25)).scalar_part() + 1.25)
    d = max(d, mdiff(op.apply(ex._grade1(sp, w)), ex._grade1(sp, lam @ w)))
    d = max(d, mdiff(op.apply(a.wedge(b)), op.apply(a).wedge(op.apply(b))))
    d = max(d, mdiff(op.apply(a.part(k)), op.apply(a.part(k)).part(k)))
    return d


@register("extensor", "epe.uniqueness_reconstruction")
def _(rng, n):
    # the four characterizing properties rebuild the operator column by
    # column; the reconstruction must agree on the blade basis exactly
    from . import blades as bl

    lam = rand_invertible(rng, n)
    op = ex.epe(lam, n, Kind.PRIMAL)
    sp = primal(n)
    images = [ex._grade1(sp, lam[:, j]) for j in range(n)]
    worst = 0.0
    for mask in range(1 << n):
        acc = Multivector.scalar(sp, 1.0)
        for j in bl.bits(mask):
            acc = acc.wedge(images[j])
        worst = max(worst, float(np.max(np.abs(op.matrix[:, mask] - acc.coeffs))))
    return worst


@register("extensor", "epe.adjoint_commutes")
def _(rng, n):
    lam = rand_invertible(rng, n)
    return ex.epe(lam, n, Kind.PRIMAL).adjoint().max_diff(ex.epe(lam.T, n, Kind.DUAL))


@register("extensor", "epe.duality_transport")
def _(rng, n):
    lam = rand_invertible(rng, n)
    lv = ex.epe(lam, n, Kind.PRIMAL)
    lminv = ex.epe(np.linalg.inv(lam).T, n, Kind.DUAL)
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    d1 = abs(duality.dsp(phi, x) - duality.dsp(lminv.apply(phi), lv.apply(x)))
    d2 = mdiff(lv.apply(duality.lcontr(phi, x)), duality.lcontr(lminv.apply(phi), lv.apply(x)))
    d3 = mdiff(lv.apply(duality.rcontr(x, phi)), duality.rcontr(lv.apply(x), lminv.apply(phi)))
    return max(d1, d2, d3)


@register("extensor", "epe.form_duality_transport")
def _(rng, n):
    # form-operator transports, stated on the products whose values are
    # multiforms (well-typed mirror of the vector-operator laws)
    mu = rand_invertible(rng, n)
    lf = ex.epe(mu, n, Kind.DUAL)
    lfinv = ex.epe(np.linalg.inv(mu).T, n, Kind.PRIMAL)
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    d1 = abs(duality.dsp(phi, x) - duality.dsp(lf.apply(phi), lfinv.apply(x)))
    d2 = mdiff(lf.apply(duality.lcontr(x, phi)), duality.lcontr(lfinv.apply(x), lf.apply(phi)))
    d3 = mdiff(lf.apply(duality.rcontr(phi, x)), duality.rcontr(lf.apply(phi), lfinv.apply(x)))
    return max(d1, d2, d3)


@register("extensor", "ce.characterization")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    op = ex.ce(gam, n, Kind.PRIMAL)
    sp = primal(n)
    a, b = rand_mv(rng, sp), rand_mv(rng, sp)
    k = int(rng.integers(0, n + 1))
    v = rng.uniform(-1, 1, n)
    d = op.apply(Multivector.scalar(sp, 2.5)).norm_inf()
    d = max(d, mdiff(op.apply(ex._grade1(sp, v)), ex._grade1(sp, gam @ v)))
    d = max(d, mdiff(op.apply(a.wedge(b)), op.apply(a).wedge(b) + a.wedge(op.apply(b))))
    d = max(d, mdiff(op.apply(a.part(k)), op.apply(a.part(k)).part(k)))
    return d


@register("extensor", "ce.form_characterization")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    op = ex.ce(gam, n, Kind.DUAL)
    sp = dual(n)
    a, b = rand_mv(rng, sp), rand_mv(rng, sp)
    k = int(rng.integers(0, n + 1))
    w = rng.uniform(-1, 1, n)
    d = op.apply(Multivector.scalar(sp, 2.5)).norm_inf()
    d = max(d, mdiff(op.apply(ex._grade1(sp, w)), ex._grade1(sp, gam @ w)))
    d = max(d, mdiff(op.apply(a.wedge(b)), op.apply(a).wedge(b) + a.wedge(op.apply(b))))
    d = max(d, mdiff(op.apply(a.part(k)), op.apply(a.part(k)).part(k)))
    return d


@register("extensor", "ce.degree_operator")
def _(rng, n):
    op = ex.ce(np.eye(n), n, Kind.PRIMAL)
    x = rand_mv(rng, primal(n))
    k = int(rng.integers(0, n + 1))
    return mdiff(op.apply(x.part(k)), float(k) * x.part(k))


@register("extensor", "ce.uniqueness_reconstruction")
def _(rng, n):
    # rebuild each column from the derivation rule over blade factors,
    # accumulating in ascending factor order; must match bit-exactly
    from . import blades as bl

    gam = rng.uniform(-1, 1, (n, n))
    op = ex.ce(gam, n, Kind.PRIMAL)
    sp = primal(n)
    images = [ex._grade1(sp, gam[:, j]) for j in range(n)]
    worst = 0.0
    for mask in range(1 << n):
        acc = Multivector.zero(sp)
        for j in range(n):
            if not (mask >> j) & 1:
                continue
            rest = Multivector.blade(sp, mask ^ (1 << j))
            pos = bl.grade(mask & ((1 << j) - 1))
            term = images[j].wedge(rest)
            acc = acc + ((-1.0) ** pos) * term
        worst = max(worst, float(np.max(np.abs(op.matrix[:, mask] - acc.coeffs))))
    return worst


@register("extensor", "ce.adjoint_commutes")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    return ex.ce(gam, n, Kind.PRIMAL).adjoint().max_diff(ex.ce(gam.T, n, Kind.DUAL))


@register("extensor", "ce.duality_transport")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    g = ex.ce(gam, n, Kind.PRIMAL)
    gd = ex.ce(gam.T, n, Kind.DUAL)
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    d1 = abs(duality.dsp(gd.apply(phi), x) - duality.dsp(phi, g.apply(x)))
    d2 = mdiff(
        g.apply(duality.lcontr(phi, x)),
        -1.0 * duality.lcontr(gd.apply(phi), x) + duality.lcontr(phi, g.apply(x)),
    )
    d3 = mdiff(
        g.apply(duality.rcontr(x, phi)),
        duality.rcontr(g.apply(x), phi) - duality.rcontr(x, gd.apply(phi)),
    )
    return max(d1, d2, d3)


@register("extensor", "ce.form_duality_transport")
def _(rng, n):
    gf = rng.uniform(-1, 1, (n, n))
    g = ex.ce(gf, n, Kind.DUAL)
    ga = ex.ce(gf.T, n, Kind.PRIMAL)
    phi, x = rand_mv(rng, dual(n)), rand_mv(rng, primal(n))
    d1 = abs(duality.dsp(g.apply(phi), x) - duality.dsp(phi, ga.apply(x)))
    d2 = mdiff(
        g.apply(duality.lcontr(x, phi)),
        -1.0 * duality.lcontr(ga.apply(x), phi) + duality.lcontr(x, g.apply(phi)),
    )
    d3 = mdiff(
        g.apply(duality.rcontr(phi, x)),
        duality.rcontr(g.apply(phi), x) - duality.rcontr(phi, ga.apply(x)),
    )
    return max(d1, d2, d3)


@register("extensor", "eval.multilinearity")
def _(rng, n):
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.PRIMAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    tau = ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))
    x, y = rand_slot_value(rng, s1), rand_slot_value(rng, s1)
    phi = rand_slot_value(rng, s2)
    a, b = rng.uniform(-2, 2, 2)
    lhs = ex.ext_eval(tau, a * x + b * y, phi)
    rhs = a * ex.ext_eval(tau, x, phi) + b * ex.ext_eval(tau, y, phi)
    return mdiff(lhs, rhs)


@register("extensor", "products.factorization")
def _(rng, n):
    t1 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.PRIMAL)
    t2 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    t3 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    x1 = rand_slot_value(rng, t1.sig.slots[0])
    f2 = rand_slot_value(rng, t2.sig.slots[0])
    x3 = rand_slot_value(rng, t3.sig.slots[0])
    d1 = mdiff(
        ex.ext_eval(ex.ext_wedge(t1, t2), x1, f2),
        ex.ext_eval(t1, x1).wedge(ex.ext_eval(t2, f2)),
    )
    d2 = abs(
        ex.ext_eval(ex.ext_dsp(t3, t1), x3, x1).scalar_part()
        - duality.dsp(ex.ext_eval(t3, x3), ex.ext_eval(t1, x1))
    )
    d3 = mdiff(
        ex.ext_eval(ex.ext_lcontr(t3, t1), x3, x1),
        duality.lcontr(ex.ext_eval(t3, x3), ex.ext_eval(t1, x1)),
    )
    d4 = mdiff(
        ex.ext_eval(ex.ext_rcontr(t3, t1), x3, x1),
        duality.rcontr(ex.ext_eval(t3, x3), ex.ext_eval(t1, x1)),
    )
    return max(d1, d2, d3, d4)


@register("extensor", "dimension.formula")
def _(rng, n):
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.DUAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    want = s1.dim * s2.dim * out.dim
    return 0.0 if int(np.prod(sig.shape)) == want else 1.0


@register("extensor", "epe_action.slot_conjugations")
def _(rng, n):
    lam = rand_invertible(rng, n)
    lv = ex.epe(lam, n, Kind.PRIMAL)
    linv = ex.epe(np.linalg.inv(lam), n, Kind.PRIMAL)
    ladj = ex.epe(lam.T, n, Kind.DUAL)
    tau10 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.PRIMAL)
    xs = rand_slot_value(rng, tau10.sig.slots[0])
    d1 = mdiff(
        ex.ext_eval(ex.epe_on_extensor(lam, tau10, Kind.PRIMAL), xs),
        lv.apply(ex.ext_eval_projected(tau10, ex.part_diamond(linv.apply(xs), tau10.sig.slots[0]))),
    )
    tau01 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    om = rand_slot_value(rng, tau01.sig.slots[0])
    d2 = mdiff(
        ex.ext_eval(ex.epe_on_extensor(lam, tau01, Kind.PRIMAL), om),
        lv.apply(ex.ext_eval_projected(tau01, ex.part_diamond(ladj.apply(om), tau01.sig.slots[0]))),
    )
    return max(d1, d2)


@register("extensor", "epe_action.multiform_slot_conjugations")
def _(rng, n):
    mu = rand_invertible(rng, n)
    lf = ex.epe(mu, n, Kind.DUAL)
    lfadj = ex.epe(mu.T, n, Kind.PRIMAL)
    lfinv = ex.epe(np.linalg.inv(mu), n, Kind.DUAL)
    t10 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    xs = rand_slot_value(rng, t10.sig.slots[0])
    d1 = mdiff(
        ex.ext_eval(ex.epe_on_extensor(mu, t10, Kind.DUAL), xs),
        lf.apply(ex.ext_eval_projected(t10, ex.part_diamond(lfadj.apply(xs), t10.sig.slots[0]))),
    )
    t01 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.DUAL)
    om = rand_slot_value(rng, t01.sig.slots[0])
    d2 = mdiff(
        ex.ext_eval(ex.epe_on_extensor(mu, t01, Kind.DUAL), om),
        lf.apply(ex.ext_eval_projected(t01, ex.part_diamond(lfinv.apply(om), t01.sig.slots[0]))),
    )
    return max(d1, d2)


@register("extensor", "epe_action.general_definition")
def _(rng, n):
    lam = rand_invertible(rng, n)
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.PRIMAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    tau = ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))
    x, phi = rand_slot_value(rng, s1), rand_slot_value(rng, s2)
    lv = ex.epe(lam, n, Kind.PRIMAL)
    linv = ex.epe(np.linalg.inv(lam), n, Kind.PRIMAL)
    ladj = ex.epe(lam.T, n, Kind.DUAL)
    lhs = ex.ext_eval(ex.epe_on_extensor(lam, tau, Kind.PRIMAL), x, phi)
    rhs = lv.apply(
        ex.ext_eval_projected(
            tau, ex.part_diamond(linv.apply(x), s1), ex.part_diamond(ladj.apply(phi), s2)
        )
    )
    return mdiff(lhs, rhs)


@register("extensor", "epe_action.wedge_homomorphism")
def _(rng, n):
    lam = rand_invertible(rng, n)
    a1 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.PRIMAL)
    a2 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    lhs = ex.epe_on_extensor(lam, ex.ext_wedge(a1, a2), Kind.PRIMAL)
    rhs = ex.ext_wedge(
        ex.epe_on_extensor(lam, a1, Kind.PRIMAL), ex.epe_on_extensor(lam, a2, Kind.PRIMAL)
    )
    d1 = lhs.max_diff(rhs)
    mu = rand_invertible(rng, n)
    b1 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    b2 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.DUAL)
    lhs = ex.epe_on_extensor(mu, ex.ext_wedge(b1, b2), Kind.DUAL)
    rhs = ex.ext_wedge(
        ex.epe_on_extensor(mu, b1, Kind.DUAL), ex.epe_on_extensor(mu, b2, Kind.DUAL)
    )
    return max(d1, lhs.max_diff(rhs))


@register("extensor", "epe_action.duality_transports")
def _(rng, n):
    lam = rand_invertible(rng, n)
    lam_madj = np.linalg.inv(lam).T
    tf = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    sv = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    d1 = ex.epe_on_extensor(lam, ex.ext_dsp(tf, sv), Kind.PRIMAL).max_diff(
        ex.ext_dsp(
            ex.epe_on_extensor(lam_madj, tf, Kind.DUAL), ex.epe_on_extensor(lam, sv, Kind.PRIMAL)
        )
    )
    d2 = ex.epe_on_extensor(lam, ex.ext_lcontr(tf, sv), Kind.PRIMAL).max_diff(
        ex.ext_lcontr(
            ex.epe_on_extensor(lam_madj, tf, Kind.DUAL), ex.epe_on_extensor(lam, sv, Kind.PRIMAL)
        )
    )
    d3 = ex.epe_on_extensor(lam, ex.ext_rcontr(sv, tf), Kind.PRIMAL).max_diff(
        ex.ext_rcontr(
            ex.epe_on_extensor(lam, sv, Kind.PRIMAL), ex.epe_on_extensor(lam_madj, tf, Kind.DUAL)
        )
    )
    return max(d1, d2, d3)


@register("extensor", "epe_action.form_duality_transports")
def _(rng, n):
    mu = rand_invertible(rng, n)
    mu_madj = np.linalg.inv(mu).T
    tf = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    sv = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    d1 = ex.epe_on_extensor(mu, ex.ext_dsp(tf, sv), Kind.DUAL).max_diff(
        ex.ext_dsp(
            ex.epe_on_extensor(mu, tf, Kind.DUAL), ex.epe_on_extensor(mu_madj, sv, Kind.PRIMAL)
        )
    )
    d2 = ex.epe_on_extensor(mu, ex.ext_lcontr(sv, tf), Kind.DUAL).max_diff(
        ex.ext_lcontr(
            ex.epe_on_extensor(mu_madj, sv, Kind.PRIMAL), ex.epe_on_extensor(mu, tf, Kind.DUAL)
        )
    )
    d3 = ex.epe_on_extensor(mu, ex.ext_rcontr(tf, sv), Kind.DUAL).max_diff(
        ex.ext_rcontr(
            ex.epe_on_extensor(mu, tf, Kind.DUAL), ex.epe_on_extensor(mu_madj, sv, Kind.PRIMAL)
        )
    )
    return max(d1, d2, d3)


@register("extensor", "epe_action.multiform_general_definition")
def _(rng, n):
    mu = rand_invertible(rng, n)
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.DUAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    tau = ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))
    x, phi = rand_slot_value(rng, s1), rand_slot_value(rng, s2)
    lf = ex.epe(mu, n, Kind.DUAL)
    lfadj = ex.epe(mu.T, n, Kind.PRIMAL)
    lfinv = ex.epe(np.linalg.inv(mu), n, Kind.DUAL)
    lhs = ex.ext_eval(ex.epe_on_extensor(mu, tau, Kind.DUAL), x, phi)
    rhs = lf.apply(
        ex.ext_eval_projected(
            tau, ex.part_diamond(lfadj.apply(x), s1), ex.part_diamond(lfinv.apply(phi), s2)
        )
    )
    return mdiff(lhs, rhs)


@register("extensor", "ce_action.slot_rules")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    g = ex.ce(gam, n, Kind.PRIMAL)
    gd = ex.ce(gam.T, n, Kind.DUAL)
    tau10 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.PRIMAL)
    xs = rand_slot_value(rng, tau10.sig.slots[0])
    d1 = mdiff(
        ex.ext_eval(ex.ce_on_extensor(gam, tau10, Kind.PRIMAL), xs),
        g.apply(ex.ext_eval(tau10, xs))
        - ex.ext_eval_projected(tau10, ex.part_diamond(g.apply(xs), tau10.sig.slots[0])),
    )
    tau01 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    om = rand_slot_value(rng, tau01.sig.slots[0])
    d2 = mdiff(
        ex.ext_eval(ex.ce_on_extensor(gam, tau01, Kind.PRIMAL), om),
        g.apply(ex.ext_eval(tau01, om))
        + ex.ext_eval_projected(tau01, ex.part_diamond(gd.apply(om), tau01.sig.slots[0])),
    )
    return max(d1, d2)


@register("extensor", "ce_action.multiform_slot_rules")
def _(rng, n):
    gf = rng.uniform(-1, 1, (n, n))
    g = ex.ce(gf, n, Kind.DUAL)
    ga = ex.ce(gf.T, n, Kind.PRIMAL)
    t10 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    xs = rand_slot_value(rng, t10.sig.slots[0])
    d1 = mdiff(
        ex.ext_eval(ex.ce_on_extensor(gf, t10, Kind.DUAL), xs),
        g.apply(ex.ext_eval(t10, xs))
        + ex.ext_eval_projected(t10, ex.part_diamond(ga.apply(xs), t10.sig.slots[0])),
    )
    t01 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.DUAL)
    om = rand_slot_value(rng, t01.sig.slots[0])
    d2 = mdiff(
        ex.ext_eval(ex.ce_on_extensor(gf, t01, Kind.DUAL), om),
        g.apply(ex.ext_eval(t01, om))
        - ex.ext_eval_projected(t01, ex.part_diamond(g.apply(om), t01.sig.slots[0])),
    )
    return max(d1, d2)


@register("extensor", "ce_action.general_definition")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.PRIMAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    tau = ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))
    x, phi = rand_slot_value(rng, s1), rand_slot_value(rng, s2)
    g = ex.ce(gam, n, Kind.PRIMAL)
    gd = ex.ce(gam.T, n, Kind.DUAL)
    lhs = ex.ext_eval(ex.ce_on_extensor(gam, tau, Kind.PRIMAL), x, phi)
    rhs = (
        g.apply(ex.ext_eval(tau, x, phi))
        - ex.ext_eval_projected(tau, ex.part_diamond(g.apply(x), s1), phi)
        + ex.ext_eval_projected(tau, x, ex.part_diamond(gd.apply(phi), s2))
    )
    return mdiff(lhs, rhs)


@register("extensor", "ce_action.multiform_general_definition")
def _(rng, n):
    gf = rng.uniform(-1, 1, (n, n))
    s1 = rand_sig(rng, n, Kind.PRIMAL)
    s2 = rand_sig(rng, n, Kind.DUAL)
    out = rand_sig(rng, n, Kind.DUAL)
    sig = ex.ExtSignature((s1,), (s2,), out)
    tau = ex.Extensor(sig, rng.uniform(-1, 1, sig.shape))
    x, phi = rand_slot_value(rng, s1), rand_slot_value(rng, s2)
    g = ex.ce(gf, n, Kind.DUAL)
    ga = ex.ce(gf.T, n, Kind.PRIMAL)
    lhs = ex.ext_eval(ex.ce_on_extensor(gf, tau, Kind.DUAL), x, phi)
    rhs = (
        g.apply(ex.ext_eval(tau, x, phi))
        + ex.ext_eval_projected(tau, ex.part_diamond(ga.apply(x), s1), phi)
        - ex.ext_eval_projected(tau, x, ex.part_diamond(g.apply(phi), s2))
    )
    return mdiff(lhs, rhs)


@register("extensor", "ce_action.wedge_derivation")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    a1 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.PRIMAL)
    a2 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    d1 = ex.ce_on_extensor(gam, ex.ext_wedge(a1, a2), Kind.PRIMAL).max_diff(
        ex.ext_wedge(ex.ce_on_extensor(gam, a1, Kind.PRIMAL), a2)
        + ex.ext_wedge(a1, ex.ce_on_extensor(gam, a2, Kind.PRIMAL))
    )
    gf = rng.uniform(-1, 1, (n, n))
    b1 = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    b2 = rand_ext_1slot(rng, n, Kind.DUAL, Kind.DUAL)
    d2 = ex.ce_on_extensor(gf, ex.ext_wedge(b1, b2), Kind.DUAL).max_diff(
        ex.ext_wedge(ex.ce_on_extensor(gf, b1, Kind.DUAL), b2)
        + ex.ext_wedge(b1, ex.ce_on_extensor(gf, b2, Kind.DUAL))
    )
    return max(d1, d2)


@register("extensor", "ce_action.duality_transports")
def _(rng, n):
    gam = rng.uniform(-1, 1, (n, n))
    tf = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    sv = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    d1 = ex.ce_on_extensor(gam, ex.ext_dsp(tf, sv), Kind.PRIMAL).max_diff(
        -1.0 * ex.ext_dsp(ex.ce_on_extensor(gam.T, tf, Kind.DUAL), sv)
        + ex.ext_dsp(tf, ex.ce_on_extensor(gam, sv, Kind.PRIMAL))
    )
    d2 = ex.ce_on_extensor(gam, ex.ext_lcontr(tf, sv), Kind.PRIMAL).max_diff(
        -1.0 * ex.ext_lcontr(ex.ce_on_extensor(gam.T, tf, Kind.DUAL), sv)
        + ex.ext_lcontr(tf, ex.ce_on_extensor(gam, sv, Kind.PRIMAL))
    )
    d3 = ex.ce_on_extensor(gam, ex.ext_rcontr(sv, tf), Kind.PRIMAL).max_diff(
        ex.ext_rcontr(ex.ce_on_extensor(gam, sv, Kind.PRIMAL), tf)
        - ex.ext_rcontr(sv, ex.ce_on_extensor(gam.T, tf, Kind.DUAL))
    )
    return max(d1, d2, d3)


@register("extensor", "ce_action.form_duality_transports")
def _(rng, n):
    gf = rng.uniform(-1, 1, (n, n))
    tf = rand_ext_1slot(rng, n, Kind.PRIMAL, Kind.DUAL)
    sv = rand_ext_1slot(rng, n, Kind.DUAL, Kind.PRIMAL)
    d1 = ex.ce_on_extensor(gf, ex.ext_dsp(tf, sv), Kind.DUAL).max_diff(
        ex.ext_dsp(ex.ce_on_extensor(gf, tf, Kind.DUAL), sv)
        - ex.ext_dsp(tf, ex.ce_on_extensor(gf.T, sv, Kind.PRIMAL))
    )
    d2 = ex.ce_on_extensor(gf, ex.ext_lcontr(sv, tf), Kind.DUAL).max_diff(
        -1.0 * ex.ext_lcontr(ex.ce_on_extensor(gf.T, sv, Kind.PRIMAL), tf)
        + ex.ext_lcontr(sv, ex.ce_on_extensor(gf, tf, Kind.DUAL))
    )
    d3 = ex.ce_on_extensor(gf, ex.ext_rcontr(tf, sv), Kind.DUAL).max_diff(
        ex.ext_rcontr(ex.ce_on_extensor(gf, tf, Kind.DUAL), sv)
        - ex.ext_rcontr(tf, ex.ce_on_extensor(gf.T, sv, Kind.PRIMAL))
    )
    return max(d1, d2, d3)

# ---------------------------------------------------------------------------
# differential
# ---------------------------------------------------------------------------

def _chart_case(rng, n, trig=False, symmetric=False):
    chart = fl.box_chart(n)
    conn = rand_conn(rng, chart, symmetric=symmetric, trig=trig)
    pts = chart.sample(rng, 5)
    return chart, conn, pts


@register("differential", "structure.strong_linearity")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b, v = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    f, g = rand_poly(rng, n), rand_poly(rng, n)
    lhs = conn.nabla_vec(a.scale(f) + b.scale(g), v)
    rhs = conn.nabla_vec(a, v).scale(f) + conn.nabla_vec(b, v).scale(g)
    return field_diff(lhs, rhs, pts)


@register("differential", "structure.quasi_linearity")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, v, w = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    f, g = rand_poly(rng, n), rand_poly(rng, n)
    lhs = conn.nabla_vec(a, v.scale(f) + w.scale(g))
    rhs = (
        v.scale(a.apply_scalar(f))
        + w.scale(a.apply_scalar(g))
        + conn.nabla_vec(a, v).scale(f)
        + conn.nabla_vec(a, w).scale(g)
    )
    return field_diff(lhs, rhs, pts)


@register("differential", "covariant.scalar_rule")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    f = rand_poly(rng, n)
    X = fl.MultivectorField.scalar(BaseSpace(Kind.PRIMAL, n), chart, f)
    d1 = field_diff(conn.nabla(a, X).component(0), conn.nabla_scalar(a, f), pts)
    P = fl.MultivectorField.scalar(BaseSpace(Kind.DUAL, n), chart, f)
    d2 = field_diff(conn.nabla(a, P).component(0), a.apply_scalar(f), pts)
    return max(d1, d2)


@register("differential", "covariant.definitional_expansion")
def _(rng, n):
    # the k-vector derivative satisfies the alternating-argument expansion
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X2 = rand_mvf(rng, chart).part(2)
    om1, om2 = rand_ff(rng, chart), rand_ff(rng, chart)
    lhs = (
        a.apply_scalar(fl.field_dsp(om1.wedge(om2), X2))
        - fl.field_dsp(conn.nabla_form(a, om1).wedge(om2), X2)
        - fl.field_dsp(om1.wedge(conn.nabla_form(a, om2)), X2)
    )
    rhs = fl.field_dsp(om1.wedge(om2), conn.nabla(a, X2))
    return field_diff(lhs, rhs, pts)


@register("differential", "covariant.form_definitional_expansion")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    P2 = rand_mvf(rng, chart, Kind.DUAL).part(2)
    v1, v2 = rand_vf(rng, chart), rand_vf(rng, chart)
    lhs = (
        a.apply_scalar(fl.field_dsp(P2, v1.wedge(v2)))
        - fl.field_dsp(P2, conn.nabla_vec(a, v1).wedge(v2))
        - fl.field_dsp(P2, v1.wedge(conn.nabla_vec(a, v2)))
    )
    rhs = fl.field_dsp(conn.nabla(a, P2), v1.wedge(v2))
    return field_diff(lhs, rhs, pts)


@register("differential", "covariant.grade_sum")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    total = None
    for k in range(n + 1):
        t = conn.nabla(a, X.part(k))
        total = t if total is None else total + t
    return field_diff(conn.nabla(a, X), total, pts)


@register("differential", "covariant.grade_preservation")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    k = int(rng.integers(0, n + 1))
    X = rand_mvf(rng, chart).part(k)
    P = rand_mvf(rng, chart, Kind.DUAL).part(k)
    d1 = field_diff(conn.nabla(a, X), conn.nabla(a, X).part(k), pts)
    d2 = field_diff(conn.nabla(a, P), conn.nabla(a, P).part(k), pts)
    return max(d1, d2)


@register("differential", "covariant.direction_linearity")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    f = rand_poly(rng, n)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    d1 = field_diff(conn.nabla(a + b, X), conn.nabla(a, X) + conn.nabla(b, X), pts)
    d2 = field_diff(conn.nabla(a.scale(f), X), conn.nabla(a, X).scale(f), pts)
    d3 = field_diff(conn.nabla(a + b, P), conn.nabla(a, P) + conn.nabla(b, P), pts)
    d4 = field_diff(conn.nabla(a.scale(f), P), conn.nabla(a, P).scale(f), pts)
    return max(d1, d2, d3, d4)


@register("differential", "covariant.module_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    f = rand_poly(rng, n)
    X, Y = rand_mvf(rng, chart), rand_mvf(rng, chart)
    P, Q = rand_mvf(rng, chart, Kind.DUAL), rand_mvf(rng, chart, Kind.DUAL)
    d1 = field_diff(conn.nabla(a, X + Y), conn.nabla(a, X) + conn.nabla(a, Y), pts)
    d2 = field_diff(conn.nabla(a, X.scale(f)), X.scale(a.apply_scalar(f)) + conn.nabla(a, X).scale(f), pts)
    d3 = field_diff(conn.nabla(a, P + Q), conn.nabla(a, P) + conn.nabla(a, Q), pts)
    d4 = field_diff(conn.nabla(a, P.scale(f)), P.scale(a.apply_scalar(f)) + conn.nabla(a, P).scale(f), pts)
    return max(d1, d2, d3, d4)


@register("differential", "covariant.wedge_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X, Y = rand_mvf(rng, chart), rand_mvf(rng, chart)
    return field_diff(
        conn.nabla(a, X.wedge(Y)),
        conn.nabla(a, X).wedge(Y) + X.wedge(conn.nabla(a, Y)),
        pts,
    )


@register("differential", "covariant.form_wedge_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    P, Q = rand_mvf(rng, chart, Kind.DUAL), rand_mvf(rng, chart, Kind.DUAL)
    return field_diff(
        conn.nabla(a, P.wedge(Q)),
        conn.nabla(a, P).wedge(Q) + P.wedge(conn.nabla(a, Q)),
        pts,
    )


@register("differential", "covariant.pairing_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    lhs = a.apply_scalar(fl.field_dsp(P, X))
    rhs = fl.field_dsp(conn.nabla(a, P), X) + fl.field_dsp(P, conn.nabla(a, X))
    return field_diff(lhs, rhs, pts)


@register("differential", "covariant.lcontr_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    d1 = field_diff(
        conn.nabla(a, fl.field_lcontr(P, X)),
        fl.field_lcontr(conn.nabla(a, P), X) + fl.field_lcontr(P, conn.nabla(a, X)),
        pts,
    )
    d2 = field_diff(
        conn.nabla(a, fl.field_lcontr(X, P)),
        fl.field_lcontr(conn.nabla(a, X), P) + fl.field_lcontr(X, conn.nabla(a, P)),
        pts,
    )
    return max(d1, d2)


@register("differential", "covariant.rcontr_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    d1 = field_diff(
        conn.nabla(a, fl.field_rcontr(P, X)),
        fl.field_rcontr(conn.nabla(a, P), X) + fl.field_rcontr(P, conn.nabla(a, X)),
        pts,
    )
    d2 = field_diff(
        conn.nabla(a, fl.field_rcontr(X, P)),
        fl.field_rcontr(conn.nabla(a, X), P) + fl.field_rcontr(X, conn.nabla(a, P)),
        pts,
    )
    return max(d1, d2)


@register("differential", "covariant.vector_form_rules")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    d1 = field_diff(conn.nabla(a, v), conn.nabla_vec(a, v), pts)
    d2 = field_diff(conn.nabla(a, om), conn.nabla_form(a, om), pts)
    lhs = fl.field_dsp(conn.nabla_form(a, om), v)
    rhs = a.apply_scalar(fl.field_dsp(om, v)) - fl.field_dsp(om, conn.nabla_vec(a, v))
    return max(d1, d2, field_diff(lhs, rhs, pts))


@register("differential", "bracket.antisymmetry_jacobi")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    a, b, c = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    d1 = field_resid(fl.lie_bracket(a, b) + fl.lie_bracket(b, a), pts)
    jac = (
        fl.lie_bracket(a, fl.lie_bracket(b, c))
        + fl.lie_bracket(b, fl.lie_bracket(c, a))
        + fl.lie_bracket(c, fl.lie_bracket(a, b))
    )
    d2 = field_resid(jac, pts)
    du = fl.coordinate_vector(chart, 0)
    dv = fl.coordinate_vector(chart, 1)
    d3 = field_resid(fl.lie_bracket(du, dv), pts)
    return max(d1, d2, d3)


@register("differential", "extensor_deriv.definitional")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = conn.nabla_extensor(a, tau).evaluate(x)
    rhs = conn.nabla(a, tau.evaluate(x)) - tau.evaluate(conn.nabla(a, x))
    return field_diff(lhs, rhs, pts)


@register("differential", "extensor_deriv.form_slot_definitional")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.DUAL, Kind.PRIMAL)
    p = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = conn.nabla_extensor(a, tau).evaluate(p)
    rhs = conn.nabla(a, tau.evaluate(p)) - tau.evaluate(conn.nabla(a, p))
    return field_diff(lhs, rhs, pts)


@register("differential", "extensor_deriv.multiform_definitional")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    x = rand_slot_field(rng, chart, ups.sig.slots[0])
    lhs = conn.nabla_extensor(a, ups).evaluate(x)
    rhs = conn.nabla(a, ups.evaluate(x)) - ups.evaluate(conn.nabla(a, x))
    return field_diff(lhs, rhs, pts)


@register("differential", "extensor_deriv.elementary")
def _(rng, n):
    # grade-1 slots in both positions: the elementary tensor-style case
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    nsig = VSpaceSig(Kind.PRIMAL, (1,), n)
    fsig = VSpaceSig(Kind.DUAL, (1,), n)
    sig = ExtSignature((nsig,), (fsig,), nsig)
    arr = np.empty(sig.shape, dtype=object)
    for idx in np.ndindex(*sig.shape):
        arr[idx] = rand_poly(rng, n, False)
    tau = fl.ExtensorField(sig, chart, arr)
    v = rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    lhs = conn.nabla_extensor(a, tau).evaluate(v, om)
    rhs = (
        conn.nabla(a, tau.evaluate(v, om))
        - tau.evaluate(conn.nabla_vec(a, v), om)
        - tau.evaluate(v, conn.nabla_form(a, om))
    )
    return field_diff(lhs, rhs, pts)


@register("differential", "extensor_deriv.direction_linearity")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    f = rand_poly(rng, n)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x = rand_slot_field(rng, chart, tau.sig.slots[0])
    d1 = field_diff(
        conn.nabla_extensor(a + b, tau).evaluate(x),
        (conn.nabla_extensor(a, tau) + conn.nabla_extensor(b, tau)).evaluate(x),
        pts,
    )
    d2 = field_diff(
        conn.nabla_extensor(a.scale(f), tau).evaluate(x),
        conn.nabla_extensor(a, tau).scale(f).evaluate(x),
        pts,
    )
    return max(d1, d2)


@register("differential", "extensor_deriv.module_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    f = rand_poly(rng, n)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    sig2 = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x = rand_slot_field(rng, chart, tau.sig.slots[0])
    d1 = field_diff(
        conn.nabla_extensor(a, tau + sig2).evaluate(x),
        (conn.nabla_extensor(a, tau) + conn.nabla_extensor(a, sig2)).evaluate(x),
        pts,
    )
    d2 = field_diff(
        conn.nabla_extensor(a, tau.scale(f)).evaluate(x),
        (tau.scale(a.apply_scalar(f)) + conn.nabla_extensor(a, tau).scale(f)).evaluate(x),
        pts,
    )
    return max(d1, d2)


@register("differential", "extensor_deriv.wedge_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    sig2 = rand_extf(rng, chart, Kind.DUAL, Kind.PRIMAL)
    x = rand_slot_field(rng, chart, tau.sig.slots[0])
    p = rand_slot_field(rng, chart, sig2.sig.slots[0])
    lhs = conn.nabla_extensor(a, fl.field_ext_wedge(tau, sig2))
    rhs = fl.field_ext_wedge(conn.nabla_extensor(a, tau), sig2) + fl.field_ext_wedge(
        tau, conn.nabla_extensor(a, sig2)
    )
    return field_diff(lhs.evaluate(x, p), rhs.evaluate(x, p), pts)


@register("differential", "extensor_deriv.dsp_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x1 = rand_slot_field(rng, chart, ups.sig.slots[0])
    x2 = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = conn.nabla_extensor(a, fl.field_ext_dsp(ups, tau))
    rhs = fl.field_ext_dsp(conn.nabla_extensor(a, ups), tau) + fl.field_ext_dsp(
        ups, conn.nabla_extensor(a, tau)
    )
    return field_diff(lhs.evaluate(x1, x2), rhs.evaluate(x1, x2), pts)


@register("differential", "extensor_deriv.lcontr_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x1 = rand_slot_field(rng, chart, ups.sig.slots[0])
    x2 = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = conn.nabla_extensor(a, fl.field_ext_lcontr(ups, tau))
    rhs = fl.field_ext_lcontr(conn.nabla_extensor(a, ups), tau) + fl.field_ext_lcontr(
        ups, conn.nabla_extensor(a, tau)
    )
    d1 = field_diff(lhs.evaluate(x1, x2), rhs.evaluate(x1, x2), pts)
    lhs = conn.nabla_extensor(a, fl.field_ext_lcontr(tau, ups))
    rhs = fl.field_ext_lcontr(conn.nabla_extensor(a, tau), ups) + fl.field_ext_lcontr(
        tau, conn.nabla_extensor(a, ups)
    )
    d2 = field_diff(lhs.evaluate(x2, x1), rhs.evaluate(x2, x1), pts)
    return max(d1, d2)


@register("differential", "extensor_deriv.rcontr_leibniz")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x1 = rand_slot_field(rng, chart, ups.sig.slots[0])
    x2 = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = conn.nabla_extensor(a, fl.field_ext_rcontr(ups, tau))
    rhs = fl.field_ext_rcontr(conn.nabla_extensor(a, ups), tau) + fl.field_ext_rcontr(
        ups, conn.nabla_extensor(a, tau)
    )
    d1 = field_diff(lhs.evaluate(x1, x2), rhs.evaluate(x1, x2), pts)
    lhs = conn.nabla_extensor(a, fl.field_ext_rcontr(tau, ups))
    rhs = fl.field_ext_rcontr(conn.nabla_extensor(a, tau), ups) + fl.field_ext_rcontr(
        tau, conn.nabla_extensor(a, ups)
    )
    d2 = field_diff(lhs.evaluate(x2, x1), rhs.evaluate(x2, x1), pts)
    return max(d1, d2)


@register("differential", "extensor_deriv.adjoint_commutes")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    adj_slot = tau.adjoint().sig.slots[0]
    phi = rand_slot_field(rng, chart, adj_slot)
    lhs = conn.nabla_extensor(a, tau).adjoint()
    rhs = conn.nabla_extensor(a, tau.adjoint())
    return field_diff(lhs.evaluate(phi), rhs.evaluate(phi), pts)


@register("differential", "deform.connection_rule")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    return field_diff(
        dconn.nabla_vec(a, v), lam.apply(conn.nabla_vec(a, lam.inverse().apply(v))), pts
    )


@register("differential", "deform.form_rule")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a = rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    return field_diff(
        dconn.nabla_form(a, om),
        lam.adjoint().inverse().apply(conn.nabla_form(a, lam.adjoint().apply(om))),
        pts,
    )


@register("differential", "deform.multivector_lift")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    return field_diff(
        dconn.nabla(a, X), lam.epe_apply(conn.nabla(a, lam.inverse().epe_apply(X))), pts
    )


@register("differential", "deform.multiform_lift")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a = rand_vf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    la = lam.adjoint()
    return field_diff(
        dconn.nabla(a, P), la.inverse().epe_apply(conn.nabla(a, la.epe_apply(P))), pts
    )


@register("differential", "deform.extensor_lift")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    x = rand_slot_field(rng, chart, tau.sig.slots[0])
    lhs = dconn.nabla_extensor(a, tau)
    rhs = fl.field_epe_on_extensor(
        lam, conn.nabla_extensor(a, fl.field_epe_on_extensor(lam.inverse(), tau))
    )
    return field_diff(lhs.evaluate(x), rhs.evaluate(x), pts)


@register("differential", "deform.multiform_extensor_lift")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    lam = rand_opfield(rng, chart)
    dconn = cn.deform(lam, conn)
    a = rand_vf(rng, chart)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    x = rand_slot_field(rng, chart, ups.sig.slots[0])
    la = lam.adjoint()
    lhs = dconn.nabla_extensor(a, ups)
    rhs = fl.field_epe_on_extensor(
        la.inverse(), conn.nabla_extensor(a, fl.field_epe_on_extensor(la, ups))
    )
    return field_diff(lhs.evaluate(x), rhs.evaluate(x), pts)


@register("differential", "deform.trivial_scaling")
def _(rng, n):
    # constant scalar multiples of the identity leave the structure unchanged
    chart, conn, pts = _chart_case(rng, n)
    c = float(rng.uniform(0.5, 2.0))
    lam = fl.OperatorField(
        Kind.PRIMAL, chart, [[Const(c) if i == j else ZERO for j in range(n)] for i in range(n)]
    )
    dconn = cn.deform(lam, conn)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    return field_diff(dconn.nabla_vec(a, v), conn.nabla_vec(a, v), pts)


@register("differential", "relative.frame_annihilation")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    frame = rand_frame(rng, chart)
    a = rand_vf(rng, chart)
    worst = 0.0
    for mu in range(n):
        worst = max(worst, field_resid(cn.relative_partial(frame, a, frame.vector(mu)), pts))
        rc = cn.relative_connection(frame)
        worst = max(worst, field_resid(rc.nabla_vec(a, frame.vector(mu)), pts))
    return worst


@register("differential", "relative.derivative_formula")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    frame = rand_frame(rng, chart)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    rc = cn.relative_connection(frame)
    return field_diff(rc.nabla_vec(a, v), cn.relative_partial(frame, a, v), pts)


@register("differential", "relative.uniqueness_expansion")
def _(rng, n):
    # a derivative annihilating every frame vector is determined on any v
    # by expanding v in the frame
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    frame = rand_frame(rng, chart)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    expansion = None
    for mu in range(n):
        coeff = a.apply_scalar(fl.field_dsp(frame.coform(mu), v))
        term = frame.vector(mu).scale(coeff)
        expansion = term if expansion is None else expansion + term
    return field_diff(cn.relative_partial(frame, a, v), expansion, pts)


@register("differential", "split.connection_difference")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    frame = rand_frame(rng, chart)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    gam = cn.connection_difference(conn, frame)
    rc = cn.relative_connection(frame)
    d1 = field_diff(conn.nabla_vec(a, v), rc.nabla_vec(a, v) + gam.evaluate(a, v), pts)
    # the defining frame expansion
    want = None
    for mu in range(n):
        t = conn.nabla_vec(a, frame.vector(mu)).scale(fl.field_dsp(frame.coform(mu), v))
        want = t if want is None else want + t
    d2 = field_diff(gam.evaluate(a, v), want, pts)
    return max(d1, d2)


@register("differential", "split.vector_form_rules")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    frame = rand_frame(rng, chart)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    rc = cn.relative_connection(frame)
    top = cn.split_twist_operator(conn, frame, a)
    d1 = field_diff(conn.nabla_vec(a, v), rc.nabla_vec(a, v) + top.apply(v), pts)
    d2 = field_diff(conn.nabla_form(a, om), rc.nabla_form(a, om) - top.adjoint().apply(om), pts)
    return max(d1, d2)


@register("differential", "split.multivector_multiform")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    frame = rand_frame(rng, chart)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    rc = cn.relative_connection(frame)
    top = cn.split_twist_operator(conn, frame, a)
    d1 = field_diff(conn.nabla(a, X), rc.nabla(a, X) + top.ce_apply(X), pts)
    d2 = field_diff(conn.nabla(a, P), rc.nabla(a, P) - top.adjoint().ce_apply(P), pts)
    return max(d1, d2)


@register("differential", "split.extensor")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    frame = rand_frame(rng, chart)
    a = rand_vf(rng, chart)
    tau = rand_extf(rng, chart, Kind.PRIMAL, Kind.PRIMAL)
    ups = rand_extf(rng, chart, Kind.PRIMAL, Kind.DUAL)
    x1 = rand_slot_field(rng, chart, tau.sig.slots[0])
    x2 = rand_slot_field(rng, chart, ups.sig.slots[0])
    rc = cn.relative_connection(frame)
    top = cn.split_twist_operator(conn, frame, a)
    d1 = field_diff(
        conn.nabla_extensor(a, tau).evaluate(x1),
        (rc.nabla_extensor(a, tau) + fl.field_ce_on_extensor(top, tau)).evaluate(x1),
        pts,
    )
    d2 = field_diff(
        conn.nabla_extensor(a, ups).evaluate(x2),
        (rc.nabla_extensor(a, ups) - fl.field_ce_on_extensor(top.adjoint(), ups)).evaluate(x2),
        pts,
    )
    return max(d1, d2)


@register("differential", "jacobian.frame_transport")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    f1 = rand_frame(rng, chart)
    f2 = rand_frame(rng, chart, shift=1)
    J = cn.jacobian(f1, f2)
    worst = 0.0
    for mu in range(n):
        worst = max(worst, field_diff(J.apply(f1.vector(mu)), f2.vector(mu), pts))
        worst = max(worst, field_diff(J.inverse().apply(f2.vector(mu)), f1.vector(mu), pts))
        worst = max(
            worst,
            field_diff(J.adjoint().inverse().apply(f1.coform(mu)), f2.coform(mu), pts),
        )
        worst = max(worst, field_diff(J.adjoint().apply(f2.coform(mu)), f1.coform(mu), pts))
    return worst


@register("differential", "jacobian.derivative_conjugation")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    f1 = rand_frame(rng, chart)
    f2 = rand_frame(rng, chart, shift=1)
    J = cn.jacobian(f1, f2)
    rc1, rc2 = cn.relative_connection(f1), cn.relative_connection(f2)
    a, v = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    d1 = field_diff(rc2.nabla_vec(a, v), J.apply(rc1.nabla_vec(a, J.inverse().apply(v))), pts)
    d2 = field_diff(
        rc2.nabla_form(a, om),
        J.adjoint().inverse().apply(rc1.nabla_form(a, J.adjoint().apply(om))),
        pts,
    )
    return max(d1, d2)


@register("differential", "jacobian.multivector_conjugation")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    f1 = rand_frame(rng, chart)
    f2 = rand_frame(rng, chart, shift=1)
    J = cn.jacobian(f1, f2)
    rc1, rc2 = cn.relative_connection(f1), cn.relative_connection(f2)
    a = rand_vf(rng, chart)
    X = rand_mvf(rng, chart)
    P = rand_mvf(rng, chart, Kind.DUAL)
    d1 = field_diff(rc2.nabla(a, X), J.epe_apply(rc1.nabla(a, J.inverse().epe_apply(X))), pts)
    ja = J.adjoint()
    d2 = field_diff(rc2.nabla(a, P), ja.inverse().epe_apply(rc1.nabla(a, ja.epe_apply(P))), pts)
    return max(d1, d2)


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def _coordinate_torsion(conn: cn.Connection, m: int, v: int) -> fl.MultivectorField:
    """Coefficient oracle: antisymmetrized connection coefficients."""
    n = conn.n
    return fl.vector_field(
        conn.chart, [conn.gamma[s][m][v] - conn.gamma[s][v][m] for s in range(n)]
    )


def _coordinate_curvature(conn: cn.Connection, m: int, v: int, r: int) -> fl.MultivectorField:
    """Coefficient oracle: derivative-plus-quadratic coefficient formula."""
    n = conn.n
    comps = []
    for s in range(n):
        f = conn.gamma[s][v][r].diff(m) - conn.gamma[s][m][r].diff(v)
        for l in range(n):
            f = f + conn.gamma[s][m][l] * conn.gamma[l][v][r]
            f = f - conn.gamma[s][v][l] * conn.gamma[l][m][r]
        comps.append(f)
    return fl.vector_field(conn.chart, comps)


@register("geometry", "torsion.antisymmetry")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    return field_resid(gm.torsion(conn, a, b) + gm.torsion(conn, b, a), pts)


@register("geometry", "torsion.coordinate_oracle")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    m = int(rng.integers(0, n))
    v = int(rng.integers(0, n))
    lhs = gm.torsion(conn, fl.coordinate_vector(chart, m), fl.coordinate_vector(chart, v))
    return field_diff(lhs, _coordinate_torsion(conn, m, v), pts)


@register("geometry", "torsion.tensor_reconstruction")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    d1 = field_diff(
        gm.torsion_tensor(conn, a, b, om), fl.field_dsp(om, gm.torsion(conn, a, b)), pts
    )
    rec = None
    for mu in range(n):
        t = fl.coordinate_vector(chart, mu).scale(
            gm.torsion_tensor(conn, a, b, fl.coordinate_coform(chart, mu))
        )
        rec = t if rec is None else rec + t
    d2 = field_diff(rec, gm.torsion(conn, a, b), pts)
    return max(d1, d2)


@register("geometry", "torsion.extensor_consistency")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    tx = gm.torsion_extensor(conn)
    return field_diff(tx.evaluate(a.wedge(b)), gm.torsion(conn, a, b), pts)


@register("geometry", "torsion.extensor_frame_independence")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    frame = rand_frame(rng, chart)
    t1 = gm.torsion_extensor(conn)
    t2 = gm.torsion_extensor(conn, frame)
    return field_diff(t1.evaluate(a.wedge(b)), t2.evaluate(a.wedge(b)), pts)


@register("geometry", "torsion.cartan_consistency")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    th = gm.cartan_torsion(conn)
    d1 = field_diff(
        fl.field_dsp(th.evaluate(om), a.wedge(b)),
        fl.field_dsp(om, gm.torsion(conn, a, b)),
        pts,
    )
    th2 = gm.cartan_torsion(conn, rand_frame(rng, chart))
    d2 = field_diff(th.evaluate(om), th2.evaluate(om), pts)
    return max(d1, d2)


@register("geometry", "torsion.symmetric_equivalences")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    conn = rand_conn(rng, chart, symmetric=True)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    om = rand_ff(rng, chart)
    d1 = field_resid(gm.torsion(conn, a, b), pts)
    d2 = field_resid(
        conn.nabla_vec(a, b) - conn.nabla_vec(b, a) - fl.lie_bracket(a, b), pts
    )
    d3 = field_resid(gm.torsion_extensor(conn).evaluate(a.wedge(b)), pts)
    d4 = field_resid(gm.cartan_torsion(conn).evaluate(om), pts)
    return max(d1, d2, d3, d4)


@register("geometry", "curvature.antisymmetry")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b, c = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    return field_resid(gm.curvature(conn, a, b, c) + gm.curvature(conn, b, a, c), pts)


@register("geometry", "curvature.function_linearity")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b, c = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    f, g = rand_poly(rng, n, False), rand_poly(rng, n, False)
    lhs = gm.curvature(conn, a.scale(f), b, c.scale(g))
    rhs = gm.curvature(conn, a, b, c).scale(f * g)
    d1 = field_diff(lhs, rhs, pts)
    d2 = field_diff(
        gm.curvature(conn, a, b.scale(f), c), gm.curvature(conn, a, b, c).scale(f), pts
    )
    return max(d1, d2)


@register("geometry", "curvature.coordinate_oracle")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    m = int(rng.integers(0, n))
    v = (m + 1) % n
    r = int(rng.integers(0, n))
    lhs = gm.curvature(
        conn,
        fl.coordinate_vector(chart, m),
        fl.coordinate_vector(chart, v),
        fl.coordinate_vector(chart, r),
    )
    return field_diff(lhs, _coordinate_curvature(conn, m, v, r), pts)


@register("geometry", "curvature.bivector_consistency")
def _(rng, n):
    chart, conn, pts = _chart_case(rng, n)
    a, b, c = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    d1 = field_diff(
        gm.curvature_bivector(conn, a.wedge(b), c), gm.curvature(conn, a, b, c), pts
    )
    frame = rand_frame(rng, chart)
    d2 = field_diff(
        gm.curvature_bivector(conn, a.wedge(b), c),
        gm.curvature_bivector(conn, a.wedge(b), c, frame),
        pts,
    )
    return max(d1, d2)


@register("geometry", "curvature.cyclic_symmetric")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    conn = rand_conn(rng, chart, symmetric=True)
    a, b, c = rand_vf(rng, chart), rand_vf(rng, chart), rand_vf(rng, chart)
    cyc = (
        gm.curvature(conn, a, b, c)
        + gm.curvature(conn, b, c, a)
        + gm.curvature(conn, c, a, b)
    )
    return field_resid(cyc, pts)


@register("geometry", "curvature.bianchi_symmetric")
def _(rng, n):
    chart = fl.box_chart(n)
    pts = chart.sample(rng, 5)
    conn = rand_conn(rng, chart, symmetric=True)
    consts = rng.uniform(-1, 1, (4, n))
    w, a, b = (fl.vector_field(chart, [Const(x) for x in row]) for row in consts[:3])
    c = rand_vf(rng, chart, trig=False)
    bi = (
        gm.nabla_curvature(conn, w, a, b, c)
        + gm.nabla_curvature(conn, a, b, w, c)
        + gm.nabla_curvature(conn, b, w, a, c)
    )
    return field_resid(bi, pts)


@register("geometry", "sphere.torsion_vanishes", dims=(2,))
def _(rng, n):
    chart, conn = gm.sphere_preset()
    pts = chart.sample(rng, 10)
    du, dv = fl.coordinate_vector(chart, 0), fl.coordinate_vector(chart, 1)
    d1 = field_resid(gm.torsion(conn, du, dv), pts)
    a, b = rand_vf(rng, chart), rand_vf(rng, chart)
    d2 = field_resid(gm.torsion(conn, a, b), pts)
    return max(d1, d2)


@register("geometry", "sphere.curvature_oracle", dims=(2,))
def _(rng, n):
    chart, conn = gm.sphere_preset()
    pts = chart.sample(rng, 5)
    du, dv = fl.coordinate_vector(chart, 0), fl.coordinate_vector(chart, 1)
    rho = gm.curvature(conn, du, dv, dv)
    d1 = field_diff(rho, _coordinate_curvature(conn, 0, 1, 1), pts)
    # the profile along the polar angle: the first component is sin(u)^2
    worst = d1
    for u in (0.5, 1.0, 1.5):
        val = rho.at((u, 0.3))
        worst = max(worst, abs(val[1] - np.sin(u) ** 2), abs(val[2]))
    return worst


@register("geometry", "sphere.cyclic", dims=(2,))
def _(rng, n):
    chart, conn = gm.sphere_preset()
    pts = chart.sample(rng, 5)
    a, b, c = (rand_vf(rng, chart, trig=False) for _ in range(3))
    cyc = (
        gm.curvature(conn, a, b, c)
        + gm.curvature(conn, b, c, a)
        + gm.curvature(conn, c, a, b)
    )
    return field_resid(cyc, pts)


@register("geometry", "sphere.bianchi", dims=(2,))
def _(rng, n):
    chart, conn = gm.sphere_preset()
    pts = chart.sample(rng, 5)
    consts = rng.uniform(-1, 1, (3, 2))
    w, a, b = (fl.vector_field(chart, [Const(x) for x in row]) for row in consts)
    c = rand_vf(rng, chart, trig=False)
    bi = (
        gm.nabla_curvature(conn, w, a, b, c)
        + gm.nabla_curvature(conn, a, b, w, c)
        + gm.nabla_curvature(conn, b, w, a, c)
    )
    return field_resid(bi, pts)
