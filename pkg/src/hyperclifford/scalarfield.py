"""Smooth scalar fields on an open box of R^n as expression trees.

Fields are closed under +, -, *, /, integer powers, sin, cos and exp,
and differentiate symbolically, so the differential layer never touches
finite differences: the only error source downstream is floating-point
rounding.  Trees are immutable and lightly simplified at construction
(constant folding and neutral elements), and evaluate vectorized over an
array of chart points.
"""

from __future__ import annotations

import numpy as np


class ScalarField:
    """Immutable expression tree over chart coordinates x1..xn."""

    __slots__ = ("_dcache",)

    def __call__(self, points):
        """Evaluate at points of shape (..., n) (or a single point tuple).

        Shared subtrees (derivative caches make the trees DAGs) are
        evaluated once per call through a memo keyed by node identity.
        """
        pts = np.asarray(points, dtype=np.float64)
        return self._eval_memo(pts, {})

    def _eval_memo(self, pts, memo):
        key = id(self)
        hit = memo.get(key)
        if hit is None:
            hit = self._eval(pts, memo)
            memo[key] = hit
        return hit

    def _eval(self, pts, memo):  # pragma: no cover - abstract
        raise NotImplementedError

    def partial(self, i: int):  # pragma: no cover - abstract
        """Exact partial derivative with respect to x_{i+1} (0-based i)."""
        raise NotImplementedError

    def diff(self, i: int) -> "ScalarField":
        cache = getattr(self, "_dcache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_dcache", cache)
        if i not in cache:
            cache[i] = self.partial(i)
        return cache[i]

    def is_zero(self) -> bool:
        return isinstance(self, Const) and self.value == 0.0

    # arithmetic builds simplified trees
    def __add__(self, other):
        return fadd(self, _coerce(other))

    def __radd__(self, other):
        return fadd(_coerce(other), self)

    def __sub__(self, other):
        return fsub(self, _coerce(other))

    def __rsub__(self, other):
        return fsub(_coerce(other), self)

    def __mul__(self, other):
        return fmul(self, _coerce(other))

    def __rmul__(self, other):
        return fmul(_coerce(other), self)

    def __truediv__(self, other):
        return fdiv(self, _coerce(other))

    def __rtruediv__(self, other):
        return fdiv(_coerce(other), self)

    def __pow__(self, k: int):
        return fpow(self, k)

    def __neg__(self):
        return fmul(Const(-1.0), self)

    def __setattr__(self, *_):
        raise AttributeError("scalar fields are immutable")


def _coerce(v) -> ScalarField:
    if isinstance(v, ScalarField):
        return v
    return Const(float(v))


class Const(ScalarField):
    __slots__ = ("value",)

    def __init__(self, value: float):
        object.__setattr__(self, "value", float(value))

    def _eval(self, pts, memo):
        return np.full(pts.shape[:-1], self.value)

    def partial(self, i):
        return ZERO

    def __repr__(self):
        return repr(self.value)


class Coord(ScalarField):
    __slots__ = ("index",)

    def __init__(self, index: int):
        object.__setattr__(self, "index", int(index))

    def _eval(self, pts, memo):
        return pts[..., self.index]

    def partial(self, i):
        return ONE if i == self.index else ZERO

    def __repr__(self):
        return f"x{self.index + 1}"


class _Binary(ScalarField):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


class Add(_Binary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return self.a._eval_memo(pts, memo) + self.b._eval_memo(pts, memo)

    def partial(self, i):
        return fadd(self.a.diff(i), self.b.diff(i))

    def __repr__(self):
        return f"({self.a!r} + {self.b!r})"


class Sub(_Binary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return self.a._eval_memo(pts, memo) - self.b._eval_memo(pts, memo)

    def partial(self, i):
        return fsub(self.a.diff(i), self.b.diff(i))

    def __repr__(self):
        return f"({self.a!r} - {self.b!r})"


class Mul(_Binary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return self.a._eval_memo(pts, memo) * self.b._eval_memo(pts, memo)

    def partial(self, i):
        return fadd(fmul(self.a.diff(i), self.b), fmul(self.a, self.b.diff(i)))

    def __repr__(self):
        return f"({self.a!r} * {self.b!r})"


class Div(_Binary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return self.a._eval_memo(pts, memo) / self.b._eval_memo(pts, memo)

    def partial(self, i):
        num = fsub(fmul(self.a.diff(i), self.b), fmul(self.a, self.b.diff(i)))
        return fdiv(num, fmul(self.b, self.b))

    def __repr__(self):
        return f"({self.a!r} / {self.b!r})"


class Pow(ScalarField):
    """Integer power; the exponent is part of the node, not a subtree."""

    __slots__ = ("a", "k")

    def __init__(self, a, k: int):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", int(k))

    def _eval(self, pts, memo):
        return self.a._eval_memo(pts, memo) ** self.k

    def partial(self, i):
        return fmul(fmul(Const(self.k), fpow(self.a, self.k - 1)), self.a.diff(i))

    def __repr__(self):
        return f"({self.a!r} ^ {self.k})"


class _Unary(ScalarField):
    __slots__ = ("a",)

    def __init__(self, a):
        object.__setattr__(self, "a", a)


class Sin(_Unary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return np.sin(self.a._eval_memo(pts, memo))

    def partial(self, i):
        return fmul(Cos(self.a), self.a.diff(i))

    def __repr__(self):
        return f"sin({self.a!r})"


class Cos(_Unary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return np.cos(self.a._eval_memo(pts, memo))

    def partial(self, i):
        return fmul(Const(-1.0), fmul(Sin(self.a), self.a.diff(i)))

    def __repr__(self):
        return f"cos({self.a!r})"


class Exp(_Unary):
    __slots__ = ()

    def _eval(self, pts, memo):
        return np.exp(self.a._eval_memo(pts, memo))

    def partial(self, i):
        return fmul(Exp(self.a), self.a.diff(i))

    def __repr__(self):
        return f"exp({self.a!r})"


ZERO = Const(0.0)
ONE = Const(1.0)


def fadd(a: ScalarField, b: ScalarField) -> ScalarField:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return Add(a, b)


def fsub(a: ScalarField, b: ScalarField) -> ScalarField:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if b.is_zero():
        return a
    if a.is_zero():
        return fmul(Const(-1.0), b)
    return Sub(a, b)


def fmul(a: ScalarField, b: ScalarField) -> ScalarField:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if a.is_zero() or b.is_zero():
        return ZERO
    if isinstance(a, Const) and a.value == 1.0:
        return b
    if isinstance(b, Const) and b.value == 1.0:
        return a
    return Mul(a, b)


def fdiv(a: ScalarField, b: ScalarField) -> ScalarField:
    if isinstance(b, Const):
        if b.value == 0.0:
            raise ZeroDivisionError("division of scalar fields by the constant 0")
        if isinstance(a, Const):
            return Const(a.value / b.value)
        if b.value == 1.0:
            return a
    if a.is_zero():
        return ZERO
    return Div(a, b)


def fpow(a: ScalarField, k: int) -> ScalarField:
    k = int(k)
    if k == 0:
        return ONE
    if k == 1:
        return a
    if isinstance(a, Const):
        return Const(a.value ** k)
    return Pow(a, k)


def const(v: float) -> ScalarField:
    return Const(v)


def coord(i: int) -> ScalarField:
    return Coord(i)
