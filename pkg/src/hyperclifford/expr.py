"""ASCII expression grammar for the hyperbolic algebra, plus a small
scalar-field grammar for connection coefficients.

Algebra grammar, precedence high to low, all binary operators
left-associative::

    atom   :=  NUMBER | e<k> | t<k> | FUNC '(' args ')' | sigma | '(' expr ')' | '-' atom
    wedge  :=  atom  (('^') atom)*
    contr  :=  wedge (('_|' | '|_') wedge)*
    cliff  :=  contr (('*') contr)*
    expr   :=  cliff (('+' | '-') cliff)*

Functions: rev, gi, conj, hconj, hodge, unhodge, part(x, k), sp(a, b),
sigma.  Failures report a 1-based byte offset and the expected tokens;
printing an AST re-parses to an identical AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import hyperbolic as hb
from .exterior import GradeError, Multivector, hyperbolic
from .scalarfield import Coord, Cos, Exp, ScalarField, Sin, const, fpow


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {', '.join(sorted(self.expected))})"
        super().__init__(detail)


# -- AST ---------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    value: float


@dataclass(frozen=True)
class BasisE:
    index: int


@dataclass(frozen=True)
class BasisT:
    index: int


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - ^ _| |_ *
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


FUNCTIONS = {
    "rev": 1,
    "gi": 1,
    "conj": 1,
    "hconj": 1,
    "hodge": 1,
    "unhodge": 1,
    "part": 2,
    "sp": 2,
    "sigma": 0,
}


# -- tokenizer ---------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op>_\||\|_|[\^*/+\-(),])|(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<word>[A-Za-z_][A-Za-z_0-9]*))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num word op end
    text: str
    offset: int  # 1-based byte offset


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad]!r}", bad + 1)
        if m.group("num"):
            out.append(Token("num", m.group("num"), m.start("num") + 1))
        elif m.group("word"):
            out.append(Token("word", m.group("word"), m.start("word") + 1))
        else:
            out.append(Token("op", m.group("op"), m.start("op") + 1))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


_BASIS_RE = re.compile(r"^([et])(\d+)$")


class _Parser:
    def __init__(self, text: str, n: int):
        self.tokens = tokenize(text)
        self.pos = 0
        self.n = n

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str):
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.take()
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset, {text})

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(
                f"trailing input {tok.text!r}", tok.offset, {"+", "-", "*", "^", "_|", "|_"}
            )
        return node

    def expr(self):
        node = self.cliff()
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            node = Bin(op, node, self.cliff())
        return node

    def cliff(self):
        node = self.contr()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            node = Bin("*", node, self.contr())
        return node

    def contr(self):
        node = self.wedge()
        while self.peek().kind == "op" and self.peek().text in ("_|", "|_"):
            op = self.take().text
            node = Bin(op, node, self.wedge())
        return node

    def wedge(self):
        node = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            node = Bin("^", node, self.atom())
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Scalar(float(tok.text))
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Bin("-", Scalar(0.0), self.atom())
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "word":
            self.take()
            basis = _BASIS_RE.match(tok.text)
            if basis:
                idx = int(basis.group(2))
                if not 1 <= idx <= self.n:
                    raise ParseError(
                        f"basis index {idx} out of range for dimension {self.n}", tok.offset
                    )
                return BasisE(idx) if basis.group(1) == "e" else BasisT(idx)
            if tok.text not in FUNCTIONS:
                raise ParseError(f"unknown function {tok.text!r}", tok.offset, FUNCTIONS)
            arity = FUNCTIONS[tok.text]
            if tok.text == "sigma" and not (
                self.peek().kind == "op" and self.peek().text == "("
            ):
                return Call("sigma", ())
            self.expect("(")
            args = []
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                args.append(self.expr())
                while self.peek().kind == "op" and self.peek().text == ",":
                    self.take()
                    args.append(self.expr())
            self.expect(")")
            if len(args) != arity:
                raise ParseError(
                    f"{tok.text} takes {arity} argument(s), got {len(args)}", tok.offset
                )
            return Call(tok.text, tuple(args))
        raise ParseError(
            f"unexpected {tok.text or 'end of input'!r}",
            tok.offset,
            {"number", "e<k>", "t<k>", "function", "("},
        )


def parse(text: str, n: int):
    """Parse an algebra expression over dimension n."""
    return _Parser(text, n).parse()


def print_ast(node) -> str:
    """Canonical rendering; reparsing yields an identical AST."""
    if isinstance(node, Scalar):
        return _fmt_number(node.value)
    if isinstance(node, BasisE):
        return f"e{node.index}"
    if isinstance(node, BasisT):
        return f"t{node.index}"
    if isinstance(node, Bin):
        return f"({print_ast(node.left)} {node.op} {print_ast(node.right)})"
    if isinstance(node, Call):
        if node.name == "sigma":
            return "sigma"
        return f"{node.name}({', '.join(print_ast(a) for a in node.args)})"
    raise TypeError(f"not an AST node: {node!r}")


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def eval_ast(node, n: int) -> Multivector:
    """Evaluate an AST in the 2n-dimensional hyperbolic algebra."""
    space = hyperbolic(n)
    if isinstance(node, Scalar):
        return Multivector.scalar(space, node.value)
    if isinstance(node, BasisE):
        return hb.basis_e(n, node.index).embed()
    if isinstance(node, BasisT):
        return hb.basis_t(n, node.index).embed()
    if isinstance(node, Bin):
        if node.op in ("+", "-"):
            a, b = eval_ast(node.left, n), eval_ast(node.right, n)
            return a + b if node.op == "+" else a - b
        a, b = eval_ast(node.left, n), eval_ast(node.right, n)
        if node.op == "^":
            return a.wedge(b)
        if node.op == "_|":
            return hb.hv_lcontr(a, b)
        if node.op == "|_":
            return hb.hv_rcontr(a, b)
        if node.op == "*":
            return hb.clifford(a, b)
        raise ValueError(f"unknown operator {node.op!r}")
    if isinstance(node, Call):
        if node.name == "sigma":
            return hb.sigma(n)
        if node.name == "part":
            x = eval_ast(node.args[0], n)
            k = node.args[1]
            if not isinstance(k, Scalar) or k.value != int(k.value):
                raise GradeError("part() needs an integer grade")
            return x.part(int(k.value))
        if node.name == "sp":
            a, b = (eval_ast(arg, n) for arg in node.args)
            return Multivector.scalar(space, hb.gram_inner(a, b))
        x = eval_ast(node.args[0], n)
        if node.name == "rev":
            return x.reversion()
        if node.name == "gi":
            return x.grade_involution()
        if node.name == "conj":
            return x.conjugation()
        if node.name == "hconj":
            return hb.hyperbolic_conjugate(x)
        if node.name == "hodge":
            return hb.hodge(x)
        if node.name == "unhodge":
            return hb.hodge_inv(x)
    raise ValueError(f"cannot evaluate node {node!r}")


# -- scalar-field expressions (connection coefficients) -----------------

_SCALAR_FUNCS = {"sin": Sin, "cos": Cos, "exp": Exp}


class _ScalarParser:
    """Grammar: sums of products of powered factors over x1..xn with
    sin/cos/exp; '^' is an integer power here."""

    def __init__(self, text: str, n: int):
        self.tokens = tokenize(text)
        self.pos = 0
        self.n = n

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> ScalarField:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", tok.offset)
        return node

    def expr(self) -> ScalarField:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self) -> ScalarField:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take().text
            rhs = self.factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor(self) -> ScalarField:
        node = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            neg = False
            if tok.kind == "op" and tok.text == "-":
                self.take()
                neg = True
                tok = self.peek()
            if tok.kind != "num" or "." in tok.text:
                raise ParseError("power needs an integer exponent", tok.offset, {"integer"})
            self.take()
            k = int(tok.text)
            node = fpow(node, -k if neg else k)
        return node

    def base(self) -> ScalarField:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return const(float(tok.text))
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return const(-1.0) * self.factor()
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                raise ParseError("unbalanced parenthesis", self.peek().offset, {")"})
            self.take()
            return node
        if tok.kind == "word":
            self.take()
            m = re.match(r"^x(\d+)$", tok.text)
            if m:
                idx = int(m.group(1))
                if not 1 <= idx <= self.n:
                    raise ParseError(
                        f"coordinate x{idx} out of range for dimension {self.n}", tok.offset
                    )
                return Coord(idx - 1)
            if tok.text in _SCALAR_FUNCS:
                if not (self.peek().kind == "op" and self.peek().text == "("):
                    raise ParseError(f"{tok.text} needs parentheses", tok.offset, {"("})
                self.take()
                arg = self.expr()
                if not (self.peek().kind == "op" and self.peek().text == ")"):
                    raise ParseError("unbalanced parenthesis", self.peek().offset, {")"})
                self.take()
                return _SCALAR_FUNCS[tok.text](arg)
            raise ParseError(
                f"unknown name {tok.text!r}", tok.offset, {"x<k>", *_SCALAR_FUNCS}
            )
        raise ParseError(
            f"unexpected {tok.text or 'end of input'!r}", tok.offset, {"number", "x<k>", "("}
        )


def parse_scalar_field(text: str, n: int) -> ScalarField:
    """Parse a coefficient expression in chart coordinates x1..xn."""
    return _ScalarParser(text, n).parse()
