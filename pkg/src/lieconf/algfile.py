"""Text format for algebra definitions.

    # anything after a hash is a comment
    generators: L M
    bracket L L = (D + 2*x) L
    bracket L M = (D + 2*x) M

One ``generators:`` line, then ``bracket G H = <sum of (expr) GEN>``
lines with index(G) <= index(H) in declared order; undeclared pairs are
zero.  Expressions use ``D`` for the derivative symbol, ``x`` for the
bracket variable, ``+ - * ^``, parentheses, and integer or rational
literals (``3``, ``1/2``).  Multi-term coefficients must be
parenthesized so that top-level ``+``/``-`` separate summands.

Parsing validates the skew-symmetry and Jacobi axioms; printing emits
the canonical form, and parse(format(A)) == A for every valid algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .algebra import LAM, AxiomReport, ConformalAlgebra, check_algebra_axioms
from .poly import KIND_INDEXED, PARTIAL, Polynomial, Variable, pvar


class AlgebraParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class AlgebraAxiomError(ValueError):
    def __init__(self, report: AxiomReport):
        parts = []
        for kind, gens, residual in report.witnesses[:4]:
            parts.append(f"{kind} fails on ({', '.join(gens)}) with residual {residual}")
        super().__init__("; ".join(parts) or "axiom failure")
        self.report = report


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
                       r"|(?P<op>[-+*^()=])|(?P<bad>\S))")


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str, line_no: int) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        pos = m.end()
        col = m.start(m.lastgroup) + 1
        if m.lastgroup == "bad":
            raise AlgebraParseError(f"unexpected character {m.group('bad')!r}", line_no, col)
        out.append(_Token(m.lastgroup, m.group(m.lastgroup), line_no, col))
    return out


class _ExprParser:
    """Recursive-descent parser for bracket coefficient expressions."""

    def __init__(self, tokens: list[_Token], generators: tuple[str, ...], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.generators = generators
        self.line = line_no

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise AlgebraParseError("unexpected end of line", self.line,
                                    self.tokens[-1].column + 1 if self.tokens else 1)
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        col = tok.column if tok else (self.tokens[-1].column + 1 if self.tokens else 1)
        raise AlgebraParseError(message, self.line, col)

    def at_generator(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "ident" and tok.text in self.generators

    def parse_sum(self) -> Polynomial:
        left = self.parse_product()
        while True:
            tok = self.peek()
            if tok and tok.kind == "op" and tok.text in "+-":
                self.next()
                right = self.parse_product()
                left = left + right if tok.text == "+" else left - right
            else:
                return left

    def parse_product(self) -> Polynomial:
        left = self.parse_power()
        while True:
            tok = self.peek()
            if tok and tok.kind == "op" and tok.text == "*":
                self.next()
                left = left * self.parse_power()
            else:
                return left

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        tok = self.peek()
        if tok and tok.kind == "op" and tok.text == "^":
            self.next()
            exp = self.next()
            if exp.kind != "num" or "/" in exp.text:
                self.error("exponent must be a nonnegative integer", exp)
            return base ** int(exp.text)
        return base

    def parse_atom(self) -> Polynomial:
        tok = self.next()
        if tok.kind == "num":
            return Polynomial.const(Fraction(tok.text))
        if tok.kind == "ident":
            if tok.text == "D":
                return pvar(PARTIAL)
            if tok.text == "x":
                return pvar(LAM)
            self.error(f"unknown symbol {tok.text!r} in expression", tok)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_sum()
            close = self.next()
            if close.kind != "op" or close.text != ")":
                self.error("expected ')'", close)
            return inner
        if tok.kind == "op" and tok.text == "-":
            return -self.parse_atom()
        if tok.kind == "op" and tok.text == "+":
            return self.parse_atom()
        self.error(f"unexpected token {tok.text!r}", tok)

    def parse_bracket_rhs(self, rank: int, names: tuple[str, ...]) -> list[Polynomial]:
        vec = [Polynomial.zero() for _ in range(rank)]
        sign = 1
        tok = self.peek()
        if tok and tok.kind == "op" and tok.text == "-":
            self.next()
            sign = -1
        while True:
            coeff = Polynomial.const(1) if self.at_generator() else self.parse_product()
            gen_tok = self.next() if self.peek() else self.error("missing generator name")
            if gen_tok.kind != "ident" or gen_tok.text not in names:
                self.error(f"expected a generator name, got {gen_tok.text!r}", gen_tok)
            vec[names.index(gen_tok.text)] += coeff.scale(sign)
            tok = self.peek()
            if tok is None:
                return vec
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                sign = 1 if tok.text == "+" else -1
                continue
            self.error(f"unexpected token {tok.text!r} after summand", tok)


def parse_algebra(text: str, validate: bool = True) -> ConformalAlgebra:
    """Parse an algebra file; optionally run the axiom checks."""
    names: tuple[str, ...] | None = None
    structure: dict[tuple[int, int], list[Polynomial]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = _tokenize(line, line_no)
        head = tokens[0]
        if head.kind == "ident" and head.text == "generators":
            if names is not None:
                raise AlgebraParseError("duplicate generators line", line_no, head.column)
            if len(tokens) < 2 or tokens[1].text != "=" and tokens[1].text != ":":
                pass
            # accept "generators: A B" (the colon is not a token; re-lex)
            m = re.match(r"generators\s*:\s*(.*)$", line)
            if m is None:
                raise AlgebraParseError("expected 'generators: NAME ...'", line_no, 1)
            gen_names = m.group(1).split()
            if not gen_names:
                raise AlgebraParseError("no generators declared", line_no, len(line))
            for g in gen_names:
                if g in ("D", "x") or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", g):
                    raise AlgebraParseError(f"bad generator name {g!r}", line_no, 1)
            if len(set(gen_names)) != len(gen_names):
                raise AlgebraParseError("repeated generator name", line_no, 1)
            names = tuple(gen_names)
            continue
        if head.kind == "ident" and head.text == "bracket":
            if names is None:
                raise AlgebraParseError("bracket before generators line", line_no, head.column)
            if len(tokens) < 5:
                raise AlgebraParseError("expected 'bracket G H = ...'", line_no, head.column)
            g_tok, h_tok, eq_tok = tokens[1], tokens[2], tokens[3]
            for t in (g_tok, h_tok):
                if t.kind != "ident" or t.text not in names:
                    raise AlgebraParseError(f"unknown generator {t.text!r}", line_no, t.column)
            if eq_tok.kind != "op" or eq_tok.text != "=":
                raise AlgebraParseError("expected '='", line_no, eq_tok.column)
            i, j = names.index(g_tok.text), names.index(h_tok.text)
            if i > j:
                raise AlgebraParseError(
                    f"bracket pair must be declared in generator order "
                    f"({h_tok.text} before {g_tok.text})", line_no, g_tok.column)
            if (i, j) in structure:
                raise AlgebraParseError(f"duplicate bracket for ({g_tok.text}, {h_tok.text})",
                                        line_no, g_tok.column)
            parser = _ExprParser(tokens[4:], names, line_no)
            structure[(i, j)] = parser.parse_bracket_rhs(len(names), names)
            continue
        raise AlgebraParseError(f"unrecognized directive {head.text!r}", line_no, head.column)
    if names is None:
        raise AlgebraParseError("missing generators line", 1, 1)
    algebra = ConformalAlgebra(names, {k: tuple(v) for k, v in structure.items()})
    if validate:
        report = check_algebra_axioms(algebra)
        if not report.ok:
            raise AlgebraAxiomError(report)
    return algebra


def _bracket_namer(v: Variable) -> str:
    if v.kind == KIND_INDEXED and v.index == 1:
        return "x"
    return v.label()


def format_algebra(algebra: ConformalAlgebra) -> str:
    """Canonical text form; parse(format(A)) == A."""
    lines = ["generators: " + " ".join(algebra.names)]
    for (i, j) in sorted(algebra.structure):
        vec = algebra.structure[(i, j)]
        summands = []
        for k, p in enumerate(vec):
            if p:
                summands.append(f"({p.format(_bracket_namer)}) {algebra.names[k]}")
        if summands:
            lines.append(f"bracket {algebra.names[i]} {algebra.names[j]} = "
                         + " + ".join(summands))
    return "\n".join(lines) + "\n"


def load_algebra(path: str, validate: bool = True) -> ConformalAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), validate=validate)


def builtin_algebra_text(name: str) -> str:
    """Text of a bundled algebra file: w22, vir or abelian1."""
    return resources.files("lieconf.data").joinpath(f"{name}.alg").read_text("utf-8")
