"""Sparse exact-rational multivariate polynomials.

The variable alphabet is fixed by the application: one formal derivative
symbol (printed ``D``), named rational parameters (``a``, ``alpha``,
``Delta``, ...) and an indexed family ``x1, x2, ...`` used for bracket
variables and cochain slots.  Variables carry a total order

    derivative < named (by symbol) < x1 < x2 < ...

which fixes the graded-lex canonical form used for printing and for
row-reduction pivots.  Coefficients are ``fractions.Fraction``; there is
no floating point anywhere in this package.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

KIND_PARTIAL = 0
KIND_NAMED = 1
KIND_INDEXED = 2

Scalar = int | Fraction


@dataclass(frozen=True, order=True)
class Variable:
    """A symbol of the fixed alphabet.  Field order doubles as sort key."""

    kind: int
    name: str = ""
    index: int = 0

    def label(self) -> str:
        if self.kind == KIND_PARTIAL:
            return "D"
        if self.kind == KIND_NAMED:
            return self.name
        return f"x{self.index}"


PARTIAL = Variable(KIND_PARTIAL)


def named(name: str) -> Variable:
    if not name or not name[0].isalpha():
        raise ValueError(f"bad parameter name {name!r}")
    return Variable(KIND_NAMED, name)


def lam(index: int) -> Variable:
    if index < 1:
        raise ValueError("indexed variables start at 1")
    return Variable(KIND_INDEXED, "", index)


# A monomial is a tuple of (variable, exponent) pairs, sorted by variable,
# with all exponents >= 1.  The empty tuple is the constant monomial.
Mono = tuple[tuple[Variable, int], ...]

_ONE_MONO: Mono = ()


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_key(m: Mono):
    """Sort key: ascending degree, then descending lex in variable order."""
    return (mono_degree(m), tuple((v, -e) for v, e in m))


def _print_key(m: Mono):
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


class Polynomial:
    """Immutable sparse polynomial: map nonzero Fraction by monomial."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, Fraction] | None = None):
        cleaned: dict[Mono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                mono = tuple(sorted((v, e) for v, e in mono if e != 0))
                cleaned[mono] = cleaned.get(mono, Fraction(0)) + c
                if cleaned[mono] == 0:
                    del cleaned[mono]
        self.terms = cleaned

    @classmethod
    def _raw(cls, terms: dict[Mono, Fraction]) -> "Polynomial":
        # internal: trusts terms to be normalized already
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({} if c == 0 else {_ONE_MONO: c})

    @classmethod
    def var(cls, v: Variable) -> "Polynomial":
        return cls._raw({((v, 1),): Fraction(1)})

    # -- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, v: Variable) -> int:
        best = -1
        for m in self.terms:
            e = dict(m).get(v, 0)
            best = max(best, e)
        return max(best, 0) if self.terms else -1

    def variables(self) -> set[Variable]:
        out: set[Variable] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def constant_term(self) -> Fraction:
        return self.terms.get(_ONE_MONO, Fraction(0))

    def coefficients_in(self, v: Variable) -> dict[int, "Polynomial"]:
        """Collect terms by exponent of v; values no longer involve v."""
        out: dict[int, dict[Mono, Fraction]] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for vv, ee in m:
                if vv == v:
                    e = ee
                else:
                    rest.append((vv, ee))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial._raw(d) for e, d in out.items()}

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        if not degs:
            return True
        if n is None:
            return len(degs) == 1
        return degs == {n}

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, Fraction(0)) + c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s
        return Polynomial._raw(res)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero()
        res: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    res.pop(m, None)
                else:
                    res[m] = s
        return Polynomial._raw(res)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero()
        return Polynomial._raw({m: cc * c for m, cc in self.terms.items()})

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable-dict backed; not intended as a dict key

    # -- substitution and calculus -------------------------------------

    def subs(self, mapping: dict[Variable, "Polynomial | Scalar"]) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials."""
        repl = {v: Polynomial._coerce(p) for v, p in mapping.items()}
        if any(p is None for p in repl.values()):
            raise TypeError("substitution values must be polynomials or scalars")
        powers: dict[Variable, list[Polynomial]] = {v: [Polynomial.const(1)] for v in repl}
        res = Polynomial.zero()
        for m, c in self.terms.items():
            acc = Polynomial.const(c)
            for v, e in m:
                r = repl.get(v)
                if r is None:
                    acc = acc * Polynomial._raw({((v, e),): Fraction(1)})
                else:
                    cache = powers[v]
                    while len(cache) <= e:
                        cache.append(cache[-1] * r)
                    acc = acc * cache[e]
            res = res + acc
        return res

    def derivative(self, v: Variable) -> "Polynomial":
        res: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            for pos, (vv, e) in enumerate(m):
                if vv != v:
                    continue
                rest = m[:pos] + ((v, e - 1),) + m[pos + 1:] if e > 1 else m[:pos] + m[pos + 1:]
                s = res.get(rest, Fraction(0)) + c * e
                if s == 0:
                    res.pop(rest, None)
                else:
                    res[rest] = s
                break
        return Polynomial._raw(res)

    def shift(self, v: Variable, by: "Polynomial | Scalar") -> "Polynomial":
        """Substitute v -> v + by."""
        offset = Polynomial._coerce(by)
        return self.subs({v: Polynomial.var(v) + offset})

    # -- printing -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: _print_key(mc[0]))

    def format(self, namer=None) -> str:
        """Canonical string: graded-lex descending, ^ powers, * products."""
        if not self.terms:
            return "0"
        namer = namer or (lambda v: v.label())
        pieces: list[str] = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            factors = [namer(v) if e == 1 else f"{namer(v)}^{e}" for v, e in m]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


ZERO = Polynomial.zero()
ONE = Polynomial.const(1)


def pvar(v: Variable) -> Polynomial:
    return Polynomial.var(v)


def const(c: Scalar) -> Polynomial:
    return Polynomial.const(c)


def lam_poly(index: int) -> Polynomial:
    return Polynomial.var(lam(index))


def lambda_sum(q: int) -> Polynomial:
    """x1 + ... + xq (zero for q = 0)."""
    total = Polynomial.zero()
    for i in range(1, q + 1):
        total = total + lam_poly(i)
    return total
