"""Central extensions by a one-dimensional center killed by D.

A 2-cocycle is stored as polynomials in x1, one per ordered generator
pair (i, j) with i <= j.  Because D annihilates the center, the skew
rule collapses to f(g_j, g_i)(x) = -f(g_i, g_j)(-x); diagonal values are
therefore odd polynomials, which is enforced structurally by only
allowing odd monomials as diagonal unknowns.  Values on D-multiples
follow the rules

    f(D a, b) -> -x * f(a, b),      f(a, D b) -> +x * f(a, b),

the second being forced by D acting as zero on the center.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LAM, MU, ConformalAlgebra
from .linalg import ExactMatrix, SpanBasis
from .poly import PARTIAL, Polynomial, mono_key, pvar

_X = pvar(LAM)
_Y = pvar(MU)


@dataclass(frozen=True)
class TwoCocycle:
    """Candidate central-extension cocycle on an algebra's generators."""

    values: dict[tuple[int, int], Polynomial] = field(default_factory=dict)

    def value(self, i: int, j: int, at: Polynomial) -> Polynomial:
        """f(g_i, g_j) evaluated at the given polynomial argument."""
        if i <= j:
            p = self.values.get((i, j))
            return p.subs({LAM: at}) if p is not None else Polynomial.zero()
        p = self.values.get((j, i))
        return -p.subs({LAM: -at}) if p is not None else Polynomial.zero()

    def is_zero(self) -> bool:
        return not any(p for p in self.values.values())

    def max_degree(self) -> int:
        return max((p.degree() for p in self.values.values()), default=-1)

    def vector(self) -> dict:
        out = {}
        for pair, p in self.values.items():
            for mono, c in p.terms.items():
                out[(pair, mono_key(mono))] = c
        return out

    def format(self, algebra: ConformalAlgebra, namer=None) -> str:
        parts = []
        for (i, j), p in sorted(self.values.items()):
            if p:
                parts.append(f"({algebra.names[i]},{algebra.names[j]}): {p.format(namer)}")
        return "; ".join(parts) if parts else "0"


def cocycle_residuals(algebra: ConformalAlgebra, cand: TwoCocycle):
    """Jacobi-compatibility residuals, one polynomial in {x1, x2} per triple.

    f_{x+y}([a x b], c) - f_x(a, [b y c]) + f_y(b, [a x c]) for all
    generator triples; D inside brackets resolves by the rules above.
    """
    r = algebra.rank
    out = {}
    for a in range(r):
        for b in range(r):
            for c in range(r):
                res = Polynomial.zero()
                # [g_a x g_b] = sum P(D, x) g_k; f_{x+y}(P(D,x) g_k, g_c) = P(-(x+y), x) f(g_k, g_c)(x+y)
                for k, p in enumerate(algebra.bracket(a, b)):
                    if p:
                        res = res + p.subs({PARTIAL: -(_X + _Y)}) * cand.value(k, c, _X + _Y)
                # f_x(g_a, P(D, y) g_k) = P(+x, y) f(g_a, g_k)(x)
                for k, p in enumerate(algebra.bracket(b, c)):
                    if p:
                        res = res - p.subs({PARTIAL: _X, LAM: _Y}) * cand.value(a, k, _X)
                # f_y(g_b, P(D, x) g_k) = P(+y, x) f(g_b, g_k)(y)
                for k, p in enumerate(algebra.bracket(a, c)):
                    if p:
                        res = res + p.subs({PARTIAL: _Y}) * cand.value(b, k, _Y)
                if res:
                    out[(a, b, c)] = res
    return out


def is_2cocycle(algebra: ConformalAlgebra, cand: TwoCocycle) -> bool:
    return not cocycle_residuals(algebra, cand)


def _unknown_slots(rank: int, degree_bound: int) -> list[tuple[tuple[int, int], int]]:
    slots = []
    for i in range(rank):
        for j in range(i, rank):
            for e in range(degree_bound + 1):
                if i == j and e % 2 == 0:
                    continue  # diagonal entries are odd polynomials
                slots.append(((i, j), e))
    return slots


def solve_2cocycles(algebra: ConformalAlgebra, degree_bound: int = 5) -> list[TwoCocycle]:
    """Basis of all 2-cocycles with values of degree <= bound."""
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    slots = _unknown_slots(algebra.rank, degree_bound)
    columns = []
    keys: set = set()
    for pair, e in slots:
        unit = TwoCocycle({pair: Polynomial({((LAM, e),): Fraction(1)})})
        col: dict = {}
        for triple, res in cocycle_residuals(algebra, unit).items():
            for mono, c in res.terms.items():
                key = (triple, mono_key(mono))
                col[key] = col.get(key, Fraction(0)) + c
        columns.append(col)
        keys.update(col)
    key_list = sorted(keys)
    pos = {k: n for n, k in enumerate(key_list)}
    mat = ExactMatrix.zeros(len(key_list), len(slots))
    for cidx, col in enumerate(columns):
        for k, c in col.items():
            mat.data[pos[k]][cidx] = c

    basis = []
    for vec in mat.kernel_basis():
        values: dict[tuple[int, int], Polynomial] = {}
        for (pair, e), c in zip(slots, vec):
            if c:
                values[pair] = values.get(pair, Polynomial.zero()) + Polynomial({((LAM, e),): c})
        basis.append(TwoCocycle(values))
    return basis


def trivial_2cocycles(algebra: ConformalAlgebra) -> list[TwoCocycle]:
    """Cocycles f([a x b]) from functionals vanishing on D-multiples.

    One candidate per generator functional g_k -> 1; evaluating the
    bracket at D = 0 implements "zero on D-multiples".
    """
    out = []
    span = SpanBasis()
    for k in range(algebra.rank):
        values = {}
        for i in range(algebra.rank):
            for j in range(i, algebra.rank):
                p = algebra.bracket(i, j)[k].subs({PARTIAL: 0})
                if p:
                    values[(i, j)] = p
        cand = TwoCocycle(values)
        if not cand.is_zero() and span.add(cand.vector()) is not None:
            out.append(cand)
    return out


@dataclass
class ExtensionResult:
    cocycle_basis: list[TwoCocycle]
    trivial_basis: list[TwoCocycle]
    h2_dim: int
    representatives: list[TwoCocycle]


def _primitive(values: dict) -> dict:
    """Scale a cocycle's coefficient vector to coprime integers, lead > 0."""
    coeffs = [c for p in values.values() for c in p.terms.values()]
    if not coeffs:
        return values
    from math import gcd

    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    nums = [abs(c.numerator * den // c.denominator) for c in coeffs]
    g = 0
    for n in nums:
        g = gcd(g, n)
    factor = Fraction(den, g)
    scaled = {pair: p.scale(factor) for pair, p in values.items()}
    lead_pair = min(pair for pair, p in scaled.items() if p)
    lead = scaled[lead_pair]
    _, lead_c = min(lead.terms.items(), key=lambda mc: mono_key(mc[0]))
    if lead_c < 0:
        scaled = {pair: -p for pair, p in scaled.items()}
    return scaled


def h2(algebra: ConformalAlgebra, degree_bound: int = 5) -> ExtensionResult:
    """Second cohomology with trivial one-dimensional coefficients.

    Quotient representatives are obtained by eliminating the trivial
    span first, so their leading (lowest graded-lex) terms are fresh.
    """
    if degree_bound < 3:
        raise ValueError("degree bound below 3 cannot see the cubic cocycles")
    cocycles = solve_2cocycles(algebra, degree_bound)
    trivials = trivial_2cocycles(algebra)

    cocycle_span = SpanBasis()
    for c in cocycles:
        cocycle_span.add(c.vector())
    for t in trivials:
        if not cocycle_span.contains(t.vector()):
            raise AssertionError("trivial cocycle outside the cocycle space")

    reducer = SpanBasis()
    trivial_rank = 0
    for t in trivials:
        if reducer.add(t.vector()) is not None:
            trivial_rank += 1

    representatives = []
    for c in cocycles:
        residual = reducer.add(c.vector())
        if residual is None:
            continue
        values: dict[tuple[int, int], Polynomial] = {}
        for (pair, (deg, key_rest)), coeff in residual.items():
            mono = tuple((v, -e) for v, e in key_rest)
            values[pair] = values.get(pair, Polynomial.zero()) + Polynomial({mono: coeff})
        representatives.append(TwoCocycle(_primitive(values)))

    return ExtensionResult(
        cocycle_basis=cocycles,
        trivial_basis=trivials,
        h2_dim=cocycle_span.rank - trivial_rank,
        representatives=representatives,
    )
