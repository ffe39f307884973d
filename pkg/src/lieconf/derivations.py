"""Conformal derivations of a finite Lie conformal algebra.

A conformal linear map d is stored as a rank x rank matrix of
polynomials in {D, x1}: entry (j, i) is the coefficient of g_j in
d(g_i).  The derivation identity

    d([g_p y g_q]) = [(d g_p)_{x+y} g_q] + [g_p y (d g_q)]

is linear in the entries, so the space of derivations with entries of
total degree <= N is the kernel of one exact linear system over the
monomial coefficients.  Completeness at the bound holds by construction:
the unknowns are all monomial coefficients up to N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LAM, MU, ConformalAlgebra
from .linalg import SpanBasis
from .poly import PARTIAL, Mono, Polynomial, mono_key, pvar

_D = pvar(PARTIAL)
_X = pvar(LAM)
_Y = pvar(MU)


@dataclass(frozen=True)
class ConformalLinearMap:
    """Matrix of a conformal linear map on generators, entries in {D, x1}."""

    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.entries)

    def entry(self, j: int, i: int) -> Polynomial:
        return self.entries[j][i]

    def is_zero(self) -> bool:
        return not any(p for row in self.entries for p in row)

    def max_degree(self) -> int:
        return max((p.degree() for row in self.entries for p in row), default=-1)

    def vector(self) -> dict:
        """Sparse coordinates keyed by ((j, i), monomial sort key)."""
        out = {}
        for j, row in enumerate(self.entries):
            for i, p in enumerate(row):
                for mono, c in p.terms.items():
                    out[((j, i), mono_key(mono))] = c
        return out


def _monomials_upto(n: int) -> list[Mono]:
    monos: list[Mono] = []
    for d in range(n + 1):
        for e in range(d + 1):
            parts = []
            if d - e:
                parts.append((PARTIAL, d - e))
            if e:
                parts.append((LAM, e))
            monos.append(tuple(parts))
    return sorted(monos, key=mono_key)


def derivation_residual(algebra: ConformalAlgebra, cand: ConformalLinearMap,
                        p: int, q: int) -> tuple[Polynomial, ...]:
    """d([g_p y g_q]) - [(d g_p)_{x+y} g_q] - [g_p y (d g_q)] per output generator.

    A residual of zero for every pair certifies the derivation identity
    as a polynomial identity in {D, x1, x2}.
    """
    r = algebra.rank
    acc = [Polynomial.zero() for _ in range(r)]

    # d(P(D, y) g_k) = P(D + x, y) d(g_k)
    for k, pk in enumerate(algebra.bracket_at(p, q, _Y, _D)):
        if not pk:
            continue
        shifted = pk.subs({PARTIAL: _D + _X})
        for j in range(r):
            e = cand.entry(j, k)
            if e:
                acc[j] = acc[j] + shifted * e

    # [(F(x, D) g_j)_{x+y} g_q] = F(x, -(x+y)) [g_j_{x+y} g_q]
    for j in range(r):
        e = cand.entry(j, p)
        if not e:
            continue
        head = e.subs({PARTIAL: -(_X + _Y)})
        for t, pt in enumerate(algebra.bracket_at(j, q, _X + _Y, _D)):
            if pt:
                acc[t] = acc[t] - head * pt

    # [g_p y (F(x, D) g_j)] = F(x, D + y) [g_p y g_j]
    for j in range(r):
        e = cand.entry(j, q)
        if not e:
            continue
        head = e.subs({PARTIAL: _D + _Y})
        for t, pt in enumerate(algebra.bracket_at(p, j, _Y, _D)):
            if pt:
                acc[t] = acc[t] - head * pt

    return tuple(acc)


def is_derivation(algebra: ConformalAlgebra, cand: ConformalLinearMap) -> bool:
    r = algebra.rank
    return all(not res
               for p in range(r) for q in range(r)
               for res in derivation_residual(algebra, cand, p, q))


def _unit_map(rank: int, j: int, i: int, mono: Mono) -> ConformalLinearMap:
    rows = [[Polynomial.zero()] * rank for _ in range(rank)]
    rows[j][i] = Polynomial({mono: Fraction(1)})
    return ConformalLinearMap(tuple(tuple(row) for row in rows))


def solve_derivations(algebra: ConformalAlgebra, degree_bound: int = 5) -> list[ConformalLinearMap]:
    """Basis of all conformal derivations with entries of degree <= bound."""
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    r = algebra.rank
    monos = _monomials_upto(degree_bound)
    unknowns = [(j, i, m) for j in range(r) for i in range(r) for m in monos]

    # residual is linear in the candidate: one column per unit candidate
    from .linalg import ExactMatrix

    columns = []
    row_keys: set = set()
    for (j, i, m) in unknowns:
        unit = _unit_map(r, j, i, m)
        col: dict = {}
        for p in range(r):
            for q in range(r):
                res = derivation_residual(algebra, unit, p, q)
                for t, poly in enumerate(res):
                    for mono, c in poly.terms.items():
                        key = ((p, q, t), mono_key(mono))
                        col[key] = col.get(key, Fraction(0)) + c
        columns.append(col)
        row_keys.update(col)
    keys = sorted(row_keys)
    pos = {k: n for n, k in enumerate(keys)}
    mat = ExactMatrix.zeros(len(keys), len(unknowns))
    for cidx, col in enumerate(columns):
        for k, c in col.items():
            mat.data[pos[k]][cidx] = c

    basis = []
    for vec in mat.kernel_basis():
        rows = [[Polynomial.zero()] * r for _ in range(r)]
        for (j, i, m), c in zip(unknowns, vec):
            if c:
                rows[j][i] = rows[j][i] + Polynomial({m: c})
        basis.append(ConformalLinearMap(tuple(tuple(row) for row in rows)))
    return basis


def adjoint_map(algebra: ConformalAlgebra, gen: int, partial_power: int = 0) -> ConformalLinearMap:
    """ad(D^m g_gen): column i is [(D^m g_gen) x g_i] = (-x)^m [g_gen x g_i]."""
    r = algebra.rank
    head = (-_X) ** partial_power
    rows = [[Polynomial.zero()] * r for _ in range(r)]
    for i in range(r):
        for t, p in enumerate(algebra.bracket(gen, i)):
            if p:
                rows[t][i] = rows[t][i] + head * p
    return ConformalLinearMap(tuple(tuple(row) for row in rows))


def inner_subspace(algebra: ConformalAlgebra, degree_bound: int = 5) -> list[ConformalLinearMap]:
    """Basis of the span of ad(D^m g_k) with all entries of degree <= bound."""
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    span = SpanBasis()
    basis: list[ConformalLinearMap] = []
    for gen in range(algebra.rank):
        for m in range(degree_bound + 1):
            cand = adjoint_map(algebra, gen, m)
            if cand.is_zero() or cand.max_degree() > degree_bound:
                continue
            if span.add(cand.vector()) is not None:
                basis.append(cand)
    return basis


def outer_dim(algebra: ConformalAlgebra, degree_bound: int = 5) -> int:
    """dim(derivations) - dim(inner derivations) at the given entry bound.

    Joint row reduction also certifies that every inner map lies in the
    solved derivation span.
    """
    ders = solve_derivations(algebra, degree_bound)
    inner = inner_subspace(algebra, degree_bound)
    der_span = SpanBasis()
    for d in ders:
        der_span.add(d.vector())
    joint = SpanBasis()
    for d in ders:
        joint.add(d.vector())
    inner_span = SpanBasis()
    for m in inner:
        inner_span.add(m.vector())
        joint.add(m.vector())
    if joint.rank != der_span.rank:
        raise AssertionError("inner derivations escaped the derivation space")
    return der_span.rank - inner_span.rank
