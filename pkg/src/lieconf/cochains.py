"""Cochain spaces of a finite Lie conformal algebra.

A q-cochain with coefficients in a module V is stored per sorted
generator word (nondecreasing generator indices, length q) as one
polynomial in the slot variables x1..xq, plus D when V is free rank-one.
Values on arbitrary words follow by sign-sorting, so each stored
polynomial must be skew-symmetric within every run of equal generators;
this makes it divisible by the product of the per-run Vandermonde
factors, and bases of homogeneous pieces are built as

    (Vandermonde product) x (monomial symmetric polynomial per run).

The differential follows the usual shuffle formula: an action term per
slot (with D shifted on the coefficient, per conformal antilinearity)
and a bracket term per slot pair, where D produced by the bracket
resolves to minus the sum of the two slot variables.

Graded pieces (q, n) are independent work units: complexes are immutable
apart from an internal basis cache, and all operations are pure, so
rank computations over distinct pieces can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

from .algebra import LAM, ConformalAlgebra, ModuleSpec
from .poly import KIND_INDEXED, PARTIAL, Polynomial, lam, mono_key, pvar

Word = tuple[int, ...]

_D = pvar(PARTIAL)


def sorted_words(rank: int, q: int) -> list[Word]:
    return [tuple(w) for w in combinations_with_replacement(range(rank), q)]


def word_blocks(word: Word) -> list[tuple[int, int]]:
    """Runs of equal generators as (start, length) in slot positions."""
    blocks = []
    start = 0
    for pos in range(1, len(word) + 1):
        if pos == len(word) or word[pos] != word[start]:
            blocks.append((start, pos - start))
            start = pos
    return blocks


def _perm_sign(order: list[int]) -> int:
    inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order))
                     if order[a] > order[b])
    return -1 if inversions % 2 else 1


def vandermonde(positions: list[int]) -> Polynomial:
    """Product of (x_i - x_j) over position pairs i < j (1-based variables)."""
    out = Polynomial.const(1)
    for a, b in combinations_iter(positions):
        out = out * (pvar(lam(a)) - pvar(lam(b)))
    return out


def combinations_iter(positions: list[int]):
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            yield positions[i], positions[j]


def partitions_at_most(total: int, max_parts: int):
    """Nonincreasing integer partitions of total into at most max_parts parts."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return

    def rec(remaining, parts_left, cap):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for head in range(min(remaining, cap), 0, -1):
            for tail in rec(remaining - head, parts_left - 1, head):
                yield (head,) + tail

    yield from rec(total, max_parts, total)


def monomial_symmetric(positions: list[int], partition: tuple[int, ...]) -> Polynomial:
    """Sum of distinct monomials x^mu over permutations of the padded partition."""
    padded = tuple(partition) + (0,) * (len(positions) - len(partition))
    seen = set(permutations(padded))
    terms = {}
    for exps in seen:
        mono = tuple((lam(p), e) for p, e in zip(positions, exps) if e)
        terms[tuple(sorted(mono))] = Fraction(1)
    return Polynomial(terms)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def block_skew_basis(word: Word, degree: int) -> list[Polynomial]:
    """Basis of polynomials of the given total degree in x1..xq that are
    skew-symmetric within each block of equal generators.

    Empty whenever degree < sum of per-block Vandermonde degrees, which
    is the filtration bound sum b(b-1)/2.
    """
    blocks = word_blocks(word)
    vdeg = sum(b * (b - 1) // 2 for _, b in blocks)
    rest = degree - vdeg
    if rest < 0:
        return []
    vd = Polynomial.const(1)
    for start, size in blocks:
        vd = vd * vandermonde([start + 1 + t for t in range(size)])
    out = []
    for comp in _compositions(rest, len(blocks)):
        per_block = []
        for (start, size), m in zip(blocks, comp):
            positions = [start + 1 + t for t in range(size)]
            per_block.append([monomial_symmetric(positions, mu)
                              for mu in partitions_at_most(m, size)])
        # cartesian product over the per-block symmetric choices
        stack = [Polynomial.const(1)]
        for options in per_block:
            stack = [acc * opt for acc in stack for opt in options]
        out.extend(vd * s for s in stack)
    return out


def lambda_degree(p: Polynomial) -> int:
    """Total degree in the indexed slot variables only (-1 for zero)."""
    best = -1
    for mono in p.terms:
        best = max(best, sum(e for v, e in mono if v.kind == KIND_INDEXED))
    return best


@dataclass
class Cochain:
    """Polynomial components per sorted word; zero components omitted."""

    complex: "CochainComplex"
    q: int
    components: dict[Word, Polynomial]

    def __post_init__(self):
        self.components = {w: p for w, p in self.components.items() if p}

    @property
    def is_zero(self) -> bool:
        return not self.components

    def component(self, word: Word) -> Polynomial:
        return self.components.get(tuple(word), Polynomial.zero())

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.q != other.q:
            raise ValueError("cochain degrees differ")
        comps = dict(self.components)
        for w, p in other.components.items():
            comps[w] = comps.get(w, Polynomial.zero()) + p
        return Cochain(self.complex, self.q, comps)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        return Cochain(self.complex, self.q,
                       {w: p.scale(c) for w, p in self.components.items()})

    def mul_poly(self, factor: Polynomial) -> "Cochain":
        return Cochain(self.complex, self.q,
                       {w: p * factor for w, p in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.q == other.q and self.components == other.components

    def lambda_degree(self) -> int:
        return max((lambda_degree(p) for p in self.components.values()), default=-1)

    def vector(self) -> dict:
        """Sparse coordinates keyed by (word, monomial sort key)."""
        out = {}
        for w, p in self.components.items():
            for mono, c in p.terms.items():
                out[(w, mono_key(mono))] = c
        return out

    def format(self, namer=None) -> str:
        if self.is_zero:
            return "0"
        names = self.complex.algebra.names
        lines = []
        for w in sorted(self.components):
            label = ",".join(names[g] for g in w) if w else "1"
            lines.append(f"({label}): {self.components[w].format(namer)}")
        return "; ".join(lines)

    def __repr__(self) -> str:
        return f"Cochain(q={self.q}, {self.format()})"


class CochainComplex:
    """Cochains of one algebra with one coefficient module."""

    def __init__(self, algebra: ConformalAlgebra, coeffs: ModuleSpec):
        self.algebra = algebra
        self.coeffs = coeffs
        self._basis_cache: dict[tuple[Word, int], list[Polynomial]] = {}

    def words(self, q: int) -> list[Word]:
        return sorted_words(self.algebra.rank, q)

    def zero(self, q: int) -> Cochain:
        return Cochain(self, q, {})

    def cochain(self, q: int, components: dict[Word, Polynomial],
                validate: bool = False) -> Cochain:
        comps = {tuple(w): p for w, p in components.items() if p}
        if validate:
            for w, p in comps.items():
                if len(w) != q or tuple(sorted(w)) != w:
                    raise ValueError(f"component word {w} not sorted of length {q}")
                if not self._is_block_skew(w, p):
                    raise ValueError(f"component on {w} is not block skew-symmetric")
                if not self.coeffs.has_partial_variable and p.degree_in(PARTIAL) > 0:
                    raise ValueError("D appears but the module has no D generator")
        return Cochain(self, q, comps)

    def _is_block_skew(self, word: Word, p: Polynomial) -> bool:
        for start, size in word_blocks(word):
            for t in range(size - 1):
                a, b = lam(start + t + 1), lam(start + t + 2)
                swapped = p.subs({a: pvar(b), b: pvar(a)})
                if swapped != -p:
                    return False
        return True

    def basis(self, q: int, degree: int, partial_degree: int = 0) -> list[Cochain]:
        """Basis cochains of the homogeneous lambda-degree piece.

        partial_degree multiplies by D^m for free rank-one coefficients.
        """
        out = []
        head = _D ** partial_degree if partial_degree else None
        for word in self.words(q):
            key = (word, degree)
            polys = self._basis_cache.get(key)
            if polys is None:
                polys = block_skew_basis(word, degree)
                self._basis_cache[key] = polys
            for p in polys:
                out.append(Cochain(self, q, {word: p if head is None else head * p}))
        return out

    def piece_dimension(self, q: int, degree: int) -> int:
        return sum(len(block_skew_basis(w, degree)) for w in self.words(q))

    # -- evaluation and the differential --------------------------------

    def evaluate(self, gamma: Cochain, word, exprs) -> Polynomial:
        """Value on an arbitrary word with polynomial slot arguments."""
        word = tuple(word)
        q = len(word)
        if q != gamma.q or len(exprs) != q:
            raise ValueError("word/argument length mismatch")
        order = sorted(range(q), key=lambda t: (word[t], t))
        comp = gamma.components.get(tuple(word[t] for t in order))
        if comp is None:
            return Polynomial.zero()
        mapping = {lam(j + 1): exprs[order[j]] for j in range(q)}
        val = comp.subs(mapping)
        return val if _perm_sign(order) > 0 else -val

    def differential(self, gamma: Cochain) -> Cochain:
        q = gamma.q
        algebra, coeffs = self.algebra, self.coeffs
        xs = [pvar(lam(i)) for i in range(1, q + 2)]
        out: dict[Word, Polynomial] = {}
        has_action = coeffs.kind == "free_rank1"
        for word in self.words(q + 1):
            total = Polynomial.zero()
            if has_action:
                for i in range(q + 1):
                    act = coeffs.generator_action(word[i])
                    if not act:
                        continue
                    val = self.evaluate(gamma, word[:i] + word[i + 1:],
                                        xs[:i] + xs[i + 1:])
                    if not val:
                        continue
                    term = val.subs({PARTIAL: _D + xs[i]}) * act.subs({LAM: xs[i]})
                    total = total + term if i % 2 == 0 else total - term
            for i in range(q + 1):
                for j in range(i + 1, q + 1):
                    nu = xs[i] + xs[j]
                    heads = algebra.bracket_at(word[i], word[j], xs[i], -nu)
                    rest_word = word[:i] + word[i + 1:j] + word[j + 1:]
                    rest_exprs = xs[:i] + xs[i + 1:j] + xs[j + 1:q + 1]
                    for k, head in enumerate(heads):
                        if not head:
                            continue
                        val = self.evaluate(gamma, (k,) + rest_word, [nu] + rest_exprs)
                        if not val:
                            continue
                        term = head * val
                        total = total + term if (i + j) % 2 == 0 else total - term
            if total:
                out[word] = total
        return Cochain(self, q + 1, out)

    def tau(self, gamma: Cochain, gen: int = 0) -> Cochain:
        """Contraction against a trailing generator, evaluated at zero.

        For trivial coefficients a d/dx derivative is taken before the
        evaluation; for the other module kinds the value itself is used.
        Lowers the cochain degree by one, with sign (-1)^(q-1).
        """
        q = gamma.q
        if q < 1:
            raise ValueError("tau needs a positive cochain degree")
        aux = lam(q)
        out: dict[Word, Polynomial] = {}
        for word in self.words(q - 1):
            exprs = [pvar(lam(i)) for i in range(1, q)] + [pvar(aux)]
            val = self.evaluate(gamma, word + (gen,), exprs)
            if not val:
                continue
            if self.coeffs.kind == "trivial":
                val = val.derivative(aux)
            val = val.subs({aux: 0})
            if val:
                out[word] = val if (q - 1) % 2 == 0 else -val
        return Cochain(self, q - 1, out)

    def apply_partial(self, gamma: Cochain) -> Cochain:
        """The module action of D on cochains: multiply by D_V + x1+..+xq."""
        factor = self.coeffs.partial_action()
        for i in range(1, gamma.q + 1):
            factor = factor + pvar(lam(i))
        return gamma.mul_poly(factor)
