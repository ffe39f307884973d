"""Finite Lie conformal algebras presented by structure polynomials.

An algebra of rank r is a free C[D]-module on generators g_1 < ... < g_r
with brackets stored only for ordered pairs i <= j as vectors of
polynomials in {D, x1}:

    [g_i x1 g_j] = sum_k P_k(D, x1) g_k.

Brackets for i > j are derived on the fly from skew-symmetry.  Axiom
checks are run on generators; sesquilinearity extends them bilinearly,
which is hard-coded into every bracket evaluation (D on the left operand
contributes -x1, D on the right redistributes as D + x1 onto outputs).

Everything here is immutable and pure; checks over independent generator
tuples can run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import PARTIAL, Polynomial, Scalar, lam, named, pvar

LAM = lam(1)   # bracket variable
MU = lam(2)    # auxiliary variable for two-parameter identities

_D = pvar(PARTIAL)
_X = pvar(LAM)
_Y = pvar(MU)


class _FrozenStructure(dict):
    """Plain dict; mutation after construction is a programming error."""


@dataclass(frozen=True)
class ConformalAlgebra:
    names: tuple[str, ...]
    structure: dict[tuple[int, int], tuple[Polynomial, ...]] = field(default_factory=dict)

    def __post_init__(self):
        r = self.rank
        clean: dict[tuple[int, int], tuple[Polynomial, ...]] = _FrozenStructure()
        for (i, j), vec in self.structure.items():
            if not (0 <= i <= j < r):
                raise ValueError(f"bracket pair {(i, j)} out of order or range")
            if len(vec) != r:
                raise ValueError(f"bracket {(i, j)} has {len(vec)} components, want {r}")
            bad = {v for p in vec for v in p.variables()} - {PARTIAL, LAM}
            if bad:
                raise ValueError(f"bracket {(i, j)} uses foreign variables {bad}")
            if any(p for p in vec):
                clean[(i, j)] = tuple(vec)
        object.__setattr__(self, "structure", clean)

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero_element(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial.zero() for _ in self.names)

    def bracket(self, i: int, j: int) -> tuple[Polynomial, ...]:
        """[g_i x1 g_j] as a vector of polynomials in {D, x1}."""
        r = self.rank
        if not (0 <= i < r and 0 <= j < r):
            raise IndexError(f"generator index out of range: {(i, j)}")
        if i <= j:
            return self.structure.get((i, j), self.zero_element())
        stored = self.structure.get((j, i))
        if stored is None:
            return self.zero_element()
        flip = {LAM: -_X - _D}
        return tuple(-(p.subs(flip)) for p in stored)

    def bracket_at(self, i: int, j: int, lam_value, partial_value) -> tuple[Polynomial, ...]:
        """Bracket with x1 -> lam_value and D -> partial_value substituted."""
        sub = {LAM: lam_value, PARTIAL: partial_value}
        return tuple(p.subs(sub) for p in self.bracket(i, j))


# -- axiom checks ------------------------------------------------------


@dataclass
class AxiomReport:
    skew_ok: bool
    jacobi_ok: bool
    witnesses: list[tuple[str, tuple[str, ...], Polynomial]]

    @property
    def ok(self) -> bool:
        return self.skew_ok and self.jacobi_ok


def check_algebra_axioms(algebra: ConformalAlgebra) -> AxiomReport:
    """Verify skew-symmetry and the Jacobi identity on all generators."""
    names = algebra.names
    r = algebra.rank
    witnesses: list[tuple[str, tuple[str, ...], Polynomial]] = []

    skew_ok = True
    flip = {LAM: -_X - _D}
    for i in range(r):
        for j in range(i, r):
            lhs = algebra.bracket(i, j)
            rhs = tuple(-(p.subs(flip)) for p in algebra.bracket(j, i))
            for k in range(r):
                res = lhs[k] - rhs[k]
                if res:
                    skew_ok = False
                    witnesses.append(("skew", (names[i], names[j], names[k]), res))

    jacobi_ok = True
    for i in range(r):
        for j in range(r):
            for k in range(r):
                res = _jacobi_residual(algebra, i, j, k)
                for t in range(r):
                    if res[t]:
                        jacobi_ok = False
                        witnesses.append(
                            ("jacobi", (names[i], names[j], names[k], names[t]), res[t]))
    return AxiomReport(skew_ok, jacobi_ok, witnesses)


def _jacobi_residual(algebra: ConformalAlgebra, i: int, j: int, k: int) -> tuple[Polynomial, ...]:
    """[g_i x [g_j y g_k]] - [[g_i x g_j]_{x+y} g_k] - [g_j y [g_i x g_k]]."""
    r = algebra.rank
    acc = [Polynomial.zero() for _ in range(r)]

    # [g_i x (P(D, y) g_m)] = P(D + x, y) [g_i x g_m]
    for m, p in enumerate(algebra.bracket_at(j, k, _Y, _D)):
        if not p:
            continue
        p_shift = p.subs({PARTIAL: _D + _X})
        for t, q in enumerate(algebra.bracket(i, m)):
            if q:
                acc[t] = acc[t] + p_shift * q

    # [(P(D, x) g_m)_{x+y} g_k] = P(-(x+y), x) [g_m_{x+y} g_k]
    for m, p in enumerate(algebra.bracket(i, j)):
        if not p:
            continue
        p_eval = p.subs({PARTIAL: -(_X + _Y)})
        for t, q in enumerate(algebra.bracket_at(m, k, _X + _Y, _D)):
            if q:
                acc[t] = acc[t] - p_eval * q

    # [g_j y (P(D, x) g_m)] = P(D + y, x) [g_j y g_m]
    for m, p in enumerate(algebra.bracket(i, k)):
        if not p:
            continue
        p_shift = p.subs({PARTIAL: _D + _Y})
        for t, q in enumerate(algebra.bracket_at(j, m, _Y, _D)):
            if q:
                acc[t] = acc[t] - p_shift * q

    return tuple(acc)


def check_perfect(algebra: ConformalAlgebra, degree_bound: int | None = None) -> bool:
    """True if the C[D]-span of all bracket x1-coefficients is the whole algebra.

    Searches for polynomial certificates q_s(D) with
    sum_s q_s(D) v_s = e_k for every unit vector e_k, where v_s runs over
    the x1-coefficient vectors of all generator brackets.  Degree-bounded;
    a True answer is a certificate, False means none below the bound.
    """
    r = algebra.rank
    gens: list[tuple[Polynomial, ...]] = []
    maxdeg = 0
    for i in range(r):
        for j in range(i, r):
            vec = algebra.bracket(i, j)
            by_exp: dict[int, list[Polynomial]] = {}
            for k, p in enumerate(vec):
                for e, coeff in p.coefficients_in(LAM).items():
                    by_exp.setdefault(e, [Polynomial.zero()] * r)
                    by_exp[e][k] = by_exp[e][k] + coeff
            for e, v in sorted(by_exp.items()):
                if any(v):
                    gens.append(tuple(v))
                    maxdeg = max(maxdeg, max(p.degree() for p in v))
    if not gens:
        return False
    bound = degree_bound if degree_bound is not None else r * (maxdeg + 1) + 1

    from .linalg import ExactMatrix

    # unknowns: coefficients of q_s(D), deg <= bound
    ncols = len(gens) * (bound + 1)
    for k in range(r):
        rows: dict[tuple[int, int], list[Fraction]] = {}

        def row_for(component: int, dexp: int) -> list[Fraction]:
            return rows.setdefault((component, dexp), [Fraction(0)] * ncols)

        for s, v in enumerate(gens):
            for m in range(bound + 1):
                col = s * (bound + 1) + m
                for comp, p in enumerate(v):
                    for e, c in p.coefficients_in(PARTIAL).items():
                        row_for(comp, e + m)[col] += c.constant_term()
        row_for(k, 0)  # target equation must exist even if nothing feeds it
        keys = sorted(rows)
        mat = ExactMatrix([rows[key] for key in keys], ncols)
        rhs = [Fraction(1) if key == (k, 0) else Fraction(0) for key in keys]
        if mat.solve(rhs) is None:
            return False
    return True


# -- coefficient modules ----------------------------------------------


@dataclass(frozen=True)
class ModuleSpec:
    """Coefficient module for cohomology and module-axiom checks.

    kind
      "trivial"    -- C with D and the algebra acting as zero
      "eval"       -- C with D acting as the scalar eval_at, algebra zero
      "free_rank1" -- C[D]v with g_i acting by actions[i](D, x1)
    """

    kind: str
    eval_at: Polynomial | None = None
    actions: tuple[Polynomial, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("trivial", "eval", "free_rank1"):
            raise ValueError(f"unknown module kind {self.kind!r}")
        if self.kind == "eval" and self.eval_at is None:
            raise ValueError("eval module needs its scalar")
        if self.kind == "free_rank1" and not self.actions:
            raise ValueError("free rank-one module needs action polynomials")

    def partial_action(self) -> Polynomial:
        """What D multiplies by on the module (as a polynomial value)."""
        if self.kind == "trivial":
            return Polynomial.zero()
        if self.kind == "eval":
            return self.eval_at
        return _D

    def generator_action(self, i: int) -> Polynomial:
        """Action polynomial of g_i on the module generator, in {D, x1}."""
        if self.kind == "free_rank1":
            return self.actions[i]
        return Polynomial.zero()

    @property
    def has_partial_variable(self) -> bool:
        return self.kind == "free_rank1"


def trivial_module() -> ModuleSpec:
    return ModuleSpec("trivial")


def one_dim_module(a: Polynomial | Scalar) -> ModuleSpec:
    a = a if isinstance(a, Polynomial) else Polynomial.const(a)
    return ModuleSpec("eval", eval_at=a)


def free_rank1_module(*actions: Polynomial) -> ModuleSpec:
    return ModuleSpec("free_rank1", actions=tuple(actions))


@dataclass
class ModuleReport:
    ok: bool
    witnesses: list[tuple[tuple[str, str], Polynomial]]
    notes: list[str]


def module_pair_residual(algebra: ConformalAlgebra, module: ModuleSpec,
                         i: int, j: int) -> Polynomial:
    """g_i x (g_j y v) - g_j y (g_i x v) - [g_i x g_j]_{x+y} v, in {D, x1, x2}."""
    fi = module.generator_action(i)
    fj = module.generator_action(j)
    lhs = (fj.subs({PARTIAL: _D + _X, LAM: _Y}) * fi
           - fi.subs({PARTIAL: _D + _Y}) * fj.subs({LAM: _Y}))
    rhs = Polynomial.zero()
    for k, p in enumerate(algebra.bracket(i, j)):
        if not p:
            continue
        head = p.subs({PARTIAL: -(_X + _Y)})
        rhs = rhs + head * module.generator_action(k).subs({LAM: _X + _Y})
    return lhs - rhs


def check_module_axioms(algebra: ConformalAlgebra, module: ModuleSpec) -> ModuleReport:
    """Verify the compatibility identity of a conformal module on generators.

    Trivial and scalar-evaluation modules satisfy the axioms by
    construction and report ok immediately.
    """
    if module.kind != "free_rank1":
        return ModuleReport(True, [], ["module kind is axiomatically valid"])
    names = algebra.names
    witnesses = []
    for i in range(algebra.rank):
        for j in range(algebra.rank):
            res = module_pair_residual(algebra, module, i, j)
            if res:
                witnesses.append(((names[i], names[j]), res))
    return ModuleReport(not witnesses, witnesses, [])


# -- built-in fixtures --------------------------------------------------


def w22() -> ConformalAlgebra:
    """Rank-2 algebra on L, M with [L x L]=(D+2x)L, [L x M]=(D+2x)M, [M x M]=0."""
    dl2 = _D + 2 * _X
    zero = Polynomial.zero()
    return ConformalAlgebra(
        names=("L", "M"),
        structure={
            (0, 0): (dl2, zero),
            (0, 1): (zero, dl2),
        },
    )


def virasoro() -> ConformalAlgebra:
    return ConformalAlgebra(names=("L",), structure={(0, 0): (_D + 2 * _X,)})


def abelian(rank: int = 1) -> ConformalAlgebra:
    names = tuple(f"A{i + 1}" for i in range(rank)) if rank > 1 else ("L",)
    return ConformalAlgebra(names=names, structure={})


def m_delta_alpha(delta: Polynomial | Scalar | None = None,
                  alpha: Polynomial | Scalar | None = None) -> ModuleSpec:
    """The rank-one module family over w22: L acts by D + alpha + delta*x1, M by 0.

    None keeps a parameter formal (a named variable).
    """
    d = pvar(named("Delta")) if delta is None else (
        delta if isinstance(delta, Polynomial) else Polynomial.const(delta))
    a = pvar(named("alpha")) if alpha is None else (
        alpha if isinstance(alpha, Polynomial) else Polynomial.const(alpha))
    return free_rank1_module(_D + a + d * _X, Polynomial.zero())
