"""Basic and reduced cohomology tables, with explicit representatives.

Tables are computed over trivial coefficients, graded piece by graded
piece: the differential raises the polynomial degree by exactly one, so
each (q, n) piece contributes

    dim H(q, n) = dim ker(d on piece (q, n)) - rank(d from piece (q-1, n-1)).

The reduced complex is the quotient by multiplication with x1+..+xq;
quotient pieces are realized by extending a row-reduced basis of that
subspace to the full piece and projecting, which keeps block
skew-symmetry intact.

For the one-dimensional evaluation module and the free rank-one family
the vanishing of reduced cohomology is certified through exact homotopy
identities with formal parameters instead of tables; the conclusions
need a != 0 (resp. alpha != 0) and the reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (ConformalAlgebra, m_delta_alpha, one_dim_module,
                      trivial_module, w22)
from .cochains import Cochain, CochainComplex, lambda_degree
from .linalg import ExactMatrix, SpanBasis, solve_combination
from .poly import PARTIAL, Polynomial, lam, named, pvar

_D = pvar(PARTIAL)


def _x(i: int) -> Polynomial:
    return pvar(lam(i))


# -- graded pieces of the trivial-coefficient complex -------------------


class _Pieces:
    """Caches bases, differential images and span data per (q, n)."""

    def __init__(self, complex: CochainComplex):
        self.cx = complex
        self._basis: dict[tuple[int, int], list[Cochain]] = {}
        self._images: dict[tuple[int, int], list[Cochain]] = {}

    def basis(self, q: int, n: int) -> list[Cochain]:
        if q < 0 or n < 0:
            return []
        key = (q, n)
        if key not in self._basis:
            self._basis[key] = self.cx.basis(q, n)
        return self._basis[key]

    def images(self, q: int, n: int) -> list[Cochain]:
        """d(b) for every basis cochain b of piece (q, n)."""
        key = (q, n)
        if key not in self._images:
            self._images[key] = [self.cx.differential(b) for b in self.basis(q, n)]
        return self._images[key]

    def kernel(self, q: int, n: int) -> list[Cochain]:
        """Kernel of d restricted to piece (q, n), as cochains."""
        basis = self.basis(q, n)
        if not basis:
            return []
        images = self.images(q, n)
        vecs = [im.vector() for im in images]
        keys = sorted({k for v in vecs for k in v})
        mat = ExactMatrix.zeros(len(keys), len(basis))
        pos = {k: t for t, k in enumerate(keys)}
        for col, v in enumerate(vecs):
            for k, c in v.items():
                mat.data[pos[k]][col] = c
        out = []
        for coeffs in mat.kernel_basis():
            combo = self.cx.zero(q)
            for b, c in zip(basis, coeffs):
                if c:
                    combo = combo + b.scale(c)
            out.append(combo)
        return out

    def partial_multiples(self, q: int, n: int) -> list[Cochain]:
        """Generators of (x1+..+xq) * piece (q, n-1), living in (q, n)."""
        return [self.cx.apply_partial(b) for b in self.basis(q, n - 1)]


@dataclass
class CohomologyTable:
    kind: str
    q_max: int
    dims: dict[tuple[int, int], int]
    totals: dict[int, int]
    representatives: dict[int, list[Cochain]]
    degree_range: dict[int, tuple[int, int]]
    notes: list[str] = field(default_factory=list)

    def total(self, q: int) -> int:
        return self.totals.get(q, 0)


def _degree_window(q: int, deg_lo: int | None, deg_hi: int | None) -> tuple[int, int]:
    lo = 0 if deg_lo is None else max(deg_lo, 0)
    hi = q + 2 if deg_hi is None else deg_hi
    return lo, max(hi, lo - 1)


def basic_cohomology(algebra: ConformalAlgebra, q_max: int = 7,
                     deg_lo: int | None = None, deg_hi: int | None = None,
                     want_representatives: bool = True) -> CohomologyTable:
    """Cohomology of the full cochain complex with trivial coefficients."""
    cx = CochainComplex(algebra, trivial_module())
    pieces = _Pieces(cx)
    dims: dict[tuple[int, int], int] = {}
    reps: dict[int, list[Cochain]] = {}
    window: dict[int, tuple[int, int]] = {}
    for q in range(q_max + 1):
        lo, hi = _degree_window(q, deg_lo, deg_hi)
        window[q] = (lo, hi)
        reps[q] = []
        for n in range(lo, hi + 1):
            kernel = pieces.kernel(q, n)
            span = SpanBasis()
            for im in pieces.images(q - 1, n - 1):
                span.add(im.vector())
            image_rank = span.rank
            dims[(q, n)] = len(kernel) - image_rank
            if dims[(q, n)] < 0:
                raise AssertionError("image escaped the kernel: d*d != 0?")
            if want_representatives:
                added = [kv for kv in kernel if span.add(kv.vector()) is not None]
                if len(added) != dims[(q, n)]:
                    raise AssertionError("image escaped the kernel: d*d != 0?")
                reps[q].extend(added)
    totals = {q: sum(dims[(q, n)] for n in range(*_inclusive(window[q])))
              for q in range(q_max + 1)}
    return CohomologyTable("basic", q_max, dims, totals, reps, window)


def _inclusive(bounds: tuple[int, int]) -> tuple[int, int]:
    lo, hi = bounds
    return lo, hi + 1


def reduced_cohomology(algebra: ConformalAlgebra, q_max: int = 7,
                       deg_lo: int | None = None, deg_hi: int | None = None,
                       want_representatives: bool = True,
                       check_commutation: bool = False) -> CohomologyTable:
    """Cohomology of the quotient complex by the image of D.

    With trivial coefficients D acts as multiplication by x1+..+xq; the
    quotient of each graded piece is taken against that subspace.
    """
    cx = CochainComplex(algebra, trivial_module())
    pieces = _Pieces(cx)
    notes: list[str] = []

    # per (q, n): an eliminator holding only the D-image rows, plus the
    # basis cochains that extend the D-image to the whole piece
    comp_cache: dict[tuple[int, int], tuple[SpanBasis, list[Cochain]]] = {}

    def get_comp(q: int, n: int) -> tuple[SpanBasis, list[Cochain]]:
        if q < 0 or n < 0:
            return SpanBasis(), []
        key = (q, n)
        if key not in comp_cache:
            sub = SpanBasis()
            work = SpanBasis()
            for s in pieces.partial_multiples(q, n):
                sub.add(s.vector())
                work.add(s.vector())
            comp = [b for b in pieces.basis(q, n) if work.add(b.vector()) is not None]
            comp_cache[key] = (sub, comp)
        return comp_cache[key]

    dims: dict[tuple[int, int], int] = {}
    reps: dict[int, list[Cochain]] = {}
    window: dict[int, tuple[int, int]] = {}
    for q in range(q_max + 1):
        lo, hi = _degree_window(q, deg_lo, deg_hi)
        window[q] = (lo, hi)
        reps[q] = []
        for n in range(lo, hi + 1):
            sub, comp = get_comp(q, n)
            sub_up, _ = get_comp(q + 1, n + 1)
            if check_commutation:
                for s in pieces.partial_multiples(q, n):
                    if not sub_up.contains(cx.differential(s).vector()):
                        raise AssertionError("d does not commute with D on cochains")
            residual_of = {}
            for idx, c in enumerate(comp):
                residual_of[idx] = sub_up.reduce(cx.differential(c).vector())
            keys = sorted({k for v in residual_of.values() for k in v})
            mat = ExactMatrix.zeros(len(keys), len(comp))
            pos = {k: t for t, k in enumerate(keys)}
            for col, v in residual_of.items():
                for k, c in v.items():
                    mat.data[pos[k]][col] = c
            kernel_coeffs = mat.kernel_basis()
            kernel = []
            for coeffs in kernel_coeffs:
                combo = cx.zero(q)
                for b, c in zip(comp, coeffs):
                    if c:
                        combo = combo + b.scale(c)
                kernel.append(combo)
            # image of the induced differential from the piece below
            _, comp_below = get_comp(q - 1, n - 1)
            span = SpanBasis()
            for c in comp_below:
                span.add(sub.reduce(cx.differential(c).vector()))
            image_rank = span.rank
            dims[(q, n)] = len(kernel) - image_rank
            if dims[(q, n)] < 0:
                raise AssertionError("reduced image escaped the reduced kernel")
            if want_representatives:
                added = [kv for kv in kernel
                         if span.add(sub.reduce(kv.vector())) is not None]
                if len(added) != dims[(q, n)]:
                    raise AssertionError("reduced image escaped the reduced kernel")
                reps[q].extend(added)
    totals = {q: sum(dims[(q, n)] for n in range(*_inclusive(window[q])))
              for q in range(q_max + 1)}
    notes.append("D-image quotient taken per graded piece")
    return CohomologyTable("reduced", q_max, dims, totals, reps, window, notes)


def long_exact_check(basic: CohomologyTable, reduced: CohomologyTable) -> bool:
    """reduced(q) == basic(q) + basic(q+1) wherever both sides are computed."""
    for q in range(reduced.q_max + 1):
        if q + 1 > basic.q_max:
            continue
        if reduced.total(q) != basic.total(q) + basic.total(q + 1):
            return False
    return True


# -- coboundary solving --------------------------------------------------


def is_coboundary(gamma: Cochain) -> Cochain | None:
    """A preimage under d inside the trivial-coefficient complex, or None.

    gamma must be homogeneous in lambda-degree; the candidate preimages
    live one cochain degree and one polynomial degree lower.
    """
    cx = gamma.complex
    if cx.coeffs.kind != "trivial":
        raise ValueError("preimage solving is implemented for trivial coefficients")
    if gamma.is_zero:
        return cx.zero(max(gamma.q - 1, 0))
    q, n = gamma.q, gamma.lambda_degree()
    if not all(p.is_homogeneous(n) for p in gamma.components.values()):
        raise ValueError("cochain is not homogeneous")
    if q == 0:
        return None
    basis = cx.basis(q - 1, n - 1)
    rows = [cx.differential(b).vector() for b in basis]
    coeffs = solve_combination(rows, gamma.vector())
    if coeffs is None:
        return None
    pre = cx.zero(q - 1)
    for b, c in zip(basis, coeffs):
        if c:
            pre = pre + b.scale(c)
    assert cx.differential(pre) == gamma
    return pre


def reduced_class_data(gamma: Cochain) -> tuple[bool, bool]:
    """(is a reduced cocycle, is a reduced coboundary) for trivial coefficients."""
    cx = gamma.complex
    q, n = gamma.q, gamma.lambda_degree()
    pieces = _Pieces(cx)
    sub_up = SpanBasis()
    for s in pieces.partial_multiples(q + 1, n + 1):
        sub_up.add(s.vector())
    cocycle = sub_up.contains(cx.differential(gamma).vector())
    rows = [cx.differential(b).vector() for b in pieces.basis(q - 1, n - 1)]
    rows += [s.vector() for s in pieces.partial_multiples(q, n)]
    coboundary = solve_combination(rows, gamma.vector()) is not None
    return cocycle, coboundary


# -- homotopy identities --------------------------------------------------


@dataclass
class HomotopyReport:
    variant: str
    q: int
    degree: int
    ok: bool
    checked: int
    notes: list[str]
    witnesses: list[str]


def check_homotopy(q: int, degree: int, variant: str,
                   algebra: ConformalAlgebra | None = None,
                   partial_degrees: tuple[int, ...] = (0, 1, 2)) -> HomotopyReport:
    """Verify the contraction identity on every basis cochain of a piece.

    variant "basic": (d tau + tau d) gamma == (degree - q) gamma.
    variant "eval": with scalar module C_a (a formal), the anticommutator
    is multiplication by x1+..+xq, hence congruent to -a gamma modulo the
    D-image; the congruence witness (a + sum x) gamma is checked exactly.
    variant "rank_one": with the free rank-one family (Delta, alpha
    formal) it is multiplication by D + alpha + x1+..+xq, congruent to
    alpha gamma modulo the D-image.
    """
    if q < 1:
        raise ValueError("homotopy identities need q >= 1")
    algebra = algebra or w22()
    a = pvar(named("a"))
    alpha = pvar(named("alpha"))
    if variant == "basic":
        cx = CochainComplex(algebra, trivial_module())
        cands = cx.basis(q, degree)
    elif variant == "eval":
        cx = CochainComplex(algebra, one_dim_module(a))
        cands = cx.basis(q, degree)
    elif variant == "rank_one":
        cx = CochainComplex(algebra, m_delta_alpha())
        cands = [b for m in partial_degrees for b in cx.basis(q, degree, m)]
    else:
        raise ValueError(f"unknown variant {variant!r}")

    lam_sum = Polynomial.zero()
    for i in range(1, q + 1):
        lam_sum = lam_sum + _x(i)

    notes: list[str] = []
    witnesses: list[str] = []
    for gamma in cands:
        lhs = cx.differential(cx.tau(gamma)) + cx.tau(cx.differential(gamma))
        if variant == "basic":
            expected = gamma.scale(degree - q)
        elif variant == "eval":
            expected = gamma.mul_poly(lam_sum)
            if not (lhs + gamma.mul_poly(a)) == gamma.mul_poly(a + lam_sum):
                witnesses.append(f"congruence witness failed on {gamma.format()}")
        else:
            expected = gamma.mul_poly(_D + alpha + lam_sum)
        if lhs != expected:
            witnesses.append(f"anticommutator defect on {gamma.format()}")
    if variant == "basic":
        notes.append(f"factor degree - q = {degree - q}")
    elif variant == "eval":
        notes.append("vanishing of reduced classes follows when a != 0")
    else:
        notes.append("vanishing of reduced classes follows when alpha != 0")
    return HomotopyReport(variant, q, degree, not witnesses, len(cands), notes, witnesses)


# -- the catalog of explicit representatives ------------------------------


def standard_cocycles(cx: CochainComplex) -> dict[str, Cochain]:
    """Explicit generators of the basic cohomology of the L, M algebra.

    Keys encode (cochain degree, block): e.g. c3_LLM is the 3-cochain
    supported on (L,L,M).  c4_LLMM and c5_LLLMM are the two cocycles
    that turn out to be coboundaries; c3_LMM is the coboundary showing
    the (L,M,M) block contributes nothing in degree 3.
    """
    x1, x2, x3, x4, x5, x6 = (_x(i) for i in range(1, 7))
    return {
        "c3_LLM": cx.cochain(3, {(0, 0, 1): (x1 - x2) * (x1 + x2) * x3}, validate=True),
        "c3_LLL": cx.cochain(3, {(0, 0, 0): (x1 - x2) * (x1 - x3) * (x2 - x3)}, validate=True),
        "c3_LMM": cx.cochain(3, {(0, 1, 1): (x2 - x3) * (x1 + x2 + x3) * (-x1 + x2 + x3)},
                             validate=True),
        "c4_LLLM": cx.cochain(4, {(0, 0, 0, 1): (x1 - x2) * (x2 - x3) * (x1 - x3)
                                  * (x1 + x2 + x3)}, validate=True),
        "c4_LLMM": cx.cochain(4, {(0, 0, 1, 1): (x1 - x2) * (x1 + x2) * (x3 - x4)
                                  * (x3 + x4)}, validate=True),
        "c5_LLMMM": cx.cochain(5, {(0, 0, 1, 1, 1): (x1 - x2) * (x3 - x4) * (x3 - x5)
                                   * (x4 - x5) * (x3 + x4 + x5)}, validate=True),
        "c5_LLLMM": cx.cochain(5, {(0, 0, 0, 1, 1): (x1 - x2) * (x1 - x3) * (x2 - x3)
                                   * (x4 - x5) * (x4 + x5)}, validate=True),
        "c6_LLLMMM": cx.cochain(6, {(0, 0, 0, 1, 1, 1): (x1 - x2) * (x2 - x3) * (x1 - x3)
                                    * (x4 - x5) * (x4 - x6) * (x5 - x6)}, validate=True),
    }


def standard_preimages(cx: CochainComplex) -> dict[str, Cochain]:
    """Witness preimages: d maps these onto multiples of catalog entries."""
    x1, x2, x3, x4 = (_x(i) for i in range(1, 5))
    return {
        # d(.) equals c3_LMM
        "pre_c3_LMM": cx.cochain(2, {(1, 1): x2 ** 2 - x1 ** 2}, validate=True),
        # d(.) equals -4 * c4_LLMM
        "pre_c4_LLMM": cx.cochain(3, {(0, 1, 1): (x2 - x3) * (3 * x1 ** 2
                                      - (x2 ** 2 + x3 ** 2))}, validate=True),
        # d(.) equals 2 * c5_LLLMM
        "pre_c5_LLLMM": cx.cochain(4, {(0, 0, 1, 1): (x1 - x2) * (x3 - x4)
                                       * (x1 * x2 - x3 * x4)}, validate=True),
    }


def standard_reduced_representatives(cx: CochainComplex) -> dict[str, Cochain]:
    """Extra generators of the reduced cohomology: contractions of the
    D-multiples of the basic generators against a trailing L."""
    basic = standard_cocycles(cx)
    return {
        "r2_LM": cx.tau(cx.apply_partial(basic["c3_LLM"])),
        "r2_LL": cx.tau(cx.apply_partial(basic["c3_LLL"])),
        "r3_LLM": cx.tau(cx.apply_partial(basic["c4_LLLM"])),
        "r4_LMMM": cx.tau(cx.apply_partial(basic["c5_LLMMM"])),
        "r5_LLMMM": cx.tau(cx.apply_partial(basic["c6_LLLMMM"])),
    }


@dataclass
class CheckOutcome:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[CheckOutcome]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_representatives(algebra: ConformalAlgebra | None = None) -> VerifyReport:
    """Run the whole explicit-representative suite for the L, M algebra."""
    algebra = algebra or w22()
    cx = CochainComplex(algebra, trivial_module())
    basic = standard_cocycles(cx)
    pre = standard_preimages(cx)
    reduced = standard_reduced_representatives(cx)
    checks: list[CheckOutcome] = []

    def record(name: str, ok: bool, detail: str = ""):
        checks.append(CheckOutcome(name, bool(ok), detail))

    for name in ("c3_LLM", "c3_LLL", "c4_LLLM", "c5_LLMMM", "c6_LLLMMM"):
        g = basic[name]
        record(f"{name} closed", cx.differential(g).is_zero)
        record(f"{name} not exact", is_coboundary(g) is None)

    for name in ("c3_LMM", "c4_LLMM", "c5_LLLMM"):
        g = basic[name]
        record(f"{name} closed", cx.differential(g).is_zero)
        record(f"{name} exact", is_coboundary(g) is not None)
    record("pre_c3_LMM maps onto c3_LMM",
           cx.differential(pre["pre_c3_LMM"]) == basic["c3_LMM"])
    record("pre_c4_LLMM maps onto -4 c4_LLMM",
           cx.differential(pre["pre_c4_LLMM"]) == basic["c4_LLMM"].scale(-4))
    record("pre_c5_LLLMM maps onto 2 c5_LLLMM",
           cx.differential(pre["pre_c5_LLLMM"]) == basic["c5_LLLMM"].scale(2))

    x1, x2, x3, x4, x5 = (_x(i) for i in range(1, 6))
    expected_polys = {
        "r2_LM": {(0, 1): -(x1 ** 2) * x2},
        "r2_LL": {(0, 0): -(x1 ** 3) + x2 ** 3},
        "r3_LLM": {(0, 0, 1): -(x1 ** 4) - x1 ** 3 * x3 + x2 ** 3 * (x2 + x3)},
        "r4_LMMM": {(0, 1, 1, 1): (x2 - x3) * (x2 - x4) * (x3 - x4)
                    * (x2 + x3 + x4) ** 2},
        "r5_LLMMM": {(0, 0, 1, 1, 1): -(x1 - x2) * (x3 - x4) * (x3 - x5) * (x4 - x5)
                     * (x1 ** 2 + x1 * x2 + x2 ** 2 + (x1 + x2) * (x3 + x4 + x5))},
    }
    for name, comps in expected_polys.items():
        got = reduced[name]
        want = cx.cochain(len(next(iter(comps))), comps)
        record(f"{name} formula", got == want)
        cocycle, coboundary = reduced_class_data(got)
        record(f"{name} reduced-closed", cocycle)
        record(f"{name} not reduced-exact", not coboundary)

    # the degree-5 contraction simplifies modulo the D-image
    simple = cx.cochain(5, {(0, 0, 1, 1, 1): x1 * x2 * (x1 - x2) * (x3 - x4)
                            * (x3 - x5) * (x4 - x5)})
    diff = reduced["r5_LLMMM"] - simple
    pieces = _Pieces(cx)
    sub = SpanBasis()
    for s in pieces.partial_multiples(5, 6):
        sub.add(s.vector())
    record("r5_LLMMM simplifies modulo the D-image", sub.contains(diff.vector()))

    return VerifyReport(checks)
