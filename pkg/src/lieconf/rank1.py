"""Free rank-one modules over the rank-2 algebra on L, M.

The L-action is taken as the known one-parameter family
f = D + alpha + Delta*x1 (the Virasoro classification is input data, not
re-derived; it would require a quadratic coefficient solve).  What is
certified here: the commutativity identity for the M-action eliminates
every candidate with a D-dependence, and the remaining linear identity

    (x - y) g(x + y) = -y g(y)

forces g = 0 for every Delta, alpha, so the classified family has a zero
M-action.  The commutativity identity is quadratic in g and is applied
as a filter after the linear solve; with D eliminated it is vacuous, so
the order of application does not lose solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (LAM, ConformalAlgebra, check_module_axioms,
                      free_rank1_module, m_delta_alpha, module_pair_residual, w22)
from .linalg import ExactMatrix
from .poly import PARTIAL, Polynomial, Scalar, mono_key


def lm_residual(g: Polynomial, delta: Polynomial | Scalar | None = None,
                alpha: Polynomial | Scalar | None = None) -> Polynomial:
    """Defect of the mixed compatibility identity for M-action g(D, x1).

    L x (M y v) - M y (L x v) - [L x M]_{x+y} v with the classified
    L-action; linear in g.
    """
    f = m_delta_alpha(delta, alpha).generator_action(0)
    return module_pair_residual(w22(), free_rank1_module(f, g), 0, 1)


def mm_residual(g: Polynomial) -> Polynomial:
    """Defect of M x (M y v) = M y (M x v); quadratic in g."""
    return module_pair_residual(w22(), free_rank1_module(Polynomial.zero(), g), 1, 1)


def partial_monomials_eliminated(degree_bound: int) -> bool:
    """Every monomial D^a x1^b with a >= 1 fails the commutativity identity."""
    for a in range(1, degree_bound + 1):
        for b in range(0, degree_bound - a + 1):
            mono = ((PARTIAL, a), (LAM, b)) if b else ((PARTIAL, a),)
            if not mm_residual(Polynomial({mono: Fraction(1)})):
                return False
    return True


def solve_m_action(delta: Polynomial | Scalar | None = None,
                   alpha: Polynomial | Scalar | None = None,
                   degree_bound: int = 6,
                   use_lm_constraint: bool = True) -> list[Polynomial]:
    """Basis of admissible M-actions g(x1) of degree <= bound.

    Candidates are D-free (the commutativity identity eliminates D-terms;
    see partial_monomials_eliminated).  With use_lm_constraint=False only
    the commutativity filter applies, which every g(x1) passes -- useful
    as a control showing the mixed identity does the killing.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    candidates = [Polynomial({((LAM, e),): Fraction(1)}) if e else Polynomial.const(1)
                  for e in range(degree_bound + 1)]
    if use_lm_constraint:
        keys: set = set()
        cols = []
        for cand in candidates:
            res = lm_residual(cand, delta, alpha)
            col = {mono_key(m): c for m, c in res.terms.items()}
            cols.append(col)
            keys.update(col)
        key_list = sorted(keys)
        pos = {k: n for n, k in enumerate(key_list)}
        mat = ExactMatrix.zeros(len(key_list), len(candidates))
        for cidx, col in enumerate(cols):
            for k, c in col.items():
                mat.data[pos[k]][cidx] = c
        solutions = []
        for vec in mat.kernel_basis():
            g = Polynomial.zero()
            for cand, c in zip(candidates, vec):
                g = g + cand.scale(c)
            solutions.append(g)
    else:
        solutions = candidates
    return [g for g in solutions if not mm_residual(g)]


@dataclass
class RankOneReport:
    checked: bool
    family: str
    notes: list[str]


def classify_rank_one(degree_bound: int = 6,
                      algebra: ConformalAlgebra | None = None) -> RankOneReport:
    """Certify that the classified family exhausts free rank-one modules.

    Checks, for formal parameters and on a rational sample grid that
    includes Delta = 0: the family itself satisfies the module axioms,
    and no nonzero M-action of degree <= bound is admissible.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    algebra = algebra or w22()
    notes = []

    axioms = check_module_axioms(algebra, m_delta_alpha())
    if axioms.ok:
        notes.append("module axioms hold with formal Delta, alpha")

    checked = axioms.ok
    if solve_m_action(None, None, degree_bound):
        checked = False
        notes.append("nonzero M-action admitted with formal parameters")
    grid = [Fraction(v) for v in (0, 1, -1, 2, Fraction(1, 2))]
    for dv in grid:
        for av in grid:
            if solve_m_action(dv, av, degree_bound):
                checked = False
                notes.append(f"nonzero M-action admitted at Delta={dv}, alpha={av}")
    if checked:
        notes.append(f"M-action space is zero up to degree {degree_bound} "
                     f"(formal parameters and a {len(grid)}x{len(grid)} rational grid)")
    if not partial_monomials_eliminated(degree_bound):
        checked = False
        notes.append("a D-dependent monomial slipped past the commutativity identity")
    return RankOneReport(
        checked=checked,
        family="L action D + alpha + Delta*x1, M action 0 (Delta, alpha parameters)",
        notes=notes,
    )
