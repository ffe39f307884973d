"""Exact linear algebra over the rationals.

Two workhorses: a dense ``ExactMatrix`` with rank / kernel / solve via
fraction-free-ish Gaussian elimination on Fractions, and an incremental
``SpanBasis`` eliminator for row-space bookkeeping over sparse vectors
keyed by arbitrary sortable keys (we use (tag, monomial-key) pairs).

Rank-nullity is asserted on every kernel computation.
"""

from __future__ import annotations

from fractions import Fraction

Vec = list[Fraction]


class ExactMatrix:
    """Dense matrix over Fraction; immutable once built."""

    __slots__ = ("data", "rows", "cols", "_rref")

    def __init__(self, rows: list[list[Fraction | int]], cols: int | None = None):
        self.data = [[Fraction(x) for x in row] for row in rows]
        self.rows = len(self.data)
        if self.rows:
            widths = {len(r) for r in self.data}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.cols = widths.pop()
            if cols is not None and cols != self.cols:
                raise ValueError("cols mismatch")
        else:
            self.cols = cols or 0
        self._rref = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.data[i][j] for i in range(self.rows)]
                            for j in range(self.cols)], self.rows)

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and pivot columns (cached)."""
        if self._rref is not None:
            return self._rref
        m = [row[:] for row in self.data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == len(m):
                break
        self._rref = (m, pivots)
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[Vec]:
        """Basis of {x : Mx = 0}; checks rank + nullity == cols."""
        m, pivots = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.cols) if c not in pivset]
        basis: list[Vec] = []
        for fc in free:
            x = [Fraction(0)] * self.cols
            x[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                x[pc] = -m[r][fc]
            basis.append(x)
        assert self.rank() + len(basis) == self.cols
        for x in basis:
            assert all(sum(row[j] * x[j] for j in range(self.cols)) == 0
                       for row in self.data)
        return basis

    def solve(self, rhs: list[Fraction | int]) -> Vec | None:
        """One solution of Mx = rhs (free coordinates 0), or None."""
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = ExactMatrix([row + [Fraction(b)] for row, b in zip(self.data, rhs)],
                          self.cols + 1)
        m, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x

    def mul_vec(self, x: list[Fraction | int]) -> Vec:
        return [sum((row[j] * x[j] for j in range(self.cols)), Fraction(0))
                for row in self.data]


def rank_kernel(m: ExactMatrix) -> tuple[int, list[Vec]]:
    """Rank and a kernel basis in one call."""
    return m.rank(), m.kernel_basis()


class SpanBasis:
    """Incremental row space of sparse vectors (dict key -> Fraction).

    Keys must be mutually comparable; the pivot of a row is its smallest
    key, which makes elimination reproduce graded-lex pivoting when keys
    embed the monomial order.
    """

    def __init__(self):
        self.rows: dict[object, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Fully reduce vec against the current rows; returns the residual.

        Rows are kept mutually reduced, so eliminating a pivot never
        reintroduces another pivot and a single pass is enough.
        """
        v = {k: Fraction(c) for k, c in vec.items() if c != 0}
        for piv in [k for k in sorted(v) if k in self.rows]:
            f = v.get(piv)
            if not f:
                continue
            for kk, cc in self.rows[piv].items():
                s = v.get(kk, Fraction(0)) - f * cc
                if s == 0:
                    v.pop(kk, None)
                else:
                    v[kk] = s
        return v

    def add(self, vec: dict) -> dict | None:
        """Insert vec; returns the normalized new row, or None if dependent."""
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res)
        inv = 1 / res[piv]
        row = {k: c * inv for k, c in res.items()}
        # keep existing rows fully reduced against the new pivot
        for old in self.rows.values():
            if piv in old:
                f = old[piv]
                for kk, cc in row.items():
                    s = old.get(kk, Fraction(0)) - f * cc
                    if s == 0:
                        old.pop(kk, None)
                    else:
                        old[kk] = s
        self.rows[piv] = row
        return row

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def solve_combination(rows: list[dict], target: dict) -> list[Fraction] | None:
    """Coefficients x with sum x_i rows[i] == target, or None.

    rows and target are sparse dicts over a common (sortable) key space.
    """
    keys = set(target)
    for r in rows:
        keys.update(r)
    key_list = sorted(keys)
    pos = {k: i for i, k in enumerate(key_list)}
    mat = ExactMatrix.zeros(len(key_list), len(rows))
    for j, r in enumerate(rows):
        for k, c in r.items():
            mat.data[pos[k]][j] = Fraction(c)
    rhs = [Fraction(0)] * len(key_list)
    for k, c in target.items():
        rhs[pos[k]] = Fraction(c)
    return mat.solve(rhs)
