"""Exact linear algebra over the rationals.

Everything downstream (Hom-complex ranks, kernel bases, Coxeter spectra)
must be exact: a single rounded pivot would corrupt a cohomology dimension.
Scalars are `fractions.Fraction`; matrices are dense row-major lists.

Rank is computed by fraction-free Bareiss elimination on an integer-cleared
copy, so the elimination itself stays in (fast) integer arithmetic.
Characteristic polynomials use the Faddeev-LeVerrier recurrence, which only
ever divides traces by small integers and is therefore exact over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Q = Fraction

__all__ = ["Q", "QMatrix", "QPoly", "poly_gcd"]


def _as_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class QMatrix:
    """Dense matrix over Q, row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: list[list]):
        self.rows = [[_as_q(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[Q(0)] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.rows[i][i] = Q(1)
        return m

    @classmethod
    def from_columns(cls, cols: list[list]) -> "QMatrix":
        if not cols:
            return cls([])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    def copy(self) -> "QMatrix":
        return QMatrix([row[:] for row in self.rows])

    # -- basics -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"QMatrix[{self.nrows}x{self.ncols}: {body}]"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def column(self, j: int) -> list[Fraction]:
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def submatrix(self, row_idx: list[int], col_idx: list[int]) -> "QMatrix":
        return QMatrix([[self.rows[i][j] for j in col_idx] for i in row_idx])

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return QMatrix([self.rows[i] + other.rows[i] for i in range(self.nrows)])

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("trace of non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Q(0))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-x for x in row] for row in self.rows])

    def scale(self, c) -> "QMatrix":
        c = _as_q(c)
        return QMatrix([[c * x for x in row] for row in self.rows])

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        ot = other.transpose().rows
        return QMatrix(
            [[sum((a * b for a, b in zip(row, col)), Q(0)) for col in ot] for row in self.rows]
        )

    def matvec(self, v: list) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        vv = [_as_q(x) for x in v]
        return [sum((a * b for a, b in zip(row, vv)), Q(0)) for row in self.rows]

    def pow(self, k: int) -> "QMatrix":
        if self.nrows != self.ncols:
            raise ValueError("power of non-square matrix")
        result = QMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    # -- elimination ------------------------------------------------------

    def _integer_rows(self) -> list[list[int]]:
        # Row content does not change rank; clear denominators row by row.
        out = []
        for row in self.rows:
            mult = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * mult) for x in row])
        return out

    def rank(self) -> int:
        """Rank via fraction-free Bareiss elimination (integer arithmetic)."""
        m = self._integer_rows()
        nr, nc = self.nrows, self.ncols
        prev = 1
        r = 0
        for c in range(nc):
            if r == nr:
                break
            piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
            for i in range(r + 1, nr):
                mic = m[i][c]
                mrc = m[r][c]
                for j in range(c + 1, nc):
                    num = mrc * m[i][j] - mic * m[r][j]
                    # Bareiss guarantees exact divisibility by the previous pivot.
                    m[i][j] = num // prev
                m[i][c] = 0
            prev = m[r][c]
            r += 1
        return r

    def rref(self) -> tuple["QMatrix", list[int]]:
        """Reduced row echelon form and pivot column indices."""
        m = [row[:] for row in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots: list[int] = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return QMatrix(m), pivots

    def kernel_basis(self) -> list[list[Fraction]]:
        """Basis of the right null space {v : Mv = 0}, one vector per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [Q(0)] * self.ncols
            v[fc] = Q(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.rows[r][fc]
            basis.append(v)
        return basis

    def solve(self, b: list) -> list[Fraction] | None:
        """One exact solution of Mx = b, or None if inconsistent."""
        bb = [_as_q(x) for x in b]
        if len(bb) != self.nrows:
            raise ValueError("rhs length mismatch")
        aug = QMatrix([row + [bb[i]] for i, row in enumerate(self.rows)])
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Q(0)] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = red.rows[r][self.ncols]
        return x

    def inverse(self) -> "QMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        aug = self.hstack(QMatrix.identity(n))
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return QMatrix([row[n:] for row in red.rows])

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        cp = self.char_poly()
        # det(M) = (-1)^n * constant coefficient of det(tI - M)
        c0 = cp.coeffs[0] if cp.coeffs else Q(0)
        return c0 if self.nrows % 2 == 0 else -c0

    def char_poly(self) -> "QPoly":
        """det(t*I - M), monic, by the Faddeev-LeVerrier recurrence."""
        if self.nrows != self.ncols:
            raise ValueError("char poly of non-square matrix")
        n = self.nrows
        coeffs = [Q(1)]  # highest first while building
        acc = QMatrix.identity(n)
        for k in range(1, n + 1):
            acc = self @ acc
            ck = -acc.trace() / k
            coeffs.append(ck)
            if k < n:
                for i in range(n):
                    acc.rows[i][i] += ck
        return QPoly(list(reversed(coeffs)))


class QPoly:
    """Polynomial over Q; coefficients lowest-degree first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list):
        cs = [_as_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def x_pow_minus_one(cls, r: int) -> "QPoly":
        # x^r - 1
        return cls([-1] + [0] * (r - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"QPoly({self.coeffs})"

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        if self.is_zero() or other.is_zero():
            return QPoly([])
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    def scale(self, c) -> "QPoly":
        c = _as_q(c)
        return QPoly([c * a for a in self.coeffs])

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.coeffs[:]
        quo = [Q(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q = rem[i] / lead
            quo[i - d] = q
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= q * c
        return QPoly(quo), QPoly(rem)

    def __call__(self, x) -> Fraction:
        # Horner evaluation.
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * _as_q(x) + c
        return acc

    def eval_matrix(self, m: QMatrix) -> QMatrix:
        acc = QMatrix.zeros(m.nrows, m.ncols)
        for c in reversed(self.coeffs):
            acc = acc @ m
            for i in range(m.nrows):
                acc.rows[i][i] += c
        return acc

    def pow(self, k: int) -> "QPoly":
        result = QPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result


def poly_gcd(f: QPoly, g: QPoly) -> QPoly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    a, b = f, g
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()
