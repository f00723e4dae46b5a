"""Matrices of polynomials, determinants, minors and determinantal ideals."""

from __future__ import annotations

import heapq
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .exactpoly import Polynomial, RingMismatch, RingSpec
from .groebner import Ideal

IndexSet = Tuple[int, ...]


def index_set(items: Iterable[int], n: int) -> IndexSet:
    """Strictly increasing tuple of indices in 1..n."""
    t = tuple(items)
    if any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError(f"index set {t} not strictly increasing")
    if t and (t[0] < 1 or t[-1] > n):
        raise ValueError(f"index set {t} outside [1, {n}]")
    return t


class PolyMatrix:
    """Dense row-major matrix of Polynomials over one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingSpec, rows: int, cols: int, entries: Sequence[Polynomial]):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        ents = []
        for e in entries:
            if not isinstance(e, Polynomial):
                e = ring.const(e)
            elif e.ring != ring:
                raise RingMismatch("matrix entry in a foreign ring")
            ents.append(e)
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(ents)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "PolyMatrix":
        flat = []
        for r in rows:
            if len(r) != len(rows[0]):
                raise ValueError("ragged rows")
            for e in r:
                flat.append(ring.parse(e) if isinstance(e, str) else e)
        return cls(ring, len(rows), len(rows[0]), flat)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "PolyMatrix":
        return cls(ring, n, n, [ring.one() if i == j else ring.zero() for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "PolyMatrix":
        return cls(ring, rows, cols, [ring.zero()] * (rows * cols))

    # access (0-based) -----------------------------------------------------
    def __getitem__(self, ij: Tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> List[Polynomial]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> List[List[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.tolist()) + "]"

    def equals_mod(self, other: "PolyMatrix") -> bool:
        """Entrywise equality in the quotient ring."""
        return self.shape == other.shape and all(
            self.ring.equal_mod(a, b) for a, b in zip(self.entries, other.entries))

    def mismatches(self, other: "PolyMatrix", quotient: bool = False) -> List[Tuple[int, int]]:
        out = []
        for k, (a, b) in enumerate(zip(self.entries, other.entries)):
            same = self.ring.equal_mod(a, b) if quotient else a == b
            if not same:
                out.append(divmod(k, self.cols))
        return out

    # arithmetic -----------------------------------------------------------
    def map(self, fn: Callable[[Polynomial], Polynomial], ring: Optional[RingSpec] = None) -> "PolyMatrix":
        ents = [fn(e) for e in self.entries]
        return PolyMatrix(ring or (ents[0].ring if ents else self.ring), self.rows, self.cols, ents)

    def substitute(self, assignment, target: Optional[RingSpec] = None) -> "PolyMatrix":
        tgt = target
        if tgt is None:
            for v in assignment.values():
                if isinstance(v, Polynomial):
                    tgt = v.ring
                    break
        tgt = tgt or self.ring
        return self.map(lambda e: e.substitute(assignment, tgt), tgt)

    def coerce(self, ring: RingSpec) -> "PolyMatrix":
        return self.map(ring.coerce, ring)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.rows, self.cols, [e * c for e in self.entries])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        """0-based row and column selection."""
        return PolyMatrix(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def det(self) -> Polynomial:
        return det(self)


def matrix_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    if A.ring != B.ring:
        raise RingMismatch("matrices over different rings")
    ents = []
    for i in range(A.rows):
        arow = A.row(i)
        for j in range(B.cols):
            acc = A.ring.zero()
            for k in range(A.cols):
                a = arow[k]
                if a.terms:
                    b = B.entries[k * B.cols + j]
                    if b.terms:
                        acc = acc + a * b
            ents.append(acc)
    return PolyMatrix(A.ring, A.rows, B.cols, ents)


def mat_product(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = matrix_mul(out, m)
    return out


# ---------------------------------------------------------------------------
# determinants

def det_cofactor(M: PolyMatrix) -> Polynomial:
    """Laplace expansion along the first row, memoized on column subsets."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    memo = {}

    def rec(r: int, cols: Tuple[int, ...]) -> Polynomial:
        if r == n:
            return M.ring.one()
        key = cols
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = M.ring.zero()
        for k, c in enumerate(cols):
            e = M[r, c]
            if e.terms:
                sub = rec(r + 1, cols[:k] + cols[k + 1:])
                acc = acc + e * sub if k % 2 == 0 else acc - e * sub
        memo[key] = acc
        return acc

    return rec(0, tuple(range(n)))


def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free Bareiss elimination; exact divisions by the previous pivot."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = [list(M.row(i)) for i in range(n)]
    sign = 1
    prev = M.ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return M.ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """num / den when the division is known to be exact."""
    if den.is_constant():
        return num * (1 / den.constant_value())
    from .groebner import GREVLEX, _Packer
    pk = _Packer(num.ring, GREVLEX)
    dl = pk.convert(den)
    lm, lc = dl[0]
    rest = num
    q = {}
    g = pk.guard
    while rest.terms:
        items = pk.convert(rest)
        x, c = items[0]
        if ((x | g) - lm) & g != g:
            raise ArithmeticError("inexact polynomial division")
        m = (x - lm) & pk.emask
        coef = c / lc
        q[m] = q.get(m, 0) + coef
        rest = rest - Polynomial(num.ring, {m: coef}) * den
    return Polynomial(num.ring, {m: c for m, c in q.items() if c})


def det(M: PolyMatrix) -> Polynomial:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows <= 4:
        return det_cofactor(M)
    return det_bareiss(M)


def minor(M: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Minor on 1-based row and column index sets."""
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    index_set(rows, M.rows)
    index_set(cols, M.cols)
    return det(M.submatrix([i - 1 for i in rows], [j - 1 for j in cols]))


def m_pI(x: PolyMatrix, p: int, I: Sequence[int]) -> Polynomial:
    """Minor of x on rows I and the column block p..n."""
    n = x.cols
    if len(I) != n - p + 1:
        raise ValueError(f"|I| must be n-p+1 = {n - p + 1}")
    return minor(x, I, range(p, n + 1))


def adjugate(A: PolyMatrix) -> PolyMatrix:
    n = A.rows
    if n == 1:
        return PolyMatrix.identity(A.ring, 1)
    ents = []
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            c = det(A.submatrix(rows, cols))
            ents.append(c if (i + j) % 2 == 0 else -c)
    return PolyMatrix(A.ring, n, n, ents)


def matrix_inverse_via_adjugate(A: PolyMatrix, det_inverse: Optional[Polynomial] = None) -> PolyMatrix:
    """adj(A) * det(A)^{-1}.

    ``det_inverse`` must satisfy det(A)*det_inverse = 1 in the quotient ring;
    without it det(A) has to be a nonzero constant.
    """
    if A.rows != A.cols:
        raise ValueError("inverse of a non-square matrix")
    d = det(A)
    if det_inverse is None:
        if not d.is_constant() or d.is_zero():
            raise ArithmeticError("determinant is not a unit of the ring")
        det_inverse = A.ring.const(1 / d.constant_value())
    elif not A.ring.equal_mod(d * det_inverse, A.ring.one()):
        raise ArithmeticError("supplied inverse does not invert the determinant")
    inv = adjugate(A).map(lambda e: A.ring.normal_form(e * det_inverse), A.ring)
    return inv


# ---------------------------------------------------------------------------
# generic matrices and ideals

def var_name(prefix: str, i: int, j: int) -> str:
    return f"{prefix}_{{{i},{j}}}"


def matrix_vars(prefix: str, n: int, k: int) -> List[str]:
    return [var_name(prefix, i, j) for i in range(1, n + 1) for j in range(1, k + 1)]


def generic_matrix(n: int, k: int, prefix: str = "x", ring: Optional[RingSpec] = None) -> PolyMatrix:
    """n x k matrix of indeterminates prefix_{i,j}; a fresh ring unless one is given."""
    if n < 1 or k < 1:
        raise ValueError("sizes must be positive")
    names = matrix_vars(prefix, n, k)
    if ring is None:
        ring = RingSpec(names)
    return PolyMatrix(ring, n, k, [ring.var(v) for v in names])


def block_embed(A: PolyMatrix, size: Optional[int] = None) -> PolyMatrix:
    """A placed in the top-left corner of an identity matrix (A, 0; 0, 1)."""
    n = A.rows
    m = size or n + 1
    ring = A.ring
    ents = []
    for i in range(m):
        for j in range(m):
            if i < n and j < n:
                ents.append(A[i, j])
            else:
                ents.append(ring.one() if i == j else ring.zero())
    return PolyMatrix(ring, m, m, ents)


def determinantal_ideal(n: int, k: int, r: int, M: Optional[PolyMatrix] = None) -> Ideal:
    """(r+1)-minors of a generic n x k matrix (or of M)."""
    if not 0 <= r <= min(n, k):
        raise ValueError("rank bound out of range")
    if M is None:
        M = generic_matrix(n, k)
    gens = [minor(M, rs, cs) for rs in combinations(range(1, n + 1), r + 1)
            for cs in combinations(range(1, k + 1), r + 1)] if r < min(n, k) else []
    return Ideal(M.ring, gens)


def wedge_vanishing_ideal(M: PolyMatrix, p: int) -> Ideal:
    """Maximal minors of the column block p..n: columns p..n are dependent."""
    n = M.rows
    if M.cols != n or not 1 <= p <= n:
        raise ValueError("need square M and 1 <= p <= n")
    size = n - p + 1
    return Ideal(M.ring, [m_pI(M, p, I) for I in combinations(range(1, n + 1), size)])


def jacobian(fs: Sequence[Polynomial], vars: Sequence[str]) -> PolyMatrix:
    if not fs:
        raise ValueError("empty polynomial list")
    ring = fs[0].ring
    for f in fs:
        if f.ring != ring:
            raise RingMismatch("jacobian of polynomials in different rings")
    for v in vars:
        if v not in ring.index:
            raise KeyError(f"unknown variable {v}")
    return PolyMatrix(ring, len(fs), len(vars), [f.diff(v) for f in fs for v in vars])


def build_M_pI(x: PolyMatrix, u: Sequence[Polynomial], p: int, I: Sequence[int]) -> PolyMatrix:
    """The bordered (n+1) x (n+1) matrix whose bottom row is u times the rest.

    The first p columns are the unit vectors e_i for i outside I, the next
    columns are x^{p+1}, ..., x^n and the last one is x^p.  The bottom row is
    (u_i for i outside I, u.x^{p+1}, ..., u.x^n, u.x^p), which is the
    u-combination of the rows above, so the determinant vanishes.  Expanding
    along the bottom row, the corner cofactor is +-m_{p+1,I}.
    """
    n = x.rows
    if not 1 <= p < n:
        raise ValueError("need 1 <= p < n")
    I = index_set(I, n)
    if len(I) != n - p:
        raise ValueError("|I| must be n - p")
    ring = x.ring
    comp = [i for i in range(1, n + 1) if i not in I]
    cols: List[List[Polynomial]] = []
    for i in comp:
        cols.append([ring.one() if r == i else ring.zero() for r in range(1, n + 1)])
    for s in list(range(p + 1, n + 1)) + [p]:
        cols.append(x.col(s - 1))
    ents = []
    for r in range(n):
        ents += [c[r] for c in cols]
    bottom = []
    for c in cols:
        acc = ring.zero()
        for r in range(n):
            acc = acc + u[r] * c[r]
        bottom.append(acc)
    ents += bottom
    return PolyMatrix(ring, n + 1, n + 1, ents)


def u_dot(u: Sequence[Polynomial], column: Sequence[Polynomial]) -> Polynomial:
    acc = column[0].ring.zero() if column else None
    for a, b in zip(u, column):
        acc = acc + a * b
    return acc


def parse_matrix(ring: RingSpec, text: str) -> PolyMatrix:
    """Matrix literal ``[[p11, p12], [p21, p22]]``."""
    body = text.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ValueError("matrix literal must look like [[...], [...]]")
    rows = []
    depth = 0
    cur = ""
    row: List[str] = []
    for ch in body[1:-1]:
        if ch == "[":
            depth += 1
            if depth == 1:
                row, cur = [], ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                row.append(cur)
                rows.append(row)
                continue
        elif ch == "," and depth == 1:
            row.append(cur)
            cur = ""
            continue
        if depth >= 1:
            cur += ch
    return PolyMatrix.from_rows(ring, [[ring.parse(e) for e in r] for r in rows])


def sparse_solve(cols: List[Dict], rhs: Dict) -> Optional[Dict[int, object]]:
    """Solve sum_k x_k cols[k] = rhs over QQ; free unknowns set to zero."""
    rows_index: Dict = {}
    for col in cols:
        for key in col:
            rows_index.setdefault(key, len(rows_index))
    for key in rhs:
        if key not in rows_index:
            rows_index[key] = len(rows_index)
    # row-wise equations: row -> {col: coeff}, plus rhs value
    eqs: List[Dict[int, object]] = [dict() for _ in rows_index]
    b = [mpq(0)] * len(rows_index)
    for k, col in enumerate(cols):
        for key, v in col.items():
            eqs[rows_index[key]][k] = mpq(v)
    for key, v in rhs.items():
        b[rows_index[key]] = mpq(v)
    # echelon form keyed by pivot column (the smallest column of its row)
    pivots: Dict[int, Tuple[Dict[int, object], object]] = {}
    for eq, bv in zip(eqs, b):
        eq = dict(eq)
        heap = [k for k in eq if k in pivots]
        heapq.heapify(heap)
        while heap:
            pc = heapq.heappop(heap)
            c = eq.get(pc)
            if not c:
                continue
            peq, pb = pivots[pc]
            for k, v in peq.items():
                nv = eq.get(k, 0) - c * v
                if nv:
                    if k not in eq and k in pivots:
                        heapq.heappush(heap, k)
                    eq[k] = nv
                else:
                    eq.pop(k, None)
            bv = bv - c * pb
        if not eq:
            if bv:
                return None
            continue
        pc = min(eq)
        pv = eq[pc]
        pivots[pc] = ({k: v / pv for k, v in eq.items()}, bv / pv)
    # back substitution, free unknowns at zero
    x: Dict[int, object] = {}
    for pc in sorted(pivots, reverse=True):
        peq, pb = pivots[pc]
        val = pb - sum((v * x[k] for k, v in peq.items() if k != pc and k in x), mpq(0))
        if val:
            x[pc] = val
    return x
