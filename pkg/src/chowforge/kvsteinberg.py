"""Unipotent LULU products, the contracting homotopy h_n, the lambda moving
construction with its homotopy witnesses, and the Steinberg-symbol identities.

Face identities are checked on *words*: a component of an element of
B^Delta SL_n^r is a tuple of factors, each either a concrete PolyMatrix or a
formal factor H(family, arg) standing for h_n(A_family; arg).  A word is
evaluated either formally (one generic matrix per distinct (family, arg), and
H(k, 0) = I, which is proved separately by ``check_h_at_zero``) or expanded
(H replaced by the actual product of deformed unipotent factors).  Since
substitution is a ring map, formal equality implies equality of the expanded
matrices for every m.

Simplex coordinates follow the rest of the package: the first coordinate of
each simplex is eliminated eagerly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .exactpoly import Polynomial, RingSpec
from .groebner import Ideal, ideals_equal, is_unit_ideal, krull_dim, saturation
from .matdet import PolyMatrix, adjugate, block_embed, det, jacobian, var_name
from .report import Outcome, outcome

PATTERN = "LULU"
SLOTS = "abcd"


# ---------------------------------------------------------------------------
# unipotent quadruples

def _is_unipotent(M: PolyMatrix, lower: bool) -> bool:
    n = M.rows
    for i in range(n):
        for j in range(n):
            e = M[i, j]
            if i == j and e != M.ring.one():
                return False
            if (i < j if lower else i > j) and not e.is_zero():
                return False
    return True


def unipotent(ring: RingSpec, n: int, lower: bool, entries: Dict[Tuple[int, int], Polynomial]) -> PolyMatrix:
    """Unitriangular matrix with the given off-diagonal entries (0-based keys)."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(ring.one())
            elif (i > j) == lower and (i, j) in entries:
                row.append(entries[(i, j)])
            else:
                row.append(ring.zero())
        rows.append(row)
    return PolyMatrix.from_rows(ring, rows)


def _slots(n: int, lower: bool) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if (i > j if lower else i < j)]


def quad_vars(n: int, stem: str) -> List[str]:
    """The 2n(n-1) coordinates of one copy of X_n."""
    out = []
    for f, kind in enumerate(PATTERN):
        for i, j in _slots(n, kind == "L"):
            out.append(var_name(f"{stem}{SLOTS[f]}", i + 1, j + 1))
    return out


def family_vars(n: int, m: int, family: int) -> List[str]:
    """Coordinates of F_n-style products of m copies of X_n, for A_family."""
    out = []
    for k in range(m):
        out += quad_vars(n, f"A{family}q{k}")
    return out


@dataclass(frozen=True)
class UnipotentQuadruple:
    """(A1, B1, A2, B2) with A lower and B upper unitriangular."""
    factors: Tuple[PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix]

    def __post_init__(self):
        if len(self.factors) != 4:
            raise ValueError("a quadruple has four factors")
        n = self.factors[0].rows
        for F, kind in zip(self.factors, PATTERN):
            if F.rows != n or F.cols != n:
                raise ValueError("size mismatch in quadruple")
            if not _is_unipotent(F, kind == "L"):
                raise ValueError(f"factor is not {kind}-unipotent")

    @property
    def n(self) -> int:
        return self.factors[0].rows

    @classmethod
    def generic(cls, ring: RingSpec, n: int, stem: str) -> "UnipotentQuadruple":
        fs = []
        for f, kind in enumerate(PATTERN):
            lower = kind == "L"
            ents = {(i, j): ring.var(var_name(f"{stem}{SLOTS[f]}", i + 1, j + 1))
                    for i, j in _slots(n, lower)}
            fs.append(unipotent(ring, n, lower, ents))
        return cls(tuple(fs))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "UnipotentQuadruple":
        I = PolyMatrix.identity(ring, n)
        return cls((I, I, I, I))

    def deform(self, t: Polynomial) -> "UnipotentQuadruple":
        """I + t(F - I) factorwise; stays unitriangular."""
        I = PolyMatrix.identity(self.factors[0].ring, self.n)
        return UnipotentQuadruple(tuple(I + (F - I).scale(t) for F in self.factors))

    def embed(self, size: int) -> "UnipotentQuadruple":
        return UnipotentQuadruple(tuple(block_embed(F, size) for F in self.factors))

    def inverse_factors(self) -> List[PolyMatrix]:
        """Inverses of the factors; a unitriangular factor with one off-diagonal
        entry per column is inverted by the finite geometric series."""
        out = []
        for F in self.factors:
            I = PolyMatrix.identity(F.ring, self.n)
            N = I - F
            acc, P = I, I
            for _ in range(self.n - 1):
                P = P @ N
                acc = acc + P
            out.append(acc)
        return out


def mu(q: UnipotentQuadruple) -> PolyMatrix:
    A1, B1, A2, B2 = q.factors
    return A1 @ B1 @ A2 @ B2


def mu_m(quads: Sequence[UnipotentQuadruple]) -> PolyMatrix:
    if not quads:
        raise ValueError("empty product has no size")
    n = quads[0].n
    if any(q.n != n for q in quads):
        raise ValueError("quadruples of different sizes")
    P = mu(quads[0])
    for q in quads[1:]:
        P = P @ mu(q)
    return P


def generic_family(ring: RingSpec, n: int, m: int, family: int) -> List[UnipotentQuadruple]:
    return [UnipotentQuadruple.generic(ring, n, f"A{family}q{k}") for k in range(m)]


def default_m(n: int) -> int:
    return n * n - 1


@lru_cache(maxsize=None)
def h_ring(n: int, m: int, families: Tuple[int, ...] = (0,), extra: Tuple[str, ...] = ("y",)) -> RingSpec:
    names = [v for f in families for v in family_vars(n, m, f)]
    return RingSpec(names + list(extra))


def h_factors(quads: Sequence[UnipotentQuadruple], t: Polynomial) -> List[PolyMatrix]:
    out = []
    for q in quads:
        out += list(q.deform(t).factors)
    return out


def contracting_h(n: int, m: Optional[int] = None, t: Optional[Polynomial] = None,
                  ring: Optional[RingSpec] = None, family: int = 0) -> PolyMatrix:
    """h_n(A; t) = mu_m(I + t(A - I)), m = n^2 - 1 by default; t defaults to y."""
    m = default_m(n) if m is None else m
    if ring is None:
        ring = h_ring(n, m, (family,))
    if t is None:
        t = ring.var("y")
    quads = generic_family(ring, n, m, family)
    return mu_m([q.deform(t) for q in quads])


# ---------------------------------------------------------------------------
# checks on mu_m and the contracting homotopy

def check_mu_det(n: int, m: int) -> Outcome:
    """det(mu_m(generic X_n^m)) == 1 as a polynomial identity."""
    R = h_ring(n, m, (0,), ())
    P = mu_m(generic_family(R, n, m, 0))
    d = det(P)
    return outcome(d == R.one(), n=n, m=m, nvars=R.nvars, det_terms=len(d))


def check_h_at_zero(n: int, m: Optional[int] = None, route: str = "auto") -> Outcome:
    """h_n(A; 0) = I.

    The expanded route builds h with symbolic t and substitutes t = 0; the
    factorwise route uses that substitution is a ring map, so h(A; 0) is the
    product of the factors at t = 0, each of which must be I.
    """
    m = default_m(n) if m is None else m
    if route == "auto":
        route = "expanded" if n <= 2 else "factorwise"
    R = h_ring(n, m)
    I = PolyMatrix.identity(R, n)
    if route == "expanded":
        H = contracting_h(n, m, ring=R)
        H0 = H.substitute({**_ident(R), "y": R.zero()}, R)
        return outcome(H0 == I, route=route, n=n, m=m, terms=sum(len(e) for e in H.entries))
    if route != "factorwise":
        raise ValueError(f"unknown route {route}")
    fs = h_factors(generic_family(R, n, m, 0), R.var("y"))
    at0 = [F.substitute({**_ident(R), "y": R.zero()}, R) for F in fs]
    bad = [k for k, F in enumerate(at0) if F != I]
    return outcome(not bad, route=route, n=n, m=m, factors=len(fs), nonidentity=bad)


def check_h_identity_quads(n: int = 2, m: Optional[int] = None) -> Outcome:
    """A = identity quadruples at t = 1 gives I."""
    m = default_m(n) if m is None else m
    R = h_ring(n, m, (0,), ())
    quads = [UnipotentQuadruple.identity(R, n) for _ in range(m)]
    H = mu_m([q.deform(R.one()) for q in quads])
    return outcome(H == PolyMatrix.identity(R, n), n=n, m=m)


def check_h_det(n: int = 2, m: Optional[int] = None) -> Outcome:
    m = default_m(n) if m is None else m
    R = h_ring(n, m)
    d = det(contracting_h(n, m, ring=R))
    return outcome(d == R.one(), n=n, m=m)


def check_h_stabilization(n: int = 2) -> Outcome:
    """j_n(h_n(A; y)) = h_{n+1}(iota_n(A); y), entry by entry.

    iota_n embeds each quadruple of F_n block-diagonally into the first
    n^2 - 1 copies of X_{n+1}; the remaining copies sit at the identity.
    """
    m, M = default_m(n), default_m(n + 1)
    R = h_ring(n, m)
    small = contracting_h(n, m, ring=R)
    quads = [q.embed(n + 1) for q in generic_family(R, n, m, 0)]
    quads += [UnipotentQuadruple.identity(R, n + 1) for _ in range(M - m)]
    big = mu_m([q.deform(R.var("y")) for q in quads])
    bad = block_embed(small, n + 1).mismatches(big)
    return outcome(not bad, n=n, copies_small=m, copies_big=M, mismatches=bad)


def _ident(ring: RingSpec) -> Dict[str, Polynomial]:
    return {v: ring.var(v) for v in ring.free_vars}


# ---------------------------------------------------------------------------
# fiber dimension probes

def seeded_sl2_points(seed: int, count: int, height: int = 3) -> List[List[List[Fraction]]]:
    """Deterministic points of SL_2(Q): I, diag(2, 1/2), then products of
    elementary matrices with small integer entries."""
    pts = [[[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]],
           [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1, 2)]]]
    rng = random.Random(seed)
    while len(pts) < count:
        a, b, c = (rng.randint(-height, height) for _ in range(3))
        # (1 a; 0 1)(1 0; b 1)(1 c; 0 1), scaled by a diagonal unit
        d = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2]))
        m = [[1 + a * b, (1 + a * b) * c + a], [b, b * c + 1]]
        pts.append([[d * m[0][0], d * m[0][1]], [m[1][0] / d, m[1][1] / d]])
    return pts[:count]


def _const_matrix(ring: RingSpec, g) -> PolyMatrix:
    return PolyMatrix.from_rows(ring, [[ring.const(mpq(e.numerator, e.denominator)) for e in row] for row in g])


def fiber_dim_probe(ring: RingSpec, factors: Sequence[Tuple[PolyMatrix, PolyMatrix]],
                    targets: Sequence, expected: int, split: Optional[int] = None,
                    domain_relations: Sequence[Polynomial] = ()) -> Outcome:
    """Dimension of the fibers of M_1...M_k over each target g.

    ``factors`` pairs each M_i with its polynomial inverse.  The fiber ideal
    <entries of M_1...M_k - g> is generated equally well by the entries of
    M_1...M_s - g M_k^{-1}...M_{s+1}^{-1}, which halves the degrees.
    """
    k = len(factors)
    s = (k + 1) // 2 if split is None else split
    n = factors[0][0].rows
    left = PolyMatrix.identity(ring, n)
    for M, _ in factors[:s]:
        left = left @ M
    right = PolyMatrix.identity(ring, n)
    for _, Minv in reversed(factors[s:]):
        right = right @ Minv
    dims, empty = [], []
    for idx, g in enumerate(targets):
        G = _const_matrix(ring, g) if not isinstance(g, PolyMatrix) else g
        D = left - G @ right
        I = Ideal(ring, list(D.entries) + list(domain_relations))
        d = krull_dim(I)
        dims.append(d)
        if d < 0:
            empty.append(idx)
    ok = not empty and all(d == expected for d in dims)
    w = {"dims": dims, "expected": expected, "nvars": len(ring.free_vars)}
    if empty:
        w["empty_fibers"] = empty
    return outcome(ok, **w)


def _quad_factor_pairs(quads: Sequence[UnipotentQuadruple]) -> List[Tuple[PolyMatrix, PolyMatrix]]:
    out = []
    for q in quads:
        out += list(zip(q.factors, q.inverse_factors()))
    return out


def check_mu_fibers(n: int = 2, m: Optional[int] = None, seed: int = 0, samples: int = 3) -> Outcome:
    """mu_m on X_n^m: every fiber over a seeded SL_2(Q) point has dim 2n(n-1)m - (n^2-1)."""
    if n != 2:
        raise ValueError("sample points are only generated for n = 2")
    m = default_m(n) if m is None else m
    R = h_ring(n, m, (0,), ())
    pairs = _quad_factor_pairs(generic_family(R, n, m, 0))
    expected = 2 * n * (n - 1) * m - (n * n - 1)
    out = fiber_dim_probe(R, pairs, seeded_sl2_points(seed, samples), expected)
    out.witness.update(m=m, seed=seed)
    return out


def check_h_fibers(n: int = 2, t_value=1, seed: int = 0, samples: int = 3) -> Outcome:
    """h_n(-; t) at a fixed nonzero t: equal fiber dimensions over sample points."""
    m = default_m(n)
    R = h_ring(n, m, (0,), ())
    tv = R.const(mpq(Fraction(t_value)))
    pairs = []
    for q in generic_family(R, n, m, 0):
        d = q.deform(tv)
        pairs += list(zip(d.factors, d.inverse_factors()))
    expected = 2 * n * (n - 1) * m - (n * n - 1)
    out = fiber_dim_probe(R, pairs, seeded_sl2_points(seed + 1, samples), expected)
    out.witness.update(t=str(t_value), seed=seed)
    return out


# ---------------------------------------------------------------------------
# words and faces

@dataclass(frozen=True)
class H:
    """Formal factor h_n(A_family; arg)."""
    family: int
    arg: Polynomial


Factor = Union[PolyMatrix, H]
Word = Tuple[Factor, ...]


def restrict_word(word: Word, assign: Dict[str, Polynomial], target: RingSpec) -> Word:
    out = []
    for f in word:
        if isinstance(f, H):
            out.append(H(f.family, f.arg.substitute(assign, target)))
        else:
            out.append(f.substitute(assign, target))
    return tuple(out)


def group_face(comps: Sequence[Word], j: int) -> List[Word]:
    """delta_j on an m-tuple: j = 0 drops the first, j = m the last,
    otherwise components j and j+1 are multiplied."""
    comps = list(comps)
    m = len(comps)
    if not 0 <= j <= m:
        raise ValueError("face index out of range")
    if j == 0:
        return comps[1:]
    if j == m:
        return comps[:-1]
    return comps[:j - 1] + [comps[j - 1] + comps[j]] + comps[j + 1:]


def simplex_names(stem: str, dim: int) -> List[str]:
    return [f"{stem}{i}" for i in range(dim + 1)]


def coface_map(ring: RingSpec, dim: int, j: int, src: str, dst: str) -> Dict[str, Polynomial]:
    """partial_j: Delta^{dim-1} (dst coords) -> Delta^dim (src coords)."""
    s = [ring.var(v) for v in simplex_names(dst, dim - 1)]
    img = s[:j] + [ring.zero()] + s[j:]
    out = _ident(ring)
    out.update({f"{src}{i}": img[i] for i in range(dim + 1)})
    return out


def face(comps: Sequence[Word], j: int, ring: RingSpec, dim: int, src: str, dst: str) -> List[Word]:
    """The diagonal face: restrict to src_j = 0, then delta_j."""
    assign = coface_map(ring, dim, j, src, dst)
    return group_face([restrict_word(w, assign, ring) for w in comps], j)


def rho(ring: RingSpec, stem: str, dim: int, omit: Optional[int] = None) -> Polynomial:
    p = ring.one()
    for i, v in enumerate(simplex_names(stem, dim)):
        if i != omit:
            p = p * ring.var(v)
    return p


class WordEvaluator:
    """Turns words into matrices, formally or by expansion."""

    def __init__(self, ring: RingSpec, n: int, mode: str = "formal", m: Optional[int] = None):
        if mode not in ("formal", "expanded"):
            raise ValueError(f"unknown mode {mode}")
        self.base, self.n, self.mode = ring, n, mode
        self.m = default_m(n) if m is None else m
        self.ring = ring
        self._h: Dict[Tuple[int, Polynomial], PolyMatrix] = {}

    def prepare(self, words: Sequence[Word]) -> None:
        if self.mode != "formal":
            return
        keys = []
        for w in words:
            for f in w:
                if isinstance(f, H) and not f.arg.is_zero():
                    k = (f.family, self.base.coerce(f.arg))
                    if k not in keys and k not in self._h:
                        keys.append(k)
        if not keys:
            return
        start = len(self._h)
        names = []
        for idx in range(start, start + len(keys)):
            names += [var_name(f"H{idx}", i + 1, j + 1) for i in range(self.n) for j in range(self.n)]
        self.ring = self.ring.extend(names)
        for k in list(self._h):
            self._h[k] = self._h[k].coerce(self.ring)
        for idx, k in enumerate(keys, start=start):
            self._h[k] = PolyMatrix(self.ring, self.n, self.n,
                                    [self.ring.var(var_name(f"H{idx}", i + 1, j + 1))
                                     for i in range(self.n) for j in range(self.n)])

    def h(self, f: H) -> PolyMatrix:
        arg = self.base.coerce(f.arg)
        if arg.is_zero():
            return PolyMatrix.identity(self.ring, self.n)
        key = (f.family, arg)
        if key not in self._h:
            if self.mode == "formal":
                raise KeyError("prepare() was not called for this word")
            quads = generic_family(self.ring, self.n, self.m, f.family)
            P = PolyMatrix.identity(self.ring, self.n)
            for F in h_factors(quads, arg):
                P = P @ F
            self._h[key] = P
        return self._h[key]

    def word(self, w: Word) -> PolyMatrix:
        P = PolyMatrix.identity(self.ring, self.n)
        for f in w:
            P = P @ (self.h(f) if isinstance(f, H) else f.coerce(self.ring))
        return P


def compare_tuples(ev: WordEvaluator, lhs: Sequence[Word], rhs: Sequence[Word]) -> List[int]:
    """Indices (1-based) of components that differ; [-1] on a length mismatch."""
    if len(lhs) != len(rhs):
        return [-1]
    ev.prepare(list(lhs) + list(rhs))
    return [i + 1 for i, (a, b) in enumerate(zip(lhs, rhs)) if ev.word(a) != ev.word(b)]


def kv_ring(n: int, families: Sequence[int], mode: str, m: int, extra: Sequence[str],
            simplices: Sequence[Sequence[str]]) -> RingSpec:
    fam = [v for f in families for v in family_vars(n, m, f)] if mode == "expanded" else []
    return RingSpec(list(extra) + fam, simplices=simplices)


def generic_affine(ring: RingSpec, n: int, stem: str, coords: Sequence[str]) -> PolyMatrix:
    """n x n matrix with entries c0 + sum c_k * coord_k, coefficients fresh."""
    ents = []
    for i in range(n):
        for j in range(n):
            e = ring.var(var_name(f"{stem}k0", i + 1, j + 1))
            for k, v in enumerate(coords, start=1):
                e = e + ring.var(var_name(f"{stem}k{k}", i + 1, j + 1)) * ring.var(v)
            ents.append(e)
    return PolyMatrix(ring, n, n, ents)


def generic_affine_vars(n: int, stem: str, ncoords: int) -> List[str]:
    return [var_name(f"{stem}k{k}", i + 1, j + 1)
            for k in range(ncoords + 1) for i in range(n) for j in range(n)]


def bump(ring: RingSpec, n: int, coeffs: Sequence[Polynomial], args: Sequence[Polynomial]) -> PolyMatrix:
    """Alternating L, U elementary matrices e(c_k * arg_k); I where all args vanish."""
    P = PolyMatrix.identity(ring, n)
    for k, (c, a) in enumerate(zip(coeffs, args)):
        lower = k % 2 == 0
        P = P @ unipotent(ring, n, lower, {(n - 1, 0) if lower else (0, n - 1): c * a})
    return P


def lambda_words(a: Sequence[Word], rho_poly: Polynomial) -> List[Word]:
    """lambda_a = (a_1 h(A_1, rho) | ... | a_r h(A_r, rho))."""
    return [tuple(w) + (H(i, rho_poly),) for i, w in enumerate(a, start=1)]


def identity_word() -> Word:
    return ()


# ---------------------------------------------------------------------------
# lambda_a

def lambda_build(a: Sequence[PolyMatrix], ring: RingSpec, stem: str = "t",
                 m: Optional[int] = None) -> List[PolyMatrix]:
    """Expanded lambda_a over ring, which must carry the family variables of
    A_1..A_r and the simplex stem0..stem_r."""
    r = len(a)
    n = a[0].rows
    if any(M.rows != n or M.cols != n for M in a):
        raise ValueError("size mismatch")
    ev = WordEvaluator(ring, n, "expanded", m)
    return [ev.word(w) for w in lambda_words([(M,) for M in a], rho(ring, stem, r))]


def _lambda_setup(n: int, r: int, m: int, extra_coords: int = 0):
    ts = simplex_names("t", r)
    ss = simplex_names("s", r - 1)
    cvars = [v for i in range(1, r + 1) for v in generic_affine_vars(n, f"c{i}", r)]
    R = kv_ring(n, range(1, r + 1), "expanded", m, cvars + ts + ss, [ts, ss])
    c = [generic_affine(R, n, f"c{i}", ts[1:]) for i in range(1, r + 1)]
    return R, c


def check_lambda_restr(n: int = 2, r: int = 2, m: Optional[int] = None) -> Outcome:
    """On every facet t_j = 0, lambda_c equals c (generic affine c), expanded."""
    m = 1 if m is None else m
    R, c = _lambda_setup(n, r, m)
    lam = lambda_build(c, R, "t", m)
    bad = []
    for j in range(r + 1):
        assign = coface_map(R, r, j, "t", "s")
        for i, (L, C) in enumerate(zip(lam, c), start=1):
            if L.substitute(assign, R) != C.substitute(assign, R):
                bad.append((j, i))
    return outcome(not bad, n=n, r=r, m=m, mismatches=bad)


def check_lambda_identity_boundary(n: int = 2, r: int = 2, m: Optional[int] = None) -> Outcome:
    """a = I: lambda is (h(A_1, rho) | ...), which is I on the boundary."""
    m = 1 if m is None else m
    R, _ = _lambda_setup(n, r, m)
    I = PolyMatrix.identity(R, n)
    lam = lambda_build([I] * r, R, "t", m)
    bad = []
    for j in range(r + 1):
        assign = coface_map(R, r, j, "t", "s")
        bad += [(j, i) for i, L in enumerate(lam, start=1) if L.substitute(assign, R) != I]
    interior_nontrivial = any(L != I for L in lam)
    return outcome(not bad and interior_nontrivial, n=n, r=r, m=m, mismatches=bad)


def check_lambda_hand(n: int = 2, r: int = 2, m: Optional[int] = None) -> Outcome:
    """lambda_c against the oracle: h with a free parameter y, then y := rho."""
    m = default_m(n) if m is None else m
    R, c = _lambda_setup(n, r, m)
    lam = lambda_build(c, R, "t", m)
    Ry = R.extend(["y"])
    rho_t = rho(Ry, "t", r)
    bad = []
    for i, (L, C) in enumerate(zip(lam, c), start=1):
        Hy = mu_m([q.deform(Ry.var("y")) for q in generic_family(Ry, n, m, i)])
        hand = C.coerce(Ry) @ Hy.substitute({**_ident(Ry), "y": rho_t}, Ry)
        if hand != L.coerce(Ry):
            bad.append(i)
    return outcome(not bad, n=n, r=r, m=m, mismatches=bad)


def check_lambda_flatness(n: int = 2, r: int = 2, seed: int = 0, samples: int = 3) -> Outcome:
    """Fibers of lambda_a at interior points t have one dimension.

    a is an honest element (bump unipotents with faces I); the target is a
    seeded point of SL_2^r.  At fixed t each component is h(A_i; rho(t))
    against a_i(t)^{-1} g_i, and A_0 is free.
    """
    m = default_m(n)
    rng = random.Random(seed)
    R = h_ring(n, m, tuple(range(r + 1)), ())
    pts = seeded_sl2_points(seed + 7, r + 2)[2:]
    dims = []
    cs = [[Fraction(rng.randint(1, 5)) for _ in range(2)] for _ in range(r)]
    for _ in range(samples):
        w = [Fraction(rng.randint(1, 9)) for _ in range(r + 1)]
        tpt = [x / sum(w) for x in w]
        rv = Fraction(1)
        for x in tpt:
            rv *= x
        rho_c = R.const(mpq(rv))
        gens = []
        for i in range(1, r + 1):
            ai = bump(R, n, [R.const(mpq(c)) for c in cs[i - 1]], [rho_c, rho_c])
            pairs = []
            for q in generic_family(R, n, m, i):
                d = q.deform(rho_c)
                pairs += list(zip(d.factors, d.inverse_factors()))
            left = ai
            s = (len(pairs) + 1) // 2
            for M, _ in pairs[:s]:
                left = left @ M
            right = PolyMatrix.identity(R, n)
            for _, Minv in reversed(pairs[s:]):
                right = right @ Minv
            G = _const_matrix(R, pts[(i - 1) % len(pts)])
            gens += list((left - G @ right).entries)
        dims.append(krull_dim(Ideal(R, gens)))
    free = 2 * n * (n - 1) * m
    expected = free + r * (free - (n * n - 1))
    return outcome(all(d == expected for d in dims), dims=dims, expected=expected, seed=seed)


# ---------------------------------------------------------------------------
# homotopy witnesses for the lambda construction

def _b2_setup(n: int, r: int, mode: str, m: int, gen_stems: Sequence[Tuple[str, int]],
              honest_coeffs: int = 0):
    zs = simplex_names("z", r + 1)
    ss = simplex_names("s", r)
    us = simplex_names("u", r - 1)
    extra = []
    for stem, ncoords in gen_stems:
        extra += generic_affine_vars(n, stem, ncoords)
    extra += [f"c{k}" for k in range(honest_coeffs)]
    R = kv_ring(n, range(r + 1), mode, m, extra + zs + ss + us, [zs, ss, us])
    return R, zs, ss, us


def _check_faces(ev: WordEvaluator, R: RingSpec, Gt: Sequence[Word], expected: Dict[int, List[Word]],
                 dim: int) -> Dict[int, List[int]]:
    bad = {}
    for j, exp in expected.items():
        got = face(Gt, j, R, dim, "z", "s")
        diff = compare_tuples(ev, got, exp)
        if diff:
            bad[j] = diff
    return bad


def _as_words(mats: Sequence[PolyMatrix]) -> List[Word]:
    return [(M,) for M in mats]


def _pad(words: List[Word], k: int) -> List[Word]:
    return words + [identity_word()] * k


def b2_item_ii(n: int = 2, r: int = 2, mode: str = "formal", inputs: str = "generic",
               m: Optional[int] = None) -> Outcome:
    """Gt_i = a_i(z_0..z_{r-1}, z_r + z_{r+1}) h(A_i, rho_{r+1}), Gt_{r+1} = h(A_0, rho_{r+1}).

    Faces: j <= r-1 give the faces of a (through s_{r-1}) padded with I, which
    is I when a has trivial faces; j = r gives pi*a; j = r+1 gives lambda_a.
    """
    m = _mode_m(n, mode, m)
    if inputs == "generic":
        R, zs, ss, us = _b2_setup(n, r, mode, m, [(f"g{i}", r) for i in range(1, r + 1)])
        a = [generic_affine(R, n, f"g{i}", ss[1:]) for i in range(1, r + 1)]
    else:
        R, zs, ss, us = _b2_setup(n, r, mode, m, [], honest_coeffs=2 * r)
        rs = rho(R, "s", r)
        a = [bump(R, n, [R.var(f"c{2 * i}"), R.var(f"c{2 * i + 1}")], [rs, rs]) for i in range(r)]
    to_z = _ident(R)
    to_z.update({f"s{k}": R.var(f"z{k}") for k in range(1, r)})
    to_z[f"s{r}"] = R.var(f"z{r}") + R.var(f"z{r + 1}")
    rho_top = rho(R, "z", r + 1, omit=r + 1)
    Gt = [(A.substitute(to_z, R), H(i, rho_top)) for i, A in enumerate(a, start=1)]
    Gt.append((H(0, rho_top),))
    ev = WordEvaluator(R, n, mode, m)
    a_words = _as_words(a)
    expected = {}
    for j in range(r):
        # faces of a pulled back along s_{r-1}: u coordinates, then u_{r-1} -> s_{r-1} + s_r
        fa = face(a_words, j, R, r, "s", "u")
        merge = _ident(R)
        merge.update({f"u{k}": R.var(f"s{k}") for k in range(1, r - 1)})
        merge[f"u{r - 1}"] = R.var(f"s{r - 1}") + R.var(f"s{r}")
        exp = [restrict_word(w, merge, R) for w in fa]
        if inputs == "honest":
            exp = [identity_word()] * len(exp)
        expected[j] = _pad(exp, 1)
    expected[r] = a_words
    expected[r + 1] = lambda_words(a_words, rho(R, "s", r))
    bad = _check_faces(ev, R, Gt, expected, r + 1)
    return outcome(not bad, item="ii", mode=mode, inputs=inputs, n=n, r=r, m=m, failing_faces=bad)


def _horn_inputs(R: RingSpec, n: int, r: int, inputs: str, kind: str) -> List[PolyMatrix]:
    """Gamma on Delta^{r+1}: generic affine, or an honest homotopy built from
    bump unipotents in rho_r, rho_{r+1} (kind "htpy") or rho_{r-1}, rho_r,
    rho_{r+1} (kind "horn")."""
    zs = simplex_names("z", r + 1)
    if inputs == "generic":
        return [generic_affine(R, n, f"g{i}", zs[1:]) for i in range(1, r + 2)]
    omits = [r, r + 1] if kind == "htpy" else [r - 1, r, r + 1]
    args = [rho(R, "z", r + 1, omit=o) for o in omits]
    k = len(omits)
    return [bump(R, n, [R.var(f"c{k * i + e}") for e in range(k)], args) for i in range(r + 1)]


def _mode_m(n: int, mode: str, m: Optional[int]) -> int:
    if m is not None:
        return m
    return default_m(n) if mode == "formal" else 1


def b2_item_iii(n: int = 2, r: int = 2, mode: str = "formal", inputs: str = "generic",
                variant: str = "corrected", m: Optional[int] = None, compare_printed: bool = True) -> Outcome:
    """Gt: lambda_a ~ lambda_b from Gamma: a ~ b.

    printed:   Gt_i = g_i h(A_i, rho_r) for i <= r-1
    corrected: Gt_i = g_i h(A_i, rho_r) h(A_i, rho_{r+1}) for i <= r-1
    and in both Gt_r = g_r h(A_r, rho_{r+1}), Gt_{r+1} = g_{r+1} h(A_r, rho_r) h(A_0, rho).
    Relative form (generic Gamma): face j <= r-1 is the face of Gamma, faces
    r and r+1 are lambda of the faces of Gamma.  The printed variant loses
    lambda at face r+1 for r >= 2; its failing faces are recorded alongside.
    """
    if variant not in ("printed", "corrected"):
        raise ValueError(f"unknown variant {variant}")
    m = _mode_m(n, mode, m)
    stems = [(f"g{i}", r + 1) for i in range(1, r + 2)] if inputs == "generic" else []
    R, zs, ss, us = _b2_setup(n, r, mode, m, stems, honest_coeffs=2 * (r + 1))
    G = _horn_inputs(R, n, r, inputs, "htpy")
    rr, rr1, rfull = (rho(R, "z", r + 1, omit=r), rho(R, "z", r + 1, omit=r + 1), rho(R, "z", r + 1))
    Gt: List[Word] = []
    for i in range(1, r):
        w: Word = (G[i - 1], H(i, rr))
        if variant == "corrected":
            w = w + (H(i, rr1),)
        Gt.append(w)
    Gt.append((G[r - 1], H(r, rr1)))
    Gt.append((G[r], H(r, rr), H(0, rfull)))
    gw = _as_words(G)
    rho_s = rho(R, "s", r)
    expected = {}
    for j in range(r):
        expected[j] = face(gw, j, R, r + 1, "z", "s")
    for j in (r, r + 1):
        expected[j] = lambda_words(face(gw, j, R, r + 1, "z", "s"), rho_s)
    ev = WordEvaluator(R, n, mode, m)
    bad = _check_faces(ev, R, Gt, expected, r + 1)
    w = dict(item="iii", variant=variant, mode=mode, inputs=inputs, n=n, r=r, m=m, failing_faces=bad)
    if inputs == "honest":
        w["input_faces_trivial"] = _low_faces_trivial(ev, R, gw, range(r), r + 1)
        ok = not bad and w["input_faces_trivial"]
    else:
        ok = not bad
    if variant == "corrected" and compare_printed:
        printed = b2_item_iii(n, r, mode, inputs, "printed", m, compare_printed=False)
        w["printed_failing_faces"] = printed.witness["failing_faces"]
    return outcome(ok, **w)


def _low_faces_trivial(ev: WordEvaluator, R: RingSpec, gw: Sequence[Word], js, dim: int) -> bool:
    for j in js:
        f = face(gw, j, R, dim, "z", "s")
        if compare_tuples(ev, f, [identity_word()] * len(f)):
            return False
    return True


def b2_item_iv(n: int = 2, r: int = 2, mode: str = "formal", inputs: str = "generic",
               m: Optional[int] = None) -> Outcome:
    """Gt filling the horn (I, .., I, lambda_a, -, lambda_b) from Gamma filling (I, .., I, a, -, b).

    Faces: j <= r-2 the face of Gamma (I for a horn), r-1 lambda_a, r lambda_c
    with c the r-th face of Gamma, r+1 lambda_b.
    """
    if r < 2:
        raise ValueError("the horn construction needs r >= 2")
    m = _mode_m(n, mode, m)
    stems = [(f"g{i}", r + 1) for i in range(1, r + 2)] if inputs == "generic" else []
    R, zs, ss, us = _b2_setup(n, r, mode, m, stems, honest_coeffs=3 * (r + 1))
    G = _horn_inputs(R, n, r, inputs, "horn")
    p = {k: rho(R, "z", r + 1, omit=k) for k in (r - 1, r, r + 1)}
    rfull = rho(R, "z", r + 1)
    Gt: List[Word] = []
    for i in range(1, r - 1):
        Gt.append((G[i - 1], H(i, p[r - 1]), H(i, p[r]), H(i, p[r + 1])))
    Gt.append((G[r - 2], H(r - 1, p[r]), H(r - 1, p[r + 1])))
    Gt.append((G[r - 1], H(r, p[r + 1]), H(r - 1, p[r - 1])))
    Gt.append((G[r], H(r, p[r - 1]), H(r, p[r]), H(0, rfull)))
    gw = _as_words(G)
    rho_s = rho(R, "s", r)
    expected = {}
    for j in range(r - 1):
        expected[j] = face(gw, j, R, r + 1, "z", "s")
    for j in (r - 1, r, r + 1):
        expected[j] = lambda_words(face(gw, j, R, r + 1, "z", "s"), rho_s)
    ev = WordEvaluator(R, n, mode, m)
    bad = _check_faces(ev, R, Gt, expected, r + 1)
    w = dict(item="iv", mode=mode, inputs=inputs, n=n, r=r, m=m, failing_faces=bad)
    ok = not bad
    if inputs == "honest":
        w["input_faces_trivial"] = _low_faces_trivial(ev, R, gw, range(r - 1), r + 1)
        ok = ok and w["input_faces_trivial"]
    return outcome(ok, **w)


def verify_appendixB2_homotopies(n: int = 2, r: int = 2, mode: str = "formal") -> Dict[str, Outcome]:
    """All three constructions, with generic and with honest inputs."""
    out = {}
    for inputs in ("generic", "honest"):
        out[f"ii/{inputs}"] = b2_item_ii(n, r, mode, inputs)
        out[f"iii/{inputs}"] = b2_item_iii(n, r, mode, inputs)
        if r >= 2:
            out[f"iv/{inputs}"] = b2_item_iv(n, r, mode, inputs)
    return out


# ---------------------------------------------------------------------------
# SK_1 homotopies (n = 2)

def _sk1_setup(n: int, mode: str, m: int):
    ts = simplex_names("z", 2)
    ss = simplex_names("s", 1)
    extra = [var_name(p, i, j) for p in ("a", "b") for i in range(1, n + 1) for j in range(1, n + 1)]
    extra += ["c1", "c2"]
    R = kv_ring(n, (0, 1), mode, m, extra + ts + ss, [ts, ss])
    return R


def _xmat(R: RingSpec, n: int, p: str) -> PolyMatrix:
    return PolyMatrix(R, n, n, [R.var(var_name(p, i, j)) for i in range(1, n + 1) for j in range(1, n + 1)])


def elementary_path(R: RingSpec, n: int, s0: Polynomial, inverse: bool = False) -> PolyMatrix:
    """p(s0, s1) = e_{1n}(s0 c1) e_{n1}(s0 c2): I at s0 = 0 and alpha = e(c1)e(c2) at s0 = 1."""
    up = unipotent(R, n, False, {(0, n - 1): R.var("c1") * s0})
    lo = unipotent(R, n, True, {(n - 1, 0): R.var("c2") * s0})
    if not inverse:
        return up @ lo
    up_i = unipotent(R, n, False, {(0, n - 1): -R.var("c1") * s0})
    lo_i = unipotent(R, n, True, {(n - 1, 0): -R.var("c2") * s0})
    return lo_i @ up_i


def sk1_g(n: int = 2, mode: str = "formal", m: Optional[int] = None) -> Outcome:
    """g_{a,b} = (a h(A_0; t0t1t2) h(A_1; t0t1) | b h(A_1; t0t2 + t1t2)):
    d0 = lambda_b, d1 = lambda_{ab}, d2 = lambda_a."""
    m = _mode_m(n, mode, m)
    R = _sk1_setup(n, mode, m)
    a, b = _xmat(R, n, "a"), _xmat(R, n, "b")
    z0, z1, z2 = (R.var(v) for v in simplex_names("z", 2))
    g = [(a, H(0, z0 * z1 * z2), H(1, z0 * z1)), (b, H(1, z0 * z2 + z1 * z2))]
    rs = rho(R, "s", 1)
    expected = {0: [(b, H(1, rs))], 1: [(a @ b, H(1, rs))], 2: [(a, H(1, rs))]}
    ev = WordEvaluator(R, n, mode, m)
    bad = _check_faces(ev, R, g, expected, 2)
    return outcome(not bad, mode=mode, n=n, m=m, failing_faces=bad)


def sk1_F(n: int = 2, mode: str = "formal", m: Optional[int] = None) -> Outcome:
    """F_alpha = (p(t0+t1, t2) h(A_0; t0t1t2) h(A_1; t0t1) | p^{-1}(t0, t1+t2) h(A_1; t0t1)):
    d0 = I, d1 = I, d2 = lambda_alpha."""
    m = _mode_m(n, mode, m)
    R = _sk1_setup(n, mode, m)
    z0, z1, z2 = (R.var(v) for v in simplex_names("z", 2))
    # p(u0, u1) depends on u0 only; first argument t0 + t1, resp. t0
    p = elementary_path(R, n, z0 + z1)
    p_inv = elementary_path(R, n, z0, inverse=True)
    F = [(p, H(0, z0 * z1 * z2), H(1, z0 * z1)), (p_inv, H(1, z0 * z1))]
    alpha = elementary_path(R, n, R.one())
    ends_ok = (elementary_path(R, n, R.zero()) == PolyMatrix.identity(R, n)
               and elementary_path(R, n, z0) @ elementary_path(R, n, z0, inverse=True) == PolyMatrix.identity(R, n))
    rs = rho(R, "s", 1)
    expected = {0: [identity_word()], 1: [identity_word()], 2: [(alpha, H(1, rs))]}
    ev = WordEvaluator(R, n, mode, m)
    bad = _check_faces(ev, R, F, expected, 2)
    return outcome(not bad and ends_ok, mode=mode, n=n, m=m, failing_faces=bad, path_ok=ends_ok)


def sk1_homotopy_suite(n: int = 2) -> Dict[str, Outcome]:
    return {f"{name}/{mode}": fn(n, mode) for name, fn in (("g", sk1_g), ("F", sk1_F))
            for mode in ("formal", "expanded")}


# ---------------------------------------------------------------------------
# Steinberg symbols

SYMBOL_VARS = ("x", "y", "y1", "y2", "T", "alpha", "alphai", "beta", "betai",
               "s0", "s1", "t0", "t1")


@dataclass(frozen=True)
class SymbolRing:
    """Q[x, y, y1, y2, T, alpha^{+-1}, beta^{+-1}][Delta^1 x Delta^1]."""
    ring: RingSpec

    def __getattr__(self, name):
        if name in SYMBOL_VARS:
            return self.ring.var(name)
        raise AttributeError(name)


@lru_cache(maxsize=None)
def symbol_ring(units: bool = True) -> SymbolRing:
    rels = ["alpha*alphai - 1", "beta*betai - 1"] if units else []
    return SymbolRing(RingSpec(SYMBOL_VARS, rels, simplices=[("s0", "s1"), ("t0", "t1")]))


def steinberg_matrices(S: SymbolRing, alpha: Polynomial, beta: Polynomial,
                       beta_inv: Polynomial) -> Tuple[PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix]:
    """(A_alpha, U_beta, V_beta, W_beta) in the t-simplex."""
    R, x, t1 = S.ring, S.x, S.t1
    A = A_alpha(S, alpha)
    U = PolyMatrix.from_rows(R, [[1, beta * (x - 1) - x * t1], [0, 1]])
    V = PolyMatrix.from_rows(R, [[1, 0], [beta_inv, 1]])
    W = PolyMatrix.from_rows(R, [[1, x * t1 - beta], [0, 1]])
    return A, U, V, W


def A_alpha(S: SymbolRing, alpha: Polynomial) -> PolyMatrix:
    x, t0, t1 = S.x, S.t0, S.t1
    return PolyMatrix.from_rows(S.ring, [[x * t0, x * x * t0 * t1 - alpha], [1, x * t1]])


def check_comm(spec: str = "generic") -> Outcome:
    """A_alpha A_beta = A_{alpha beta} U_beta V_beta W_beta, and the adjugate route
    A_{alpha beta}^{-1} A_alpha A_beta = U V W, modulo the unit relations."""
    S = symbol_ring()
    R = S.ring
    if spec == "generic":
        a, b, bi = S.alpha, S.beta, S.betai
    elif spec == "one":
        a, b, bi = R.one(), R.one(), R.one()
    elif spec == "inverse":
        a, b, bi = S.alpha, S.alphai, S.alpha
    else:
        raise ValueError(f"unknown specialization {spec}")
    A, U, V, W = steinberg_matrices(S, a, b, bi)
    Aab = A_alpha(S, a * b)
    Ab = A_alpha(S, b)
    UVW = U @ V @ W
    lhs = A @ Ab
    product_ok = not lhs.mismatches(Aab @ UVW, quotient=True)
    # det A_gamma = gamma identically
    det_ok = R.equal_mod(det(Aab), a * b)
    inv_det = {"generic": S.alphai * S.betai, "one": R.one(), "inverse": R.one()}[spec]
    adj_route = adjugate(Aab).scale(inv_det) @ lhs
    adj_ok = not adj_route.mismatches(UVW, quotient=True)
    w = dict(spec=spec, product_route=product_ok, adjugate_route=adj_ok, det=det_ok)
    ok = product_ok and adj_ok and det_ok
    if spec == "one":
        # A_1 = U_1 V_1 W_1 is a product of elementary matrices
        A1 = A_alpha(S, R.one())
        w["A1_elementary"] = not A1.mismatches(UVW, quotient=True)
        ok = ok and w["A1_elementary"]
    if spec == "inverse":
        # A_alpha A_{alpha^-1} = (U_1 V_1 W_1)(U V W): six elementary factors
        _, U1, V1, W1 = steinberg_matrices(S, R.one(), R.one(), R.one())
        w["product_elementary"] = not lhs.mismatches(U1 @ V1 @ W1 @ UVW, quotient=True)
        ok = ok and w["product_elementary"]
    return outcome(ok, **w)


def verify_comm() -> Dict[str, Outcome]:
    return {s: check_comm(s) for s in ("generic", "one", "inverse")}


def p_alpha(S: SymbolRing, alpha: Polynomial, s0: Polynomial, s1: Polynomial, y: Polynomial) -> Polynomial:
    return s0 * s0 + s0 * s1 * y + alpha * s1 * s1


def check_palpha_det() -> Outcome:
    """det(t0 I + t1 A_alpha) = t0^2 + x t0 t1 + alpha t1^2 on Delta^1."""
    S = symbol_ring(units=False)
    R = S.ring
    M = PolyMatrix.identity(R, 2).scale(S.t0) + A_alpha(S, S.alpha).scale(S.t1)
    d = det(M)
    target = p_alpha(S, S.alpha, S.t0, S.t1, S.x)
    return outcome(d == target, det=str(d))


def check_palpha_unit() -> Outcome:
    """<p_alpha, t0 t1> = <1> with alpha a unit; not without the inverse, nor at alpha = 0."""
    S = symbol_ring()
    unit = is_unit_ideal(Ideal(S.ring, [p_alpha(S, S.alpha, S.t0, S.t1, S.x), S.t0 * S.t1]))
    F = symbol_ring(units=False)
    no_inverse = is_unit_ideal(Ideal(F.ring, [p_alpha(F, F.alpha, F.t0, F.t1, F.x), F.t0 * F.t1]))
    zero = is_unit_ideal(Ideal(F.ring, [p_alpha(F, F.ring.zero(), F.t0, F.t1, F.x), F.t0 * F.t1]))
    return outcome(unit and not no_inverse and not zero, unit=unit,
                   control_no_inverse_unit=no_inverse, control_alpha0_unit=zero)


def p_alpha_suite() -> Dict[str, Outcome]:
    return {"det": check_palpha_det(), "unit": check_palpha_unit()}


def frak_p(S: SymbolRing, alpha: Polynomial) -> Polynomial:
    """s0^2 + s0 s1 y1 + alpha s1^2 (the y1^2 of one printed display is a typo)."""
    return p_alpha(S, alpha, S.s0, S.s1, S.y1)


def frak_q(S: SymbolRing, beta: Polynomial) -> Polynomial:
    return p_alpha(S, beta, S.t0, S.t1, S.y2)


def f_poly(S: SymbolRing) -> Polynomial:
    return 1 + S.s0 * S.s1 * (S.y - 2) * S.T


def C_ab(S: SymbolRing, a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b - a - b + 1) * S.T + a + b


def h_poly(S: SymbolRing, a: Polynomial, b: Polynomial, printed: bool = False) -> Polynomial:
    """h_{alpha,beta}; the leading term must be s0^4 for the stated specializations,
    ``printed`` uses s0^2 as displayed."""
    s0, s1, y = S.s0, S.s1, S.y
    C = C_ab(S, a, b)
    lead = s0 ** 2 if printed else s0 ** 4
    return (lead + 2 * s0 ** 3 * s1 * y + (y * y + C) * s0 ** 2 * s1 ** 2
            + y * C * s0 * s1 ** 3 + a * b * s1 ** 4)


def g_hat(S: SymbolRing) -> Polynomial:
    s0, s1, t0, t1, T = S.s0, S.s1, S.t0, S.t1, S.T
    return t1 ** 2 * (s0 ** 2 + s0 * s1 * S.y1) + s1 ** 2 * (t0 ** 2 * T ** 2 + t0 * t1 * T * S.y2)


def g_hat1(S: SymbolRing, alpha: Polynomial, alternative: bool = False) -> Polynomial:
    """As printed; ``alternative`` swaps the s1^2 of the second term for s0^2."""
    s0, s1, t0, t1, T = S.s0, S.s1, S.t0, S.t1, S.T
    second = (s0 if alternative else s1) ** 2
    return s1 ** 2 * (1 + t0 * t1 * T * (S.y2 - 2)) - (t1 * T) ** 2 * second * alpha


def _at(S: SymbolRing, p: Polynomial, **values) -> Polynomial:
    assign = _ident(S.ring)
    for k, v in values.items():
        assign[k] = v if isinstance(v, Polynomial) else S.ring.const(v)
    return p.substitute(assign, S.ring)


def _boundary(S: SymbolRing) -> Polynomial:
    return S.s0 * S.s1 * S.t0 * S.t1


def gamma_item1() -> Outcome:
    """J_{alpha,beta} + <s0 s1 t0 t1> = <1>."""
    S = symbol_ring()
    I = Ideal(S.ring, [frak_p(S, S.alpha), frak_q(S, S.beta), _boundary(S)])
    return outcome(is_unit_ideal(I), item=1)


def gamma_item2() -> Outcome:
    """det d(p, q)/d(y1, y2) = s0 s1 t0 t1."""
    S = symbol_ring()
    J = jacobian([frak_p(S, S.alpha), frak_q(S, S.beta)], ["y1", "y2"])
    d = det(J)
    printed = p_alpha(S, S.alpha, S.s0, S.s1, S.y1) - S.alpha * S.s1 ** 2 + S.alpha * S.y1 ** 2
    printed_d = det(jacobian([printed, frak_q(S, S.beta)], ["y1", "y2"]))
    return outcome(d == _boundary(S), item=2, det=str(d),
                   printed_y1sq_matches=(printed_d == _boundary(S)))


def gamma_item3() -> Outcome:
    """f at T = 1 is p_1, and f = 1 at T = 0, s0 = 0, s1 = 0."""
    S = symbol_ring()
    R = S.ring
    f = f_poly(S)
    p1 = p_alpha(S, R.one(), S.s0, S.s1, S.y)
    checks = {
        "T=1": _at(S, f, T=1) == p1,
        "T=0": _at(S, f, T=0) == R.one(),
        "s0=0": _at(S, f, s1=R.one()) == R.one(),
        "s1=0": _at(S, f, s1=R.zero()) == R.one(),
    }
    return outcome(all(checks.values()), item=3, **checks)


def gamma_item4() -> Outcome:
    """h at T = 0 and T = 1, degree and leading coefficient in y, and <h> + <s0 s1> = <1>."""
    S = symbol_ring()
    R = S.ring
    a, b = S.alpha, S.beta
    pa = lambda c: p_alpha(S, c, S.s0, S.s1, S.y)
    h = h_poly(S, a, b)
    lead = sum((c_term for c_term in _y_coeff(S, h, 2)), R.zero())
    checks = {
        "T=0": _at(S, h, T=0) == pa(a) * pa(b),
        "T=1": _at(S, h, T=1) == pa(a * b) * pa(R.one()),
        "deg_y": h.degree("y") == 2,
        "lead_y": lead == S.s0 ** 2 * S.s1 ** 2,
        "unit": is_unit_ideal(Ideal(R, [h, S.s0 * S.s1])),
    }
    hp = h_poly(S, a, b, printed=True)
    info = {"printed_T=0": _at(S, hp, T=0) == pa(a) * pa(b),
            "printed_T=1": _at(S, hp, T=1) == pa(a * b) * pa(R.one())}
    return outcome(all(checks.values()), item=4, **checks, **info)


def _y_coeff(S: SymbolRing, p: Polynomial, k: int) -> List[Polynomial]:
    """Terms of p with y-degree k, with y^k removed."""
    R = S.ring
    iy = R.index["y"]
    out = []
    for e, c in p.items():
        if e[iy] == k:
            e2 = list(e)
            e2[iy] = 0
            out.append(R.from_terms({tuple(e2): c}))
    return out


def gamma_item5() -> Outcome:
    """<p_alpha, g_hat(T=1)> = <p_alpha, q_{-alpha}>; emptiness at T = 0.

    The emptiness is checked over the open square (saturating by s0 s1 t0 t1)
    and, for the record, literally: the literal ideal is not the unit ideal,
    witnessed by alpha = 1, T = 0, t = (1, 0), s = (1/2, 1/2), y1 = -2.
    """
    S = symbol_ring()
    R = S.ring
    p = frak_p(S, S.alpha)
    g = g_hat(S)
    slice_ok = ideals_equal(Ideal(R, [p, _at(S, g, T=1)]), Ideal(R, [p, frak_q(S, -S.alpha)]))
    Z0 = Ideal(R, [p, g, S.T])
    literal = is_unit_ideal(Z0)
    interior = is_unit_ideal(saturation(Z0, _boundary(S)))
    # the literal counterexample, evaluated exactly
    pt = {"alpha": 1, "alphai": 1, "beta": 1, "betai": 1, "T": 0, "t1": 0, "s1": Fraction(1, 2),
          "y1": -2, "y2": 0, "x": 0, "y": 0}
    witness_zero = p.evaluate(pt) == 0 and g.evaluate(pt) == 0
    return outcome(slice_ok and interior, item=5, slice=slice_ok, empty_interior=interior,
                   empty_literal=literal, literal_counterexample_verified=witness_zero)


def gamma_item6() -> Outcome:
    """<p_alpha, g_hat1(T=1)> = <p_alpha, q_{1-alpha}>; emptiness at T = 0 (literal)."""
    S = symbol_ring()
    R = S.ring
    p = frak_p(S, S.alpha)
    g1 = g_hat1(S, S.alpha)
    slice_ok = ideals_equal(Ideal(R, [p, _at(S, g1, T=1)]), Ideal(R, [p, frak_q(S, 1 - S.alpha)]))
    empty = is_unit_ideal(Ideal(R, [p, g1, S.T]))
    alt = g_hat1(S, S.alpha, alternative=True)
    alt_slice = ideals_equal(Ideal(R, [p, _at(S, alt, T=1)]), Ideal(R, [p, frak_q(S, 1 - S.alpha)]))
    return outcome(slice_ok and empty, item=6, slice=slice_ok, empty_T0=empty,
                   alternative_s0sq_slice=alt_slice)


def gamma_item7() -> Outcome:
    """Relative smoothness of Z and Z_1 over the base, via the (y1, y2) Jacobian.

    Over the open square with T inverted this is immediate; the stronger
    check saturates by s0 s1 t0 t1 only, so T = 0 is included.
    """
    S = symbol_ring()
    R = S.ring
    p = frak_p(S, S.alpha)
    res = {}
    for name, g in (("Z", g_hat(S)), ("Z1", g_hat1(S, S.alpha))):
        d = det(jacobian([p, g], ["y1", "y2"]))
        I = Ideal(R, [p, g, d])
        res[f"{name}_open_T_inverted"] = is_unit_ideal(saturation(I, _boundary(S) * S.T))
        res[f"{name}_open"] = is_unit_ideal(saturation(I, _boundary(S)))
        res[f"{name}_jac"] = str(d)
    ok = all(v for k, v in res.items() if k.endswith("inverted") or k.endswith("open"))
    return outcome(ok, item=7, **res)


GAMMA_ITEMS: Dict[int, Callable[[], Outcome]] = {
    1: gamma_item1, 2: gamma_item2, 3: gamma_item3, 4: gamma_item4,
    5: gamma_item5, 6: gamma_item6, 7: gamma_item7,
}


def gamma_suite() -> Dict[int, Outcome]:
    return {k: fn() for k, fn in GAMMA_ITEMS.items()}
