"""Buchberger engine and the ideal calculus built on it.

Inside the engine a monomial is one int ``X = (V << EB) | E``.  ``E`` is the
exactpoly packing of the exponents (with guard bits), ``V`` packs the digits
of a nonnegative weight matrix realizing the monomial order, most significant
digit first, followed by the total degree.  Comparing two ints compares the
monomials, multiplying monomials is int addition, and divisibility is a
single guarded subtraction.
"""

from __future__ import annotations

import contextvars
import heapq
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .exactpoly import FIELD_BITS, FIELD_MASK, Polynomial, RingMismatch, RingSpec, serialize

__all__ = [
    "MonomialOrder", "LEX", "GREVLEX", "elimination_order", "Budget", "BudgetExceeded",
    "budget_scope", "GroebnerBasis", "Ideal", "buchberger", "normal_form",
    "ideal_sum", "ideal_product", "ideal_intersection", "saturation", "eliminate",
    "krull_dim", "ideals_equal", "is_unit_ideal", "format_ideal", "parse_ideal",
]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "lex" | "grevlex" | "elim"
    block: int = 0  # front-block size for "elim"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown order {self.kind}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a front block")

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination_order(block: int) -> MonomialOrder:
    return MonomialOrder("elim", block)


# ---------------------------------------------------------------------------
# budgets

@dataclass
class Budget:
    steps: int = 10 ** 7
    seconds: float = 300.0


class BudgetExceeded(RuntimeError):
    def __init__(self, reason: str, stats: dict):
        super().__init__(reason)
        self.reason = reason
        self.stats = stats


class _Meter:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.seconds
        self.steps = 0
        self.pairs = 0
        self.max_basis = 0
        self.gb_calls = 0

    def stats(self) -> dict:
        return {"reductions": self.steps, "pairs": self.pairs,
                "max_basis": self.max_basis, "gb_calls": self.gb_calls}


_METER: contextvars.ContextVar[Optional[_Meter]] = contextvars.ContextVar("chowforge_meter", default=None)


@contextmanager
def budget_scope(budget: Budget):
    """All GB work inside the block shares one step and wall-clock budget."""
    meter = _Meter(budget)
    tok = _METER.set(meter)
    try:
        yield meter
    finally:
        _METER.reset(tok)


def _meter() -> _Meter:
    m = _METER.get()
    if m is None:
        m = _Meter(Budget())
        _METER.set(m)
    return m


def current_stats() -> dict:
    return _meter().stats()


# ---------------------------------------------------------------------------
# packing

class _Packer:
    def __init__(self, ring: RingSpec, order: MonomialOrder):
        self.ring = ring
        self.order = order
        n = ring.nvars
        self.eb = FIELD_BITS * n
        self.emask = (1 << self.eb) - 1
        self.guard = ring.guard
        ones = 0
        for i in range(n):
            ones |= 1 << (FIELD_BITS * i)
        self.ones = ones
        live = [i for i in range(n) if i not in ring.eliminated]
        rows: List[List[int]] = []
        if order.kind == "lex":
            rows = [[i] for i in live]
        elif order.kind == "grevlex":
            rows = self._grevlex_rows(live)
        else:
            front = [i for i in live if i < order.block]
            rest = [i for i in live if i >= order.block]
            rows = self._grevlex_rows(front) + self._grevlex_rows(rest)
        rows.append(live)  # total degree, lowest digit
        self.rows = rows
        self.ndigits = len(rows)

    @staticmethod
    def _grevlex_rows(vs: List[int]) -> List[List[int]]:
        return [vs[: len(vs) - k] for k in range(len(vs)) if vs[: len(vs) - k]]

    def key(self, e: int) -> int:
        exps = self.ring.unpack(e)
        v = 0
        for row in self.rows:
            v = (v << FIELD_BITS) | sum(exps[i] for i in row)
        return (v << self.eb) | e

    def deg(self, x: int) -> int:
        return (x >> self.eb) & FIELD_MASK

    def exps(self, x: int) -> int:
        return x & self.emask

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def support(self, x: int) -> int:
        return (((x & self.emask) | self.guard) - self.ones) & self.guard

    def lcm(self, a: int, b: int) -> int:
        ea, eb_ = a & self.emask, b & self.emask
        g = self.guard
        ge = (((ea | g) - eb_) & g) >> 31  # 1 in fields where ea >= eb
        fm = ge * ((1 << 31) - 1)
        return self.key((ea & fm) | (eb_ & ~fm & self.emask))

    def convert(self, p: Polynomial) -> List[Tuple[int, object]]:
        return sorted(((self.key(m), c) for m, c in p.terms.items()), reverse=True)

    def back(self, items) -> Polynomial:
        return Polynomial(self.ring, {x & self.emask: c for x, c in items})


# ---------------------------------------------------------------------------
# engine

class _Poly:
    __slots__ = ("lm", "tail", "sugar")

    def __init__(self, lm, tail, sugar):
        self.lm = lm
        self.tail = tail
        self.sugar = sugar


def _reduce(items, reducers: List[_Poly], pk: _Packer, meter: _Meter) -> List[Tuple[int, object]]:
    """Full reduction of ``items`` by monic ``reducers``; remainder descending."""
    acc = dict(items)
    heap = [-x for x in acc]
    heapq.heapify(heap)
    rem = []
    g = pk.guard
    lms = [r.lm for r in reducers]
    pop, push = heapq.heappop, heapq.heappush
    budget = meter.budget
    while heap:
        x = -pop(heap)
        c = acc.pop(x, 0)
        if not c:
            continue
        xg = x | g
        red = None
        for k, lm in enumerate(lms):
            if (xg - lm) & g == g:
                red = reducers[k]
                break
        if red is None:
            rem.append((x, c))
            continue
        meter.steps += 1
        if meter.steps > budget.steps:
            raise BudgetExceeded("step budget exhausted", meter.stats())
        # the clock is read only every 1024 reductions
        if meter.steps & 1023 == 0 and time.monotonic() > meter.deadline:
            raise BudgetExceeded("time budget exhausted", meter.stats())
        shift = x - red.lm
        get = acc.get
        for y, d in red.tail:
            z = y + shift
            v = get(z)
            if v is None:
                acc[z] = -c * d
                push(heap, -z)
            else:
                acc[z] = v - c * d
    return rem


def _monic(items) -> _Poly:
    lm, lc = items[0]
    if lc != 1:
        inv = 1 / lc
        tail = [(x, c * inv) for x, c in items[1:]]
    else:
        tail = items[1:]
    return lm, tail


def _buchberger(polys: List[List[Tuple[int, object]]], pk: _Packer, meter: _Meter) -> List[_Poly]:
    meter.gb_calls += 1
    store: List[_Poly] = []
    active: List[int] = []
    pairs: Dict[Tuple[int, int], int] = {}
    heap: List[Tuple[int, int, int, int]] = []
    lcms: Dict[Tuple[int, int], int] = {}

    def pair_lcm(i, j):
        k = (i, j) if i < j else (j, i)
        v = lcms.get(k)
        if v is None:
            v = pk.lcm(store[i].lm, store[j].lm)
            lcms[k] = v
        return v

    def update(h: int):
        hp = store[h]
        hsup = pk.support(hp.lm)
        cands = []
        for g in active:
            cands.append((g, pair_lcm(g, h), (pk.support(store[g].lm) & hsup) == 0))
        # Gebauer-Moeller: keep a new pair only if no other new lcm divides its lcm
        kept = []
        while cands:
            g, l, coprime = cands.pop(0)
            if coprime or not (any(pk.divides(l2, l) for _, l2, _ in cands)
                               or any(pk.divides(l2, l) for _, l2, _ in kept)):
                kept.append((g, l, coprime))
        keep = kept
        # drop old pairs made redundant by h
        for (i, j) in list(pairs):
            l = pairs[(i, j)]
            if pk.divides(hp.lm, l) and pair_lcm(i, h) != l and pair_lcm(j, h) != l:
                del pairs[(i, j)]
        for g, l, coprime in keep:
            if coprime:
                continue
            gp = store[g]
            dl = pk.deg(l)
            sugar = max(gp.sugar + dl - pk.deg(gp.lm), hp.sugar + dl - pk.deg(hp.lm))
            k = (g, h)
            pairs[k] = l
            heapq.heappush(heap, (sugar, l, g, h))
        active[:] = [g for g in active if not pk.divides(hp.lm, store[g].lm)]
        active.append(h)
        meter.max_basis = max(meter.max_basis, len(active))

    def add(items, sugar):
        lm, tail = _monic(items)
        store.append(_Poly(lm, tail, sugar))
        update(len(store) - 1)

    # seed: smallest leading terms first
    seeds = sorted((p for p in polys if p), key=lambda p: (max(pk.deg(x) for x, _ in p), p[0][0]))
    for p in seeds:
        sug = max(pk.deg(x) for x, _ in p)
        rem = _reduce(p, [store[i] for i in active], pk, meter)
        if rem:
            if rem[0][0] == pk.key(0):
                return [_Poly(rem[0][0], [], 0)]
            add(rem, sug)

    while heap:
        sugar, l, i, j = heapq.heappop(heap)
        if pairs.get((i, j)) != l:
            continue
        del pairs[(i, j)]
        meter.pairs += 1
        fi, fj = store[i], store[j]
        si, sj = l - fi.lm, l - fj.lm
        spoly = {}
        for x, c in fi.tail:
            spoly[x + si] = c
        for x, c in fj.tail:
            z = x + sj
            v = spoly.get(z, 0) - c
            if v:
                spoly[z] = v
            else:
                spoly.pop(z, None)
        if not spoly:
            continue
        rem = _reduce(list(spoly.items()), [store[k] for k in active], pk, meter)
        if rem:
            if rem[0][0] == pk.key(0):
                return [_Poly(rem[0][0], [], 0)]
            add(rem, sugar)

    basis = [store[k] for k in active]
    basis.sort(key=lambda p: p.lm)
    out = []
    for k, p in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        tail = _reduce(p.tail, others, pk, meter) if p.tail else []
        out.append(_Poly(p.lm, tail, p.sugar))
    out.sort(key=lambda p: p.lm, reverse=True)
    return out


# ---------------------------------------------------------------------------
# public types

class GroebnerBasis:
    """Reduced, monic, interreduced basis sorted by descending leading monomial."""

    def __init__(self, ring: RingSpec, order: MonomialOrder, internal: List[_Poly], packer: _Packer):
        self.ring = ring
        self.order = order
        self._internal = internal
        self._packer = packer
        self.elements: List[Polynomial] = [packer.back([(p.lm, mpq(1))] + p.tail) for p in internal]
        self.leading: List[Polynomial] = [packer.back([(p.lm, mpq(1))]) for p in internal]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and not self.elements[0].is_zero()

    def leading_exponents(self) -> List[Tuple[int, ...]]:
        return [self.ring.unpack(p.lm & self._packer.emask) for p in self._internal]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and self.elements == other.elements)

    def __repr__(self):
        return f"GroebnerBasis({self.order}, {[str(e) for e in self.elements]})"


def buchberger(ideal: "Ideal", order: MonomialOrder = GREVLEX, budget: Optional[Budget] = None) -> GroebnerBasis:
    """Reduced Groebner basis of ideal + ring relations.

    With an explicit budget the call gets its own meter; otherwise it draws on
    the enclosing ``budget_scope``.
    """
    ring = ideal.ring
    pk = _Packer(ring, order)
    gens = list(ideal.generators) + list(ring.relations)
    polys = [pk.convert(g) for g in gens if not g.is_zero()]
    if budget is not None:
        with budget_scope(budget) as meter:
            internal = _buchberger(polys, pk, meter)
    else:
        internal = _buchberger(polys, pk, _meter())
    return GroebnerBasis(ring, order, internal, pk)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    if f.is_zero():
        return f
    pk = G._packer
    rem = _reduce(pk.convert(f), G._internal, pk, _meter())
    return pk.back(rem)


# ---------------------------------------------------------------------------
# ideals

def _fresh(ring: RingSpec, stem: str) -> str:
    name = stem
    while name in ring.index:
        name += "_"
    return name


class Ideal:
    """Generators over a ring; Groebner bases cached per order."""

    def __init__(self, ring: RingSpec, generators: Iterable = ()):
        gens = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            elif g.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._cache: Dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __len__(self):
        return len(self.generators)

    def groebner(self, order: MonomialOrder = GREVLEX, budget: Optional[Budget] = None) -> GroebnerBasis:
        gb = self._cache.get(order)
        if gb is None:
            gb = buchberger(self, order, budget)
            self._cache.setdefault(order, gb)
        return gb

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner())

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def equals(self, other: "Ideal") -> bool:
        return ideals_equal(self, other)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def map(self, assignment, target: Optional[RingSpec] = None) -> "Ideal":
        """Ideal generated by images of the generators under a substitution."""
        imgs = [g.substitute(assignment, target) for g in self.generators]
        ring = target or (imgs[0].ring if imgs else self.ring)
        return Ideal(ring, imgs)

    def coerce(self, ring: RingSpec) -> "Ideal":
        return Ideal(ring, [ring.coerce(g) for g in self.generators])

    def with_generators(self, extra: Iterable) -> "Ideal":
        return Ideal(self.ring, list(self.generators) + list(extra))


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, list(I.generators) + list(J.generators))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def eliminate(I: Ideal, front_vars: Sequence[str]) -> Ideal:
    """Generators of I intersected with the subring free of ``front_vars``."""
    ring = I.ring
    for v in front_vars:
        if v not in ring.index:
            raise KeyError(f"unknown variable {v}")
    front = list(front_vars)
    r2 = ring.reordered(front)
    J = Ideal(r2, [r2.coerce(g) for g in I.generators])
    gb = J.groebner(elimination_order(len(front)))
    out = []
    fset = set(front)
    for g in gb.elements:
        if not fset.intersection(g.variables()):
            out.append(ring.coerce(g))
    return Ideal(ring, out)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    ring = I.ring
    w = _fresh(ring, "w_")
    r2 = ring.extend([w], front=True)
    wv = r2.var(w)
    gens = [wv * r2.coerce(f) for f in I.generators]
    gens += [(1 - wv) * r2.coerce(g) for g in J.generators]
    gb = Ideal(r2, gens).groebner(elimination_order(1))
    return Ideal(ring, [ring.coerce(g) for g in gb.elements if g.degree(w) <= 0])


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity by the Rabinowitsch trick."""
    if f.is_zero():
        raise ValueError("saturation by zero")
    ring = I.ring
    w = _fresh(ring, "w_")
    r2 = ring.extend([w], front=True)
    gens = [r2.coerce(g) for g in I.generators] + [r2.var(w) * r2.coerce(f) - 1]
    gb = Ideal(r2, gens).groebner(elimination_order(1))
    return Ideal(ring, [ring.coerce(g) for g in gb.elements if g.degree(w) <= 0])


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I.contains_ideal(J) and J.contains_ideal(I)


def is_unit_ideal(I: Ideal) -> bool:
    return I.is_unit()


def krull_dim(I: Ideal, order: MonomialOrder = GREVLEX) -> int:
    """Dimension of ring/I; -1 for the unit ideal.

    Largest set of surviving variables containing the support of no leading
    monomial, found by branch and bound.
    """
    gb = I.groebner(order)
    if gb.is_unit():
        return -1
    ring = I.ring
    live = [i for i in range(ring.nvars) if i not in ring.eliminated]
    supports = []
    for exps in gb.leading_exponents():
        s = 0
        for i, e in enumerate(exps):
            if e:
                s |= 1 << i
        supports.append(s)
    return _max_independent(live, supports)


def _max_independent(live: List[int], supports: List[int]) -> int:
    # drop supports that contain another support
    supports = sorted(set(supports), key=lambda s: bin(s).count("1"))
    minimal = []
    for s in supports:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    by_var: Dict[int, List[int]] = {i: [s for s in minimal if s >> i & 1] for i in live}
    best = [0]

    def rec(k: int, chosen: int, size: int):
        if size + (len(live) - k) <= best[0]:
            return
        if k == len(live):
            best[0] = size
            return
        v = live[k]
        nxt = chosen | (1 << v)
        if not any(s & nxt == s for s in by_var[v]):
            rec(k + 1, nxt, size + 1)
        rec(k + 1, chosen, size)

    rec(0, 0, 0)
    return best[0]


# ---------------------------------------------------------------------------
# exchange format

def format_ideal(I: Ideal) -> str:
    """``ring:`` header, optional ``relations:`` block, one generator per line."""
    ring = I.ring
    lines = ["ring: " + " ".join(ring.variables) + " over QQ"]
    rels = [f"{'+'.join(s)} - 1" for s in ring.simplices] + [serialize(r) for r in ring.relations]
    if rels:
        lines.append("relations:")
        lines += ["  " + r for r in rels]
        lines.append("generators:")
    gens = sorted((serialize(g) for g in I.generators))
    lines += gens
    return "\n".join(lines) + "\n"


def parse_ideal(text: str) -> Ideal:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("ring:"):
        raise ValueError("missing ring header")
    head = lines[0][len("ring:"):].split()
    if len(head) < 2 or head[-2:] != ["over", "QQ"]:
        raise ValueError("ring header must end with 'over QQ'")
    variables = head[:-2]
    k = 1
    simplices, relations = [], []
    if k < len(lines) and lines[k] == "relations:":
        k += 1
        while k < len(lines) and lines[k] != "generators:":
            rel = lines[k]
            simplex = _as_simplex(rel, variables)
            if simplex:
                simplices.append(simplex)
            else:
                relations.append(rel)
            k += 1
        if k < len(lines):
            k += 1
    ring = RingSpec(variables, relations, simplices)
    return Ideal(ring, [ring.parse(ln) for ln in lines[k:]])


def _as_simplex(rel: str, variables: List[str]):
    body = rel.replace(" ", "")
    if not body.endswith("-1"):
        return None
    names = body[:-2].split("+")
    if len(names) >= 2 and all(n in variables for n in names):
        return names
    return None
