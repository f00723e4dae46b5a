"""Sparse multivariate polynomials over QQ with quotient relations.

Monomials are packed into a single Python int: the exponent of variable i
lives in bits [32*i, 32*i + 31).  Bit 31 of every field is a guard bit, so a
product of two legal monomials never carries across fields and an overflow
shows up as a set guard bit.

Rings know two kinds of relations.  Simplex relations t0 + ... + tr = 1 are
eliminated eagerly (t0 is replaced by 1 - t1 - ... - tr whenever it appears),
so stored polynomials never mention t0.  Every other relation is carried on
the ring and only applied by ``RingSpec.normal_form``.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

FIELD_BITS = 32
FIELD_MASK = (1 << FIELD_BITS) - 1
EXP_CAP = (1 << 31) - 1

Rational = type(mpq(0))
Coeff = Union[int, "mpq"]
Monomial = int


class RingMismatch(ValueError):
    pass


class ExponentOverflow(ArithmeticError):
    pass


def Q(x, y=None):
    """Exact rational from int, string 'p/q', Fraction-like, or a pair."""
    if y is not None:
        return mpq(x, y)
    return mpq(x)


def _guard_mask(n: int) -> int:
    g = 0
    for i in range(n):
        g |= 1 << (FIELD_BITS * i + 31)
    return g


class RingSpec:
    """Polynomial ring QQ[variables] / relations.

    ``simplices`` lists groups of variables summing to one; the first name of
    each group is eliminated.  ``relations`` are strings or polynomials over a
    ring with the same variable names.
    """

    def __init__(self, variables: Sequence[str], relations: Iterable = (),
                 simplices: Iterable[Sequence[str]] = (), exp_cap: int = EXP_CAP):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for v in variables:
            if not _NAME_RE.fullmatch(v):
                raise ValueError(f"bad variable name {v!r}")
        if exp_cap > EXP_CAP:
            raise ValueError("exponent cap above 2^31-1")
        self.variables = variables
        self.nvars = len(variables)
        self.index = {v: i for i, v in enumerate(variables)}
        self.exp_cap = exp_cap
        self.guard = _guard_mask(self.nvars)
        self.simplices = tuple(tuple(s) for s in simplices)
        for s in self.simplices:
            for v in s:
                if v not in self.index:
                    raise ValueError(f"simplex variable {v} not declared")
        self.eliminated = frozenset(self.index[s[0]] for s in self.simplices)
        if len(self.eliminated) != len(self.simplices):
            raise ValueError("overlapping simplices")
        self._elim_images: Dict[int, Polynomial] = {}
        for s in self.simplices:
            terms = {0: mpq(1)}
            for v in s[1:]:
                terms[1 << (FIELD_BITS * self.index[v])] = mpq(-1)
            self._elim_images[self.index[s[0]]] = Polynomial(self, terms)
        self._elim_mask = 0
        for i in self.eliminated:
            self._elim_mask |= FIELD_MASK << (FIELD_BITS * i)
        rels = []
        for r in relations:
            p = self.parse(r) if isinstance(r, str) else self.coerce(r)
            if not p.is_zero():
                rels.append(p)
        self.relations: Tuple[Polynomial, ...] = tuple(rels)
        self._key = (variables, self.simplices,
                     tuple(tuple(sorted(p.terms.items())) for p in self.relations))
        self._hash = hash(self._key)
        self._rel_gb = None

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        return self is other or (isinstance(other, RingSpec) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        extra = ""
        if self.simplices:
            extra += f", simplices={[list(s) for s in self.simplices]}"
        if self.relations:
            extra += f", relations={[str(r) for r in self.relations]}"
        return f"RingSpec({list(self.variables)}{extra})"

    @property
    def free_vars(self) -> List[str]:
        """Variables that survive eager elimination."""
        return [v for i, v in enumerate(self.variables) if i not in self.eliminated]

    # construction ---------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: mpq(1)})

    def const(self, c) -> "Polynomial":
        c = mpq(c)
        return Polynomial(self, {0: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        if i in self._elim_images:
            return self._elim_images[i]
        return Polynomial(self, {1 << (FIELD_BITS * i): mpq(1)})

    def gens(self, *names: str) -> List["Polynomial"]:
        return [self.var(v) for v in (names or self.variables)]

    def pack(self, exps: Sequence[int]) -> Monomial:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        m = 0
        for i, e in enumerate(exps):
            if e < 0 or e > self.exp_cap:
                raise ExponentOverflow(f"exponent {e} outside [0, {self.exp_cap}]")
            m |= e << (FIELD_BITS * i)
        return m

    def unpack(self, m: Monomial) -> Tuple[int, ...]:
        out = [0] * self.nvars
        i = 0
        while m:
            out[i] = m & FIELD_MASK
            m >>= FIELD_BITS
            i += 1
        return tuple(out)

    def monomial(self, **exps: int) -> "Polynomial":
        e = [0] * self.nvars
        for k, v in exps.items():
            e[self.index[k]] = v
        return self.from_terms({tuple(e): 1})

    def from_terms(self, terms: Mapping[Tuple[int, ...], object]) -> "Polynomial":
        """Build from {exponent tuple: coefficient}, eliminating simplex vars."""
        raw = {}
        for e, c in terms.items():
            c = mpq(c)
            if c:
                m = self.pack(e)
                raw[m] = raw.get(m, 0) + c
        return self._finish(raw)

    def _finish(self, raw: Dict[int, object]) -> "Polynomial":
        raw = {m: mpq(c) for m, c in raw.items() if c}
        if self._elim_mask and any(m & self._elim_mask for m in raw):
            return self._eliminate(raw)
        return Polynomial(self, raw)

    def _eliminate(self, raw: Dict[int, object]) -> "Polynomial":
        keep: Dict[int, object] = {}
        out = self.zero()
        for m, c in raw.items():
            if not m & self._elim_mask:
                keep[m] = keep.get(m, 0) + c
                continue
            rest = m & ~self._elim_mask
            factor = Polynomial(self, {rest: mpq(c)})
            for i, img in self._elim_images.items():
                e = (m >> (FIELD_BITS * i)) & FIELD_MASK
                if e:
                    factor = factor * img ** e
            out = out + factor
        return out + Polynomial(self, {m: mpq(c) for m, c in keep.items() if c})

    def check_exponents(self, terms: Mapping[int, object]) -> None:
        g = self.guard
        for m in terms:
            if m & g:
                raise ExponentOverflow("exponent exceeds 2^31-1")
        if self.exp_cap < EXP_CAP:
            for m in terms:
                if max(self.unpack(m)) > self.exp_cap:
                    raise ExponentOverflow(f"exponent exceeds cap {self.exp_cap}")

    # derived rings --------------------------------------------------------
    def extend(self, new_vars: Sequence[str], relations: Iterable = (),
               simplices: Iterable[Sequence[str]] = (), front: bool = False) -> "RingSpec":
        """A ring with extra variables (appended, or prepended when front)."""
        new_vars = list(new_vars)
        vs = new_vars + list(self.variables) if front else list(self.variables) + new_vars
        rels = [str(r) for r in self.relations] + [r if isinstance(r, str) else str(r) for r in relations]
        return RingSpec(vs, rels, list(self.simplices) + [tuple(s) for s in simplices],
                        exp_cap=self.exp_cap)

    def reordered(self, front: Sequence[str]) -> "RingSpec":
        front = list(front)
        rest = [v for v in self.variables if v not in front]
        return RingSpec(front + rest, [str(r) for r in self.relations], self.simplices,
                        exp_cap=self.exp_cap)

    def without_relations(self) -> "RingSpec":
        return RingSpec(self.variables, (), self.simplices, exp_cap=self.exp_cap)

    def coerce(self, p: "Polynomial") -> "Polynomial":
        """Move p into this ring, matching variables by name."""
        if p.ring == self:
            return p if p.ring is self else Polynomial(self, dict(p.terms))
        src = p.ring
        missing = [v for v in p.variables() if v not in self.index]
        if missing:
            raise RingMismatch(f"variables {missing} not in target ring")
        if src.nvars <= self.nvars and all(
                self.index.get(v) == i for i, v in enumerate(src.variables)):
            return self._finish(dict(p.terms))
        return p.substitute({v: self.var(v) for v in p.variables()}, target=self)

    # parsing --------------------------------------------------------------
    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    # quotient -------------------------------------------------------------
    def relation_basis(self):
        if self._rel_gb is None:
            from .groebner import Ideal
            free = self.without_relations()
            self._rel_gb = Ideal(free, [free.coerce(r) for r in self.relations]).groebner()
        return self._rel_gb

    def normal_form(self, p: "Polynomial") -> "Polynomial":
        """Canonical representative of p modulo the non-linear relations."""
        if not self.relations:
            return p
        from .groebner import normal_form
        gb = self.relation_basis()
        return self.coerce(normal_form(gb.ring.coerce(p), gb))

    def equal_mod(self, p: "Polynomial", q: "Polynomial") -> bool:
        return self.normal_form(p - q).is_zero()


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to mpq."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Dict[int, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, mpq(0))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)) or hasattr(other, "numerator"):
            return self.is_constant() and self.constant_value() == mpq(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def items(self) -> Iterator[Tuple[Tuple[int, ...], object]]:
        """(exponent tuple, coefficient) pairs in canonical descending order."""
        for m in self.sorted_monomials():
            yield self.ring.unpack(m), self.terms[m]

    def sorted_monomials(self) -> List[int]:
        unpack = self.ring.unpack
        return sorted(self.terms, key=lambda m: (sum(unpack(m)), unpack(m)), reverse=True)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.unpack(m)) for m in self.terms)

    def degree(self, v: str) -> int:
        i = self.ring.index[v]
        if not self.terms:
            return -1
        return max((m >> (FIELD_BITS * i)) & FIELD_MASK for m in self.terms)

    def variables(self) -> List[str]:
        acc = 0
        for m in self.terms:
            acc |= m
        return [v for i, v in enumerate(self.ring.variables)
                if (acc >> (FIELD_BITS * i)) & FIELD_MASK]

    def coefficients(self) -> List:
        return [self.terms[m] for m in self.sorted_monomials()]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # arithmetic -----------------------------------------------------------
    def _coerce_other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Rational)) or type(other).__name__ in ("mpz", "Fraction"):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce_other(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = -c
            else:
                s = s - c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = mpq(self._coerce_other(other).constant_value())
            if not c:
                return Polynomial(self.ring, {})
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce_other(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return Polynomial(self.ring, {})
        if len(b) == 1:
            (m2, c2), = b.items()
            out = {m1 + m2: c1 * c2 for m1, c1 in a.items()}
        else:
            out = {}
            get = out.get
            for m2, c2 in b.items():
                for m1, c1 in a.items():
                    m = m1 + m2
                    out[m] = get(m, 0) + c1 * c2
            out = {m: c for m, c in out.items() if c}
        if out and self.ring.nvars:
            self.ring.check_exponents(out)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        if e == 0:
            return self.ring.one()
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if e > self.ring.exp_cap:
                raise ExponentOverflow("exponent exceeds cap")
            exps = self.ring.unpack(m)
            if any(x * e > self.ring.exp_cap for x in exps):
                raise ExponentOverflow("exponent exceeds cap")
            return Polynomial(self.ring, {m * e: c ** e})
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * mpq(c)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[self.sorted_monomials()[0]]
        return self * (1 / lc)

    # calculus and maps ----------------------------------------------------
    def diff(self, v: str) -> "Polynomial":
        """Formal partial derivative; relations are not differentiated."""
        if v not in self.ring.index:
            raise KeyError(f"unknown variable {v}")
        i = self.ring.index[v]
        shift = FIELD_BITS * i
        unit = 1 << shift
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & FIELD_MASK
            if e:
                out[m - unit] = c * e
        return Polynomial(self.ring, out)

    def substitute(self, assignment: Mapping[str, "Polynomial"],
                   target: Optional[RingSpec] = None) -> "Polynomial":
        return substitute(self, assignment, target)

    def evaluate(self, point: Mapping[str, object]):
        """Exact value at a rational point (all used variables must be given)."""
        total = mpq(0)
        names = self.ring.variables
        for m, c in self.terms.items():
            val = c
            for i, e in enumerate(self.ring.unpack(m)):
                if e:
                    val *= mpq(point[names[i]]) ** e
            total += val
        return total

    def normal_form(self) -> "Polynomial":
        return self.ring.normal_form(self)

    def equals(self, other: "Polynomial") -> bool:
        """Equality in the quotient ring."""
        return self.ring.equal_mod(self, other)

    # text -----------------------------------------------------------------
    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"Polynomial({serialize(self)!r})"


# ---------------------------------------------------------------------------
# substitution

def substitute(f: Polynomial, assignment: Mapping[str, Polynomial],
               target: Optional[RingSpec] = None) -> Polynomial:
    """Ring map sending each variable of f to its image.

    All images must live in one ring (the target).  Variables of f that are
    not assigned raise KeyError.
    """
    src = f.ring
    images: Dict[int, Polynomial] = {}
    ring = target
    for name, img in assignment.items():
        if name not in src.index:
            continue
        if not isinstance(img, Polynomial):
            if ring is None:
                continue
            img = ring.const(img)
        if ring is None:
            ring = img.ring
        elif img.ring != ring:
            raise RingMismatch(f"image of {name} lives in a different ring")
        images[src.index[name]] = img
    used = 0
    for m in f.terms:
        used |= m
    needed = [i for i in range(src.nvars) if (used >> (FIELD_BITS * i)) & FIELD_MASK]
    for i in needed:
        if i not in images:
            raise KeyError(f"variable {src.variables[i]} not assigned")
    if ring is None:
        if needed:
            raise KeyError("no target ring")
        ring = src
    # images that are single monomials are applied by monomial arithmetic;
    # the rest are grouped so each distinct power product is expanded once
    mono: Dict[int, Tuple[int, object]] = {}
    general: List[int] = []
    for i in needed:
        img = images[i]
        if len(img.terms) == 1:
            (m, c), = img.terms.items()
            mono[i] = (m, c)
        else:
            general.append(i)
    groups: Dict[Tuple[int, ...], Dict[int, object]] = {}
    for m, c in f.terms.items():
        mm = 0
        cc = c
        key = []
        for i in general:
            key.append((m >> (FIELD_BITS * i)) & FIELD_MASK)
        for i, (im, ic) in mono.items():
            e = (m >> (FIELD_BITS * i)) & FIELD_MASK
            if e:
                mm += im * e
                cc = cc * ic ** e if ic != 1 else cc
        if not cc:
            continue
        g = groups.setdefault(tuple(key), {})
        g[mm] = g.get(mm, 0) + cc
    powcache: Dict[Tuple[int, int], Polynomial] = {}

    def power(i, e):
        k = (i, e)
        p = powcache.get(k)
        if p is None:
            p = images[i] if e == 1 else power(i, e - 1) * images[i]
            powcache[k] = p
        return p

    out = ring.zero()
    acc: Dict[int, object] = {}
    for key, part in groups.items():
        part = {m: c for m, c in part.items() if c}
        if not part:
            continue
        ring.check_exponents(part)
        piece = Polynomial(ring, part)
        if any(key):
            factor = None
            for i, e in zip(general, key):
                if e:
                    factor = power(i, e) if factor is None else factor * power(i, e)
            piece = piece * factor
            out = out + piece
        else:
            for m, c in part.items():
                acc[m] = acc.get(m, 0) + c
    if acc:
        out = out + ring._finish(acc)
    return out


# ---------------------------------------------------------------------------
# text syntax

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:\{[0-9,]+\})?")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*(?:\{[0-9,\s]+\})?)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: RingSpec, text: str):
        self.ring = ring
        self.text = text
        self.toks: List[Tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN_RE.match(text, pos)
            if not mt or mt.end() == pos:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            if mt.group(1):
                self.toks.append(("num", mt.group(1)))
            elif mt.group(2):
                self.toks.append(("name", re.sub(r"\s+", "", mt.group(2))))
            else:
                op = mt.group(3)
                self.toks.append(("op", "^" if op == "**" else op))
            pos = mt.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "+"), ("op", "-")):
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.power()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                p = p * self.power()
            elif t == ("op", "/"):
                self.take()
                q = self.power()
                if not q.is_constant() or q.is_zero():
                    raise ValueError("division only by nonzero constants")
                p = p * (1 / q.constant_value())
            else:
                return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            e = int(val)
            if e > self.ring.exp_cap:
                raise ExponentOverflow("exponent exceeds cap")
            return base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring.index:
                raise ValueError(f"unknown variable {val!r}")
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


def _fmt_coeff(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def serialize(p: Polynomial) -> str:
    """Canonical text: terms in descending deglex order, ``c*x^e`` factors."""
    if not p.terms:
        return "0"
    names = p.ring.variables
    parts = []
    for exps, c in p.items():
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(names[i])
            elif e:
                factors.append(f"{names[i]}^{e}")
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = "*".join(factors) if a == 1 else _fmt_coeff(a) + "*" + "*".join(factors)
        else:
            body = _fmt_coeff(a)
        parts.append(("-" if neg else "+", body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def parse(ring: RingSpec, text: str) -> Polynomial:
    return ring.parse(text)


def poly_arith(op: str, a: Polynomial, b) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown op {op}")


def partial_derivative(f: Polynomial, v: str) -> Polynomial:
    return f.diff(v)
