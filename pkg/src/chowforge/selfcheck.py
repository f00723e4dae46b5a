"""Engine self-checks: Groebner bases, membership, dimension and determinants.

Each check draws its instances from a seeded RNG and compares the engine
against an independent computation: the Buchberger criterion, a Macaulay
matrix for membership, subset enumeration for monomial dimension, and
cofactor expansion against Bareiss.
"""

from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from .exactpoly import Polynomial, RingSpec
from .groebner import Ideal, krull_dim
from .matdet import PolyMatrix, det_bareiss, det_cofactor, generic_matrix, sparse_solve
from .report import Outcome, outcome

SMALL_VARS = ("x", "y", "z")


def random_poly(rng: random.Random, ring: RingSpec, max_deg: int, terms: int,
                min_deg: int = 0) -> Polynomial:
    nv = len(ring.free_vars)
    out = {}
    for _ in range(terms):
        exps = [0] * nv
        for _ in range(rng.randint(min_deg, max_deg)):
            exps[rng.randrange(nv)] += 1
        out[tuple(exps)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return ring.from_terms(_full(ring, out))


def _full(ring: RingSpec, terms: Dict[Tuple[int, ...], int]) -> Dict[Tuple[int, ...], int]:
    # free-variable exponents to full exponent vectors
    free = [ring.index[v] for v in ring.free_vars]
    res = {}
    for e, c in terms.items():
        full = [0] * ring.nvars
        for i, k in zip(free, e):
            full[i] = k
        res[tuple(full)] = res.get(tuple(full), 0) + c
    return res


def random_ideal(rng: random.Random, nvars: int = 3, ngens: Optional[int] = None) -> Ideal:
    ring = RingSpec(SMALL_VARS[:nvars])
    k = ngens if ngens is not None else rng.randint(1, 3)
    # no constant terms, so the unit ideal stays rare
    return Ideal(ring, [random_poly(rng, ring, 2, rng.randint(1, 3), min_deg=1) for _ in range(k)])


def _monomials_upto(ring: RingSpec, deg: int) -> List[Polynomial]:
    nv = len(ring.free_vars)
    out = []
    for d in range(deg + 1):
        for combo in combinations_with_replacement(range(nv), d):
            e = [0] * nv
            for i in combo:
                e[i] += 1
            out.append(ring.from_terms(_full(ring, {tuple(e): 1})))
    return out


def macaulay_member(I: Ideal, f: Polynomial, degree: int) -> bool:
    """Is f a QQ-combination of m*g with deg(m*g) <= degree?"""
    cols = []
    for g in I.generators:
        for m in _monomials_upto(I.ring, degree - g.total_degree()):
            cols.append({e: c for e, c in (m * g).terms.items()})
    rhs = dict(f.terms)
    if not rhs:
        return True
    return sparse_solve(cols, rhs) is not None


def spoly(f: Polynomial, lf: Tuple[int, ...], g: Polynomial, lg: Tuple[int, ...]) -> Polynomial:
    ring = f.ring
    l = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = ring.from_terms({tuple(a - b for a, b in zip(l, lf)): 1})
    mg = ring.from_terms({tuple(a - b for a, b in zip(l, lg)): 1})
    return mf * f - mg * g


def check_gb_idempotence(seed: int = 0, trials: int = 20) -> Outcome:
    """GB(GB(I)) == GB(I), generators reduce to zero, S-pairs reduce to zero."""
    rng = random.Random(seed)
    bad = []
    for t in range(trials):
        I = random_ideal(rng)
        G = I.groebner()
        again = Ideal(I.ring, G.elements).groebner()
        lead = G.leading_exponents()
        spairs_ok = all(G.reduce(spoly(G.elements[i], lead[i], G.elements[j], lead[j])).is_zero()
                        for i, j in combinations(range(len(G)), 2))
        gens_ok = all(G.reduce(g).is_zero() for g in I.generators)
        if again != G or not spairs_ok or not gens_ok:
            bad.append({"trial": t, "ideal": [str(g) for g in I.generators]})
    return outcome(not bad, trials=trials, failures=bad)


def check_membership_oracle(seed: int = 0, trials: int = 20) -> Outcome:
    """GB membership against the Macaulay matrix on 3-variable ideals.

    Half the targets are built as sum h_i g_i, so a certificate exists at the
    construction degree; the rest are random and a GB "no" must not have one.
    """
    rng = random.Random(seed)
    bad = []
    members = 0
    for t in range(trials):
        I = random_ideal(rng)
        if t % 2 == 0:
            hs = [random_poly(rng, I.ring, 1, 2) for _ in I.generators]
            f = sum((h * g for h, g in zip(hs, I.generators)), I.ring.zero())
            D = max([f.total_degree()] + [h.total_degree() + g.total_degree()
                                          for h, g in zip(hs, I.generators)])
            gb_says, oracle = I.contains(f), macaulay_member(I, f, D)
            agree = gb_says and oracle
        else:
            f = random_poly(rng, I.ring, 3, 3)
            gb_says = I.contains(f)
            D = f.total_degree() + 2
            oracle = macaulay_member(I, f, D)
            # a certificate proves membership; a GB "yes" may need a higher degree
            agree = oracle == gb_says or (gb_says and not oracle
                                          and macaulay_member(I, f, D + 3))
        members += gb_says
        if not agree:
            bad.append({"trial": t, "f": str(f), "gb": gb_says, "macaulay": oracle})
    return outcome(not bad, trials=trials, members=members, failures=bad)


def brute_monomial_dim(nvars: int, supports: List[int]) -> int:
    """Largest variable subset containing no generator support."""
    best = -1
    for mask in range(1 << nvars):
        if all(s & mask != s for s in supports):
            best = max(best, bin(mask).count("1"))
    return best


def check_monomial_dim(seed: int = 0, trials: int = 30, max_vars: int = 8) -> Outcome:
    rng = random.Random(seed)
    bad = []
    for t in range(trials):
        nv = rng.randint(1, max_vars)
        ring = RingSpec([f"v{i}" for i in range(nv)])
        gens, supports = [], []
        for _ in range(rng.randint(1, 5)):
            exps = tuple(rng.choice([0, 0, 1, 2]) for _ in range(nv))
            gens.append(ring.from_terms({exps: 1}))
            supports.append(sum(1 << i for i, e in enumerate(exps) if e))
        if 0 in supports:
            expected = -1  # a constant generator
        else:
            expected = brute_monomial_dim(nv, supports)
        got = krull_dim(Ideal(ring, gens))
        if got != expected:
            bad.append({"trial": t, "nvars": nv, "gens": [str(g) for g in gens],
                        "engine": got, "brute": expected})
    return outcome(not bad, trials=trials, failures=bad)


def check_det_agreement(max_size: int = 5, seed: int = 0, trials: int = 10) -> Outcome:
    """Bareiss against cofactor expansion: generic matrices, then sparse random ones."""
    bad = []
    for k in range(1, max_size + 1):
        M = generic_matrix(k, k)
        if det_bareiss(M) != det_cofactor(M):
            bad.append({"generic": k})
    rng = random.Random(seed)
    ring = RingSpec(SMALL_VARS)
    for t in range(trials):
        k = rng.randint(2, max_size)
        rows = [[random_poly(rng, ring, 1, 2) if rng.random() < 0.6 else ring.zero()
                 for _ in range(k)] for _ in range(k)]
        M = PolyMatrix.from_rows(ring, rows)
        if det_bareiss(M) != det_cofactor(M):
            bad.append({"trial": t, "size": k})
    return outcome(not bad, max_size=max_size, trials=trials, failures=bad)
