"""Graded invariants of presented rings R = S/I.

Depth is read off a minimal free resolution over the weighted
polynomial cover (Auslander-Buchsbaum), never from a regular-sequence
search; Krull dimension is double-computed (Hilbert pole order and
maximal independent sets of the leading-term ideal) and a mismatch is
a hard internal error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import mono_div, mono_divides
from .config import DEFAULT_CONFIG
from .errors import InternalCheckError
from .groebner import (
    complete,
    ideal,
    ideal_quotient,
    ideals_equal,
    is_unit_ideal,
    normal_form,
)
from .modules import ModuleAmbient, module_buchberger, syzygy_basis, _reduce_module

__all__ = [
    "HilbertSeries",
    "hilbert_series",
    "krull_dim",
    "ResolutionData",
    "min_free_resolution",
    "depth",
    "regular_sequence_test",
    "AssociatedPrimeCheck",
    "is_associated_prime",
    "find_witness",
    "find_separating_element",
]


# ---------------------------------------------------------------------------
# integer polynomials in t, as exponent -> coefficient dicts


def _zp_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _zp_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in out.items() if c}


def _zp_shift(a, k):
    return {e + k: c for e, c in a.items()}


def _minimalize_monomials(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return tuple(out)


_hilbert_cache = {}


def _hilbert_numerator(monos, degrees):
    """Numerator of the Hilbert series of S/(monomial ideal)."""
    monos = _minimalize_monomials(monos)
    key = (monos, degrees)
    got = _hilbert_cache.get(key)
    if got is not None:
        return got
    if not monos:
        out = {0: 1}
    else:
        pairwise_coprime = all(
            all(x == 0 or y == 0 for x, y in zip(a, b))
            for a, b in itertools.combinations(monos, 2)
        )
        wdeg = lambda m: sum(e * d for e, d in zip(m, degrees))
        if pairwise_coprime:
            out = {0: 1}
            for m in monos:
                out = _zp_mul(out, {0: 1, wdeg(m): -1})
        else:
            pivot = max(monos, key=lambda m: (wdeg(m), m))
            rest = tuple(m for m in monos if m != pivot)
            colon = tuple(
                tuple(max(x - y, 0) for x, y in zip(m, pivot)) for m in rest
            )
            out = _zp_sub(
                _hilbert_numerator(rest, degrees),
                _zp_shift(_hilbert_numerator(colon, degrees), wdeg(pivot)),
            )
    _hilbert_cache[key] = out
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """Numerator over the implicit denominator prod (1 - t^{d_i})."""

    numerator: tuple  # ((exponent, coefficient), ...) sorted by exponent
    degree_vector: tuple

    def numerator_dict(self):
        return dict(self.numerator)

    def coefficients(self, upto):
        """Power-series coefficients dim_k R_d for d = 0..upto."""
        coeffs = [0] * (upto + 1)
        for e, c in self.numerator:
            if e <= upto:
                coeffs[e] += c
        for d in self.degree_vector:
            # multiply by 1/(1-t^d)
            for k in range(d, upto + 1):
                coeffs[k] += coeffs[k - d]
        return coeffs

    def pole_order_at_one(self):
        num = dict(self.numerator)
        if not num:
            return 0  # zero ring; no pole
        order_cancelled = 0
        while sum(num.values()) == 0:
            # divide by (1 - t):  q_k = n_k + q_{k-1} ... using n = (1-t) q
            deg = max(num)
            q = {}
            acc = 0
            for e in range(0, deg + 1):
                acc = num.get(e, 0) + acc
                if acc:
                    q[e] = acc
            num = q
            order_cancelled += 1
            if not num:
                break
        return len(self.degree_vector) - order_cancelled


def _leading_monomials(pres, config):
    if not pres.relations:
        return ()
    gb = complete(ideal(pres, pres.relations), config).groebner
    return tuple(g.lm() for g in gb)


_series_cache = {}


def hilbert_series(pres, config=DEFAULT_CONFIG):
    """Hilbert series of S/I, computed from the leading-term ideal."""
    key = (pres.ring, pres.relations)
    got = _series_cache.get(key)
    if got is None:
        lts = _leading_monomials(pres, config)
        num = _hilbert_numerator(lts, pres.ring.degrees)
        got = HilbertSeries(tuple(sorted(num.items())), pres.ring.degrees)
        _series_cache[key] = got
    return got


def krull_dim(pres, config=DEFAULT_CONFIG):
    """Dimension of S/I, by Hilbert pole order cross-checked against the
    maximal independent variable sets of the leading-term ideal."""
    series = hilbert_series(pres, config)
    dim_pole = series.pole_order_at_one()

    lts = _leading_monomials(pres, config)
    n = pres.ring.ngens
    masks = []
    for m in lts:
        mask = 0
        for i, e in enumerate(m):
            if e:
                mask |= 1 << i
        masks.append(mask)
    if any(mask == 0 for mask in masks):
        raise ValueError("relation ideal contains a unit; not a graded quotient")
    dim_indep = 0
    for sub in range(1 << n):
        if all(g & ~sub for g in masks):
            c = bin(sub).count("1")
            if c > dim_indep:
                dim_indep = c
    if dim_pole != dim_indep:
        raise InternalCheckError(
            f"Krull dimension mismatch: pole order {dim_pole}, "
            f"independent sets {dim_indep}"
        )
    return dim_pole


# ---------------------------------------------------------------------------
# minimal free resolution and depth


@dataclass(frozen=True)
class ResolutionData:
    """Shift multisets of a minimal graded free resolution of S/I.

    ``levels[k]`` lists the generator degrees of F_k; level 0 is the
    cover itself.  Length equals the projective dimension.
    """

    levels: tuple

    @property
    def length(self):
        return len(self.levels) - 1

    @property
    def ranks(self):
        return tuple(len(l) for l in self.levels)

    def betti_numerator(self):
        """Alternating sum over levels of t^{shift}; equals the Hilbert
        numerator of S/I (Euler characteristic identity)."""
        out = {}
        sign = 1
        for level in self.levels:
            for s in level:
                out[s] = out.get(s, 0) + sign
            sign = -sign
        return {e: c for e, c in out.items() if c}


def _ring_mingen(pres, polys, config):
    """Minimal homogeneous generating subset of an ideal (greedy by degree)."""
    polys = [f for f in polys if not f.is_zero()]
    ordered = sorted(polys, key=lambda f: (f.degree(), f.terms))
    kept = []
    for f in ordered:
        if not kept:
            kept.append(f)
            continue
        if not normal_form(f, complete(ideal(pres, tuple(kept)), config)).is_zero():
            kept.append(f)
    return kept


def _module_mingen(elements, config):
    ordered = sorted(elements, key=lambda u: (u.degree(), u.terms))
    kept = []
    kept_gb = ()
    for u in ordered:
        if kept and _reduce_module(u, list(kept_gb)).is_zero():
            continue
        kept.append(u)
        kept_gb = module_buchberger(tuple(kept_gb) + (u,), config=config)
    return kept


_resolution_cache = {}


def min_free_resolution(pres, config=DEFAULT_CONFIG):
    """Minimal graded free resolution of S/I over the cover S.

    Built as iterated minimal generating sets of syzygy kernels; the
    no-unit-entry invariant is asserted on every level.
    """
    key = (pres.ring, pres.relations)
    got = _resolution_cache.get(key)
    if got is not None:
        return got

    ring = pres.ring
    n = ring.ngens
    levels = [(0,)]
    gens = _ring_mingen(pres, pres.relations, config)
    if not gens:
        data = ResolutionData(tuple(levels))
        _resolution_cache[key] = data
        return data

    amb = ModuleAmbient(ring, (0,))
    columns = [amb.basis_vector(0, f.monic()) for f in gens]
    levels.append(tuple(f.degree() for f in gens))

    while True:
        syz_amb, syz = syzygy_basis(columns, amb, config=config)
        if not syz:
            break
        mingens = _module_mingen(syz, config)
        zero_mono = (0,) * ring.ngens
        for u in mingens:
            if any(m == zero_mono for (_, m), _ in u.terms):
                raise InternalCheckError("unit entry in a syzygy differential")
        levels.append(tuple(u.degree() for u in mingens))
        if len(levels) - 1 > n:
            raise InternalCheckError(
                "resolution exceeds the Hilbert syzygy bound"
            )
        amb = syz_amb
        columns = mingens

    data = ResolutionData(tuple(levels))
    _resolution_cache[key] = data
    return data


_depth_cache = {}


def depth(pres, config=DEFAULT_CONFIG):
    """Depth of S/I via Auslander-Buchsbaum over the graded cover."""
    key = (pres.ring, pres.relations)
    got = _depth_cache.get(key)
    if got is not None:
        return got
    res = min_free_resolution(pres, config)
    d = pres.ring.ngens - res.length
    dim = krull_dim(pres, config)
    if not 0 <= d <= dim:
        raise InternalCheckError(
            f"depth {d} outside [0, dim {dim}] (Serre inequality violated)"
        )
    _depth_cache[key] = d
    return d


# ---------------------------------------------------------------------------
# regular sequences and associated primes


def regular_sequence_test(pres, xs, config=DEFAULT_CONFIG):
    """Order-sensitive colon-ideal test for a regular sequence on S/I."""
    for x in xs:
        if x.is_zero() or not x.is_homogeneous() or x.degree() <= 0:
            raise ValueError(
                "regular-sequence members must be homogeneous of positive degree"
            )
    prefix = list(pres.relations)
    for x in xs:
        J = complete(ideal(pres, tuple(prefix)), config)
        Q = ideal_quotient(J, x, config)
        if not ideals_equal(Q, J, config):
            return False
        prefix.append(x)
    if is_unit_ideal(ideal(pres, tuple(prefix)), config):
        return False
    return True


@dataclass(frozen=True)
class AssociatedPrimeCheck:
    """Verdict plus the two colon ideals used as certificate."""

    associated: bool
    socle: object  # (I : P)
    annihilator: object  # (I : (I : P)), None when socle == I

    def __bool__(self):
        return self.associated


def is_associated_prime(P, pres, config=DEFAULT_CONFIG):
    """Is the prime P (given with I subseteq P) associated to S/I?

    Criterion: K = (I : P) strictly contains I, and (I : K) (the
    annihilator of K/I) lies inside P.  Primality of P is trusted.
    """
    I = complete(ideal(pres, pres.relations), config)
    Pc = complete(P, config)
    for r in pres.relations:
        if not normal_form(r, Pc).is_zero():
            raise ValueError("candidate prime does not contain the relation ideal")
    K = ideal_quotient(I, Pc, config)
    if ideals_equal(K, I, config):
        return AssociatedPrimeCheck(False, K, None)
    L = ideal_quotient(I, K, config)
    contained = all(normal_form(g, Pc).is_zero() for g in L.require_groebner())
    return AssociatedPrimeCheck(contained, K, L)


# ---------------------------------------------------------------------------
# graded-piece linear algebra for the bounded searches


def monomials_of_degree(ring, d):
    """All monomials of weighted degree exactly d, canonically ordered."""
    n = ring.ngens
    degs = ring.degrees
    out = []

    def rec(i, remaining, expo):
        if i == n:
            if remaining == 0:
                out.append(tuple(expo))
            return
        if degs[i] == 0:
            # degree-0 generators never appear in graded pieces
            expo.append(0)
            rec(i + 1, remaining, expo)
            expo.pop()
            return
        maxe = remaining // degs[i]
        for e in range(maxe + 1):
            expo.append(e)
            rec(i + 1, remaining - e * degs[i], expo)
            expo.pop()

    rec(0, d, [])
    out.sort(key=ring.order_key, reverse=True)
    return out


def _rref(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    rows = [r[:] for r in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                c = rows[r][col] % p
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def ideal_degree_basis(I, d, config=DEFAULT_CONFIG):
    """Row-reduced basis of the degree-d graded piece of a completed ideal."""
    Ic = complete(I, config)
    ring = I.presentation.ring
    monos = monomials_of_degree(ring, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in Ic.groebner:
        dg = g.degree()
        if dg is None or dg > d:
            continue
        for u in monomials_of_degree(ring, d - dg):
            f = g.mul_term(u, 1)
            row = [0] * len(monos)
            for m, c in f.terms:
                row[index[m]] = c
            rows.append(row)
    reduced, _ = _rref(rows, ring.field.p)
    out = []
    for row in reduced:
        out.append(ring.from_dict({monos[i]: c for i, c in enumerate(row) if c}))
    return out, monos


def _piece_mod_ideal(P, I, d, config):
    """Representatives spanning P_d / I_d."""
    ring = P.presentation.ring
    p = ring.field.p
    rows_P, monos = ideal_degree_basis(P, d, config)
    rows_I, _ = ideal_degree_basis(I, d, config)
    index = {m: i for i, m in enumerate(monos)}

    def to_row(f):
        row = [0] * len(monos)
        for m, c in f.terms:
            row[index[m]] = c
        return row

    stacked = [to_row(f) for f in rows_I]
    ncols = len(monos)
    reps = []
    if not ncols:
        return reps
    echelon, pivots = _rref(stacked, p) if stacked else ([], [])
    for f in rows_P:
        row = to_row(f)
        # reduce against I_d
        for erow, pc in zip(echelon, pivots):
            if row[pc] % p:
                c = row[pc] % p
                row = [(a - c * b) % p for a, b in zip(row, erow)]
        if any(row):
            # also reduce against previously kept reps for independence
            sub, piv = _rref(reps + [row], p)
            if len(sub) > len(reps):
                reps = sub
    return [
        P.presentation.ring.from_dict(
            {monos[i]: c for i, c in enumerate(row) if c}
        )
        for row in reps
    ]


def _combinations(vectors, p, cap):
    """Nonzero F_p-combinations, singles first, capped and deterministic."""
    k = len(vectors)
    count = 0
    for support_size in range(1, k + 1):
        for positions in itertools.combinations(range(k), support_size):
            for coeffs in itertools.product(range(1, p), repeat=support_size):
                f = None
                for pos, c in zip(positions, coeffs):
                    term = vectors[pos] * c
                    f = term if f is None else f + term
                if f is not None and not f.is_zero():
                    yield f
                count += 1
                if count >= cap:
                    return


def find_witness(P, pres, degree_bound=None, config=DEFAULT_CONFIG):
    """Homogeneous y with (I : y) = P, or None if the bound was hit.

    Requires P associated; raises ValueError otherwise.
    """
    if degree_bound is None:
        degree_bound = config.degree_bound
    chk = is_associated_prime(P, pres, config)
    if not chk:
        raise ValueError("witness search requires an associated prime")
    I = complete(ideal(pres, pres.relations), config)
    K = chk.socle
    Pc = complete(P, config)
    for d in range(0, degree_bound + 1):
        reps = _piece_mod_ideal(K, I, d, config)
        if not reps:
            continue
        for y in _combinations(reps, pres.ring.field.p, config.combination_cap):
            if ideals_equal(ideal_quotient(I, y, config), Pc, config):
                return y
    return None


def find_separating_element(P, avoid, degree_bound=None, config=DEFAULT_CONFIG):
    """Homogeneous tau in P avoiding every ideal in ``avoid``.

    Returns None when the degree bound truncates the search; raises
    ValueError when P is contained in some avoid ideal (no tau exists).
    """
    if degree_bound is None:
        degree_bound = config.degree_bound
    pres = P.presentation
    Pc = complete(P, config)
    avoid_c = [complete(A, config) for A in avoid]
    for i, A in enumerate(avoid_c):
        if all(normal_form(g, A).is_zero() for g in Pc.groebner):
            raise ValueError(
                f"P is contained in avoid ideal #{i}; no separating element exists"
            )
    I = complete(ideal(pres, pres.relations), config)
    for d in range(1, degree_bound + 1):
        reps = _piece_mod_ideal(Pc, I, d, config)
        if not reps:
            continue
        for tau in _combinations(reps, pres.ring.field.p, config.combination_cap):
            if all(not normal_form(tau, A).is_zero() for A in avoid_c):
                return tau
    return None
