"""Groebner bases and ideal arithmetic over F_p.

All ideals live in the free cover of a :class:`RingPresentation`; the
zero ideal of the quotient ring is represented by the relation ideal
itself, so quotient-ring questions reduce to plain ideal arithmetic
here.  Reduced bases are canonical for the fixed term order, which
makes ideal equality a tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GradedPolynomial,
    PolyRing,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
)
from .config import DEFAULT_CONFIG
from .errors import AmbientMismatchError, DegreeCapExceeded

__all__ = [
    "IdealBasis",
    "ideal",
    "complete",
    "normal_form",
    "buchberger",
    "ideal_sum",
    "ideal_quotient",
    "ideal_intersect",
    "radical_member",
    "ring_map_kernel",
    "ideal_contract",
    "validate_map",
    "ideals_equal",
    "member",
]


@dataclass(frozen=True)
class IdealBasis:
    """Generating set of an ideal, with an optional completed basis."""

    presentation: RingPresentation
    gens: tuple
    groebner: tuple = None
    is_reduced: bool = False

    @property
    def ring(self):
        return self.presentation.ring

    def require_groebner(self):
        if self.groebner is None:
            raise ValueError("ideal basis has not been completed")
        return self.groebner

    def describe(self):
        from .algebra import poly_to_str

        gens = self.groebner if self.groebner is not None else self.gens
        return "(" + ", ".join(poly_to_str(g) for g in gens) + ")"


def ideal(pres, gens):
    """Wrap generators (dropping zeros) as an ideal over ``pres``."""
    out = []
    for g in gens:
        if g.ring != pres.ring:
            raise AmbientMismatchError("generator over a different ring")
        if not g.is_zero():
            out.append(g)
    return IdealBasis(pres, tuple(out))


# ---------------------------------------------------------------------------
# reduction and completion


def _reduce_full(f, basis):
    """Unique remainder of f under division by a list of monic polynomials."""
    ring = f.ring
    out = {}
    h = f
    while not h.is_zero():
        m, c = h.terms[0]
        hit = None
        for g in basis:
            if mono_divides(g.terms[0][0], m):
                hit = g
                break
        if hit is not None:
            h = h - hit.mul_term(mono_div(m, hit.terms[0][0]), c)
        else:
            out[m] = c
            h = GradedPolynomial(ring, h.terms[1:])
    return ring.from_dict(out)


def _spoly(f, g):
    lf, lg = f.terms[0][0], g.terms[0][0]
    l = mono_lcm(lf, lg)
    return f.mul_term(mono_div(l, lf), 1) - g.mul_term(mono_div(l, lg), 1)


def _order_degree(ring, mono):
    # Cap metric: like the weighted degree but aux degree-0 vars count 1,
    # so inhomogeneous-mode runs are bounded too.
    return sum(e * w for e, w in zip(mono, ring._order_weights))


def _gm_update(ring, G, P, f, use_product_criterion):
    """Gebauer-Moeller pair update: append f to G, prune pairs."""
    t = len(G)
    lf = f.terms[0][0]

    # chain-prune old pairs against the newcomer
    kept = []
    for (i, j) in P:
        l = mono_lcm(G[i].terms[0][0], G[j].terms[0][0])
        if (
            not mono_divides(lf, l)
            or mono_lcm(G[i].terms[0][0], lf) == l
            or mono_lcm(G[j].terms[0][0], lf) == l
        ):
            kept.append((i, j))

    # group candidate new pairs by lcm, keep one per minimal lcm
    lcms = {}
    for i in range(t):
        l = mono_lcm(G[i].terms[0][0], lf)
        lcms.setdefault(l, []).append(i)
    minimal = []
    new_pairs = []
    for l in sorted(lcms, key=ring.order_key):
        if any(mono_divides(m, l) for m in minimal):
            continue
        minimal.append(l)
        if use_product_criterion and any(
            mono_coprime(G[i].terms[0][0], lf) for i in lcms[l]
        ):
            continue
        new_pairs.append((lcms[l][0], t))

    G.append(f)
    return kept + new_pairs


def buchberger(
    gens,
    *,
    config=DEFAULT_CONFIG,
    allow_inhomogeneous=False,
    use_product_criterion=True,
):
    """Reduced Groebner basis of the given generators.

    Deterministic for a fixed term order; raises
    :class:`DegreeCapExceeded` rather than truncating.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    if not allow_inhomogeneous:
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator {g}")

    G = []
    P = []
    for g in sorted(gens, key=lambda h: ring.order_key(h.terms[0][0])):
        r = _reduce_full(g, G)
        if not r.is_zero():
            P = _gm_update(ring, G, P, r.monic(), use_product_criterion)

    while P:
        best = None
        best_rank = None
        for (i, j) in P:
            l = mono_lcm(G[i].terms[0][0], G[j].terms[0][0])
            rank = (_order_degree(ring, l), ring.order_key(l), i, j)
            if best_rank is None or rank < best_rank:
                best_rank = rank
                best = (i, j)
        if best_rank[0] > config.max_gb_degree:
            raise DegreeCapExceeded(
                f"S-pair degree {best_rank[0]} exceeds cap {config.max_gb_degree}"
            )
        P.remove(best)
        s = _spoly(G[best[0]], G[best[1]])
        r = _reduce_full(s, G)
        if not r.is_zero():
            P = _gm_update(ring, G, P, r.monic(), use_product_criterion)

    # minimalize: keep only lead terms minimal under divisibility
    minimal = []
    for g in sorted(G, key=lambda h: ring.order_key(h.terms[0][0])):
        if not any(mono_divides(m.terms[0][0], g.terms[0][0]) for m in minimal):
            minimal.append(g)
    # interreduce tails to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            r = _reduce_full(g, others)
            if r.terms != g.terms:
                minimal[i] = r.monic()
                changed = True
    minimal.sort(key=lambda h: ring.order_key(h.terms[0][0]))
    return tuple(minimal)


_completion_cache = {}


def complete(I, config=DEFAULT_CONFIG):
    """Return an equal ideal carrying its reduced Groebner basis."""
    if I.groebner is not None and I.is_reduced:
        return I
    key = (I.presentation.ring, I.gens, config.max_gb_degree)
    gb = _completion_cache.get(key)
    if gb is None:
        inhomog = any(not g.is_homogeneous() for g in I.gens)
        gb = buchberger(I.gens, config=config, allow_inhomogeneous=inhomog)
        _completion_cache[key] = gb
    return IdealBasis(I.presentation, I.gens, gb, True)


def normal_form(f, I):
    """Unique remainder of f modulo a completed ideal; zero iff f in I."""
    if f.ring != I.presentation.ring:
        raise AmbientMismatchError("polynomial over a different ring")
    return _reduce_full(f, list(I.require_groebner()))


def member(f, I, config=DEFAULT_CONFIG):
    return normal_form(f, complete(I, config)).is_zero()


def ideals_equal(I, J, config=DEFAULT_CONFIG):
    """Canonical-form comparison; requires a common ambient ring."""
    if I.presentation.ring != J.presentation.ring:
        raise AmbientMismatchError("ideals over different rings")
    return complete(I, config).groebner == complete(J, config).groebner


def is_zero_ideal(I, config=DEFAULT_CONFIG):
    return not complete(I, config).groebner


def is_unit_ideal(I, config=DEFAULT_CONFIG):
    gb = complete(I, config).groebner
    return len(gb) == 1 and gb[0].degree() == 0


def ideal_sum(I, J):
    if I.presentation.ring != J.presentation.ring:
        raise AmbientMismatchError("ideals over different rings")
    return ideal(I.presentation, I.gens + J.gens)


# ---------------------------------------------------------------------------
# ring extensions for the two inhomogeneous constructions and elimination


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def _lift(poly, ext_ring, offset, ncols):
    """Embed a polynomial into an extension ring, shifting slots by offset."""
    terms = []
    for mono, coeff in poly.terms:
        m = [0] * ncols
        for i, e in enumerate(mono):
            m[offset + i] = e
        terms.append((tuple(m), coeff))
    return ext_ring.from_dict(dict(terms))


def _project(poly, src_ring, offset, width):
    """Drop all slots outside [offset, offset+width); caller guarantees
    the polynomial does not involve them."""
    d = {}
    for mono, coeff in poly.terms:
        d[tuple(mono[offset : offset + width])] = coeff
    return src_ring.from_dict(d)


def ideal_intersect(I, J, config=DEFAULT_CONFIG):
    """I ∩ J via the auxiliary-variable trick t*I + (1-t)*J, eliminating t."""
    if I.presentation.ring != J.presentation.ring:
        raise AmbientMismatchError("ideals over different rings")
    ring = I.presentation.ring
    tname = _fresh_name("t", set(ring.names))
    ext = PolyRing(
        ring.field,
        (tname,) + ring.names,
        (0,) + ring.degrees,
        elim=1,
    )
    n = ext.ngens
    t = ext.gen(0)
    one = ext.one
    gens = []
    for g in I.gens:
        gens.append(t * _lift(g, ext, 1, n))
    for g in J.gens:
        gens.append((one - t) * _lift(g, ext, 1, n))
    gb = buchberger(gens, config=config, allow_inhomogeneous=True)
    kept = [g for g in gb if all(m[0] == 0 for m, _ in g.terms)]
    out = [_project(g, ring, 1, ring.ngens) for g in kept]
    return complete(ideal(I.presentation, tuple(out)), config)


def _exact_div(g, f):
    """Quotient g/f for g in (f); division by the single monic-izable f."""
    ring = g.ring
    finv = ring.field.inv(f.terms[0][1])
    lf = f.terms[0][0]
    q = {}
    h = g
    while not h.is_zero():
        m, c = h.terms[0]
        if not mono_divides(lf, m):
            raise ArithmeticError("non-exact division")
        u = mono_div(m, lf)
        cc = (c * finv) % ring.field.p
        q[u] = cc
        h = h - f.mul_term(u, cc)
    return ring.from_dict(q)


def ideal_quotient(I, J, config=DEFAULT_CONFIG):
    """(I : J) for J an ideal or a single polynomial."""
    if isinstance(J, GradedPolynomial):
        return _colon_single(I, J, config)
    if I.presentation.ring != J.presentation.ring:
        raise AmbientMismatchError("ideals over different rings")
    out = None
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        # (I : 0) is the unit ideal
        return complete(ideal(I.presentation, (I.presentation.ring.one,)), config)
    for f in gens:
        q = _colon_single(I, f, config)
        out = q if out is None else ideal_intersect(out, q, config)
    return out


def _colon_single(I, f, config):
    if f.ring != I.presentation.ring:
        raise AmbientMismatchError("polynomial over a different ring")
    if f.is_zero():
        return complete(ideal(I.presentation, (I.presentation.ring.one,)), config)
    if f.degree() == 0:
        return complete(I, config)
    inter = ideal_intersect(I, ideal(I.presentation, (f,)), config)
    out = tuple(_exact_div(g, f) for g in inter.require_groebner())
    return complete(ideal(I.presentation, out), config)


def radical_member(f, I, config=DEFAULT_CONFIG):
    """f in sqrt(I), by Rabinowitsch in an untruncated degree-0 extension."""
    if f.ring != I.presentation.ring:
        raise AmbientMismatchError("polynomial over a different ring")
    if f.is_zero():
        return True
    ring = I.presentation.ring
    tname = _fresh_name("t", set(ring.names))
    ext = PolyRing(ring.field, (tname,) + ring.names, (0,) + ring.degrees)
    n = ext.ngens
    gens = [_lift(g, ext, 1, n) for g in I.gens]
    gens.append(ext.gen(0) * _lift(f, ext, 1, n) - ext.one)
    gb = buchberger(gens, config=config, allow_inhomogeneous=True)
    return len(gb) == 1 and gb[0].degree() == 0


def _elimination_ideal(target_pres, source_ring, images, extra_target_gens, config):
    """Shared engine for kernels and contractions.

    Builds the join ring on (target gens | source gens), adds the graph
    relations y_i - phi(y_i) to ``extra_target_gens`` and the target
    relations, eliminates the target block, and returns the result as
    generators over ``source_ring``.
    """
    tring = target_pres.ring
    taken = set(tring.names)
    src_names = []
    for nm in source_ring.names:
        nm2 = _fresh_name(nm, taken)
        taken.add(nm2)
        src_names.append(nm2)
    ext = PolyRing(
        tring.field,
        tring.names + tuple(src_names),
        tring.degrees + source_ring.degrees,
        elim=tring.ngens,
    )
    n = ext.ngens
    toff, soff = 0, tring.ngens
    gens = [_lift(r, ext, toff, n) for r in target_pres.relations]
    gens += [_lift(g, ext, toff, n) for g in extra_target_gens]
    for i, img in enumerate(images):
        y = ext.gen(soff + i)
        gens.append(y - _lift(img, ext, toff, n))
    gb = buchberger(gens, config=config, allow_inhomogeneous=False)
    kept = [
        g
        for g in gb
        if all(all(m[k] == 0 for k in range(tring.ngens)) for m, _ in g.terms)
    ]
    return tuple(_project(g, source_ring, soff, source_ring.ngens) for g in kept)


def ring_map_kernel(phi, config=DEFAULT_CONFIG):
    """Kernel of a presentation map, as an ideal of the source cover.

    The result is the full preimage of the target relation ideal, so it
    contains the source relations.
    """
    out = _elimination_ideal(
        phi.target, phi.source.ring, phi.images, (), config
    )
    pres = phi.source
    return complete(ideal(pres, out), config)


def ideal_contract(phi, J, config=DEFAULT_CONFIG):
    """phi^{-1}(J) for an ideal J of the target (containing its relations)."""
    if J.presentation.ring != phi.target.ring:
        raise AmbientMismatchError("ideal not over the map's target")
    out = _elimination_ideal(
        phi.target, phi.source.ring, phi.images, J.gens, config
    )
    return complete(ideal(phi.source, out), config)


@dataclass(frozen=True)
class MapReport:
    """Outcome of a well-definedness check; failures carry normal forms."""

    well_defined: bool
    failures: tuple  # ((relation, nonzero normal form of its image), ...)


def validate_map(phi, config=DEFAULT_CONFIG):
    """Check each source relation maps into the target relation ideal."""
    target_rels = complete(
        ideal(phi.target, tuple(phi.target.relations)), config
    )
    failures = []
    for rel in phi.source.relations:
        nf = normal_form(phi.apply(rel), target_rels)
        if not nf.is_zero():
            failures.append((rel, nf))
    return MapReport(not failures, tuple(failures))
