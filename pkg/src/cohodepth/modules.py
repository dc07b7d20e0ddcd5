"""Groebner bases for submodules of free graded modules S^r.

Internal machinery behind syzygy computation and minimal free
resolutions.  Terms are (component, monomial) pairs; an optional
leading component block (``elim_rank``) is ordered above everything
else, which is how syzygies of a set of columns are read off from a
module basis of their graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import mono_div, mono_divides, mono_lcm, mono_mul
from .config import DEFAULT_CONFIG
from .errors import AmbientMismatchError, DegreeCapExceeded

__all__ = ["ModuleAmbient", "ModElement", "module_buchberger", "syzygy_basis"]


@dataclass(frozen=True)
class ModuleAmbient:
    """Free module over a PolyRing with per-component degree shifts."""

    ring: object
    shifts: tuple
    elim_rank: int = 0

    @property
    def rank(self):
        return len(self.shifts)

    def term_key(self, comp, mono):
        block = 1 if comp < self.elim_rank else 0
        return (block, self.ring.order_key(mono), -comp)

    def term_degree(self, comp, mono):
        return self.ring.weighted_degree(mono) + self.shifts[comp]

    def zero(self):
        return ModElement(self, ())

    def basis_vector(self, comp, poly=None):
        ring = self.ring
        if poly is None:
            poly = ring.one
        terms = tuple(((comp, m), c) for m, c in poly.terms)
        return ModElement(self, terms)

    def from_dict(self, d):
        p = self.ring.field.p
        items = [((c_m), c % p) for c_m, c in d.items()]
        items = [(cm, c) for cm, c in items if c]
        items.sort(key=lambda t: self.term_key(*t[0]), reverse=True)
        return ModElement(self, tuple(items))


@dataclass(frozen=True)
class ModElement:
    """Element of S^r; terms sorted strictly descending."""

    ambient: ModuleAmbient
    terms: tuple  # (((comp, mono), coeff), ...)

    def is_zero(self):
        return not self.terms

    def lt(self):
        if not self.terms:
            raise ValueError("zero module element has no leading term")
        return self.terms[0]

    def is_homogeneous(self):
        if not self.terms:
            return True
        deg = self.ambient.term_degree(*self.terms[0][0])
        return all(
            self.ambient.term_degree(c, m) == deg for (c, m), _ in self.terms[1:]
        )

    def degree(self):
        if not self.terms:
            return None
        return self.ambient.term_degree(*self.terms[0][0])

    def __add__(self, other):
        if self.ambient != other.ambient:
            raise AmbientMismatchError("module elements over different ambients")
        p = self.ambient.ring.field.p
        key = self.ambient.term_key
        a, b = self.terms, other.terms
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            (ca, ma), va = a[i]
            (cb, mb), vb = b[j]
            if (ca, ma) == (cb, mb):
                v = (va + vb) % p
                if v:
                    out.append(((ca, ma), v))
                i += 1
                j += 1
            elif key(ca, ma) > key(cb, mb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return ModElement(self.ambient, tuple(out))

    def __neg__(self):
        p = self.ambient.ring.field.p
        return ModElement(
            self.ambient, tuple((cm, (-v) % p) for cm, v in self.terms)
        )

    def __sub__(self, other):
        return self + (-other)

    def mul_term(self, mono, coeff):
        p = self.ambient.ring.field.p
        coeff %= p
        if coeff == 0:
            return self.ambient.zero()
        return ModElement(
            self.ambient,
            tuple(
                (((c, mono_mul(m, mono)), (v * coeff) % p))
                for (c, m), v in self.terms
            ),
        )

    def monic(self):
        if not self.terms:
            return self
        c = self.terms[0][1]
        if c == 1:
            return self
        inv = self.ambient.ring.field.inv(c)
        p = self.ambient.ring.field.p
        return ModElement(
            self.ambient, tuple((cm, (v * inv) % p) for cm, v in self.terms)
        )

    def component(self, comp):
        """The coefficient polynomial of basis vector ``comp``."""
        d = {}
        for (c, m), v in self.terms:
            if c == comp:
                d[m] = v
        return self.ambient.ring.from_dict(d)


def _reduce_module(f, basis):
    if f.ambient.ring.field.p == 2:
        return _reduce_module_f2(f, basis)
    amb = f.ambient
    out = {}
    h = f
    while not h.is_zero():
        (c, m), v = h.terms[0]
        hit = None
        for g in basis:
            (cg, mg), _ = g.terms[0]
            if cg == c and mono_divides(mg, m):
                hit = g
                break
        if hit is not None:
            h = h - hit.mul_term(mono_div(m, hit.terms[0][0][1]), v)
        else:
            out[(c, m)] = v
            h = ModElement(amb, h.terms[1:])
    return amb.from_dict(out)


def _reduce_module_f2(f, basis):
    """Characteristic-2 fast path: terms are a plain set, addition is
    symmetric difference."""
    amb = f.ambient
    key = amb.term_key
    by_comp = {}
    for g in basis:
        (cg, mg), _ = g.terms[0]
        by_comp.setdefault(cg, []).append(
            (mg, tuple(cm for cm, _ in g.terms))
        )
    work = {cm for cm, _ in f.terms}
    out = []
    while work:
        c, m = max(work, key=lambda cm: key(*cm))
        hit = None
        for mg, terms in by_comp.get(c, ()):
            if mono_divides(mg, m):
                hit = (mg, terms)
                break
        if hit is None:
            work.remove((c, m))
            out.append(((c, m), 1))
            continue
        u = mono_div(m, hit[0])
        work.symmetric_difference_update(
            (cc, mono_mul(mm, u)) for cc, mm in hit[1]
        )
    out.sort(key=lambda t: key(*t[0]), reverse=True)
    return ModElement(amb, tuple(out))


def _module_spoly(f, g):
    (c, mf), _ = f.terms[0]
    (_, mg), _ = g.terms[0]
    l = mono_lcm(mf, mg)
    return f.mul_term(mono_div(l, mf), 1) - g.mul_term(mono_div(l, mg), 1)


def _module_gm_update(amb, G, P, f):
    """Same-component Gebauer-Moeller update; no product criterion
    (it is not valid for modules)."""
    t = len(G)
    (cf, lf), _ = f.terms[0]

    kept = []
    for (i, j) in P:
        (ci, mi), _ = G[i].terms[0]
        (_, mj), _ = G[j].terms[0]
        l = mono_lcm(mi, mj)
        if ci != cf:
            kept.append((i, j))
            continue
        if (
            not mono_divides(lf, l)
            or mono_lcm(mi, lf) == l
            or mono_lcm(mj, lf) == l
        ):
            kept.append((i, j))

    lcms = {}
    for i in range(t):
        (ci, mi), _ = G[i].terms[0]
        if ci != cf:
            continue
        lcms.setdefault(mono_lcm(mi, lf), []).append(i)
    minimal = []
    new_pairs = []
    for l in sorted(lcms, key=amb.ring.order_key):
        if any(mono_divides(m, l) for m in minimal):
            continue
        minimal.append(l)
        new_pairs.append((lcms[l][0], t))

    G.append(f)
    return kept + new_pairs


def module_buchberger(gens, *, config=DEFAULT_CONFIG):
    """Reduced module Groebner basis; input must be homogeneous."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    amb = gens[0].ambient
    ring = amb.ring
    for g in gens:
        if g.ambient != amb:
            raise AmbientMismatchError("mixed ambients")
        if not g.is_homogeneous():
            raise ValueError("inhomogeneous module generator")

    G = []
    P = []
    for g in sorted(gens, key=lambda h: amb.term_key(*h.terms[0][0])):
        r = _reduce_module(g, G)
        if not r.is_zero():
            P = _module_gm_update(amb, G, P, r.monic())

    while P:
        best = None
        best_rank = None
        for (i, j) in P:
            (c, mi), _ = G[i].terms[0]
            (_, mj), _ = G[j].terms[0]
            l = mono_lcm(mi, mj)
            deg = ring.weighted_degree(l) + amb.shifts[c]
            rank = (deg, ring.order_key(l), c, i, j)
            if best_rank is None or rank < best_rank:
                best_rank = rank
                best = (i, j)
        if best_rank[0] > config.max_gb_degree:
            raise DegreeCapExceeded(
                f"module S-pair degree {best_rank[0]} exceeds cap "
                f"{config.max_gb_degree}"
            )
        P.remove(best)
        s = _module_spoly(G[best[0]], G[best[1]])
        r = _reduce_module(s, G)
        if not r.is_zero():
            P = _module_gm_update(amb, G, P, r.monic())

    minimal = []
    for g in sorted(G, key=lambda h: amb.term_key(*h.terms[0][0])):
        (c, m), _ = g.terms[0]
        if not any(
            mg.terms[0][0][0] == c and mono_divides(mg.terms[0][0][1], m)
            for mg in minimal
        ):
            minimal.append(g)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            r = _reduce_module(g, others)
            if r.terms != g.terms:
                minimal[i] = r.monic()
                changed = True
    minimal.sort(key=lambda h: amb.term_key(*h.terms[0][0]))
    return tuple(minimal)


def module_member(f, gb):
    return _reduce_module(f, list(gb)).is_zero()


def syzygy_basis(columns, ambient, *, config=DEFAULT_CONFIG):
    """Groebner basis of the syzygy module of homogeneous ``columns``.

    ``columns`` are elements of ``ambient`` (rank r); the result lives
    in S^m with shifts the column degrees, m = len(columns).
    """
    ring = ambient.ring
    r = ambient.rank
    col_degs = []
    for u in columns:
        if u.is_zero():
            raise ValueError("zero column in syzygy computation")
        col_degs.append(u.degree())
    ext = ModuleAmbient(ring, ambient.shifts + tuple(col_degs), elim_rank=r)
    tagged = []
    for i, u in enumerate(columns):
        lifted = ModElement(ext, u.terms)  # same (comp, mono) coords
        zero_mono = (0,) * ring.ngens
        tag = ModElement(ext, (((r + i, zero_mono), 1),))
        tagged.append(lifted + tag)
    gb = module_buchberger(tagged, config=config)
    syz_amb = ModuleAmbient(ring, tuple(col_degs))
    out = []
    for g in gb:
        if all(c >= r for (c, _), _ in g.terms):
            shifted = tuple((((c - r, m), v)) for (c, m), v in g.terms)
            out.append(ModElement(syz_amb, shifted))
    return syz_amb, tuple(out)
