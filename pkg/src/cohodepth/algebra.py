"""Exact arithmetic for graded multivariate polynomials over a prime field.

Polynomials are elements of a free weighted-graded polynomial ring
(:class:`PolyRing`); quotient structure is carried separately by
:class:`RingPresentation` and imposed through the Groebner engine.
All values are immutable and hashable, so results can be cached and
shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import AmbientMismatchError, PolyParseError

__all__ = [
    "PrimeField",
    "PolyRing",
    "GradedPolynomial",
    "RingPresentation",
    "RingMap",
    "parse_poly",
]


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """F_p with canonical representatives in [0, p)."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def normalize(self, c):
        return c % self.p

    def inv(self, c):
        c %= self.p
        if c == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(c, self.p - 2, self.p)


# ---------------------------------------------------------------------------
# monomials: plain exponent tuples, one slot per generator


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """Free graded polynomial cover: named generators with positive degrees.

    The term order is weighted graded reverse lexicographic with the
    generator-index tie-break.  A nonzero ``elim`` declares the first
    ``elim`` generators an elimination block, ordered before (greater
    than) everything else; both blocks are internally weighted grevlex.

    Generators of grading degree 0 (the auxiliary variables of the
    untruncated inhomogeneous mode) are given ordering weight 1: a
    weight-0 grevlex block is not a well-order, while the grading
    itself still treats them as degree 0.
    """

    field: PrimeField
    names: tuple
    degrees: tuple
    elim: int = 0

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", n):
                raise ValueError(f"bad generator name {n!r}")
        if any(d < 0 for d in self.degrees):
            raise ValueError("generator degrees must be non-negative")
        if not 0 <= self.elim <= len(self.names):
            raise ValueError("elimination block out of range")

    @property
    def ngens(self):
        return len(self.names)

    @cached_property
    def _index(self):
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def _order_weights(self):
        return tuple(max(d, 1) for d in self.degrees)

    @cached_property
    def _key_cache(self):
        return {}

    def weighted_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def order_key(self, mono):
        """Sort key; larger key = greater monomial."""
        cache = self._key_cache
        k = cache.get(mono)
        if k is None:
            b = self.elim
            w = self._order_weights
            head = mono[:b]
            tail = mono[b:]
            k = (
                sum(e * d for e, d in zip(head, w[:b])),
                tuple(-e for e in reversed(head)),
                sum(e * d for e, d in zip(tail, w[b:])),
                tuple(-e for e in reversed(tail)),
            )
            cache[mono] = k
        return k

    # -- element constructors ------------------------------------------------

    @cached_property
    def zero(self):
        return GradedPolynomial(self, ())

    @cached_property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.normalize(c)
        if c == 0:
            return self.zero
        return GradedPolynomial(self, (((0,) * self.ngens, c),))

    def gen(self, i):
        if isinstance(i, str):
            i = self._index[i]
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        return GradedPolynomial(self, ((mono, 1),))

    def gens(self):
        return tuple(self.gen(i) for i in range(self.ngens))

    def monomial(self, mono, coeff=1):
        coeff = self.field.normalize(coeff)
        if coeff == 0:
            return self.zero
        return GradedPolynomial(self, ((tuple(mono), coeff),))

    def from_dict(self, d):
        items = [(m, self.field.normalize(c)) for m, c in d.items()]
        items = [(m, c) for m, c in items if c]
        items.sort(key=lambda mc: self.order_key(mc[0]), reverse=True)
        return GradedPolynomial(self, tuple(items))


@dataclass(frozen=True)
class GradedPolynomial:
    """Terms sorted strictly descending under the ring's term order."""

    ring: PolyRing
    terms: tuple  # ((mono, coeff), ...) with coeff in (0, p)

    # -- basic queries ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def lt(self):
        """Leading (mono, coeff); raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self):
        return self.lt()[0]

    def is_homogeneous(self):
        if not self.terms:
            return True
        wd = self.ring.weighted_degree
        d0 = wd(self.terms[0][0])
        return all(wd(m) == d0 for m, _ in self.terms[1:])

    def degree(self):
        """Weighted degree of a homogeneous polynomial (None for zero)."""
        if not self.terms:
            return None
        if not self.is_homogeneous():
            raise ValueError("degree of an inhomogeneous polynomial")
        return self.ring.weighted_degree(self.terms[0][0])

    def max_degree(self):
        if not self.terms:
            return None
        wd = self.ring.weighted_degree
        return max(wd(m) for m, _ in self.terms)

    def constant_coeff(self):
        zero_mono = (0,) * self.ring.ngens
        for m, c in reversed(self.terms):
            if m == zero_mono:
                return c
        return 0

    def monic(self):
        if not self.terms:
            return self
        c = self.terms[0][1]
        if c == 1:
            return self
        return self * self.ring.field.inv(c)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise AmbientMismatchError("polynomials over different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        p = self.ring.field.p
        key = self.ring.order_key
        a, b = self.terms, other.terms
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            ma, ca = a[i]
            mb, cb = b[j]
            if ma == mb:
                c = (ca + cb) % p
                if c:
                    out.append((ma, c))
                i += 1
                j += 1
            elif key(ma) > key(mb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return GradedPolynomial(self.ring, tuple(out))

    def __neg__(self):
        p = self.ring.field.p
        return GradedPolynomial(self.ring, tuple((m, (-c) % p) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.field.normalize(other)
            if c == 0:
                return self.ring.zero
            if c == 1:
                return self
            p = self.ring.field.p
            return GradedPolynomial(
                self.ring, tuple((m, (cc * c) % p) for m, cc in self.terms)
            )
        self._check(other)
        p = self.ring.field.p
        acc = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = mono_mul(ma, mb)
                acc[m] = (acc.get(m, 0) + ca * cb) % p
        return self.ring.from_dict(acc)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, mono, coeff):
        """Multiply by a single term; the workhorse of reduction loops."""
        p = self.ring.field.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero
        return GradedPolynomial(
            self.ring,
            tuple((mono_mul(m, mono), (c * coeff) % p) for m, c in self.terms),
        )

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"<{poly_to_str(self)}>"


# ---------------------------------------------------------------------------
# parser / printer for the exact external grammar:
#   poly := term ("+" term)* ; term := coeff | coeff "*" monomial | monomial
#   monomial := factor ("*" factor)* ; factor := name | name "^" natural
#   coeff := natural ; names match [A-Za-z][A-Za-z0-9_]*

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([+*^]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise PolyParseError(f"unexpected character {text[at]!r}", at)
        if m.group(1) is not None:
            out.append(("nat", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return out


def parse_poly(text, ring):
    """Parse ``text`` into a canonical polynomial over ``ring``.

    Accepts a :class:`PolyRing` or a :class:`RingPresentation`.
    Round-trips with :func:`poly_to_str` on canonical forms.
    """
    if isinstance(ring, RingPresentation):
        ring = ring.ring
    toks = _tokenize(text)
    if not toks:
        raise PolyParseError("empty polynomial expression", 0)
    n = len(toks)
    idx = 0

    def peek():
        return toks[idx] if idx < n else (None, None, len(text))

    def parse_factor():
        nonlocal idx
        kind, val, pos = peek()
        if kind != "name":
            raise PolyParseError("expected generator name", pos)
        if val not in ring._index:
            raise PolyParseError(f"unknown generator {val!r}", pos)
        idx += 1
        exp = 1
        kind, val2, _ = peek()
        if kind == "op" and val2 == "^":
            idx += 1
            kind, val3, pos3 = peek()
            if kind != "nat":
                raise PolyParseError("expected natural exponent after '^'", pos3)
            exp = val3
            idx += 1
        return ring._index[val], exp

    def parse_term():
        nonlocal idx
        kind, val, pos = peek()
        coeff = 1
        expo = [0] * ring.ngens
        if kind == "nat":
            coeff = val
            idx += 1
            kind2, val2, _ = peek()
            if kind2 == "op" and val2 == "*":
                idx += 1
                g, e = parse_factor()
                expo[g] += e
            else:
                return coeff, tuple(expo)
        elif kind == "name":
            g, e = parse_factor()
            expo[g] += e
        else:
            raise PolyParseError("expected coefficient or generator", pos)
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                idx += 1
                g, e = parse_factor()
                expo[g] += e
            else:
                break
        return coeff, tuple(expo)

    acc = {}
    p = ring.field.p
    while True:
        coeff, mono = parse_term()
        acc[mono] = (acc.get(mono, 0) + coeff) % p
        kind, val, pos = peek()
        if kind is None:
            break
        if kind == "op" and val == "+":
            idx += 1
            continue
        raise PolyParseError(f"unexpected token {val!r}", pos)
    return ring.from_dict(acc)


def poly_to_str(f):
    """Canonical printable form; inverse of :func:`parse_poly`."""
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for mono, coeff in f.terms:
        factors = []
        for name, e in zip(ring.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """Generators-with-degrees plus a homogeneous relation ideal.

    Models rings like H*(G): the quotient of ``ring`` by ``relations``.
    The zero ideal of the quotient is represented throughout the
    package by the relation ideal of the cover.
    """

    ring: PolyRing
    relations: tuple = ()

    def __post_init__(self):
        for r in self.relations:
            if r.ring != self.ring:
                raise AmbientMismatchError("relation over a different ring")
            if r.is_zero():
                raise ValueError("zero polynomial listed as a relation")
            if not r.is_homogeneous():
                raise ValueError(f"inhomogeneous relation {r}")
            if r.degree() <= 0:
                raise ValueError("relations must have positive degree")

    @property
    def field(self):
        return self.ring.field

    @property
    def prime(self):
        return self.ring.field.p

    def parse(self, text):
        return parse_poly(text, self.ring)

    def describe(self):
        gens = ", ".join(
            f"{n}:{d}" for n, d in zip(self.ring.names, self.ring.degrees)
        )
        rels = ", ".join(poly_to_str(r) for r in self.relations) or "0"
        return f"F_{self.prime}[{gens}] / ({rels})"


def presentation(p, gens, relations=()):
    """Convenience builder: ``gens`` as ``[(name, degree), ...]``,
    relations as polynomial strings."""
    ring = PolyRing(
        PrimeField(p), tuple(n for n, _ in gens), tuple(d for _, d in gens)
    )
    pres = RingPresentation(ring, ())
    rels = tuple(parse_poly(s, ring) for s in relations)
    return RingPresentation(ring, rels)


@dataclass(frozen=True)
class RingMap:
    """Generator-image map between presentations; models restrictions.

    Degree preservation is enforced here; well-definedness (relations
    mapping into the target relation ideal) is Groebner work, see
    :func:`cohodepth.groebner.validate_map`.
    """

    source: RingPresentation
    target: RingPresentation
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source.ring.ngens:
            raise ValueError("one image per source generator required")
        for name, deg, img in zip(
            self.source.ring.names, self.source.ring.degrees, self.images
        ):
            if img.ring != self.target.ring:
                raise AmbientMismatchError(f"image of {name} over wrong ring")
            if img.is_zero():
                continue
            if not img.is_homogeneous() or img.degree() != deg:
                raise ValueError(
                    f"image of {name} must be homogeneous of degree {deg}, got {img}"
                )

    def apply(self, f):
        """Substitute generator images into ``f`` and normalize."""
        if f.ring != self.source.ring:
            raise AmbientMismatchError("polynomial not over the map's source")
        tring = self.target.ring
        out = tring.zero
        powers = [{} for _ in self.images]

        def power(i, e):
            cache = powers[i]
            got = cache.get(e)
            if got is None:
                got = self.images[i] ** e
                cache[e] = got
            return got

        for mono, coeff in f.terms:
            term = tring.const(coeff)
            for i, e in enumerate(mono):
                if e and not term.is_zero():
                    term = term * power(i, e)
            out = out + term
        return out

    def describe(self):
        pairs = ", ".join(
            f"{n} -> {poly_to_str(img)}"
            for n, img in zip(self.source.ring.names, self.images)
        )
        return pairs


def compose_maps(outer, inner):
    """outer o inner, defined when inner.target is outer.source."""
    if inner.target != outer.source:
        raise AmbientMismatchError("maps do not compose")
    return RingMap(
        inner.source, outer.target, tuple(outer.apply(im) for im in inner.images)
    )
