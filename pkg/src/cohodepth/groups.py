"""Finite permutation groups at desk scale: full element enumeration,
elementary abelian p-subgroup posets, centralizers, Sylow subgroups,
and brute-force isomorphism identification against a bundled catalog.

Permutations are image tuples on 0-based points; the external cycle
notation is 1-based.  Everything is deterministic: element lists are
sorted, class representatives are lexicographically minimal conjugates,
and class ids are derived from that canonical order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import GroupFileError

__all__ = [
    "PermGroup",
    "SubgroupClass",
    "PosetAG",
    "parse_permutation",
    "permutation_to_cycles",
    "load_group_file",
    "enumerate_elem_abelian",
    "centralizer",
    "sylow_p",
    "omega1_center",
    "isomorphic",
    "iso_identify",
]

ORDER_CAP = 10_000


def perm_mul(a, b):
    """(a*b)(x) = a(b(x))."""
    return tuple(a[b[x]] for x in range(len(a)))


def perm_inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_conj(g, h):
    """g h g^-1."""
    return perm_mul(perm_mul(g, h), perm_inv(g))


def perm_order(a):
    n = 1
    ident = tuple(range(len(a)))
    x = a
    while x != ident:
        x = perm_mul(x, a)
        n += 1
    return n


def parse_permutation(text, degree):
    """Disjoint-cycle notation, 1-based; '()' is the identity."""
    text = text.strip()
    images = list(range(degree))
    if text in ("()", ""):
        return tuple(images)
    if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\))+", text):
        raise GroupFileError(f"bad cycle notation: {text!r}")
    seen = set()
    for cyc in re.findall(r"\(([^()]*)\)", text):
        points = [int(s) for s in cyc.split(",")]
        for q in points:
            if not 1 <= q <= degree:
                raise GroupFileError(f"point {q} outside degree {degree}")
            if q - 1 in seen:
                raise GroupFileError(f"point {q} repeated in {text!r}")
            seen.add(q - 1)
        for i, q in enumerate(points):
            images[q - 1] = points[(i + 1) % len(points)] - 1
    return tuple(images)


def permutation_to_cycles(perm):
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append("(" + ",".join(str(q + 1) for q in cyc) + ")")
    return "".join(cycles) or "()"


def _closure(degree, gens, cap=ORDER_CAP):
    ident = tuple(range(degree))
    elements = {ident}
    frontier = [ident]
    gens = [g for g in gens if g != ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupFileError(
                            f"group order exceeds the desk-scale cap {cap}"
                        )
        frontier = nxt
    return tuple(sorted(elements))


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise GroupFileError(f"not a permutation of degree {self.degree}: {g}")

    @cached_property
    def elements(self):
        return _closure(self.degree, self.generators)

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return tuple(range(self.degree))

    def subgroup(self, gens):
        return PermGroup(self.degree, tuple(gens))

    def __contains__(self, perm):
        return perm in self.element_set

    def contains_subgroup(self, other):
        return other.element_set <= self.element_set

    def is_abelian(self):
        els = self.elements
        return all(
            perm_mul(a, b) == perm_mul(b, a)
            for a, b in itertools.combinations(els, 2)
        )

    @cached_property
    def center_elements(self):
        els = self.elements
        return tuple(
            z for z in els if all(perm_mul(z, g) == perm_mul(g, z) for g in self.generators)
            and all(perm_mul(z, x) == perm_mul(x, z) for x in els)
        )

    def conjugacy_classes(self):
        """Element conjugacy classes, canonically ordered."""
        els = self.elements
        seen = set()
        classes = []
        for x in els:
            if x in seen:
                continue
            orbit = {perm_conj(g, x) for g in els}
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort()
        return tuple(classes)

    @cached_property
    def derived_subgroup(self):
        comms = {
            perm_mul(perm_mul(a, b), perm_mul(perm_inv(a), perm_inv(b)))
            for a in self.elements
            for b in self.elements
        }
        return PermGroup(self.degree, tuple(sorted(comms)))

    def describe(self):
        return f"<group of order {self.order} on {self.degree} points>"


def regular_group(table, generators=None):
    """Left-regular permutation group from a multiplication table.

    ``table[i][j]`` is the index of element i * element j; index 0 must
    be the identity.  ``generators`` picks out generating indices (all
    non-identity elements when omitted).
    """
    n = len(table)
    if any(table[0][j] != j or table[j][0] != j for j in range(n)):
        raise ValueError("index 0 must be the identity")
    perms = {i: tuple(table[i]) for i in range(n)}
    if generators is None:
        gen_idx = range(1, n)
    else:
        gen_idx = generators
    return PermGroup(n, tuple(perms[i] for i in gen_idx))


def load_group_file(path):
    """Spec'd plain-text format: ``degree n`` then one generator per line."""
    degree = None
    gens = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if degree is None:
                m = re.fullmatch(r"degree\s+(\d+)", line)
                if not m:
                    raise GroupFileError(
                        f"{path}:{lineno}: expected 'degree n', got {line!r}"
                    )
                degree = int(m.group(1))
                continue
            gens.append(parse_permutation(line, degree))
    if degree is None:
        raise GroupFileError(f"{path}: missing 'degree n' header")
    return PermGroup(degree, tuple(gens))


def save_group_text(group):
    lines = [f"degree {group.degree}"]
    for g in group.generators:
        lines.append(permutation_to_cycles(g))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subgroup machinery


def centralizer(G, H):
    """C_G(H) by brute force over elements; H given as PermGroup or
    an iterable of permutations."""
    targets = tuple(H.generators) if isinstance(H, PermGroup) else tuple(H)
    if isinstance(H, PermGroup) and not G.contains_subgroup(H):
        raise ValueError("H is not a subgroup of G")
    els = [
        g
        for g in G.elements
        if all(perm_mul(g, h) == perm_mul(h, g) for h in targets)
    ]
    return PermGroup(G.degree, tuple(els))


def _subgroup_encoding(elements):
    return tuple(sorted(elements))


def _minimal_conjugate(G, sub_elements):
    best = None
    for g in G.elements:
        conj = _subgroup_encoding(perm_conj(g, x) for x in sub_elements)
        if best is None or conj < best:
            best = conj
    return best


def _canonical_generators(degree, elements):
    """Deterministic small generating set from an element list."""
    chosen = []
    span = {tuple(range(degree))}
    for x in sorted(elements):
        if x in span:
            continue
        chosen.append(x)
        span = set(_closure(degree, chosen))
        if len(span) == len(elements):
            break
    return tuple(chosen)


@dataclass(frozen=True)
class SubgroupClass:
    """Conjugacy class of an elementary abelian subgroup."""

    class_id: str
    rank: int
    representative: PermGroup
    class_size: int
    centralizer: PermGroup
    min_encoding: tuple

    @cached_property
    def element_set(self):
        return self.representative.element_set


@dataclass(frozen=True)
class PosetAG:
    """Conjugacy classes of nontrivial elementary abelian p-subgroups,
    ordered by 'conjugate to a subgroup of'."""

    group: PermGroup
    prime: int
    classes: tuple

    def by_id(self, class_id):
        for c in self.classes:
            if c.class_id == class_id:
                return c
        raise KeyError(class_id)

    def ranks(self):
        return sorted({c.rank for c in self.classes})

    def classes_of_rank(self, s):
        return tuple(c for c in self.classes if c.rank == s)

    @cached_property
    def _leq(self):
        """leq[(a, b)] iff rep(a) is conjugate to a subgroup of rep(b)."""
        out = {}
        els = self.group.elements
        for a in self.classes:
            for b in self.classes:
                if a.rank > b.rank:
                    out[(a.class_id, b.class_id)] = False
                    continue
                hit = False
                for g in els:
                    conj = {perm_conj(g, x) for x in a.representative.elements}
                    if conj <= b.element_set:
                        hit = True
                        break
                out[(a.class_id, b.class_id)] = hit
        return out

    def leq(self, a, b):
        """a <= b iff a is conjugate to a subgroup of b (rank-monotone)."""
        if isinstance(a, SubgroupClass):
            a = a.class_id
        if isinstance(b, SubgroupClass):
            b = b.class_id
        return self._leq[(a, b)]

    def contains_subgroup_up_to_conjugacy(self, cls, sub):
        """Does some conjugate of the class representative contain ``sub``?"""
        els = self.group.elements
        sub_set = sub.element_set if isinstance(sub, PermGroup) else frozenset(sub)
        for g in els:
            conj = {perm_conj(g, x) for x in cls.representative.elements}
            if sub_set <= conj:
                return True
        return False


def enumerate_elem_abelian(G, p):
    """All elementary abelian p-subgroups of G up to conjugacy.

    Returns a :class:`PosetAG`; class ids are ``"{rank}.{k}"`` with k
    counting within a rank in the canonical (minimal-conjugate) order.
    """
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    ident = G.identity
    order_p = [
        x
        for x in G.elements
        if x != ident and _perm_pow(x, p, ident) == ident
    ]

    # rank-1 subgroups
    level = {}
    for x in order_p:
        sub = frozenset(_cyclic_elements(x, ident))
        level.setdefault(sub, None)
    subgroups_by_rank = []
    current = set(level)
    rank = 1
    while current:
        subgroups_by_rank.append(sorted(current, key=_subgroup_encoding))
        nxt = set()
        for sub in current:
            for x in order_p:
                if x in sub:
                    continue
                if all(perm_mul(x, y) == perm_mul(y, x) for y in sub):
                    bigger = frozenset(
                        perm_mul(y, z)
                        for y in sub
                        for z in _cyclic_elements(x, ident)
                    )
                    nxt.add(bigger)
        current = nxt
        rank += 1

    classes = []
    for r, subs in enumerate(subgroups_by_rank, start=1):
        seen = set()
        reps = []
        for sub in subs:
            if sub in seen:
                continue
            orbit = {
                frozenset(perm_conj(g, x) for x in sub) for g in G.elements
            }
            seen |= orbit
            min_enc = min(_subgroup_encoding(o) for o in orbit)
            reps.append((min_enc, len(orbit)))
        reps.sort(key=lambda t: t[0])
        for k, (min_enc, size) in enumerate(reps, start=1):
            sub_group = PermGroup(
                G.degree, _canonical_generators(G.degree, min_enc)
            )
            cent = centralizer(G, sub_group)
            classes.append(
                SubgroupClass(
                    class_id=f"{r}.{k}",
                    rank=r,
                    representative=sub_group,
                    class_size=size,
                    centralizer=cent,
                    min_encoding=min_enc,
                )
            )
    return PosetAG(G, p, tuple(classes))


def _perm_pow(x, n, ident):
    out = ident
    base = x
    while n:
        if n & 1:
            out = perm_mul(out, base)
        n >>= 1
        if n:
            base = perm_mul(base, base)
    return out


def _cyclic_elements(x, ident):
    out = [ident]
    y = x
    while y != ident:
        out.append(y)
        y = perm_mul(y, x)
    return out


def sylow_p(G, p):
    """A Sylow p-subgroup by greedy normalizing extension."""
    order = G.order
    ppart = 1
    while order % p == 0:
        ppart *= p
        order //= p
    current = PermGroup(G.degree, ())
    p_power_elements = [
        x
        for x in G.elements
        if x != G.identity and _is_p_power_order(x, p, G.identity)
    ]
    while current.order < ppart:
        extended = False
        for x in p_power_elements:
            if x in current.element_set:
                continue
            if _normalizes(x, current):
                current = PermGroup(
                    G.degree,
                    _canonical_generators(
                        G.degree, _closure(G.degree, current.generators + (x,))
                    ),
                )
                extended = True
                break
        if not extended:  # cannot happen for a genuine group
            raise RuntimeError("Sylow extension stalled")
    return current


def _is_p_power_order(x, p, ident):
    o = perm_order(x)
    while o % p == 0:
        o //= p
    return o == 1


def _normalizes(x, subgroup):
    s = subgroup.element_set
    return all(perm_conj(x, h) in s for h in s)


def omega1_center(P, p):
    """(E_0, z) with E_0 generated by the central elements of order
    dividing p of the p-group P."""
    order = P.order
    while order % p == 0:
        order //= p
    if order != 1:
        raise ValueError("omega1_center requires a p-group")
    ident = P.identity
    gens = [
        z
        for z in P.center_elements
        if z != ident and _perm_pow(z, p, ident) == ident
    ]
    E0 = PermGroup(
        P.degree, _canonical_generators(P.degree, _closure(P.degree, gens))
    )
    z = 0
    n = E0.order
    while n > 1:
        n //= p
        z += 1
    return E0, z


# ---------------------------------------------------------------------------
# isomorphism testing


def _fingerprint(G):
    orders = {}
    for x in G.elements:
        o = perm_order(x)
        orders[o] = orders.get(o, 0) + 1
    class_profile = {}
    for cls in G.conjugacy_classes():
        key = (perm_order(cls[0]), len(cls))
        class_profile[key] = class_profile.get(key, 0) + 1
    return (
        G.order,
        tuple(sorted(orders.items())),
        len(G.center_elements),
        G.derived_subgroup.order,
        tuple(sorted(class_profile.items())),
    )


def _element_invariant(G, x):
    orbit = {perm_conj(g, x) for g in G.elements}
    cent = sum(
        1 for g in G.elements if perm_mul(g, x) == perm_mul(x, g)
    )
    return (perm_order(x), len(orbit), cent)


def isomorphic(G, H):
    """Backtracking isomorphism test with invariant pruning."""
    if G.order != H.order:
        return False
    if _fingerprint(G) != _fingerprint(H):
        return False
    if G.order == 1:
        return True
    g_abelian = G.is_abelian()
    if g_abelian != H.is_abelian():
        return False
    if g_abelian:
        # abelian groups are determined by their element-order statistics
        return True

    gen_seq = list(_canonical_generators(G.degree, G.elements))
    h_by_invariant = {}
    for y in H.elements:
        h_by_invariant.setdefault(_element_invariant(H, y), []).append(y)

    dG, dH = G.degree, H.degree
    identG = G.identity
    identH = H.identity

    def pair(x, y):
        return x + tuple(dG + i for i in y)

    def closure_ok(pairs, expected):
        elements = {pair(identG, identH)}
        frontier = [pair(identG, identH)]
        gens = [pair(x, y) for x, y in pairs]
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens:
                    z = perm_mul(e, g)
                    if z not in elements:
                        if len(elements) >= expected:
                            return False, elements
                        elements.add(z)
                        nxt.append(z)
            frontier = nxt
        return len(elements) == expected, elements

    def extend(assigned, used_subgroup):
        k = len(assigned)
        if k == len(gen_seq):
            ok, _ = closure_ok(list(zip(gen_seq, assigned)), G.order)
            return ok
        x = gen_seq[k]
        inv = _element_invariant(G, x)
        sub_order = len(
            _closure(G.degree, tuple(gen_seq[: k + 1]))
        )
        for y in h_by_invariant.get(inv, ()):
            candidate = assigned + [y]
            ok, _ = closure_ok(list(zip(gen_seq, candidate)), sub_order)
            if ok and extend(candidate, None):
                return True
        return False

    return extend([], None)


def iso_identify(H, catalog):
    """Identify H against catalog entries of the same order.

    ``catalog`` maps (order, index) -> PermGroup.  Returns the unique
    matching (order, index), or None when no entry matches.
    """
    matches = []
    for key in sorted(k for k in catalog if k[0] == H.order):
        if isomorphic(H, catalog[key]):
            matches.append(key)
    if not matches:
        return None
    if len(matches) > 1:
        raise RuntimeError(
            f"catalog contains isomorphic duplicates: {matches}"
        )
    return matches[0]
