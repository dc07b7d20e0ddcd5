"""Mod-2 cohomology rings of small 2-groups by minimal F2G-resolutions.

This is derivation tooling, not part of the shipped package: it
produces the bundled cohomology-package fixtures.  The method is the
standard one. A minimal free resolution of the trivial module is built
degree by degree (kernels + Nakayama minimal generators over the local
algebra F2G); H^n(G;F2) is then Hom(P_n, F2) = F2^{b_n} on the nose,
products are Yoneda compositions of chain-map lifts, and restrictions
to subgroups are induced by comparison maps between resolutions.

Everything is deterministic: group elements are sorted, eliminations
use lowest-bit pivots, generators are chosen as dual basis vectors in
a fixed order.
"""

from __future__ import annotations

import sys

sys.path.insert(0, __file__.rsplit("/", 1)[0])

from gf2 import Echelon, kernel_of_images, lowest_bit

from cohodepth.algebra import PolyRing, PrimeField, RingMap, RingPresentation
from cohodepth.groebner import complete, ideal, normal_form
from cohodepth.invariants import monomials_of_degree

F2 = PrimeField(2)

GEN_NAMES = ["z", "y", "x", "w", "v", "u", "t", "s", "r", "q", "n", "m"]


class Resolution:
    """Minimal free resolution of F2 over F2G for a 2-group G.

    Stage n data:
      gens[n]   : list of image vectors in P_{n-1} (the differential on
                  free generators); gens[0] is a placeholder.
      dims[n]   : F2-dimension of P_n = b_n * |G|.
      echelons[n]: eliminated (image, tag) pairs of d_n for preimages.
      kernels[n]: kernel basis of d_n (vectors in P_n).
    Bit layout of P_n: index = k * |G| + g_idx for generator k.
    """

    def __init__(self, group):
        self.group = group
        self.elements = group.elements  # sorted tuple
        self.order = len(self.elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity_idx = self.index[group.identity]
        from cohodepth.groups import perm_mul

        self._perm_mul = perm_mul
        # left-translation tables: tg[h][i] = index of elements[h] * elements[i]
        self.trans = [
            [self.index[perm_mul(h, g)] for g in self.elements]
            for h in self.elements
        ]
        gen_idx = []
        for g in group.generators:
            i = self.index[g]
            if i != self.identity_idx and i not in gen_idx:
                gen_idx.append(i)
        self.gen_idx = gen_idx

        # byte-sliced permutation tables: for element h and byte position p,
        # _byte_tables[h][p][byte] is the permuted block mask
        n = self.order
        nbytes = (n + 7) // 8
        self._nbytes = nbytes
        self._block_mask = (1 << n) - 1
        self._byte_tables = []
        for h in range(n):
            table = self.trans[h]
            per_byte = []
            for p in range(nbytes):
                entries = []
                for byte in range(256):
                    m = 0
                    bb = byte
                    while bb:
                        lb = bb & -bb
                        j = 8 * p + lb.bit_length() - 1
                        if j < n:
                            m |= 1 << table[j]
                        bb ^= lb
                    entries.append(m)
                per_byte.append(entries)
            self._byte_tables.append(per_byte)

        self.betti = [1]
        self.gens = [None]
        self.echelons = [None]
        self.kernels = [None]
        self._stage0()

    # -- vector helpers ----------------------------------------------------

    def act(self, h_idx, vec):
        """Left action of elements[h_idx] on a vector (any stage)."""
        n = self.order
        tables = self._byte_tables[h_idx]
        nbytes = self._nbytes
        mask = self._block_mask
        out = 0
        k = 0
        while vec:
            block = vec & mask
            if block:
                acc = 0
                p = 0
                while block:
                    byte = block & 0xFF
                    if byte:
                        acc |= tables[p][byte]
                    block >>= 8
                    p += 1
                out |= acc << (k * n)
            vec >>= n
            k += 1
        return out

    def radical_closure(self, vectors):
        """Echelon of the F2G-submodule generated by (s-1)v for the
        group generators s; the Nakayama denominator J*K."""
        e = Echelon()
        frontier = []
        for v in vectors:
            for s in self.gen_idx:
                w = self.act(s, v) ^ v
                added, _ = e.insert(w)
                if added:
                    frontier.append(w)
        while frontier:
            nxt = []
            for v in frontier:
                for s in self.gen_idx:
                    w = self.act(s, v)
                    added, _ = e.insert(w)
                    if added:
                        nxt.append(w)
            frontier = nxt
        return e

    def minimal_generators(self, kernel_vectors):
        jk = self.radical_closure(kernel_vectors)
        chosen = []
        seen = Echelon()
        for i in sorted(jk.pivots):
            seen.insert(jk.pivots[i][0])
        for v in kernel_vectors:
            added, _ = seen.insert(v)
            if added:
                chosen.append(v)
        return chosen

    # -- resolution construction -------------------------------------------

    def _stage0(self):
        # d_1 generators: Nakayama on the augmentation ideal
        n = self.order
        e0 = 1 << self.identity_idx
        kernel = [(1 << i) ^ e0 for i in range(n) if i != self.identity_idx]
        self.kernels[0] = kernel

    def extend(self, upto):
        while len(self.betti) - 1 < upto:
            self._extend_once()

    def _extend_once(self):
        n_stage = len(self.betti)
        kernel = self.kernels[n_stage - 1]
        gens = self.minimal_generators(kernel)
        b = len(gens)
        self.betti.append(b)
        self.gens.append(gens)

        # full differential d_n and its kernel
        order = self.order
        ech = Echelon()
        ker = []
        for k in range(b):
            base = gens[k]
            for g in range(order):
                img = self.act(g, base)
                idx = k * order + g
                added, tag = ech.insert(img, 1 << idx)
                if not added:
                    ker.append(tag)
        self.echelons.append(ech)
        self.kernels.append(ker)

    def dim(self, stage):
        return self.betti[stage] * self.order

    def preimage(self, stage, vec):
        """x with d_stage(x) = vec; stage >= 1."""
        self.extend(stage)
        sol = self.echelons[stage].solve(vec)
        if sol is None:
            raise RuntimeError("preimage failed; resolution not exact?")
        return sol

    # -- cocycles and lifts --------------------------------------------------

    def functional_value(self, stage, functional, vec):
        """Evaluate alpha in Hom(P_stage, F2) (vector over generators,
        trivial coefficients) on an arbitrary vector."""
        n = self.order
        out = 0
        while vec:
            b = vec & -vec
            i = b.bit_length() - 1
            k = i // n
            out ^= (functional >> k) & 1
            vec ^= b
        return out

    def apply_generator_map(self, images, vec):
        """Extend a G-map given on generators (images[k] in some P_m)
        G-linearly to ``vec``.  Grouped by group element: the action is
        linear, so act(g, .) runs once per g instead of once per bit."""
        n = self.order
        mask = self._block_mask
        acc = {}
        k = 0
        while vec:
            block = vec & mask
            img = images[k] if k < len(images) else 0
            while block:
                b = block & -block
                g = b.bit_length() - 1
                acc[g] = acc.get(g, 0) ^ img
                block ^= b
            vec >>= n
            k += 1
        out = 0
        for g, v in acc.items():
            if v:
                out ^= self.act(g, v)
        return out


class CocycleLift:
    """Chain-map lift of a degree-d cocycle, one stage at a time."""

    def __init__(self, res, degree, functional):
        self.res = res
        self.degree = degree
        self.functional = functional
        self._collapsed = {}
        # stage s map P_{d+s} -> P_s, stored on generators
        ident = 1 << res.identity_idx
        res.extend(degree)
        images0 = []
        for k in range(res.betti[degree]):
            images0.append(ident if (functional >> k) & 1 else 0)
        self.stages = [images0]

    def stage(self, s):
        res = self.res
        d = self.degree
        while len(self.stages) <= s:
            m = len(self.stages)
            res.extend(d + m)
            prev = self.stages[m - 1]
            images = []
            for k in range(res.betti[d + m]):
                rhs = res.apply_generator_map(prev, res.gens[d + m][k])
                images.append(res.preimage(m, rhs))
            self.stages.append(images)
        return self.stages[s]

    def collapsed_matrix(self, s):
        """Rows over generators of P_{d+s}: row[k] has bit j when the
        generator-j coefficient sum of stage-s image of e_k is odd."""
        got = self._collapsed.get(s)
        if got is not None:
            return got
        res = self.res
        images = self.stage(s)
        n = res.order
        mask = res._block_mask
        rows = []
        for img in images:
            row = 0
            j = 0
            v = img
            while v:
                if bin(v & mask).count("1") & 1:
                    row |= 1 << j
                v >>= n
                j += 1
            rows.append(row)
        self._collapsed[s] = rows
        return rows


class RingModel:
    """Presentation of H*(G;F2) extracted degree by degree."""

    def __init__(self, group, max_degree, names=None, assume_polynomial=False):
        self.res = Resolution(group)
        self.max_degree = max_degree
        self.gen_names = []
        self.gen_degrees = []
        self.gen_classes = []  # cocycle functional per generator
        self.lifts = []
        self.relations = []  # polynomial strings in the final ring
        self._names_pool = list(names) if names else list(GEN_NAMES)
        self.assume_polynomial = assume_polynomial
        self._mono_cache = {}
        self._build()

    # ring over the generators found so far
    def _ring(self):
        return PolyRing(
            F2, tuple(self.gen_names), tuple(self.gen_degrees)
        )

    def presentation(self):
        ring = self._ring()
        from cohodepth.algebra import parse_poly

        rels = tuple(parse_poly(s, ring) for s in self.relations)
        return RingPresentation(ring, rels)

    def _standard_monomials(self, ring, degree):
        pres = self.presentation()
        gb = complete(ideal(pres, pres.relations)).groebner
        lts = [g.lm() for g in gb]
        out = []
        for m in monomials_of_degree(ring, degree):
            if not any(all(a <= b for a, b in zip(lt, m)) for lt in lts):
                out.append(m)
        return out

    def _evaluate_monomial(self, mono):
        """Cohomology class (functional bitmask over generators of
        P_{deg}) of a monomial in the ring generators."""
        got = self._mono_cache.get(mono)
        if got is not None:
            return got
        total = sum(e * d for e, d in zip(mono, self.gen_degrees))
        if total == 0:
            out = 1  # the unit: functional picking generator 0 of P_0
        else:
            i = next(k for k, e in enumerate(mono) if e)
            rest = tuple(
                e - 1 if k == i else e for k, e in enumerate(mono)
            )
            rest_deg = total - self.gen_degrees[i]
            rest_val = self._evaluate_monomial(rest)
            rows = self.lifts[i].collapsed_matrix(rest_deg)
            out = 0
            for k, row in enumerate(rows):
                # value at generator k of P_total: <rest_val, row>
                if bin(rest_val & row).count("1") & 1:
                    out |= 1 << k
        self._mono_cache[mono] = out
        return out

    def _build(self):
        res = self.res
        for d in range(1, self.max_degree + 1):
            res.extend(d)
            b = res.betti[d]
            monos = (
                self._standard_monomials(self._ring(), d)
                if self.gen_names
                else []
            )
            ech = Echelon()
            kernel_tags = []
            for idx, m in enumerate(monos):
                val = self._evaluate_monomial(m)
                added, tag = ech.insert(val, 1 << idx)
                if not added:
                    kernel_tags.append(tag)
            if kernel_tags and self.assume_polynomial:
                raise RuntimeError("unexpected relation in a polynomial ring")
            for tag in kernel_tags:
                terms = []
                t = tag
                while t:
                    bb = t & -t
                    terms.append(monos[bb.bit_length() - 1])
                    t ^= bb
                self.relations.append(
                    " + ".join(self._mono_str(m) for m in terms)
                )
            # new generators: dual basis vectors outside the decomposables
            for k in range(b):
                if not ech.contains(1 << k):
                    self.gen_names.append(self._names_pool.pop(0))
                    self.gen_degrees.append(d)
                    self.gen_classes.append(1 << k)
                    self.lifts.append(CocycleLift(res, d, 1 << k))
                    ech.insert(1 << k, 0)
        # completeness: Hilbert function of the presentation == Betti numbers
        from cohodepth.invariants import hilbert_series

        coeffs = hilbert_series(self.presentation()).coefficients(
            self.max_degree
        )
        for d in range(self.max_degree + 1):
            if coeffs[d] != res.betti[d]:
                raise RuntimeError(
                    f"presentation incomplete at degree {d}: "
                    f"hilbert {coeffs[d]} vs betti {res.betti[d]}"
                )

    def _mono_str(self, mono):
        parts = []
        for name, e in zip(self.gen_names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def class_vector(self, poly):
        """Cohomology functional of a homogeneous polynomial in this ring."""
        out = 0
        for mono, coeff in poly.terms:
            if coeff % 2:
                out ^= self._evaluate_monomial(mono)
        return out

    def express_class(self, degree, functional):
        """Write a cohomology class as a polynomial in the generators."""
        ring = self._ring()
        if functional == 0:
            return ring.zero
        monos = self._standard_monomials(ring, degree)
        ech = Echelon()
        for idx, m in enumerate(monos):
            ech.insert(self._evaluate_monomial(m), 1 << idx)
        tag = ech.solve(functional)
        if tag is None:
            raise RuntimeError("class not in the span of standard monomials")
        d = {}
        while tag:
            b = tag & -tag
            d[monos[b.bit_length() - 1]] = 1
            tag ^= b
        return ring.from_dict(d)


class ComparisonMap:
    """Chain comparison psi: Q(H) -> P(G)|_H lifting the identity of F2,
    for a subgroup H of G (same permutation degree)."""

    def __init__(self, sub_res, big_res):
        self.sub = sub_res
        self.big = big_res
        # map H element indices to G element indices
        self.h_in_g = [
            big_res.index[h] for h in sub_res.elements
        ]
        ident = 1 << big_res.identity_idx
        self.stages = [[ident]]  # psi_0 on the single generator of Q_0

    def stage(self, s):
        while len(self.stages) <= s:
            m = len(self.stages)
            self.sub.extend(m)
            self.big.extend(m)
            prev = self.stages[m - 1]
            images = []
            for k in range(self.sub.betti[m]):
                rhs = self._apply(m - 1, prev, self.sub.gens[m][k])
                images.append(self.big.preimage(m, rhs))
            self.stages.append(images)
        return self.stages[s]

    def _apply(self, stage, images, vec):
        """Extend psi_stage H-linearly to a vector of Q_stage."""
        sub, big = self.sub, self.big
        n = sub.order
        out = 0
        while vec:
            b = vec & -vec
            i = b.bit_length() - 1
            k, h = divmod(i, n)
            out ^= big.act(self.h_in_g[h], images[k])
            vec ^= b
        return out

    def restrict_functional(self, degree, functional):
        """res_H of a class in H^degree(G): functional over Q_degree gens."""
        images = self.stage(degree)
        out = 0
        for k, img in enumerate(images):
            if self.big.functional_value(degree, functional, img):
                out |= 1 << k
        return out


def restriction_map(src_model, dst_model, comparison):
    """RingMap H*(G) -> H*(H) induced by a ComparisonMap G >= H."""
    images = []
    for name, deg, cls in zip(
        src_model.gen_names, src_model.gen_degrees, src_model.gen_classes
    ):
        f = comparison.restrict_functional(deg, cls)
        images.append(dst_model.express_class(deg, f))
    return RingMap(
        src_model.presentation(), dst_model.presentation(), tuple(images)
    )
