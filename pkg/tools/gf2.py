"""Bit-packed GF(2) linear algebra on Python-int row vectors.

Vectors are ints (bit i = coordinate i).  Echelon forms keep
(row, tag) pairs so kernels and preimages come out of one elimination.
"""

from __future__ import annotations


def lowest_bit(x):
    return (x & -x).bit_length() - 1


class Echelon:
    """Forward-eliminated basis with pivot = lowest set bit of each row.

    Rows carry tags (arbitrary ints) that undergo the same row
    operations, giving preimages / kernel vectors for free.
    """

    def __init__(self):
        self.pivots = {}  # pivot bit -> (row, tag)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row, tag=0):
        """Reduce (row, tag) against the basis; returns the residual pair."""
        piv = self.pivots
        while row:
            b = row & -row
            i = b.bit_length() - 1
            got = piv.get(i)
            if got is None:
                return row, tag
            row ^= got[0]
            tag ^= got[1]
        return row, tag

    def insert(self, row, tag=0):
        """Reduce then insert if independent; returns (added, residual tag)."""
        row, tag = self.reduce(row, tag)
        if row:
            self.pivots[lowest_bit(row)] = (row, tag)
            return True, tag
        return False, tag

    def rank(self):
        return len(self.pivots)

    def rows(self):
        return [self.pivots[i][0] for i in sorted(self.pivots)]

    def contains(self, row):
        return self.reduce(row)[0] == 0

    def solve(self, row):
        """Tag combination t with sum(rows selected) == row, or None."""
        res, tag = self.reduce(row, 0)
        return None if res else tag


def span_echelon(vectors):
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e


def kernel_of_images(images):
    """Kernel of the linear map e_i -> images[i].

    Returns kernel basis vectors in the domain (bit i = e_i).
    """
    e = Echelon()
    kernel = []
    for i, img in enumerate(images):
        added, tag = e.insert(img, 1 << i)
        if not added:
            kernel.append(tag)
    return kernel


def rref_with_tags(rows_tags):
    """Full elimination of (row, tag) pairs; returns list of reduced pairs."""
    e = Echelon()
    for row, tag in rows_tags:
        e.insert(row, tag)
    return [e.pivots[i] for i in sorted(e.pivots)]
