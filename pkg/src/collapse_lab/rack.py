"""Conjugation racks with dense operation tables and subrack utilities.

A rack here is always presented on an indexed carrier with full tables for
x > y (conjugation) and the inverse translation x >^{-1} y.  Racks built from
conjugacy classes keep a reference to the class so that downstream searches
can mix table lookups with group-side multiplication.
"""

import random

_EXHAUSTIVE_LIMIT = 200
_SAMPLED_TRIPLES = 10**5


class Rack:
    """Finite rack: carrier tuple, dense op table, optional class provenance."""

    def __init__(self, carrier, op, provenance=None, source_class=None):
        self.carrier = tuple(carrier)
        self.op = [list(row) for row in op]
        n = len(self.carrier)
        if len(self.op) != n or any(len(row) != n for row in self.op):
            raise ValueError("op table must be %d x %d" % (n, n))
        self.index = {x: i for i, x in enumerate(self.carrier)}
        self.provenance = dict(provenance or {})
        self.source_class = source_class
        self.inv_op = [_invert_row(row) for row in self.op]
        _verify_axioms(self)

    def __len__(self):
        return len(self.carrier)

    def op_elem(self, x, y):
        """x > y on carrier elements."""
        return self.carrier[self.op[self.index[x]][self.index[y]]]

    def to_json(self):
        return {
            "size": len(self.carrier),
            "op_table": [list(row) for row in self.op],
            "provenance": dict(self.provenance),
        }

    def __repr__(self):
        return "Rack(size=%d)" % len(self.carrier)


def _invert_row(row):
    inv = [0] * len(row)
    seen = set()
    for j, img in enumerate(row):
        inv[img] = j
        seen.add(img)
    if len(seen) != len(row):
        raise ValueError("translation map is not a bijection")
    return inv


def _verify_axioms(rack):
    """Self-distributivity, bijectivity, and the crossed-set condition.

    Exhaustive for carriers up to 200; above that, 10^5 deterministic sampled
    triples.  Pair conditions are always exhaustive.  Failure raises.
    """
    n = len(rack.carrier)
    op = rack.op
    for i in range(n):
        if op[i][i] != i:
            raise ValueError("x > x != x at index %d" % i)
    for i in range(n):
        row_i = op[i]
        for j in range(n):
            if row_i[j] == j and op[j][i] != i:
                raise ValueError("crossed-set condition fails at (%d, %d)" % (i, j))
    if n <= _EXHAUSTIVE_LIMIT:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(_SAMPLED_TRIPLES))
    for a, b, c in triples:
        if op[a][op[b][c]] != op[op[a][b]][op[a][c]]:
            raise ValueError(
                "self-distributivity fails at indices (%d, %d, %d)" % (a, b, c))


def from_class(c):
    """Rack on a conjugacy class, op = conjugation, axioms verified."""
    ops = c.ops
    elements = c.elements
    idx = c.index
    inverses = [ops.inv(g) for g in elements]
    table = []
    for i, g in enumerate(elements):
        ginv = inverses[i]
        row = [idx[ops.canon(ops.mul(ops.mul(g, x), ginv))] for x in elements]
        table.append(row)
    prov = {
        "kind": "conjugacy-class",
        "size": len(elements),
        "base": _describe(c.base),
    }
    return Rack(elements, table, provenance=prov, source_class=c)


def _describe(x):
    try:
        from .matgrp import Matrix, mat_header, mat_text
        if isinstance(x, Matrix):
            return "%s | %s" % (mat_header(x), mat_text(x))
    except ImportError:  # pragma: no cover
        pass
    return str(x)


def rack_from_op_table(carrier, op, provenance=None):
    """Rack from an explicit table (axioms verified); for derived racks."""
    return Rack(carrier, op, provenance=provenance)


class SubrackHandle:
    """Subset of a parent rack closed under > and >^{-1}."""

    def __init__(self, parent, indices):
        self.parent = parent
        self.indices = tuple(sorted(set(indices)))
        self.index_set = frozenset(self.indices)

    def __len__(self):
        return len(self.indices)

    def elements(self):
        return tuple(self.parent.carrier[i] for i in self.indices)

    def __repr__(self):
        return "SubrackHandle(size=%d)" % len(self.indices)


def _as_index(rack, x):
    """Accepts a carrier element or a raw index (carrier elements win ties)."""
    idx = rack.index.get(x)
    if idx is not None:
        return idx
    if isinstance(x, int) and 0 <= x < len(rack.carrier):
        return x
    raise ValueError("element not in rack")


def subrack_closure(seed, parent):
    """Smallest subset containing the seed and closed under > and >^{-1}."""
    current = {_as_index(parent, x) for x in seed}
    op = parent.op
    inv_op = parent.inv_op
    changed = True
    while changed:
        changed = False
        members = list(current)
        for a in members:
            row = op[a]
            inv_row = inv_op[a]
            for b in members:
                for c in (row[b], inv_row[b]):
                    if c not in current:
                        current.add(c)
                        changed = True
    return SubrackHandle(parent, current)


def inn_orbit(Y, x):
    """Orbit of x under the translation group generated by the elements of Y.

    Y must contain x and be closed (a genuine subrack); escapes raise.
    """
    parent = Y.parent
    start = _as_index(parent, x)
    if start not in Y.index_set:
        raise ValueError("element not in subrack")
    op = parent.op
    inv_op = parent.inv_op
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for z in frontier:
            for y in Y.indices:
                for w in (op[y][z], inv_op[y][z]):
                    if w not in seen:
                        if w not in Y.index_set:
                            raise ValueError("subrack is not closed")
                        seen.add(w)
                        new.append(w)
        frontier = new
    return frozenset(parent.carrier[i] for i in seen)


def is_abelian(Y):
    """True iff every translation restricted to Y is the identity on Y."""
    if len(Y) == 0:
        raise ValueError("empty subrack")
    op = Y.parent.op
    return all(op[a][b] == b for a in Y.indices for b in Y.indices)


def is_indecomposable(Y):
    """True iff the inner translation group of Y acts transitively on Y."""
    if len(Y) == 0:
        raise ValueError("empty subrack")
    if len(Y) == 1:
        return True
    parent = Y.parent
    op = parent.op
    inv_op = parent.inv_op
    start = Y.indices[0]
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for z in frontier:
            for y in Y.indices:
                for w in (op[y][z], inv_op[y][z]):
                    if w in Y.index_set and w not in seen:
                        seen.add(w)
                        new.append(w)
        frontier = new
    return len(seen) == len(Y.indices)


def project_rack(c, quotient):
    """Rack of the projected class plus the (uniform) fiber size.

    Builds the image class in the central quotient, checks that projection is
    onto it with constant fiber size, and returns (image rack, fiber size).
    """
    from .matgrp import conj_class

    image_class = conj_class(quotient, quotient.rep(c.base))
    counts = {}
    for z in c.elements:
        r = quotient.rep(z)
        if r not in image_class.element_set:
            raise AssertionError("projection leaves the image class")
        counts[r] = counts.get(r, 0) + 1
    if set(counts) != set(image_class.elements):
        raise AssertionError("projection is not onto the image class")
    sizes = set(counts.values())
    if len(sizes) != 1:
        raise AssertionError("projection fibers are not uniform: %s" % sorted(sizes))
    fiber = sizes.pop()
    return from_class(image_class), fiber
