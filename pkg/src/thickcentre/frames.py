"""Finite lattices as frames: distributivity, points, spatiality, duality.

A finite distributive lattice is a spatial frame. Its points (frame maps to
{0, 1}) correspond to meet-prime elements ``p != top`` through
``p = join{a : point(a) = 0}``, and ``a`` corresponds to the open set of
points not above it.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

import networkx as nx
import numpy as np


class NotALattice(ValueError):
    """Some pair lacks a meet or a join."""


class NotDistributive(ValueError):
    """A frame-only operation received a non-distributive lattice."""


class FiniteLattice:
    """A finite bounded lattice given by its order matrix ``leq[i, j] = (i <= j)``."""

    def __init__(self, leq: np.ndarray, labels: Sequence[str] | None = None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n) or n == 0:
            raise ValueError("order matrix must be square and nonempty")
        if not leq.diagonal().all():
            raise NotALattice("order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise NotALattice("order is not antisymmetric")
        if (leq.astype(np.int64) @ leq.astype(np.int64) > 0).astype(bool).__and__(~leq).any():
            raise NotALattice("order is not transitive")
        self.leq = leq
        self.n = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.meet = np.empty((n, n), dtype=np.int64)
        self.join = np.empty((n, n), dtype=np.int64)
        below_count = leq.sum(axis=0)  # number of elements <= j
        for i in range(n):
            for j in range(i, n):
                lower = np.flatnonzero(leq[:, i] & leq[:, j])
                upper = np.flatnonzero(leq[i] & leq[j])
                m = lower[np.argmax(below_count[lower])] if lower.size else -1
                if m < 0 or not leq[lower, m].all():
                    raise NotALattice(f"no meet for {self.labels[i]}, {self.labels[j]}")
                jn = upper[np.argmin(below_count[upper])] if upper.size else -1
                if jn < 0 or not leq[jn, upper].all():
                    raise NotALattice(f"no join for {self.labels[i]}, {self.labels[j]}")
                self.meet[i, j] = self.meet[j, i] = m
                self.join[i, j] = self.join[j, i] = jn
        self.bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"

    def join_all(self, items: Iterable[int]) -> int:
        out = self.bottom
        for i in items:
            out = int(self.join[out, i])
        return out

    def meet_all(self, items: Iterable[int]) -> int:
        out = self.top
        for i in items:
            out = int(self.meet[out, i])
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j) with i < j and nothing strictly between."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        ltk = lt.astype(np.int64)
        between = (ltk @ ltk) > 0
        edges = np.argwhere(lt & ~between)
        return [(int(a), int(b)) for a, b in edges]

    def heights(self) -> list[int]:
        """Length of the longest chain from the bottom."""
        order = sorted(range(self.n), key=lambda i: int(self.leq[:, i].sum()))
        below: dict[int, list[int]] = {j: [] for j in range(self.n)}
        for a, b in self.covers():
            below[b].append(a)
        h = [0] * self.n
        for j in order:
            h[j] = max((h[i] + 1 for i in below[j]), default=0)
        return h

    def check_axioms(self) -> bool:
        """Idempotence, commutativity, associativity, absorption and order consistency."""
        n, m, j = self.n, self.meet, self.join
        idx = np.arange(n)
        if not (np.array_equal(m[idx, idx], idx) and np.array_equal(j[idx, idx], idx)):
            return False
        if not (np.array_equal(m, m.T) and np.array_equal(j, j.T)):
            return False
        for a in range(n):
            if not np.array_equal(m[m[a]], m[a][m]):  # (a^b)^c == a^(b^c)
                return False
            if not np.array_equal(j[j[a]], j[a][j]):
                return False
            if not (np.all(m[a, j[a]] == a) and np.all(j[a, m[a]] == a)):
                return False
            if not np.array_equal(self.leq[a], m[a] == a):
                return False
        return True

    def is_sublattice(self, items: Iterable[int], bounded: bool = True) -> bool:
        """Closed under meet and join; ``bounded`` also demands the bottom and top."""
        s = set(items)
        if not s or (bounded and (self.bottom not in s or self.top not in s)):
            return False
        return all(int(self.meet[a, b]) in s and int(self.join[a, b]) in s for a in s for b in s)

    def restrict(self, items: Sequence[int]) -> "FiniteLattice":
        items = list(items)
        return FiniteLattice(self.leq[np.ix_(items, items)], [self.labels[i] for i in items])

    def interval(self, lo: int, hi: int) -> list[int]:
        return [i for i in range(self.n) if self.leq[lo, i] and self.leq[i, hi]]


# ---------------------------------------------------------------------------
# constructors


def chain(n: int) -> FiniteLattice:
    idx = np.arange(n)
    return FiniteLattice(idx[:, None] <= idx[None, :])


def boolean(k: int) -> FiniteLattice:
    n = 1 << k
    idx = np.arange(n)
    return FiniteLattice((idx[:, None] & ~idx[None, :]) == 0)


def from_sets(sets: Sequence[frozenset], labels: Sequence[str] | None = None) -> FiniteLattice:
    """Lattice of a family of sets ordered by inclusion."""
    n = len(sets)
    leq = np.array([[sets[i] <= sets[j] for j in range(n)] for i in range(n)], dtype=bool)
    return FiniteLattice(leq, labels)


def downset_lattice(poset: np.ndarray) -> tuple[FiniteLattice, list[frozenset]]:
    """Down-sets of a finite poset (``poset[i, j] = i <= j``) ordered by inclusion."""
    poset = np.asarray(poset, dtype=bool)
    k = poset.shape[0]
    sets = []
    for mask in range(1 << k):
        s = frozenset(i for i in range(k) if mask >> i & 1)
        if all(a in s for b in s for a in range(k) if poset[a, b]):
            sets.append(s)
    sets.sort(key=lambda s: (len(s), sorted(s)))
    return from_sets(sets, ["{" + ",".join(map(str, sorted(s))) + "}" for s in sets]), sets


def upset_lattice(poset: np.ndarray) -> tuple[FiniteLattice, list[frozenset]]:
    """Up-sets of a poset ordered by inclusion (down-sets of the opposite poset)."""
    return downset_lattice(np.asarray(poset, dtype=bool).T)


def amalgam(l1: FiniteLattice, l2: FiniteLattice) -> FiniteLattice:
    """Disjoint union with the two bottoms identified and the two tops identified."""
    mid1 = [i for i in range(l1.n) if i not in (l1.bottom, l1.top)]
    mid2 = [i for i in range(l2.n) if i not in (l2.bottom, l2.top)]
    n = 2 + len(mid1) + len(mid2)
    leq = np.zeros((n, n), dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    pos1 = {i: 1 + k for k, i in enumerate(mid1)}
    pos2 = {i: 1 + len(mid1) + k for k, i in enumerate(mid2)}
    for pos, lat, mid in ((pos1, l1, mid1), (pos2, l2, mid2)):
        for a in mid:
            for b in mid:
                leq[pos[a], pos[b]] = lat.leq[a, b]
    labels = ["0"] + [f"{l1.labels[i]}'" for i in mid1] + [f"{l2.labels[i]}''" for i in mid2] + ["1"]
    return FiniteLattice(leq, labels)


# ---------------------------------------------------------------------------
# distributivity and points


def is_distributive(lat: FiniteLattice) -> bool:
    """Both distributive identities over all triples."""
    m, j = lat.meet, lat.join
    for z in range(lat.n):
        # (x ^ z) v (y ^ z) == (x v y) ^ z  for all x, y
        mz = m[:, z]
        lhs = j[mz[:, None], mz[None, :]]
        rhs = m[j, z]
        if not np.array_equal(lhs, rhs):
            return False
        jz = j[:, z]
        lhs = m[jz[:, None], jz[None, :]]
        rhs = j[m, z]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def _require_distributive(lat: FiniteLattice) -> None:
    if not is_distributive(lat):
        raise NotDistributive("operation is defined for distributive lattices only")


def is_meet_prime(lat: FiniteLattice, p: int) -> bool:
    if p == lat.top:
        return False
    bad = ~lat.leq[:, p]
    # x ^ y <= p with neither x nor y <= p
    return not lat.leq[lat.meet[np.ix_(bad, bad)], p].any()


def points(lat: FiniteLattice) -> list[int]:
    """Meet-prime elements, standing for the frame maps to {0, 1}."""
    _require_distributive(lat)
    return [p for p in range(lat.n) if is_meet_prime(lat, p)]


def point_morphism(lat: FiniteLattice, p: int) -> tuple[int, ...]:
    """The frame map a |-> 0 if a <= p else 1."""
    return tuple(0 if lat.leq[a, p] else 1 for a in range(lat.n))


def prime_of_morphism(lat: FiniteLattice, values: Sequence[int]) -> int:
    """Inverse of :func:`point_morphism`: the join of everything sent to 0."""
    return lat.join_all(a for a in range(lat.n) if values[a] == 0)


def is_frame_morphism(src: FiniteLattice, dst: FiniteLattice, f: Sequence[int]) -> bool:
    """Preserves finite meets (with top) and joins (with bottom); finite joins are all joins here."""
    if f[src.top] != dst.top or f[src.bottom] != dst.bottom:
        return False
    for a in range(src.n):
        for b in range(a, src.n):
            if f[src.meet[a, b]] != dst.meet[f[a], f[b]] or f[src.join[a, b]] != dst.join[f[a], f[b]]:
                return False
    return True


frame_morphism_check = is_frame_morphism


def open_set(lat: FiniteLattice, a: int, pts: Sequence[int] | None = None) -> frozenset[int]:
    pts = points(lat) if pts is None else pts
    return frozenset(p for p in pts if not lat.leq[a, p])


def spatial_check(lat: FiniteLattice) -> bool:
    """a |-> U(a) is injective, sends meets to intersections and joins to unions."""
    pts = points(lat)
    opens = [open_set(lat, a, pts) for a in range(lat.n)]
    if len(set(opens)) != lat.n:
        return False
    for a in range(lat.n):
        for b in range(lat.n):
            if opens[lat.meet[a, b]] != opens[a] & opens[b]:
                return False
            if opens[lat.join[a, b]] != opens[a] | opens[b]:
                return False
    return opens[lat.bottom] == frozenset() and opens[lat.top] == frozenset(pts)


def central_support(lat: FiniteLattice, members: Sequence[frozenset], x_indices: Iterable[int]) -> frozenset[int]:
    """Points P (meet-primes of ``lat``) whose subcategory does not contain X.

    ``members[i]`` is the set of indecomposables of element ``i``; an object
    lies in a thick subcategory iff all its indecomposable summands do.
    """
    x = frozenset(x_indices)
    return frozenset(p for p in points(lat) if not x <= members[p])


def support_bijection_check(lat: FiniteLattice, members: Sequence[frozenset]) -> bool:
    """U |-> supp U is a lattice isomorphism onto the open sets of the point space."""
    pts = points(lat)
    supp = [frozenset().union(*[central_support(lat, members, {x}) for x in members[u]]) if members[u] else frozenset()
            for u in range(lat.n)]
    if len(set(supp)) != lat.n:
        return False
    opens = {open_set(lat, a, pts) for a in range(lat.n)}
    if set(supp) != opens:
        return False
    for a in range(lat.n):
        for b in range(lat.n):
            if supp[lat.meet[a, b]] != supp[a] & supp[b] or supp[lat.join[a, b]] != supp[a] | supp[b]:
                return False
    return True


# ---------------------------------------------------------------------------
# Birkhoff and Hochster duality


def join_irreducibles(lat: FiniteLattice) -> list[int]:
    lower_count = [0] * lat.n
    for _, c in lat.covers():
        lower_count[c] += 1
    return [a for a in range(lat.n) if a != lat.bottom and lower_count[a] == 1]


def birkhoff(lat: FiniteLattice) -> tuple[list[int], np.ndarray]:
    """Join-irreducible elements with their induced order."""
    _require_distributive(lat)
    ji = join_irreducibles(lat)
    return ji, lat.leq[np.ix_(ji, ji)].copy()


def hochster_dual(lat: FiniteLattice) -> FiniteLattice:
    """Up-set lattice of the join-irreducible poset: the dual spectral topology's opens."""
    _, poset = birkhoff(lat)
    return upset_lattice(poset)[0]


def _hasse_graph(lat: FiniteLattice) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(lat.n))
    g.add_edges_from(lat.covers())
    return g


def is_isomorphic(l1: FiniteLattice, l2: FiniteLattice) -> bool:
    if l1.n != l2.n:
        return False
    return nx.is_isomorphic(_hasse_graph(l1), _hasse_graph(l2))


def isomorphism(l1: FiniteLattice, l2: FiniteLattice) -> dict[int, int] | None:
    if l1.n != l2.n:
        return None
    gm = nx.algorithms.isomorphism.DiGraphMatcher(_hasse_graph(l1), _hasse_graph(l2))
    return next(gm.isomorphisms_iter(), None)


def random_poset(k: int, density: float, rng: np.random.Generator) -> np.ndarray:
    """Random partial order on k elements (transitive closure of a random DAG)."""
    leq = np.eye(k, dtype=bool)
    for i, j in combinations(range(k), 2):
        if rng.random() < density:
            leq[i, j] = True
    for m in range(k):
        leq |= leq[:, m:m + 1] & leq[m:m + 1, :]
    return leq


# ---------------------------------------------------------------------------
# maps induced by a fixed element


def restriction_map(lat: FiniteLattice, s: int, domain: Sequence[int]) -> list[int]:
    """U |-> U ^ S on the given elements."""
    return [int(lat.meet[u, s]) for u in domain]


def quotient_map(lat: FiniteLattice, s: int, domain: Sequence[int]) -> list[int]:
    """U |-> U v S, the quotient lattice being the interval [S, top]."""
    return [int(lat.join[u, s]) for u in domain]


def morphism_between(lat: FiniteLattice, domain: Sequence[int], codomain: Sequence[int],
                     fn: Callable[[FiniteLattice, int, Sequence[int]], list[int]], s: int) -> bool:
    """Check that ``fn(-, s)`` maps the sublattice ``domain`` into ``codomain`` as a frame map."""
    img = fn(lat, s, domain)
    pos = {c: k for k, c in enumerate(codomain)}
    if any(x not in pos for x in img):
        return False
    return is_frame_morphism(lat.restrict(domain), lat.restrict(codomain), [pos[x] for x in img])


def restriction_morphism(lat: FiniteLattice, centre: Sequence[int], s: int, codomain: Sequence[int]) -> bool:
    return morphism_between(lat, centre, codomain, restriction_map, s)


def quotient_morphism(lat: FiniteLattice, centre: Sequence[int], s: int, codomain: Sequence[int]) -> bool:
    return morphism_between(lat, centre, codomain, quotient_map, s)


# ---------------------------------------------------------------------------
# output


def to_dot(lat: FiniteLattice, name: str = "lattice", highlight: Iterable[int] = ()) -> str:
    """Graphviz digraph of the Hasse diagram, ranked by height (bottom first)."""
    hl = set(highlight)
    h = lat.heights()
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i in range(lat.n):
        style = ", style=bold" if i in hl else ""
        lines.append(f'  n{i} [label="{lat.labels[i]}"{style}];')
    for level in sorted(set(h)):
        ids = " ".join(f"n{i};" for i in range(lat.n) if h[i] == level)
        lines.append(f"  {{ rank=same; {ids} }}")
    for a, b in sorted(lat.covers()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
