"""Commuting pairs of thick subcategories and centres of sublattices.

Two thick subcategories U, V commute when every morphism between an object of
U and an object of V, in either direction and any degree, factors through an
object of U ^ V. Over a hereditary algebra it is enough to test maps between
indecomposable modules in degrees 0 and 1, and a map factors through a sum
exactly when it is a sum of maps factoring through the summands, so the test
is a comparison of subspaces spanned by composition and Yoneda products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .dercat import DerivedCategory, graded_hom_dim, shift_map
from .frames import FiniteLattice, is_distributive
from .quiverrep import IndTable
from .thicklat import ThickLattice, ThickSub, perp_left, perp_right


def factoring_subspace(table: IndTable, m: int, n: int, degree: int, through) -> np.ndarray:
    """Span (as columns, in Hom/Ext coordinates) of the maps M -> N[degree] factoring through ``through``."""
    if degree == 0:
        dim = int(table.hom_dim[m, n])
    elif degree == 1:
        dim = int(table.ext_dim[m, n])
    else:
        return la.zeros(0, 0)
    vecs = []
    for w in sorted(through):
        if degree == 0:
            if table.hom_dim[m, w] and table.hom_dim[w, n]:
                vecs.append(table.compose_table(m, w, n).reshape(-1, dim))
        else:
            if table.hom_dim[m, w] and table.ext_dim[w, n]:
                vecs.append(table.pullback_table(m, w, n).reshape(-1, dim))
            if table.ext_dim[m, w] and table.hom_dim[w, n]:
                vecs.append(table.pushout_table(m, w, n).reshape(-1, dim))
    if not vecs or dim == 0:
        return la.zeros(dim, 0)
    return la.column_basis(np.vstack(vecs).T, table.p)


def _full(table: IndTable, m: int, n: int, degree: int, through) -> bool:
    dim = int(table.hom_dim[m, n] if degree == 0 else table.ext_dim[m, n])
    if dim == 0:
        return True
    return factoring_subspace(table, m, n, degree, through).shape[1] == dim


def commutes(table: IndTable, u, v, meet=None) -> bool:
    """Every map between U and V (both directions, degrees 0 and 1) factors through U ^ V."""
    u = frozenset(getattr(u, "members", u))
    v = frozenset(getattr(v, "members", v))
    w = (u & v) if meet is None else frozenset(getattr(meet, "members", meet))
    for a in u:
        for b in v:
            for d in (0, 1):
                if not (_full(table, a, b, d, w) and _full(table, b, a, d, w)):
                    return False
    return True


class CommutingMatrix:
    """Symmetric commuting relation over all elements of a thick lattice."""

    def __init__(self, lattice: ThickLattice):
        self.lattice = lattice
        n = lattice.n
        m = np.zeros((n, n), dtype=bool)
        for i in range(n):
            m[i, i] = True
            for j in range(i + 1, n):
                m[i, j] = m[j, i] = commutes(lattice.table, lattice.members[i], lattice.members[j])
        self.matrix = m

    def __call__(self, i: int, j: int) -> bool:
        return bool(self.matrix[i, j])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.matrix, self.matrix.T)) and bool(self.matrix.diagonal().all())


_MATRICES: dict[int, CommutingMatrix] = {}


def commuting_matrix(lattice: ThickLattice) -> CommutingMatrix:
    cm = _MATRICES.get(id(lattice))
    if cm is None or cm.lattice is not lattice:
        cm = CommutingMatrix(lattice)
        _MATRICES[id(lattice)] = cm
    return cm


def centre(lattice: ThickLattice, sub: list[int] | None = None, cm: CommutingMatrix | None = None) -> list[int]:
    """Elements of ``sub`` commuting with every element of ``sub``."""
    sub = list(range(lattice.n)) if sub is None else sorted(sub)
    if not lattice.is_sublattice(sub, bounded=False):
        raise ValueError("selection is not a sublattice")
    cm = cm or commuting_matrix(lattice)
    return [u for u in sub if all(cm(u, v) for v in sub)]


@dataclass
class CentralAlgebraReport:
    meet_closed: bool = True
    join_closed: bool = True
    distributive_identities: bool = True
    distributive: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.meet_closed and self.join_closed and self.distributive_identities and self.distributive


def verify_central_algebra(lattice: FiniteLattice, central: list[int], ambient: list[int] | None = None) -> CentralAlgebraReport:
    """Meets and joins of central elements are central; both distributive
    identities hold for central U, V and every W of the ambient sublattice."""
    ambient = list(range(lattice.n)) if ambient is None else list(ambient)
    cset = set(central)
    rep = CentralAlgebraReport()
    m, j = lattice.meet, lattice.join
    for u in central:
        for v in central:
            if int(m[u, v]) not in cset:
                rep.meet_closed = False
                rep.failures.append(f"meet {lattice.labels[u]} ^ {lattice.labels[v]} not central")
            if int(j[u, v]) not in cset:
                rep.join_closed = False
                rep.failures.append(f"join {lattice.labels[u]} v {lattice.labels[v]} not central")
            for w in ambient:
                if j[m[u, w], m[v, w]] != m[j[u, v], w] or m[j[u, w], j[v, w]] != j[m[u, v], w]:
                    rep.distributive_identities = False
                    rep.failures.append(f"identity fails at {lattice.labels[u]}, {lattice.labels[v]}, {lattice.labels[w]}")
    if rep.meet_closed and rep.join_closed and central:
        rep.distributive = is_distributive(lattice.restrict(sorted(cset)))
    return rep


def adjoint_criterion(table: IndTable, u) -> bool:
    """Left and right perpendicular categories agree (necessary for centrality)."""
    u = u if isinstance(u, ThickSub) else ThickSub(u)
    return perp_left(table, u) == perp_right(table, u)


def _graded_dims(cat: DerivedCategory, a, b, window):
    fa, fb = cat.form(a), cat.form(b)
    return {n: graded_hom_dim(cat.table, fa, fb, n) for n in window}


def commutes_in_quotient(cat: DerivedCategory, s, u, v, window=range(-4, 5)) -> bool:
    """Commuting of U/S and V/S in T/S, computed with localized objects.

    A map in T/S from x to y[d] is a map L_S x -> L_S y[d]; it must be a sum of
    composites through L_S w[k] with w in U ^ V.
    """
    s = frozenset(getattr(s, "members", s))
    u = frozenset(getattr(u, "members", u))
    v = frozenset(getattr(v, "members", v))
    if not (s <= u and s <= v):
        raise ValueError("both subcategories must contain S")
    meet = (u & v) - s
    loc = {i: cat.local(s, cat.module(i)) for i in (u | v)}
    for a in sorted(u - s):
        for b in sorted(v - s):
            for x, y in ((a, b), (b, a)):
                if not _factors(cat, loc[x], loc[y], [loc[w] for w in sorted(meet)], window):
                    return False
    return True


def _factors(cat: DerivedCategory, lx, ly, lws, window) -> bool:
    p = cat.p
    dims_xy = _graded_dims(cat, lx, ly, window)
    for d in window:
        if dims_xy[d] == 0:
            continue
        target = cat.hom(lx, ly, d)
        vecs = []
        for lw in lws:
            for k in window:
                h1 = cat.hom(lx, lw, k)
                h2 = cat.hom(lw, ly, d - k)
                if h1.dim == 0 or h2.dim == 0:
                    continue
                for f in h1.basis():
                    for g in h2.basis():
                        # g: Lw -> Ly[d-k]; shifted by k it starts at Lw[k]
                        gk = shift_map(g, k, h1.target, target.target)
                        vecs.append(target.coords(gk @ f))
        if not vecs or la.rank(np.stack(vecs, axis=1), p) < target.dim:
            return False
    return True
