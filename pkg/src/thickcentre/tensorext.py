"""Pointwise tensor product of representations and thick tensor ideals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quiverrep import IndTable, Rep
from .thicklat import ThickLattice


def tensor(m: Rep, n: Rep) -> Rep:
    """Vertexwise tensor product; each arrow acts by the Kronecker product of its two matrices."""
    if m.quiver != n.quiver:
        raise ValueError("representations of different quivers")
    dims = tuple(a * b for a, b in zip(m.dims, n.dims))
    mats = tuple(np.kron(a, b) for a, b in zip(m.mats, n.mats))
    return Rep(m.quiver, dims, mats, m.p)


def unit_rep(table: IndTable) -> Rep:
    q = table.quiver
    return Rep(q, (1,) * q.n, tuple(np.ones((1, 1), dtype=np.int64) for _ in q.arrows), table.p)


class TensorTable:
    """Decompositions of all products M_i (x) M_j and of the unit."""

    def __init__(self, table: IndTable):
        self.table = table
        n = len(table)
        self.products: dict[tuple[int, int], dict[int, int]] = {}
        for i in range(n):
            for j in range(n):
                self.products[(i, j)] = table.decompose(tensor(table.reps[i], table.reps[j]))
        self.unit = table.decompose(unit_rep(table))

    def product(self, i: int, j: int) -> dict[int, int]:
        return self.products[(i, j)]

    def is_commutative(self) -> bool:
        return all(self.products[(i, j)] == self.products[(j, i)] for i, j in self.products)

    def unit_law(self) -> bool:
        """unit (x) M_i decomposes as M_i."""
        for i in range(len(self.table)):
            total: dict[int, int] = {}
            for u, mu in self.unit.items():
                for k, mk in self.products[(u, i)].items():
                    total[k] = total.get(k, 0) + mu * mk
            if total != {i: 1}:
                return False
        return True

    def is_associative(self) -> bool:
        n = len(self.table)

        def times(d: dict[int, int], j: int, left: bool) -> dict[int, int]:
            out: dict[int, int] = {}
            for k, mk in d.items():
                for r, mr in (self.products[(k, j)] if left else self.products[(j, k)]).items():
                    out[r] = out.get(r, 0) + mk * mr
            return out

        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if times(self.products[(i, j)], k, True) != times(self.products[(j, k)], i, False):
                        return False
        return True

    def is_ideal(self, members) -> bool:
        members = frozenset(members)
        n = len(self.table)
        return all(set(self.products[(i, j)]) <= members for i in members for j in range(n))


def enumerate_tensor_ideals(lattice: ThickLattice, tt: TensorTable) -> list[int]:
    """Lattice elements closed under tensoring with every object."""
    ideals = [k for k in range(lattice.n) if tt.is_ideal(lattice.members[k])]
    if not lattice.is_sublattice(ideals):
        raise RuntimeError("tensor ideals are not closed under meet and join")
    return ideals


@dataclass
class TensorAudit:
    ideals: list[int]
    non_commuting: list[tuple[int, int]]

    @property
    def all_commute(self) -> bool:
        return not self.non_commuting


def tensor_commuting_audit(ideals: list[int], commuting) -> TensorAudit:
    """Commuting relation restricted to tensor ideals; ``commuting(i, j)`` is a lattice-index predicate."""
    bad = [(a, b) for x, a in enumerate(ideals) for b in ideals[x + 1:] if not commuting(a, b)]
    return TensorAudit(list(ideals), bad)
