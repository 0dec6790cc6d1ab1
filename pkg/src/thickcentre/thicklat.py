"""Thick subcategories of D^b(mod kQ) as wide subcategories of mod kQ.

For a hereditary algebra a thick subcategory is determined by the
indecomposable modules it contains, and those form a wide subcategory
(closed under kernels, cokernels and extensions). Subcategories are stored as
sets of indices into an :class:`~thickcentre.quiverrep.IndTable`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product

import numpy as np

from . import exactla as la
from .frames import FiniteLattice
from .quiverrep import IndTable, RepMap, cokernel, direct_sum, extension_middle, kernel


class ResourceLimit(RuntimeError):
    """Enumeration exceeded its closure-computation cap."""


@dataclass(frozen=True)
class ThickSub:
    """A thick subcategory, by the indecomposable modules it contains."""

    members: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.members)

    def __contains__(self, i) -> bool:
        return i in self.members

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "ThickSub") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "ThickSub") -> bool:
        return self.members < other.members

    def label(self, names: list[str]) -> str:
        if not self.members:
            return "0"
        return "{" + ",".join(names[i] for i in sorted(self.members)) + "}"


# ---------------------------------------------------------------------------
# closure


def _sum_basis(table: IndTable, xs: tuple[int, ...], ys: tuple[int, ...]):
    """Hom and Ext bases between two sums of indecomposables, as block data."""
    homs, exts = [], []
    for a, i in enumerate(xs):
        for b, j in enumerate(ys):
            for f in table.hom_basis(i, j):
                homs.append((a, b, f))
            ext = table.ext(i, j)
            for k in range(ext.dim):
                exts.append((a, b, ext.cocycle(k)))
    return homs, exts


def _assemble_map(table, xs, ys, x, y, chosen) -> RepMap:
    q = table.quiver
    comps = []
    for v in range(q.n):
        m = la.zeros(y.dims[v], x.dims[v])
        ro = [0]
        for j in ys:
            ro.append(ro[-1] + table.reps[j].dims[v])
        co = [0]
        for i in xs:
            co.append(co[-1] + table.reps[i].dims[v])
        for a, b, f in chosen:
            m[ro[b]:ro[b + 1], co[a]:co[a + 1]] += f.comps[v]
        comps.append(m)
    return RepMap(x, y, tuple(comps))


def _assemble_ext(table, xs, ys, chosen) -> tuple[np.ndarray, ...]:
    out = []
    for arrow, (s, t) in enumerate(table.quiver.arrows):
        ro = [0]
        for j in ys:
            ro.append(ro[-1] + table.reps[j].dims[t])
        co = [0]
        for i in xs:
            co.append(co[-1] + table.reps[i].dims[s])
        m = la.zeros(ro[-1], co[-1])
        for a, b, e in chosen:
            m[ro[b]:ro[b + 1], co[a]:co[a + 1]] += e[arrow]
        out.append(m)
    return tuple(out)


def _productions(table: IndTable, xs: tuple[int, ...], ys: tuple[int, ...]) -> frozenset:
    """Indecomposables arising as summands of kernels, cokernels and middle terms
    of the {0,1}-patterned maps and extensions between ``⊕xs`` and ``⊕ys``."""
    x = direct_sum([table.reps[i] for i in xs])
    y = direct_sum([table.reps[j] for j in ys])
    homs, exts = _sum_basis(table, xs, ys)
    found: set[int] = set()
    for pattern in product((0, 1), repeat=len(homs)):
        if not any(pattern):
            continue
        f = _assemble_map(table, xs, ys, x, y, [h for h, c in zip(homs, pattern) if c])
        for obj, _ in (kernel(f), cokernel(f)):
            if obj.total_dim:
                found.update(table.decompose(obj))
    for pattern in product((0, 1), repeat=len(exts)):
        if not any(pattern):
            continue
        # a class in Ext^1(X, Y) gives 0 -> Y -> E -> X -> 0
        e = _assemble_ext(table, xs, ys, [h for h, c in zip(exts, pattern) if c])
        found.update(table.decompose(extension_middle(x, y, e)))
    return frozenset(found)


class ClosureEngine:
    """Wide closure with the per-pair productions memoised.

    A production rule maps the support of a pair of sums (each with at most
    ``bound`` summands) to the indecomposables it generates; the closure of a
    set is the least fixpoint of the rules whose support it contains.
    """

    def __init__(self, table: IndTable, bound: int = 2):
        self.table = table
        self.bound = bound
        self._rules: dict[frozenset, frozenset] | None = None
        self._cache: dict[frozenset, frozenset] = {}
        self.calls = 0

    def _sums(self):
        n = len(self.table)
        for r in range(1, self.bound + 1):
            yield from combinations_with_replacement(range(n), r)

    @property
    def rules(self) -> dict[frozenset, frozenset]:
        if self._rules is None:
            rules: dict[frozenset, set] = {}
            sums = list(self._sums())
            for xs in sums:
                for ys in sums:
                    prod = _productions(self.table, xs, ys)
                    support = frozenset(xs) | frozenset(ys)
                    extra = prod - support
                    if extra:
                        rules.setdefault(support, set()).update(extra)
            self._rules = {k: frozenset(v) for k, v in rules.items()}
        return self._rules

    def closure(self, s) -> frozenset:
        s = frozenset(s)
        if s in self._cache:
            return self._cache[s]
        self.calls += 1
        cur = set(s)
        changed = True
        while changed:
            changed = False
            for support, extra in self.rules.items():
                if support <= cur and not extra <= cur:
                    cur |= extra
                    changed = True
        out = frozenset(cur)
        self._cache[s] = out
        self._cache[out] = out
        return out


_ENGINES: dict[tuple[int, int], ClosureEngine] = {}


def closure_engine(table: IndTable, bound: int = 2) -> ClosureEngine:
    key = (id(table), bound)
    eng = _ENGINES.get(key)
    if eng is None or eng.table is not table:
        eng = ClosureEngine(table, bound)
        _ENGINES[key] = eng
    return eng


def wide_closure(table: IndTable, s, bound: int = 2) -> ThickSub:
    return ThickSub(closure_engine(table, bound).closure(s))


# ---------------------------------------------------------------------------
# perpendicular categories and exceptional sequences


def perp_right(table: IndTable, u: ThickSub) -> ThickSub:
    """{X : Hom^n(U, X) = 0 for all n}."""
    us = sorted(u.members)
    return ThickSub(j for j in range(len(table))
                    if not any(table.hom_dim[i, j] or table.ext_dim[i, j] for i in us))


def perp_left(table: IndTable, u: ThickSub) -> ThickSub:
    """{X : Hom^n(X, U) = 0 for all n}."""
    us = sorted(u.members)
    return ThickSub(j for j in range(len(table))
                    if not any(table.hom_dim[j, i] or table.ext_dim[j, i] for i in us))


def double_perp(table: IndTable, s) -> ThickSub:
    """Left perpendicular of the right perpendicular: thick(S) when thick(S) is admissible."""
    return perp_left(table, perp_right(table, ThickSub(s)))


def is_exceptional_sequence(table: IndTable, seq) -> bool:
    """End one-dimensional, no self-extensions, no graded maps from later to earlier terms."""
    for a, i in enumerate(seq):
        if table.hom_dim[i, i] != 1 or table.ext_dim[i, i] != 0:
            return False
        for j in seq[:a]:
            if table.hom_dim[i, j] or table.ext_dim[i, j]:
                return False
    return len(set(seq)) == len(seq)


def _has_injective_map(table: IndTable, i: int, j: int) -> bool:
    basis = table.hom_basis(i, j)
    if not basis:
        return False
    total = basis[0]
    for f in basis[1:]:
        total = total + f
    cands = list(basis) + [total]
    return any(all(la.rank(c, table.p) == c.shape[1] for c in f.comps) for f in cands)


def _order_forward(table: IndTable, items: list[int]) -> list[int] | None:
    """Order so that graded maps only go forward, or None if impossible."""
    rest, out = list(items), []
    while rest:
        for i in rest:
            if not any(table.hom_dim[j, i] or table.ext_dim[j, i] for j in rest if j != i):
                out.append(i)
                rest.remove(i)
                break
        else:
            return None
    # graded maps go from earlier to later; exceptional needs none backwards
    return out


def exceptional_sequence(table: IndTable, u: ThickSub, bound: int = 2) -> list[int]:
    """An exceptional sequence (E1, ..., Er) with wide closure U.

    ``Hom^*(Ej, Ei) = 0`` for ``j > i``. Built from the relative simples of U;
    falls back to an exhaustive search on small U.
    """
    members = sorted(u.members)
    if not members:
        return []
    simples = [s for s in members
               if not any(m != s and _has_injective_map(table, m, s) for m in members)]
    seq = _order_forward(table, simples)
    eng = closure_engine(table, bound)
    if seq is not None and is_exceptional_sequence(table, seq) and eng.closure(seq) == u.members:
        return seq
    if len(members) > 12:
        raise RuntimeError("no exceptional sequence found for a large subcategory")
    for r in range(1, len(members) + 1):
        for combo in combinations(members, r):
            for perm in permutations(combo):
                if is_exceptional_sequence(table, list(perm)) and eng.closure(perm) == u.members:
                    return list(perm)
    raise RuntimeError("no exceptional sequence generates this subcategory")


# ---------------------------------------------------------------------------
# lattice


class ThickLattice(FiniteLattice):
    """All thick subcategories ordered by inclusion; meet is intersection, join is closure of union."""

    def __init__(self, table: IndTable, subs: list[ThickSub], bound: int = 2):
        subs = sorted(set(subs), key=lambda s: (len(s), sorted(s.members)))
        self.table = table
        self.subs = subs
        self.members = [s.members for s in subs]
        self.index = {s.members: k for k, s in enumerate(subs)}
        n = len(subs)
        leq = np.array([[subs[i].members <= subs[j].members for j in range(n)] for i in range(n)], dtype=bool)
        super().__init__(leq, [s.label(table.names) for s in subs])
        eng = closure_engine(table, bound)
        for i in range(n):
            for j in range(n):
                inter = subs[i].members & subs[j].members
                if self.index.get(inter) != self.meet[i, j]:
                    raise RuntimeError("meet is not intersection")
                if self.index.get(eng.closure(subs[i].members | subs[j].members)) != self.join[i, j]:
                    raise RuntimeError("join is not closure of the union")

    def find(self, members) -> int:
        return self.index[frozenset(members)]

    def generated(self, s) -> int:
        return self.index[closure_engine(self.table).closure(s)]


def enumerate_thick(table: IndTable, cap: int = 1 << 20, bound: int = 2) -> ThickLattice:
    """Breadth-first search over closures of U + {M}, starting from 0."""
    eng = closure_engine(table, bound)
    n = len(table)
    start = eng.closure(())
    seen = {start}
    queue = deque([start])
    budget = cap
    while queue:
        u = queue.popleft()
        for m in range(n):
            if m in u:
                continue
            budget -= 1
            if budget < 0:
                raise ResourceLimit(f"more than {cap} closure computations")
            w = eng.closure(u | {m})
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return ThickLattice(table, [ThickSub(s) for s in seen], bound)


# ---------------------------------------------------------------------------
# noncrossing partition oracle


def noncrossing_partitions(m: int) -> list[list[list[int]]]:
    """Noncrossing set partitions of {1..m}."""
    out = []

    def rec(i, blocks):
        if i > m:
            if _noncrossing(blocks):
                out.append([list(b) for b in blocks])
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(1, [])
    return out


def _noncrossing(blocks) -> bool:
    for b1, b2 in combinations(blocks, 2):
        for a, c in combinations(b1, 2):
            for b, d in combinations(b2, 2):
                if a < b < c < d or b < a < d < c:
                    return False
    return True


def nc_oracle(table: IndTable) -> list[frozenset]:
    """Wide subcategories of linear A_n from noncrossing partitions of {1..n+1}.

    The block containing a and b+1 contributes the interval module on
    positions a..b of the path.
    """
    q = table.quiver
    if not q.is_linear():
        raise ValueError("oracle needs a linearly oriented type-A quiver")
    order = q.type_a_orders()[0]
    n = len(order)
    by_support = {frozenset(v for v in range(q.n) if r.dims[v]): i for i, r in enumerate(table.reps)}
    out = []
    for part in noncrossing_partitions(n + 1):
        block_of = {x: k for k, b in enumerate(part) for x in b}
        members = frozenset(by_support[frozenset(order[a - 1:b])]
                            for a in range(1, n + 1) for b in range(a, n + 1)
                            if block_of[a] == block_of[b + 1])
        out.append(members)
    return out
