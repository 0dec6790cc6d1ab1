"""Quivers, their representations over Z/p, and Hom/Ext computations.

Hom and Ext^1 between representations come from the standard projective
presentation
    0 -> (+)_{a: i->j} P_j (x) M_i -> (+)_i P_i (x) M_i -> M -> 0,
which turns Hom(-, N) into the two-term complex

    delta: (+)_v Hom(M_v, N_v) -> (+)_a Hom(M_s(a), N_t(a)),
    f |-> N_a f_s - f_t M_a.

Hom(M, N) is ``ker delta`` and Ext^1(M, N) is ``coker delta``. An extension
class is therefore a tuple of arrow-indexed matrices ``e_a: M_s -> N_t``, and
Yoneda composition with module maps is plain matrix composition.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import exactla as la


class UnsupportedQuiver(ValueError):
    """The quiver is outside the class whose indecomposables we can enumerate."""


class DecompositionError(RuntimeError):
    """A representation has a summand missing from the indecomposable table."""


# ---------------------------------------------------------------------------
# quivers and paths


@dataclass(frozen=True)
class Quiver:
    """Finite acyclic quiver on vertices ``0..n-1``; arrows are (source, target)."""

    n: int
    arrows: tuple[tuple[int, int], ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError(f"arrow ({s}, {t}) leaves the vertex range 0..{self.n - 1}")
            if s == t:
                raise ValueError("loops are not allowed")
        if self._has_cycle():
            raise ValueError("quiver has an oriented cycle")

    def _has_cycle(self) -> bool:
        succ = [[] for _ in range(self.n)]
        indeg = [0] * self.n
        for s, t in self.arrows:
            succ[s].append(t)
            indeg[t] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen != self.n

    def components(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in self.arrows:
            parent[find(s)] = find(t)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def type_a_orders(self) -> list[list[int]]:
        """Vertex order along each component, which must be a path (type A).

        Raises UnsupportedQuiver when some component's underlying graph is not
        a simple path.
        """
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        seen_edges = set()
        for s, t in self.arrows:
            e = (min(s, t), max(s, t))
            if e in seen_edges:
                raise UnsupportedQuiver(f"multiple edges between {s + 1} and {t + 1}")
            seen_edges.add(e)
            adj[s].append(t)
            adj[t].append(s)
        orders = []
        for comp in self.components():
            if len(comp) == 1:
                orders.append(comp)
                continue
            n_edges = sum(1 for s, t in self.arrows if s in comp)
            if n_edges != len(comp) - 1 or any(len(adj[v]) > 2 for v in comp):
                raise UnsupportedQuiver(f"component {[v + 1 for v in comp]} is not of type A")
            start = min(v for v in comp if len(adj[v]) == 1)
            order, prev = [start], None
            while len(order) < len(comp):
                cur = order[-1]
                nxt = [w for w in adj[cur] if w != prev]
                prev = cur
                order.append(nxt[0])
            orders.append(order)
        return orders

    def is_linear(self) -> bool:
        """Single type-A component with every arrow pointing the same way."""
        try:
            orders = self.type_a_orders()
        except UnsupportedQuiver:
            return False
        if len(orders) != 1:
            return False
        order = orders[0]
        pos = {v: i for i, v in enumerate(order)}
        dirs = {pos[t] - pos[s] for s, t in self.arrows}
        return len(dirs) <= 1

    @cached_property
    def paths(self) -> "PathData":
        return PathData(self)


class PathData:
    """All paths of an acyclic quiver, with the concatenation structure tensor.

    Path ``q`` followed by path ``p`` (end(q) == start(p)) is ``concat[q, p]``;
    ``tensor[q, p, r] = 1`` exactly when that concatenation equals ``r``.
    """

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        out = [[] for _ in range(quiver.n)]
        for a, (s, t) in enumerate(quiver.arrows):
            out[s].append((a, t))
        paths: list[tuple[int, int, tuple[int, ...]]] = []
        for v in range(quiver.n):
            stack = [(v, ())]
            while stack:
                cur, arrs = stack.pop()
                paths.append((v, cur, arrs))
                for a, t in out[cur]:
                    stack.append((t, arrs + (a,)))
        paths.sort(key=lambda x: (len(x[2]), x[0], x[1], x[2]))
        self.paths = paths
        self.index = {pth: i for i, pth in enumerate(paths)}
        self.count = len(paths)
        self.start = np.array([s for s, _, _ in paths], dtype=np.int64)
        self.end = np.array([e for _, e, _ in paths], dtype=np.int64)
        self.trivial = [self.index[(v, v, ())] for v in range(quiver.n)]
        self.arrow_path = [self.index[(s, t, (a,))] for a, (s, t) in enumerate(quiver.arrows)]
        concat = -np.ones((self.count, self.count), dtype=np.int64)
        tensor = np.zeros((self.count, self.count, self.count), dtype=np.int64)
        for qi, (qs, qe, qa) in enumerate(paths):
            for pi, (ps, pe, pa) in enumerate(paths):
                if qe == ps:
                    r = self.index[(qs, pe, qa + pa)]
                    concat[qi, pi] = r
                    tensor[qi, pi, r] = 1
        self.concat = concat
        self.tensor = tensor
        # paths between a given ordered pair of vertices
        self.between: dict[tuple[int, int], list[int]] = {}
        for i, (s, e, _) in enumerate(paths):
            self.between.setdefault((s, e), []).append(i)


# ---------------------------------------------------------------------------
# representations


def _check_shape(m: np.ndarray, shape: tuple[int, int], what: str) -> None:
    if m.shape != shape:
        raise ValueError(f"{what}: expected shape {shape}, got {m.shape}")


@dataclass(frozen=True, eq=False)
class Rep:
    """A representation: a vector space k^dims[v] per vertex, a matrix per arrow.

    ``mats[a]`` has shape ``(dims[target], dims[source])``.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) != self.quiver.n or any(d < 0 for d in self.dims):
            raise ValueError(f"bad dimension vector {self.dims}")
        if len(self.mats) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        mats = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            m = np.mod(np.asarray(self.mats[a], dtype=np.int64).reshape(self.dims[t], self.dims[s]), self.p)
            mats.append(m)
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, arrows: tuple[int, ...]) -> np.ndarray:
        """Action of a path (arrow indices in travel order)."""
        if not arrows:
            raise ValueError("use the identity for trivial paths")
        s = self.quiver.arrows[arrows[0]][0]
        m = la.identity(self.dims[s])
        for a in arrows:
            m = la.matmul(self.mats[a], m, self.p)
        return m

    def key(self) -> tuple:
        return (self.dims, tuple(m.tobytes() for m in self.mats))

    def __repr__(self):
        return f"Rep(dims={self.dims})"


def zero_rep(quiver: Quiver, p: int) -> Rep:
    return Rep(quiver, (0,) * quiver.n, tuple(la.zeros(0, 0) for _ in quiver.arrows), p)


def direct_sum(reps: list[Rep]) -> Rep:
    if not reps:
        raise ValueError("empty direct sum needs an explicit zero_rep")
    q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.n))
    mats = []
    for a, (s, t) in enumerate(q.arrows):
        m = la.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            m[ro:ro + r.dims[t], co:co + r.dims[s]] = r.mats[a]
            ro += r.dims[t]
            co += r.dims[s]
        mats.append(m)
    return Rep(q, dims, tuple(mats), p)


@dataclass(frozen=True, eq=False)
class RepMap:
    """A morphism of representations: one matrix ``comps[v]: source_v -> target_v``."""

    source: Rep
    target: Rep
    comps: tuple[np.ndarray, ...]

    def __post_init__(self):
        p = self.source.p
        comps = []
        for v in range(self.source.quiver.n):
            c = np.mod(np.asarray(self.comps[v], dtype=np.int64).reshape(self.target.dims[v], self.source.dims[v]), p)
            comps.append(c)
        object.__setattr__(self, "comps", tuple(comps))

    def is_valid(self) -> bool:
        p = self.source.p
        for a, (s, t) in enumerate(self.source.quiver.arrows):
            lhs = la.matmul(self.comps[t], self.source.mats[a], p)
            rhs = la.matmul(self.target.mats[a], self.comps[s], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not c.any() for c in self.comps)

    def vector(self) -> np.ndarray:
        return np.concatenate([c.ravel() for c in self.comps]) if self.comps else la.zeros(0, 1)[:, 0]

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """Composition ``self o other``."""
        p = self.source.p
        return RepMap(other.source, self.target,
                      tuple(la.matmul(a, b, p) for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale(self, c: int) -> "RepMap":
        return RepMap(self.source, self.target, tuple(c * m for m in self.comps))


def identity_map(m: Rep) -> RepMap:
    return RepMap(m, m, tuple(la.identity(d) for d in m.dims))


def zero_map(m: Rep, n: Rep) -> RepMap:
    return RepMap(m, n, tuple(la.zeros(n.dims[v], m.dims[v]) for v in range(m.quiver.n)))


# ---------------------------------------------------------------------------
# Hom and Ext


def _delta_matrix(m: Rep, n: Rep) -> np.ndarray:
    """Matrix of f |-> (N_a f_s - f_t M_a)_a in row-major vectorisations."""
    q, p = m.quiver, m.p
    col_off = np.cumsum([0] + [n.dims[v] * m.dims[v] for v in range(q.n)])
    row_sizes = [n.dims[t] * m.dims[s] for s, t in q.arrows]
    row_off = np.cumsum([0] + row_sizes)
    d = la.zeros(int(row_off[-1]), int(col_off[-1]))
    for a, (s, t) in enumerate(q.arrows):
        r0, r1 = row_off[a], row_off[a + 1]
        if r0 == r1:
            continue
        # vec(N_a f_s) = (N_a kron I) vec(f_s);  vec(f_t M_a) = (I kron M_a^T) vec(f_t)
        blk = np.kron(n.mats[a], la.identity(m.dims[s]))
        d[r0:r1, col_off[s]:col_off[s + 1]] += blk
        blk = np.kron(la.identity(n.dims[t]), m.mats[a].T)
        d[r0:r1, col_off[t]:col_off[t + 1]] -= blk
    return np.mod(d, p)


def _split_vertex_vector(vec: np.ndarray, m: Rep, n: Rep) -> tuple[np.ndarray, ...]:
    out, off = [], 0
    for v in range(m.quiver.n):
        k = n.dims[v] * m.dims[v]
        out.append(vec[off:off + k].reshape(n.dims[v], m.dims[v]))
        off += k
    return tuple(out)


def _split_arrow_vector(vec: np.ndarray, m: Rep, n: Rep) -> tuple[np.ndarray, ...]:
    out, off = [], 0
    for s, t in m.quiver.arrows:
        k = n.dims[t] * m.dims[s]
        out.append(vec[off:off + k].reshape(n.dims[t], m.dims[s]))
        off += k
    return tuple(out)


def hom_dim(m: Rep, n: Rep) -> int:
    d = _delta_matrix(m, n)
    return d.shape[1] - la.rank(d, m.p)


def hom_space(m: Rep, n: Rep) -> list[RepMap]:
    """A basis of Hom(M, N) as RepMaps."""
    d = _delta_matrix(m, n)
    ker = la.kernel_basis(d, m.p)
    return [RepMap(m, n, _split_vertex_vector(ker[:, k], m, n)) for k in range(ker.shape[1])]


@dataclass(eq=False)
class ExtSpace:
    """Ext^1(M, N) as the cokernel of ``delta``.

    ``basis`` holds cocycle representatives (columns in the arrow-indexed
    ambient space); ``coords`` sends any cocycle to its class.
    """

    source: Rep
    target: Rep
    basis: np.ndarray
    _solver: la.Solver = field(repr=False)
    _image_rank: int = 0

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coords(self, cocycle) -> np.ndarray:
        v = np.concatenate([np.asarray(c, dtype=np.int64).ravel() for c in cocycle]) \
            if isinstance(cocycle, (tuple, list)) else np.asarray(cocycle, dtype=np.int64)
        x = self._solver.solve(np.mod(v, self.source.p))
        return x[self._image_rank:]

    def cocycle(self, k: int) -> tuple[np.ndarray, ...]:
        return _split_arrow_vector(self.basis[:, k], self.source, self.target)

    def combination(self, coeffs) -> tuple[np.ndarray, ...]:
        v = la.matmul(self.basis, np.asarray(coeffs, dtype=np.int64).reshape(-1, 1), self.source.p)[:, 0]
        return _split_arrow_vector(v, self.source, self.target)


def ext1_space(m: Rep, n: Rep) -> ExtSpace:
    p = m.p
    d = _delta_matrix(m, n)
    amb = d.shape[0]
    img = la.column_basis(d, p)
    r = img.shape[1]
    # complement: standard vectors outside the pivot columns of the image
    _, _, piv = la.rref_pivots(img.T, p) if r else (None, 0, np.zeros(0, dtype=np.int64))
    pivset = set(int(c) for c in piv)
    comp_idx = [c for c in range(amb) if c not in pivset]
    comp = la.zeros(amb, len(comp_idx))
    for k, c in enumerate(comp_idx):
        comp[c, k] = 1
    solver = la.Solver(np.hstack([img, comp]), p)
    return ExtSpace(m, n, comp, solver, r)


def ext_dim(m: Rep, n: Rep) -> int:
    d = _delta_matrix(m, n)
    return d.shape[0] - la.rank(d, m.p)


def yoneda_hom_ext(f: RepMap, e: tuple[np.ndarray, ...]) -> tuple[np.ndarray, ...]:
    """Pull back a class in Ext^1(W, N) along ``f: M -> W``; lands in Ext^1(M, N)."""
    p = f.source.p
    return tuple(la.matmul(e[a], f.comps[s], p) for a, (s, _) in enumerate(f.source.quiver.arrows))


def yoneda_ext_hom(e: tuple[np.ndarray, ...], g: RepMap) -> tuple[np.ndarray, ...]:
    """Push a class in Ext^1(M, W) forward along ``g: W -> N``; lands in Ext^1(M, N)."""
    p = g.source.p
    return tuple(la.matmul(g.comps[t], e[a], p) for a, (_, t) in enumerate(g.source.quiver.arrows))


def extension_middle(m: Rep, n: Rep, e: tuple[np.ndarray, ...]) -> Rep:
    """Middle term E of 0 -> N -> E -> M -> 0 for the class ``e``."""
    q = m.quiver
    dims = tuple(n.dims[v] + m.dims[v] for v in range(q.n))
    mats = []
    for a, (s, t) in enumerate(q.arrows):
        blk = la.zeros(dims[t], dims[s])
        blk[:n.dims[t], :n.dims[s]] = n.mats[a]
        blk[:n.dims[t], n.dims[s]:] = e[a]
        blk[n.dims[t]:, n.dims[s]:] = m.mats[a]
        mats.append(blk)
    return Rep(q, dims, tuple(mats), m.p)


# ---------------------------------------------------------------------------
# kernels and cokernels


def quotient_data(sub: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """For a subspace (columns of ``sub``) of k^n: projection k^n -> k^n/sub and a section."""
    img = la.column_basis(sub, p) if sub.size else la.zeros(n, 0)
    r = img.shape[1]
    if r:
        _, _, piv = la.rref_pivots(img.T, p)
        pivset = set(int(c) for c in piv)
    else:
        pivset = set()
    comp_idx = [c for c in range(n) if c not in pivset]
    section = la.zeros(n, len(comp_idx))
    for k, c in enumerate(comp_idx):
        section[c, k] = 1
    full = np.hstack([img, section])
    inv = la.inverse(full, p) if n else la.zeros(0, 0)
    proj = inv[r:]
    return proj, section


def subrep(m: Rep, bases: list[np.ndarray]) -> tuple[Rep, RepMap]:
    """The subrepresentation spanned vertexwise by ``bases`` (assumed arrow-stable)."""
    q, p = m.quiver, m.p
    bases = [la.column_basis(b, p) if b.size else la.zeros(m.dims[v], 0) for v, b in enumerate(bases)]
    dims = tuple(b.shape[1] for b in bases)
    mats = []
    for a, (s, t) in enumerate(q.arrows):
        rhs = la.matmul(m.mats[a], bases[s], p)
        if dims[t] == 0 or dims[s] == 0:
            if rhs.any():
                raise ValueError("subspace is not arrow-stable")
            mats.append(la.zeros(dims[t], dims[s]))
            continue
        x = la.solve(bases[t], rhs, p)
        if x is None:
            raise ValueError("subspace is not arrow-stable")
        mats.append(x)
    k = Rep(q, dims, tuple(mats), p)
    return k, RepMap(k, m, tuple(bases))


def quotient_rep(m: Rep, bases: list[np.ndarray]) -> tuple[Rep, RepMap]:
    """M / (vertexwise subspace spanned by ``bases``) with the projection."""
    q, p = m.quiver, m.p
    projs, secs = [], []
    for v in range(q.n):
        pr, se = quotient_data(bases[v], m.dims[v], p)
        projs.append(pr)
        secs.append(se)
    dims = tuple(pr.shape[0] for pr in projs)
    mats = tuple(la.matmul(la.matmul(projs[t], m.mats[a], p), secs[s], p) for a, (s, t) in enumerate(q.arrows))
    c = Rep(q, dims, mats, p)
    return c, RepMap(m, c, tuple(projs))


def kernel(f: RepMap) -> tuple[Rep, RepMap]:
    p = f.source.p
    return subrep(f.source, [la.kernel_basis(c, p) for c in f.comps])


def cokernel(f: RepMap) -> tuple[Rep, RepMap]:
    return quotient_rep(f.target, list(f.comps))


def image(f: RepMap) -> tuple[Rep, RepMap]:
    return subrep(f.target, list(f.comps))


# ---------------------------------------------------------------------------
# indecomposables


def interval_module(quiver: Quiver, order: list[int], a: int, b: int, p: int) -> Rep:
    """Interval module supported on ``order[a..b]`` with identity structure maps."""
    support = set(order[a:b + 1])
    dims = tuple(1 if v in support else 0 for v in range(quiver.n))
    mats = []
    for s, t in quiver.arrows:
        mats.append(la.identity(1) if (s in support and t in support) else la.zeros(dims[t], dims[s]))
    return Rep(quiver, dims, tuple(mats), p)


def _interval_name(support: list[int]) -> str:
    labels = sorted(v + 1 for v in support)
    if len(labels) == 1:
        return f"S{labels[0]}"
    return "M[" + ",".join(str(x) for x in labels) + "]"


class IndTable:
    """The indecomposable representations with their Hom/Ext data.

    Ordered so that ``hom_dim[i, j] == 0`` whenever ``i > j`` (directedness),
    which makes the Hom-count system in :meth:`decompose` unitriangular.
    """

    def __init__(self, quiver: Quiver, reps: list[Rep], names: list[str] | None = None):
        if not reps:
            raise ValueError("need at least one indecomposable")
        self.quiver = quiver
        self.p = reps[0].p
        names = names or [f"X{i + 1}" for i in range(len(reps))]
        n = len(reps)
        hd = np.array([[hom_dim(reps[i], reps[j]) for j in range(n)] for i in range(n)], dtype=np.int64)
        # topological order of "Hom flows forward", ties by dimension vector
        succ = [[j for j in range(n) if j != i and hd[i, j]] for i in range(n)]
        indeg = [sum(1 for i in range(n) if i != j and hd[i, j]) for j in range(n)]
        heap = [(reps[i].dims, names[i], i) for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, _, i = heapq.heappop(heap)
            order.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, (reps[j].dims, names[j], j))
        if len(order) != n:
            raise UnsupportedQuiver("Hom relation among indecomposables has cycles (not directed)")
        self.reps = [reps[i] for i in order]
        self.names = [names[i] for i in order]
        self.hom_dim = hd[np.ix_(order, order)]
        self.ext_dim = np.array([[ext_dim(a, b) for b in self.reps] for a in self.reps], dtype=np.int64)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self._hom: dict[tuple[int, int], list[RepMap]] = {}
        self._hom_solver: dict[tuple[int, int], la.Solver] = {}
        self._ext: dict[tuple[int, int], ExtSpace] = {}
        self._comp: dict[tuple[int, int, int], np.ndarray] = {}
        self._pull: dict[tuple[int, int, int], np.ndarray] = {}
        self._push: dict[tuple[int, int, int], np.ndarray] = {}

    def __len__(self):
        return len(self.reps)

    def check_invariants(self) -> None:
        n = len(self)
        for i in range(n):
            if self.hom_dim[i, i] != 1:
                raise DecompositionError(f"{self.names[i]} is not a brick")
            if self.ext_dim[i, i] != 0:
                raise DecompositionError(f"{self.names[i]} has self-extensions")
            for j in range(i):
                if self.hom_dim[i, j]:
                    raise DecompositionError("ordering is not Hom-directed")

    # -- bases ------------------------------------------------------------
    def hom_basis(self, i: int, j: int) -> list[RepMap]:
        if (i, j) not in self._hom:
            self._hom[(i, j)] = hom_space(self.reps[i], self.reps[j])
        return self._hom[(i, j)]

    def hom_coords(self, i: int, j: int, f: RepMap) -> np.ndarray:
        if (i, j) not in self._hom_solver:
            basis = self.hom_basis(i, j)
            dim = len(f.vector())
            mat = np.stack([b.vector() for b in basis], axis=1) if basis else la.zeros(dim, 0)
            self._hom_solver[(i, j)] = la.Solver(mat, self.p)
        x = self._hom_solver[(i, j)].solve(f.vector())
        if x is None:
            raise ValueError("map is not in the Hom space")
        return x

    def ext(self, i: int, j: int) -> ExtSpace:
        if (i, j) not in self._ext:
            self._ext[(i, j)] = ext1_space(self.reps[i], self.reps[j])
        return self._ext[(i, j)]

    # -- structure constants ----------------------------------------------
    def compose_table(self, i: int, j: int, k: int) -> np.ndarray:
        """``T[a, b] =`` coordinates of ``g_b o f_a`` for f in Hom(i,j), g in Hom(j,k)."""
        key = (i, j, k)
        if key not in self._comp:
            fs, gs = self.hom_basis(i, j), self.hom_basis(j, k)
            t = la.zeros(len(fs) * len(gs), int(self.hom_dim[i, k])).reshape(len(fs), len(gs), -1)
            for a, b in product(range(len(fs)), range(len(gs))):
                t[a, b] = self.hom_coords(i, k, gs[b] @ fs[a])
            self._comp[key] = t
        return self._comp[key]

    def pullback_table(self, i: int, j: int, k: int) -> np.ndarray:
        """``T[a, b] =`` class of ``e_b o f_a`` for f in Hom(i,j), e in Ext(j,k)."""
        key = (i, j, k)
        if key not in self._pull:
            fs, ext_jk, ext_ik = self.hom_basis(i, j), self.ext(j, k), self.ext(i, k)
            t = la.zeros(len(fs) * ext_jk.dim, ext_ik.dim).reshape(len(fs), ext_jk.dim, -1)
            for a, b in product(range(len(fs)), range(ext_jk.dim)):
                t[a, b] = ext_ik.coords(yoneda_hom_ext(fs[a], ext_jk.cocycle(b)))
            self._pull[key] = t
        return self._pull[key]

    def pushout_table(self, i: int, j: int, k: int) -> np.ndarray:
        """``T[a, b] =`` class of ``g_b o e_a`` for e in Ext(i,j), g in Hom(j,k)."""
        key = (i, j, k)
        if key not in self._push:
            ext_ij, gs, ext_ik = self.ext(i, j), self.hom_basis(j, k), self.ext(i, k)
            t = la.zeros(ext_ij.dim * len(gs), ext_ik.dim).reshape(ext_ij.dim, len(gs), -1)
            for a, b in product(range(ext_ij.dim), range(len(gs))):
                t[a, b] = ext_ik.coords(yoneda_ext_hom(ext_ij.cocycle(a), gs[b]))
            self._push[key] = t
        return self._push[key]

    # -- Krull-Schmidt ----------------------------------------------------
    def decompose(self, x: Rep) -> dict[int, int]:
        """Multiplicities of the indecomposables in ``x``."""
        n = len(self)
        h = np.array([hom_dim(self.reps[j], x) for j in range(n)], dtype=np.int64)
        mult = np.zeros(n, dtype=np.int64)
        for j in range(n - 1, -1, -1):
            rest = h[j] - int(self.hom_dim[j, j + 1:] @ mult[j + 1:])
            if rest < 0 or rest % self.hom_dim[j, j]:
                raise DecompositionError("inconsistent Hom-count system")
            mult[j] = rest // self.hom_dim[j, j]
        dims = sum((int(mult[i]) * np.array(self.reps[i].dims) for i in range(n)), np.zeros(self.quiver.n, dtype=np.int64))
        if tuple(int(d) for d in dims) != x.dims:
            raise DecompositionError("summands do not reconstruct the dimension vector")
        return {i: int(mult[i]) for i in range(n) if mult[i]}

    def find(self, x: Rep) -> int:
        dec = self.decompose(x)
        if len(dec) != 1 or next(iter(dec.values())) != 1:
            raise DecompositionError("representation is not indecomposable")
        return next(iter(dec))

    def sum_of(self, mult: dict[int, int]) -> Rep:
        reps = [self.reps[i] for i, m in sorted(mult.items()) for _ in range(m)]
        return direct_sum(reps) if reps else zero_rep(self.quiver, self.p)


def enumerate_indecomposables(quiver: Quiver, p: int = 101) -> IndTable:
    """All interval modules of a quiver whose components are type-A paths."""
    la.FieldSpec(p)
    reps, names = [], []
    for order in quiver.type_a_orders():
        m = len(order)
        for a in range(m):
            for b in range(a, m):
                reps.append(interval_module(quiver, order, a, b, p))
                names.append(_interval_name(order[a:b + 1]))
    table = IndTable(quiver, reps, names)
    table.check_invariants()
    return table
