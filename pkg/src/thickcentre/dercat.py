"""The bounded derived category as the homotopy category of projective complexes.

A bounded complex of finitely generated projectives over the path algebra is a
graded list of vertices (term ``k`` is ``(+)_i P_{v_i}``) together with
differentials. ``Hom(P_a, P_b)`` has the paths ``b ~> a`` as basis, so a map
``(+)_i P_{v_i} -> (+)_j P_{w_j}`` is an integer array ``m[j, i, r]`` whose
nonzero entries sit on paths ``r: w_j ~> v_i``. Composition is path
concatenation (``g o f`` reads the path of ``g`` first).

Objects up to isomorphism are :class:`DObject` canonical forms: over a
hereditary algebra every complex is the sum of its shifted cohomology modules,
so the decomposed cohomology is a complete invariant.

Sign conventions:
    shift      C[n]^k = C^{k+n},  d_{C[n]} = (-1)^n d_C   (maps shift without sign)
    cone       cone(f)^k = A^{k+1} (+) B^k,  d = [[-d_A, 0], [f, d_B]]
    Hom        (dh)^k = d_D h^k - (-1)^n h^{k+1} d_C  for h of degree n
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactla as la
from .quiverrep import IndTable, Quiver, Rep, RepMap, quotient_rep, subrep


class ConstructionError(RuntimeError):
    """A checked postcondition of a construction failed."""


# ---------------------------------------------------------------------------
# path calculus


class PathCalculus:
    """Composition of maps between sums of indecomposable projectives."""

    def __init__(self, quiver: Quiver, p: int):
        self.quiver = quiver
        self.p = p
        pd = quiver.paths
        self.data = pd
        self.n = pd.count
        self.tensor = pd.tensor
        self.trivial = pd.trivial
        self.between = pd.between

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols, self.n), dtype=np.int64)

    def identity(self, verts) -> np.ndarray:
        m = self.zeros(len(verts), len(verts))
        for i, v in enumerate(verts):
            m[i, i, self.trivial[v]] = 1
        return m

    def compose(self, g: np.ndarray, f: np.ndarray) -> np.ndarray:
        """``g o f`` for f: P_v -> P_w and g: P_w -> P_u (array convention above)."""
        if g.shape[1] != f.shape[0]:
            raise ValueError(f"cannot compose {g.shape} after {f.shape}")
        if g.size == 0 or f.size == 0:
            return self.zeros(g.shape[0], f.shape[1])
        x = np.tensordot(g, self.tensor, axes=([2], [0]))  # k j p r
        return np.mod(np.einsum("kjpr,jip->kir", x, f), self.p)


class Block:
    """Coordinates on Hom((+)_i P_{src_i}, (+)_j P_{tgt_j}): the valid (j, i, path) entries."""

    def __init__(self, calc: PathCalculus, tgt: tuple[int, ...], src: tuple[int, ...]):
        self.tgt, self.src = tgt, src
        a_idx, b_idx, r_idx = [], [], []
        for a, w in enumerate(tgt):
            for b, v in enumerate(src):
                for r in calc.between.get((w, v), ()):
                    a_idx.append(a)
                    b_idx.append(b)
                    r_idx.append(r)
        self.a = np.array(a_idx, dtype=np.int64)
        self.b = np.array(b_idx, dtype=np.int64)
        self.r = np.array(r_idx, dtype=np.int64)
        self.size = len(a_idx)
        self.n_paths = calc.n

    def pack(self, arr: np.ndarray) -> np.ndarray:
        return arr[self.a, self.b, self.r]

    def unpack(self, vec: np.ndarray) -> np.ndarray:
        out = np.zeros((len(self.tgt), len(self.src), self.n_paths), dtype=np.int64)
        out[self.a, self.b, self.r] = vec
        return out


# ---------------------------------------------------------------------------
# complexes and chain maps


@dataclass(frozen=True, eq=False)
class Complex:
    """A bounded complex of projectives; ``d[k]`` maps term k to term k+1."""

    calc: PathCalculus
    terms: dict[int, tuple[int, ...]]
    d: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        terms = {int(k): tuple(int(v) for v in t) for k, t in self.terms.items() if len(t)}
        d = {}
        for k, m in self.d.items():
            src, tgt = terms.get(k, ()), terms.get(k + 1, ())
            if not src or not tgt:
                continue
            m = np.mod(np.asarray(m, dtype=np.int64), self.calc.p)
            if m.shape != (len(tgt), len(src), self.calc.n):
                raise ValueError(f"differential {k} has shape {m.shape}")
            if m.any():
                d[k] = m
        object.__setattr__(self, "terms", dict(sorted(terms.items())))
        object.__setattr__(self, "d", d)

    def term(self, k: int) -> tuple[int, ...]:
        return self.terms.get(k, ())

    def diff(self, k: int) -> np.ndarray:
        if k in self.d:
            return self.d[k]
        return self.calc.zeros(len(self.term(k + 1)), len(self.term(k)))

    @property
    def degrees(self) -> list[int]:
        return list(self.terms)

    @property
    def span(self) -> tuple[int, int]:
        if not self.terms:
            return (0, -1)
        ks = list(self.terms)
        return (ks[0], ks[-1])

    def is_zero_complex(self) -> bool:
        return not self.terms

    @property
    def size(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def is_complex(self) -> bool:
        for k in self.terms:
            if k in self.d and k + 1 in self.d:
                if self.calc.compose(self.d[k + 1], self.d[k]).any():
                    return False
        return True

    @cached_property
    def key(self) -> tuple:
        return (tuple(self.terms.items()), tuple((k, m.tobytes()) for k, m in self.d.items()))

    def __repr__(self):
        return f"Complex({ {k: len(t) for k, t in self.terms.items()} })"


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degree-zero map of complexes; ``comps[k]: source^k -> target^k``."""

    source: Complex
    target: Complex
    comps: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        calc = self.source.calc
        comps = {}
        for k, m in self.comps.items():
            s, t = self.source.term(k), self.target.term(k)
            if not s or not t:
                continue
            m = np.mod(np.asarray(m, dtype=np.int64), calc.p)
            if m.shape != (len(t), len(s), calc.n):
                raise ValueError(f"component {k} has shape {m.shape}")
            if m.any():
                comps[k] = m
        object.__setattr__(self, "comps", comps)

    def comp(self, k: int) -> np.ndarray:
        if k in self.comps:
            return self.comps[k]
        return self.source.calc.zeros(len(self.target.term(k)), len(self.source.term(k)))

    def is_chain_map(self) -> bool:
        calc = self.source.calc
        ks = set(self.source.terms) | set(self.target.terms)
        for k in ks:
            lhs = calc.compose(self.target.diff(k), self.comp(k))
            rhs = calc.compose(self.comp(k + 1), self.source.diff(k))
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        calc = self.source.calc
        ks = set(self.comps) & set(other.comps)
        return ChainMap(other.source, self.target, {k: calc.compose(self.comps[k], other.comps[k]) for k in ks})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        ks = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {k: self.comp(k) + other.comp(k) for k in ks})

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {k: -m for k, m in self.comps.items()})

    def scale(self, c: int) -> "ChainMap":
        return ChainMap(self.source, self.target, {k: c * m for k, m in self.comps.items()})


def zero_complex(calc: PathCalculus) -> Complex:
    return Complex(calc, {})


def identity_chain(c: Complex) -> ChainMap:
    return ChainMap(c, c, {k: c.calc.identity(t) for k, t in c.terms.items()})


def zero_chain(a: Complex, b: Complex) -> ChainMap:
    return ChainMap(a, b, {})


def shift(c: Complex, n: int) -> Complex:
    sign = -1 if n % 2 else 1
    return Complex(c.calc, {k - n: t for k, t in c.terms.items()}, {k - n: sign * m for k, m in c.d.items()})


def shift_map(f: ChainMap, n: int, source: Complex | None = None, target: Complex | None = None) -> ChainMap:
    src = source if source is not None else shift(f.source, n)
    tgt = target if target is not None else shift(f.target, n)
    return ChainMap(src, tgt, {k - n: m for k, m in f.comps.items()})


def _block(rows: list[list[np.ndarray]], row_sizes: list[int], col_sizes: list[int], n: int) -> np.ndarray:
    out = np.zeros((sum(row_sizes), sum(col_sizes), n), dtype=np.int64)
    r0 = 0
    for i, rs in enumerate(row_sizes):
        c0 = 0
        for j, cs in enumerate(col_sizes):
            m = rows[i][j]
            if m is not None and rs and cs:
                out[r0:r0 + rs, c0:c0 + cs] = m
            c0 += cs
        r0 += rs
    return out


def direct_sum(cs: list[Complex]) -> tuple[Complex, list[ChainMap], list[ChainMap]]:
    """Sum with its inclusions and projections."""
    calc = cs[0].calc
    ks = sorted(set().union(*[c.terms for c in cs]))
    terms = {k: sum((c.term(k) for c in cs), ()) for k in ks}
    d = {}
    for k in ks:
        sizes_s = [len(c.term(k)) for c in cs]
        sizes_t = [len(c.term(k + 1)) for c in cs]
        rows = [[c.diff(k) if i == j else None for j, c in enumerate(cs)] for i in range(len(cs))]
        d[k] = _block(rows, sizes_t, sizes_s, calc.n)
    total = Complex(calc, terms, d)
    incs, projs = [], []
    for idx, c in enumerate(cs):
        inc, proj = {}, {}
        for k in c.terms:
            off = sum(len(cc.term(k)) for cc in cs[:idx])
            m = calc.zeros(len(total.term(k)), len(c.term(k)))
            m[off:off + len(c.term(k)), :] = calc.identity(c.term(k))
            inc[k] = m
            proj[k] = np.transpose(m, (1, 0, 2)).copy()
        incs.append(ChainMap(c, total, inc))
        projs.append(ChainMap(total, c, proj))
    return total, incs, projs


@dataclass(frozen=True, eq=False)
class Cone:
    """Mapping cone of ``f: A -> B`` with its structure maps ``B -> cone -> A[1]``."""

    f: ChainMap
    obj: Complex
    inc: ChainMap
    proj: ChainMap


def cone(f: ChainMap) -> Cone:
    a, b, calc = f.source, f.target, f.source.calc
    ks = sorted(set(k - 1 for k in a.terms) | set(b.terms))
    terms = {k: a.term(k + 1) + b.term(k) for k in ks}
    d = {}
    for k in ks:
        rows = [[-a.diff(k + 1), None], [f.comp(k + 1), b.diff(k)]]
        d[k] = _block(rows, [len(a.term(k + 2)), len(b.term(k + 1))], [len(a.term(k + 1)), len(b.term(k))], calc.n)
    c = Complex(calc, terms, d)
    a1 = shift(a, 1)
    inc, proj = {}, {}
    for k in ks:
        na, nb = len(a.term(k + 1)), len(b.term(k))
        if nb:
            m = calc.zeros(na + nb, nb)
            m[na:] = calc.identity(b.term(k))
            inc[k] = m
        if na:
            m = calc.zeros(na, na + nb)
            m[:, :na] = calc.identity(a.term(k + 1))
            proj[k] = m
    return Cone(f, c, ChainMap(b, c, inc), ChainMap(c, a1, proj))


# ---------------------------------------------------------------------------
# Gaussian elimination of contractible summands


def _find_unit(c: Complex):
    for k, m in c.d.items():
        src, tgt = c.term(k), c.term(k + 1)
        for j, w in enumerate(tgt):
            triv = c.calc.trivial[w]
            for i, v in enumerate(src):
                if v == w and m[j, i, triv]:
                    return k, i, j
    return None


def _selector(calc: PathCalculus, verts: tuple[int, ...], keep: list[int]) -> np.ndarray:
    """Inclusion of the kept summands into the full sum."""
    m = calc.zeros(len(verts), len(keep))
    for x, i in enumerate(keep):
        m[i, x, calc.trivial[verts[i]]] = 1
    return m


def _eliminate(c: Complex, k: int, i0: int, j0: int) -> tuple[Complex, ChainMap, ChainMap]:
    calc, p = c.calc, c.calc.p
    dk = c.d[k]
    v = c.term(k)[i0]
    coef = int(dk[j0, i0, calc.trivial[v]])
    cinv = pow(coef, p - 2, p)
    keep_s = [i for i in range(len(c.term(k))) if i != i0]
    keep_t = [j for j in range(len(c.term(k + 1))) if j != j0]
    eps = dk[np.ix_(keep_t, keep_s)]
    gam = dk[np.ix_(keep_t, [i0])]
    dlt = dk[np.ix_([j0], keep_s)]
    terms = dict(c.terms)
    terms[k] = tuple(c.term(k)[i] for i in keep_s)
    terms[k + 1] = tuple(c.term(k + 1)[j] for j in keep_t)
    d = dict(c.d)
    d[k] = eps - cinv * calc.compose(gam, dlt)
    if k - 1 in c.d:
        d[k - 1] = c.d[k - 1][keep_s]
    if k + 1 in c.d:
        d[k + 1] = c.d[k + 1][:, keep_t]
    red = Complex(calc, terms, d)
    f = {kk: calc.identity(t) for kk, t in red.terms.items()}
    g = {kk: calc.identity(t) for kk, t in red.terms.items()}
    sel_s = _selector(calc, c.term(k), keep_s)
    sel_t = _selector(calc, c.term(k + 1), keep_t)
    f[k] = sel_s.copy()
    f[k][i0] = -cinv * dlt[0]
    f[k + 1] = sel_t
    g[k] = np.transpose(sel_s, (1, 0, 2)).copy()
    g[k + 1] = np.transpose(sel_t, (1, 0, 2)).copy()
    g[k + 1][:, j0] = -cinv * gam[:, 0]
    return red, ChainMap(red, c, f), ChainMap(c, red, g)


@dataclass(frozen=True, eq=False)
class Minimal:
    """A minimal model with mutually inverse homotopy equivalences."""

    obj: Complex
    inc: ChainMap   # obj -> original
    proj: ChainMap  # original -> obj


def minimize(c: Complex) -> Minimal:
    """Strip contractible ``P_v -> P_v`` pieces; no unit entries remain afterwards."""
    inc, proj = identity_chain(c), identity_chain(c)
    cur = c
    while True:
        hit = _find_unit(cur)
        if hit is None:
            return Minimal(cur, inc, proj)
        red, f, g = _eliminate(cur, *hit)
        inc = inc @ f
        proj = g @ proj
        cur = red


# ---------------------------------------------------------------------------
# Hom complexes and morphisms in the homotopy category


class HomComplex:
    """Degree ``n`` part of Hom(C, D) with coordinates and the differential."""

    def __init__(self, c: Complex, d: Complex, n: int):
        self.c, self.d, self.n = c, d, n
        calc = c.calc
        self.blocks: list[tuple[int, Block]] = []
        offs = [0]
        for k, t in c.terms.items():
            tgt = d.term(k + n)
            if tgt:
                b = Block(calc, tgt, t)
                if b.size:
                    self.blocks.append((k, b))
                    offs.append(offs[-1] + b.size)
        self.offsets = offs
        self.dim = offs[-1]
        self.index = {k: i for i, (k, _) in enumerate(self.blocks)}

    def pack(self, comps: dict[int, np.ndarray]) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for i, (k, b) in enumerate(self.blocks):
            if k in comps:
                out[self.offsets[i]:self.offsets[i + 1]] = b.pack(comps[k])
        return out

    def unpack(self, vec: np.ndarray) -> dict[int, np.ndarray]:
        return {k: b.unpack(vec[self.offsets[i]:self.offsets[i + 1]]) for i, (k, b) in enumerate(self.blocks)}


def _left_matrix(calc: PathCalculus, g: np.ndarray, src: Block, dst: Block) -> np.ndarray:
    """Matrix of h |-> g o h from ``src`` coordinates to ``dst`` coordinates."""
    gg = np.einsum("kjq,qpr->krjp", g, calc.tensor)
    m = gg[dst.a[:, None], dst.r[:, None], src.a[None, :], src.r[None, :]]
    return m * (dst.b[:, None] == src.b[None, :])


def _right_matrix(calc: PathCalculus, h: np.ndarray, src: Block, dst: Block) -> np.ndarray:
    """Matrix of f |-> f o h from ``src`` coordinates to ``dst`` coordinates."""
    hh = np.einsum("jip,qpr->irjq", h, calc.tensor)
    m = hh[dst.b[:, None], dst.r[:, None], src.b[None, :], src.r[None, :]]
    return m * (dst.a[:, None] == src.a[None, :])


def hom_differential(src: HomComplex, dst: HomComplex) -> np.ndarray:
    """Matrix of the Hom-complex differential from degree n to degree n+1."""
    calc = src.c.calc
    c, d, n = src.c, src.d, src.n
    m = np.zeros((dst.dim, src.dim), dtype=np.int64)
    sign = -1 if n % 2 == 0 else 1  # -(-1)^n
    for si, (k, sb) in enumerate(src.blocks):
        cs = slice(src.offsets[si], src.offsets[si + 1])
        if k in dst.index and (k + n) in d.d:
            di = dst.index[k]
            db = dst.blocks[di][1]
            m[dst.offsets[di]:dst.offsets[di + 1], cs] += _left_matrix(calc, d.d[k + n], sb, db)
        if (k - 1) in dst.index and (k - 1) in c.d:
            di = dst.index[k - 1]
            db = dst.blocks[di][1]
            m[dst.offsets[di]:dst.offsets[di + 1], cs] += sign * _right_matrix(calc, c.d[k - 1], sb, db)
    return np.mod(m, calc.p)


class GradedHom:
    """Hom_K(C, D[n]) with an explicit basis of chain maps and a coordinate map."""

    def __init__(self, c: Complex, d: Complex, n: int = 0):
        self.source, self.target_unshifted, self.degree = c, d, n
        self.target = shift(d, n) if n else d
        p = c.calc.p
        h_m1 = HomComplex(c, self.target, -1)
        h_0 = HomComplex(c, self.target, 0)
        h_1 = HomComplex(c, self.target, 1)
        self.space = h_0
        d0 = hom_differential(h_0, h_1)
        dm1 = hom_differential(h_m1, h_0)
        z = la.kernel_basis(d0, p) if h_0.dim else la.zeros(0, 0)
        b = la.column_basis(dm1, p) if h_m1.dim and h_0.dim else la.zeros(h_0.dim, 0)
        self._cocycle_solver = la.Solver(d0, p) if h_0.dim else None
        self._d0 = d0
        # complement of B inside Z, chosen among the kernel basis vectors
        rb = b.shape[1]
        if z.shape[1] > rb:
            _, _, piv = la.rref_pivots(np.hstack([b, z]), p)
            comp_cols = [int(c_) - rb for c_ in piv if c_ >= rb]
            comp = z[:, comp_cols]
        else:
            comp = la.zeros(h_0.dim, 0)
        self.boundary_rank = rb
        self.basis_vectors = comp
        self.dim = comp.shape[1]
        self._solver = la.Solver(np.hstack([b, comp]), p) if h_0.dim else None

    def basis(self) -> list[ChainMap]:
        return [self.chain_map(self.basis_vectors[:, i]) for i in range(self.dim)]

    def chain_map(self, vec: np.ndarray) -> ChainMap:
        return ChainMap(self.source, self.target, self.space.unpack(np.asarray(vec, dtype=np.int64)))

    def from_coords(self, x) -> ChainMap:
        x = np.asarray(x, dtype=np.int64).reshape(-1, 1)
        if self.dim == 0:
            return zero_chain(self.source, self.target)
        v = la.matmul(self.basis_vectors, x, self.source.calc.p)[:, 0]
        return self.chain_map(v)

    def coords(self, f: ChainMap) -> np.ndarray:
        """Class of a chain map ``source -> target`` in the chosen basis."""
        if self.space.dim == 0:
            return np.zeros(0, dtype=np.int64)
        v = self.space.pack(f.comps)
        if la.matmul(self._d0, v.reshape(-1, 1), self.source.calc.p).any():
            raise ValueError("not a chain map")
        x = self._solver.solve(v)
        return x[self.boundary_rank:]

    def is_nullhomotopic(self, f: ChainMap) -> bool:
        return not self.coords(f).any()


# ---------------------------------------------------------------------------
# cohomology and canonical forms


def term_rep(c: Complex, k: int, quiver: Quiver) -> tuple[Rep, list[list[tuple[int, int]]]]:
    """Term k evaluated vertexwise, with the basis labels (summand, path) per vertex."""
    calc = c.calc
    pd = calc.data
    verts = c.term(k)
    labels = [[] for _ in range(quiver.n)]
    for i, v in enumerate(verts):
        for b in range(quiver.n):
            for r in calc.between.get((v, b), ()):
                labels[b].append((i, r))
    index = [{lab: x for x, lab in enumerate(labels[b])} for b in range(quiver.n)]
    mats = []
    for a, (s, t) in enumerate(quiver.arrows):
        m = la.zeros(len(labels[t]), len(labels[s]))
        ap = pd.arrow_path[a]
        for x, (i, r) in enumerate(labels[s]):
            m[index[t][(i, int(pd.concat[r, ap]))], x] = 1
        mats.append(m)
    rep = Rep(quiver, tuple(len(l_) for l_ in labels), tuple(mats), calc.p)
    return rep, labels


def differential_map(c: Complex, k: int, quiver: Quiver, src, tgt) -> RepMap:
    calc, pd = c.calc, c.calc.data
    src_rep, src_lab = src
    tgt_rep, tgt_lab = tgt
    m = c.diff(k)
    comps = []
    for b in range(quiver.n):
        tindex = {lab: x for x, lab in enumerate(tgt_lab[b])}
        comp = la.zeros(len(tgt_lab[b]), len(src_lab[b]))
        for x, (i, sigma) in enumerate(src_lab[b]):
            for j in range(m.shape[0]):
                for r in np.flatnonzero(m[j, i]):
                    comp[tindex[(j, int(pd.concat[r, sigma]))], x] += m[j, i, r]
        comps.append(comp)
    return RepMap(src_rep, tgt_rep, tuple(comps))


def cohomology(c: Complex, k: int, quiver: Quiver) -> Rep:
    """H^k(C) as a representation."""
    p = c.calc.p
    mid = term_rep(c, k, quiver)
    nxt = term_rep(c, k + 1, quiver)
    prv = term_rep(c, k - 1, quiver)
    d_out = differential_map(c, k, quiver, mid, nxt)
    d_in = differential_map(c, k - 1, quiver, prv, mid)
    ker_rep, ker_inc = subrep(mid[0], [la.kernel_basis(m, p) for m in d_out.comps])
    rel = []
    for v in range(quiver.n):
        img = d_in.comps[v]
        if ker_rep.dims[v] == 0 or img.size == 0:
            rel.append(la.zeros(ker_rep.dims[v], 0))
            continue
        x = la.solve(ker_inc.comps[v], img, p)
        if x is None:
            raise ConstructionError("d^2 != 0")
        rel.append(x)
    h, _ = quotient_rep(ker_rep, rel)
    return h


@dataclass(frozen=True, order=True)
class DObject:
    """Iso class of an object: sorted (indecomposable index, shift, multiplicity) triples.

    ``(i, s, m)`` stands for ``M_i[s]^m``, the module ``M_i`` placed in
    cohomological degree ``-s``.
    """

    summands: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        acc: dict[tuple[int, int], int] = {}
        for i, s, m in self.summands:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                acc[(int(i), int(s))] = acc.get((int(i), int(s)), 0) + int(m)
        object.__setattr__(self, "summands", tuple(sorted((i, s, m) for (i, s), m in acc.items())))

    @classmethod
    def module(cls, i: int, s: int = 0, m: int = 1) -> "DObject":
        return cls(((i, s, m),))

    def shift(self, n: int) -> "DObject":
        return DObject(tuple((i, s + n, m) for i, s, m in self.summands))

    def __add__(self, other: "DObject") -> "DObject":
        return DObject(self.summands + other.summands)

    def is_zero(self) -> bool:
        return not self.summands

    def indices(self) -> frozenset[int]:
        return frozenset(i for i, _, _ in self.summands)

    def label(self, names: list[str]) -> str:
        if not self.summands:
            return "0"
        parts = []
        for i, s, m in self.summands:
            t = names[i] + (f"[{s}]" if s else "")
            parts.append(t if m == 1 else f"{t}^{m}")
        return " + ".join(parts)


def canonical_form(c: Complex, table: IndTable) -> DObject:
    out = []
    for k in c.terms:
        h = cohomology(c, k, table.quiver)
        if h.total_dim:
            for i, m in table.decompose(h).items():
                out.append((i, -k, m))
    return DObject(tuple(out))


def graded_hom_dim(table: IndTable, x: DObject, y: DObject, n: int) -> int:
    """dim Hom(X, Y[n]) from the Hom/Ext tables (hereditary: only Ext^0 and Ext^1)."""
    total = 0
    for i, s, a in x.summands:
        for j, t, b in y.summands:
            e = t + n - s
            if e == 0:
                total += a * b * int(table.hom_dim[i, j])
            elif e == 1:
                total += a * b * int(table.ext_dim[i, j])
    return total


# ---------------------------------------------------------------------------
# the category


def _standard_resolution(calc: PathCalculus, m: Rep) -> Complex:
    """0 -> (+)_a P_t(a) (x) M_s(a) -> (+)_v P_v (x) M_v -> M -> 0 in degrees -1, 0."""
    q = m.quiver
    t0, t1 = [], []
    pos0: dict[tuple[int, int], int] = {}
    for v in range(q.n):
        for x in range(m.dims[v]):
            pos0[(v, x)] = len(t0)
            t0.append(v)
    pos1 = []
    for a, (s, t) in enumerate(q.arrows):
        for x in range(m.dims[s]):
            pos1.append((a, x))
            t1.append(t)
    d = calc.zeros(len(t0), len(t1))
    for col, (a, x) in enumerate(pos1):
        s, t = q.arrows[a]
        d[pos0[(s, x)], col, calc.data.arrow_path[a]] = 1
        for y in range(m.dims[t]):
            c = int(m.mats[a][y, x])
            if c:
                d[pos0[(t, y)], col, calc.trivial[t]] = -c
    return Complex(calc, {-1: tuple(t1), 0: tuple(t0)}, {-1: d})


@dataclass(eq=False)
class BousfieldTriangle:
    """Gamma -> X -> L -> Gamma[1] with Gamma in U and L right-perpendicular to U."""

    members: frozenset
    x: Complex
    gamma: Complex
    l: Complex
    map_in: ChainMap      # gamma -> x
    map_out: ChainMap     # x -> l
    connecting: ChainMap  # l -> gamma[1]
    gamma_form: DObject
    l_form: DObject


class DerivedCategory:
    """D^b(mod kQ) for a quiver with a known indecomposable table.

    ``sequence_for`` maps a member set of a thick subcategory to an exceptional
    sequence generating it; it is supplied by the lattice layer.
    """

    def __init__(self, table: IndTable, sequence_for=None, minimal: bool = True):
        self.table = table
        self.quiver = table.quiver
        self.p = table.p
        self.calc = PathCalculus(self.quiver, self.p)
        self.minimal = minimal
        self._sequence_for = sequence_for
        self._res: dict[int, Complex] = {}
        self._forms: dict[tuple, DObject] = {}
        self._homs: dict[tuple, GradedHom] = {}
        self._bous: dict[tuple, BousfieldTriangle] = {}
        self._keep: list = []

    # -- objects ------------------------------------------------------------
    def resolution(self, i: int) -> Complex:
        if i not in self._res:
            c = _standard_resolution(self.calc, self.table.reps[i])
            self._res[i] = minimize(c).obj
        return self._res[i]

    def realize(self, x: DObject) -> Complex:
        parts = [shift(self.resolution(i), s) for i, s, m in x.summands for _ in range(m)]
        if not parts:
            return zero_complex(self.calc)
        if len(parts) == 1:
            return parts[0]
        return direct_sum(parts)[0]

    def module(self, i: int, s: int = 0) -> Complex:
        return shift(self.resolution(i), s)

    def form(self, c: Complex) -> DObject:
        key = c.key
        if key not in self._forms:
            self._forms[key] = canonical_form(c, self.table)
        return self._forms[key]

    def tidy(self, c: Complex) -> Minimal:
        if self.minimal:
            return minimize(c)
        return Minimal(c, identity_chain(c), identity_chain(c))

    # -- morphisms ----------------------------------------------------------
    def hom(self, c: Complex, d: Complex, n: int = 0) -> GradedHom:
        key = (c.key, d.key, n)
        if key not in self._homs:
            self._homs[key] = GradedHom(c, d, n)
            self._keep.append((c, d))
        return self._homs[key]

    def graded_hom(self, x: DObject, y: DObject, n: int) -> GradedHom:
        return self.hom(self.realize(x), self.realize(y), n)

    def induced_post(self, w: Complex, f: ChainMap, n: int = 0) -> np.ndarray:
        """Matrix of Hom(W, A[n]) -> Hom(W, B[n]), h |-> f[n] o h."""
        ha = self.hom(w, f.source, n)
        hb = self.hom(w, f.target, n)
        fn = shift_map(f, n, ha.target, hb.target) if n else f
        cols = [hb.coords(fn @ h) for h in ha.basis()]
        return np.stack(cols, axis=1) if cols else la.zeros(hb.dim, 0)

    def induced_pre(self, f: ChainMap, z: Complex, n: int = 0) -> np.ndarray:
        """Matrix of Hom(B, Z[n]) -> Hom(A, Z[n]), h |-> h o f."""
        hb = self.hom(f.target, z, n)
        ha = self.hom(f.source, z, n)
        cols = [ha.coords(ChainMap(ha.source, ha.target, (h @ f).comps)) for h in hb.basis()]
        return np.stack(cols, axis=1) if cols else la.zeros(ha.dim, 0)

    def equal_in_k(self, f: ChainMap, g: ChainMap) -> bool:
        h = self.hom(f.source, f.target)
        return not np.any(np.mod(h.coords(f) - h.coords(g), self.p))

    def is_iso(self, f: ChainMap) -> bool:
        return self.form(cone(f).obj).is_zero()

    def inverse(self, f: ChainMap) -> ChainMap:
        """Homotopy inverse of an isomorphism in K."""
        if not self.is_iso(f):
            raise ValueError("map is not an isomorphism")
        m = self.induced_post(f.target, f)  # Hom(B, A) -> Hom(B, B)
        hbb = self.hom(f.target, f.target)
        x = la.solve(m, hbb.coords(identity_chain(f.target)), self.p)
        return self.hom(f.target, f.source).from_coords(x)

    def lift_through(self, g: ChainMap, f: ChainMap) -> ChainMap:
        """The unique h with ``g o h == f`` in K (g: B -> C, f: A -> C); raises if none or not unique."""
        m = self.induced_post(f.source, g)
        target = self.hom(f.source, f.target).coords(f)
        s = la.Solver(m, self.p)
        x = s.solve(target)
        if x is None or s.rank != m.shape[1]:
            raise ConstructionError("lift does not exist or is not unique")
        return self.hom(f.source, g.source).from_coords(x)

    def extend_through(self, g: ChainMap, f: ChainMap) -> ChainMap:
        """The unique h with ``h o g == f`` in K (g: A -> B, f: A -> C)."""
        m = self.induced_pre(g, f.target)
        target = self.hom(f.source, f.target).coords(f)
        s = la.Solver(m, self.p)
        x = s.solve(target)
        if x is None or s.rank != m.shape[1]:
            raise ConstructionError("extension does not exist or is not unique")
        return self.hom(g.target, f.target).from_coords(x)

    # -- cones --------------------------------------------------------------
    def cone_form(self, f: ChainMap) -> DObject:
        return self.form(cone(f).obj)

    # -- localization -------------------------------------------------------
    def sequence(self, members: frozenset) -> list[int]:
        if not members:
            return []
        if self._sequence_for is None:
            raise ConstructionError("no exceptional sequence provider configured")
        return list(self._sequence_for(frozenset(members)))

    def _coevaluation_step(self, e: Complex, y: Complex) -> tuple[Complex, ChainMap]:
        """Y -> cone(sum_m Hom(E, Y[m]) (x) E[-m] -> Y), minimized."""
        lo, hi = y.span
        parts, maps = [], []
        if y.terms:
            for m in range(lo - 2, hi + 3):
                h = self.hom(e, y, m)
                if h.dim == 0:
                    continue
                em = shift(e, -m)
                for b in h.basis():
                    parts.append(em)
                    maps.append({k + m: mat for k, mat in b.comps.items()})
        if not parts:
            return y, identity_chain(y)
        src = direct_sum(parts)[0] if len(parts) > 1 else parts[0]
        comps = {}
        for k in src.terms:
            blocks = [mp.get(k, self.calc.zeros(len(y.term(k)), len(part.term(k)))) for part, mp in zip(parts, maps)]
            comps[k] = np.concatenate(blocks, axis=1)
        ev = ChainMap(src, y, comps)
        cn = cone(ev)
        mn = self.tidy(cn.obj)
        return mn.obj, mn.proj @ cn.inc

    def bousfield(self, members, x: Complex) -> BousfieldTriangle:
        members = frozenset(members)
        key = (members, x.key)
        if key in self._bous:
            return self._bous[key]
        seq = self.sequence(members)
        y, eta = x, identity_chain(x)
        for e_idx in reversed(seq):
            y, step = self._coevaluation_step(self.resolution(e_idx), y)
            eta = step @ eta
        cn = cone(eta)
        g_raw = shift(cn.obj, -1)
        mn = self.tidy(g_raw)
        gamma = mn.obj
        to_x = shift_map(cn.proj, -1, g_raw, x)
        map_in = to_x @ mn.inc
        gamma1 = shift(gamma, 1)
        proj1 = shift_map(mn.proj, 1, cn.obj, gamma1)
        connecting = proj1 @ cn.inc
        tri = BousfieldTriangle(members, x, gamma, y, map_in, eta, connecting, self.form(gamma), self.form(y))
        self._check_triangle(tri)
        self._bous[key] = tri
        self._keep.append(x)
        return tri

    def _check_triangle(self, tri: BousfieldTriangle) -> None:
        members = tri.members
        if not tri.gamma_form.indices() <= members:
            raise ConstructionError("Gamma part has summands outside U")
        for u in members:
            for j, _, _ in tri.l_form.summands:
                if self.table.hom_dim[u, j] or self.table.ext_dim[u, j]:
                    raise ConstructionError("local part is not perpendicular to U")
        if self.cone_form(tri.map_in) != tri.l_form:
            raise ConstructionError("cone of Gamma -> X is not L")
        if not (tri.map_in.is_chain_map() and tri.map_out.is_chain_map() and tri.connecting.is_chain_map()):
            raise ConstructionError("structure maps are not chain maps")

    def gamma(self, members, x: Complex) -> Complex:
        return self.bousfield(members, x).gamma

    def local(self, members, x: Complex) -> Complex:
        return self.bousfield(members, x).l

    def gamma_map(self, members, g: ChainMap) -> ChainMap:
        """Gamma_U(g) for g: X -> Y, the unique lift with eps_Y o h = g o eps_X."""
        tx, ty = self.bousfield(members, g.source), self.bousfield(members, g.target)
        return self.lift_through(ty.map_in, g @ tx.map_in)

    def local_map(self, members, g: ChainMap) -> ChainMap:
        """L_U(g) for g: X -> Y, the unique h with h o eta_X = eta_Y o g."""
        tx, ty = self.bousfield(members, g.source), self.bousfield(members, g.target)
        return self.extend_through(tx.map_out, ty.map_out @ g)

    def canonical_comparison(self, small, big, x: Complex) -> tuple[ChainMap, ChainMap]:
        """Gamma_small X -> Gamma_big X and L_small X -> L_big X for small <= big."""
        small, big = frozenset(small), frozenset(big)
        if not small <= big:
            raise ValueError("comparison needs nested subcategories")
        ts, tb = self.bousfield(small, x), self.bousfield(big, x)
        g = self.lift_through(tb.map_in, ts.map_in)
        l_ = self.extend_through(ts.map_out, tb.map_out)
        return g, l_

    def quotient_hom(self, members, x: Complex, y: Complex, n: int) -> GradedHom:
        return self.hom(x, self.local(members, y), n)

    # -- checks -------------------------------------------------------------
    def verify_loc_seq(self, members, x: Complex, w: Complex, window=(-3, 3)) -> "SequenceReport":
        tri = self.bousfield(members, x)
        return exact_triangle_sequence(self, w, tri.map_in, tri.map_out, tri.connecting, window)

    def verify_nested_rules(self, small, big, x: Complex) -> dict[str, bool]:
        small, big = frozenset(small), frozenset(big)
        g1 = self.gamma(small, x)
        g2 = self.gamma(big, x)
        l1 = self.local(small, x)
        l2 = self.local(big, x)
        return {
            "gamma_small_gamma_big": self.form(self.gamma(small, g2)) == self.form(g1),
            "local_big_local_small": self.form(self.local(big, l1)) == self.form(l2),
            "gamma_small_kills_local_big": self.form(self.gamma(small, l2)).is_zero(),
            "gamma_big_local_small_commute": self.form(self.gamma(big, l1)) == self.form(self.local(small, g2)),
        }


# ---------------------------------------------------------------------------
# exactness of long sequences of Hom spaces


@dataclass
class SequenceReport:
    """Exactness record of a long sequence of finite-dimensional spaces."""

    dims: list[int]
    ranks: list[int]
    labels: list[str]
    exact: list[bool]
    composites_zero: bool

    @property
    def passed(self) -> bool:
        return self.composites_zero and all(self.exact)

    def failures(self) -> list[str]:
        return [lab for lab, ok in zip(self.labels, self.exact) if not ok]


def check_exact(spaces: list[int], maps: list[np.ndarray], labels: list[str], checked: list[bool], p: int) -> SequenceReport:
    """``maps[i]: spaces[i] -> spaces[i+1]``; exactness tested at interior positions flagged in ``checked``."""
    ranks = [la.rank(m, p) if m.size else 0 for m in maps]
    comp_ok = True
    for a, b in zip(maps, maps[1:]):
        if a.size and b.size and la.matmul(b, a, p).any():
            comp_ok = False
    exact = []
    used = []
    for i in range(1, len(spaces) - 1):
        if not checked[i]:
            continue
        exact.append(ranks[i - 1] + ranks[i] == spaces[i])
        used.append(labels[i])
    return SequenceReport(spaces, ranks, used, exact, comp_ok)


def exact_triangle_sequence(cat: DerivedCategory, w: Complex, f: ChainMap, g: ChainMap, h: ChainMap,
                            window=(-3, 3)) -> SequenceReport:
    """Hom(W, -) applied to A -f-> B -g-> C -h-> A[1] over the degree window."""
    lo, hi = window
    spaces, maps, labels, checked = [], [], [], []
    for n in range(lo - 1, hi + 2):
        fm = cat.induced_post(w, f, n)
        gm = cat.induced_post(w, g, n)
        hm = cat.induced_post(w, h, n)
        inside = lo <= n <= hi
        spaces += [fm.shape[1], gm.shape[1], hm.shape[1]]
        maps += [fm, gm, hm]
        labels += [f"A[{n}]", f"B[{n}]", f"C[{n}]"]
        checked += [inside, inside, inside]
    # the map out of C[n] lands in A[1][n] = A[n+1]; glue consecutive rows
    spaces.append(maps[-1].shape[0])
    labels.append("end")
    checked.append(False)
    checked[0] = False
    return check_exact(spaces, maps, labels, checked, cat.p)
