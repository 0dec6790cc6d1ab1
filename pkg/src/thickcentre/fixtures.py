"""Named quivers and a bundle of the computed structures for one (quiver, prime)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .centre import CommutingMatrix, commuting_matrix
from .dercat import DerivedCategory
from .exactla import FieldSpec
from .quiverrep import IndTable, Quiver, Rep, enumerate_indecomposables
from .thicklat import ThickLattice, ThickSub, enumerate_thick, exceptional_sequence

# arrows are 1-based (source, target), as in quiver files
FIXTURES: dict[str, tuple[int, list[list[int]]]] = {
    "A1": (1, []),
    "A2": (2, [[1, 2]]),
    "A3": (3, [[1, 2], [2, 3]]),
    "A4": (4, [[1, 2], [2, 3], [3, 4]]),
    "A5": (5, [[1, 2], [2, 3], [3, 4], [4, 5]]),
    "A3-sink": (3, [[1, 2], [3, 2]]),
    "A3-source": (3, [[2, 1], [2, 3]]),
    "A1+A1": (2, []),
    "A2+A1": (3, [[1, 2]]),
}


def quiver_from_spec(spec: dict) -> tuple[Quiver, int | None]:
    """Parse ``{"name", "vertices", "arrows" (1-based pairs), "field"}``."""
    try:
        n = int(spec["vertices"])
        arrows = tuple((int(s) - 1, int(t) - 1) for s, t in spec.get("arrows", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed quiver spec: {exc}") from exc
    field = spec.get("field")
    if field is not None:
        FieldSpec(int(field))
    return Quiver(n, arrows, str(spec.get("name", ""))), (int(field) if field is not None else None)


def load_quiver_file(path: str | Path) -> tuple[Quiver, int | None]:
    with open(path) as fh:
        return quiver_from_spec(json.load(fh))


def indecomposables_from_spec(spec: dict, quiver: Quiver) -> list[tuple[str, tuple, tuple]] | None:
    """Optional user-supplied list ``[{"name", "dims", "mats"}]``, one matrix per arrow.

    Needed for quivers outside type A, where interval modules do not exhaust
    the indecomposables.
    """
    raw = spec.get("indecomposables")
    if raw is None:
        return None
    out = []
    for k, item in enumerate(raw):
        try:
            dims = tuple(int(d) for d in item["dims"])
            mats = tuple(np.array(m, dtype=np.int64).reshape(dims[t], dims[s])
                         for m, (s, t) in zip(item["mats"], quiver.arrows))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ValueError(f"malformed indecomposable #{k}: {exc}") from exc
        if len(dims) != quiver.n or len(mats) != len(quiver.arrows):
            raise ValueError(f"indecomposable #{k} does not match the quiver")
        out.append((str(item.get("name", f"X{k + 1}")), dims, mats))
    return out


def fixture_quiver(name: str) -> Quiver:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    n, arrows = FIXTURES[name]
    return Quiver(n, tuple((s - 1, t - 1) for s, t in arrows), name)


@dataclass
class Setting:
    """Everything computed for one quiver over one prime field, built lazily."""

    quiver: Quiver
    p: int = 101
    cap: int = 1 << 20
    supplied: list | None = None

    @cached_property
    def table(self) -> IndTable:
        if self.supplied is None:
            return enumerate_indecomposables(self.quiver, self.p)
        reps = [Rep(self.quiver, dims, tuple(np.mod(m, self.p) for m in mats), self.p)
                for _, dims, mats in self.supplied]
        table = IndTable(self.quiver, reps, [name for name, _, _ in self.supplied])
        table.check_invariants()
        return table

    @cached_property
    def lattice(self) -> ThickLattice:
        return enumerate_thick(self.table, cap=self.cap)

    @cached_property
    def category(self) -> DerivedCategory:
        seqs: dict[frozenset, list[int]] = {}

        def provider(members: frozenset) -> list[int]:
            if members not in seqs:
                seqs[members] = exceptional_sequence(self.table, ThickSub(members))
            return seqs[members]

        return DerivedCategory(self.table, provider)

    @cached_property
    def commuting(self) -> CommutingMatrix:
        return commuting_matrix(self.lattice)

    @property
    def names(self) -> list[str]:
        return self.table.names


def setting(name: str, p: int = 101, cap: int = 1 << 20) -> Setting:
    return Setting(fixture_quiver(name), p, cap)


def setting_from_file(path: str | Path, p: int | None = None, cap: int = 1 << 20) -> Setting:
    """Load a quiver file; an explicit ``p`` overrides the file's field."""
    with open(path) as fh:
        spec = json.load(fh)
    q, field = quiver_from_spec(spec)
    prime = p if p is not None else (field if field is not None else 101)
    FieldSpec(prime)
    return Setting(q, prime, cap, indecomposables_from_spec(spec, q))
