"""Exhaustive verification sweeps over a :class:`~thickcentre.fixtures.Setting`.

Objects X and test objects W range over the indecomposable modules in degree
zero. Every functor involved commutes with shifts and direct sums, and the
degree window covers all shifts of W that can meet a nonzero Hom space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import frames
from .centre import adjoint_criterion, centre, commutes_in_quotient, verify_central_algebra
from .fixtures import Setting
from .mvseq import (verify_excision, verify_loc_products, verify_MV_gamma, verify_MV_lambda,
                    verify_noether)
from .tensorext import TensorTable, enumerate_tensor_ideals, tensor_commuting_audit


@dataclass
class CheckResult:
    """Outcome of one named contract over a whole fixture."""

    check: str
    passed: bool
    cases: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"check": self.check, "passed": self.passed, "cases": self.cases,
                "failures": self.failures, "details": self.details}


def sweep_localization(s: Setting, window=(-3, 3)) -> CheckResult:
    cat, lat, n = s.category, s.lattice, len(s.table)
    fails, cases = [], 0
    for u in lat.members:
        for x in range(n):
            for w in range(n):
                cases += 1
                rep = cat.verify_loc_seq(u, cat.module(x), cat.module(w), window)
                if not rep.passed:
                    fails.append({"U": lat.labels[lat.find(u)], "X": s.names[x], "W": s.names[w]})
    return CheckResult("localization_sequence_exact", not fails, cases, fails)


def sweep_nested(s: Setting) -> CheckResult:
    cat, lat, n = s.category, s.lattice, len(s.table)
    fails, cases = [], 0
    for i in range(lat.n):
        for j in range(lat.n):
            if not lat.leq[i, j]:
                continue
            for x in range(n):
                cases += 1
                res = cat.verify_nested_rules(lat.members[i], lat.members[j], cat.module(x))
                bad = [k for k, ok in res.items() if not ok]
                if bad:
                    fails.append({"small": lat.labels[i], "big": lat.labels[j], "X": s.names[x], "rules": bad})
    return CheckResult("nested_localization_rules", not fails, cases, fails)


@dataclass
class PairOutcome:
    i: int
    j: int
    commuting: bool
    lambda_pass: bool
    gamma_pass: bool
    excision_pass: bool
    witness: dict | None = None

    @property
    def consistent(self) -> bool:
        return self.commuting == self.lambda_pass == self.excision_pass


def pair_outcome(s: Setting, i: int, j: int, window=(-3, 3), exhaustive: bool = False) -> PairOutcome:
    """Run the lambda, gamma and excision checks for one pair of lattice elements."""
    cat, lat, n = s.category, s.lattice, len(s.table)
    u, v = lat.members[i], lat.members[j]
    lam = gam = exc = True
    witness = None
    for x in range(n):
        xo = cat.module(x)
        if not verify_excision(cat, u, v, xo):
            exc = False
        for w in range(n):
            wo = cat.module(w)
            if lam or exhaustive:
                r = verify_MV_lambda(cat, u, v, xo, wo, window)
                if not r.passed:
                    lam = False
                    if witness is None:
                        witness = {"X": s.names[x], "W": s.names[w], "connecting_map": r.connecting_exists,
                                   "exact": r.exact, "existence_criterion": r.existence_criterion}
            if gam or exhaustive:
                g = verify_MV_gamma(cat, u, v, xo, wo, window)
                gam = gam and g.passed
    return PairOutcome(i, j, bool(s.commuting(i, j)), lam, gam, exc, witness)


def sweep_mayer_vietoris(s: Setting, window=(-3, 3)) -> tuple[CheckResult, CheckResult, list[PairOutcome]]:
    """Commuting <=> lambda sequences exact <=> excision, and central pairs pass both sequences."""
    lat = s.lattice
    cent = set(centre(lat, cm=s.commuting))
    outcomes, fails, central_fails = [], [], []
    for i in range(lat.n):
        for j in range(i, lat.n):
            o = pair_outcome(s, i, j, window)
            outcomes.append(o)
            if not o.consistent:
                fails.append({"U": lat.labels[i], "V": lat.labels[j], "commuting": o.commuting,
                              "lambda": o.lambda_pass, "excision": o.excision_pass})
            if (i in cent or j in cent) and not (o.lambda_pass and o.gamma_pass):
                central_fails.append({"U": lat.labels[i], "V": lat.labels[j]})
    witnesses = [{"U": lat.labels[o.i], "V": lat.labels[o.j], **(o.witness or {})}
                 for o in outcomes if not o.commuting]
    eq = CheckResult("commuting_iff_mayer_vietoris_iff_excision", not fails, len(outcomes), fails,
                     {"expected_failures_on_noncommuting_pairs": witnesses})
    cen = CheckResult("central_pairs_mayer_vietoris", not central_fails, len(outcomes), central_fails)
    return eq, cen, outcomes


def sweep_excision(s: Setting) -> CheckResult:
    cat, lat, n = s.category, s.lattice, len(s.table)
    fails, cases = [], 0
    for i in range(lat.n):
        for j in range(lat.n):
            ok = all(verify_excision(cat, lat.members[i], lat.members[j], cat.module(x)) for x in range(n))
            cases += 1
            if ok != s.commuting(i, j):
                fails.append({"U": lat.labels[i], "V": lat.labels[j]})
    return CheckResult("excision_iff_commuting", not fails, cases, fails)


def sweep_noether(s: Setting, window=(-3, 3)) -> CheckResult:
    cat, lat = s.category, s.lattice
    fails, cases = [], 0
    for i in range(lat.n):
        for j in range(lat.n):
            if not s.commuting(i, j):
                continue
            cases += 1
            res = verify_noether(cat, lat.members[i], lat.members[j], window)
            if not res["passed"]:
                fails.append({"U": lat.labels[i], "V": lat.labels[j]})
    return CheckResult("second_isomorphism_for_commuting_pairs", not fails, cases, fails)


def sweep_loc_products(s: Setting) -> CheckResult:
    cat, lat, n = s.category, s.lattice, len(s.table)
    fails, cases = [], 0
    for i in range(lat.n):
        for j in range(lat.n):
            if not s.commuting(i, j):
                continue
            for x in range(n):
                cases += 1
                res = verify_loc_products(cat, lat.members[i], lat.members[j], cat.module(x))
                bad = [k for k, ok in res.items() if not ok]
                if bad:
                    fails.append({"U": lat.labels[i], "V": lat.labels[j], "X": s.names[x], "maps": bad})
    return CheckResult("localization_composites_for_commuting_pairs", not fails, cases, fails)


def sweep_tensor(s: Setting) -> CheckResult:
    lat = s.lattice
    tt = TensorTable(s.table)
    ideals = enumerate_tensor_ideals(lat, tt)
    audit = tensor_commuting_audit(ideals, s.commuting)
    ok = tt.unit_law() and tt.is_commutative() and tt.is_associative() and lat.is_sublattice(ideals)
    # with no arrows every module is rigid for the pointwise product, so all
    # tensor ideals must commute and the ideal sublattice is its own centre
    rigid = not s.quiver.arrows
    if rigid:
        ok = ok and audit.all_commute and centre(lat, ideals, s.commuting) == sorted(ideals)
    details = {"ideals": [lat.labels[k] for k in ideals], "rigid": rigid,
               "non_commuting_ideal_pairs": [[lat.labels[a], lat.labels[b]] for a, b in audit.non_commuting],
               "unit": {s.names[i]: m for i, m in sorted(tt.unit.items())}}
    return CheckResult("tensor_ideals_form_sublattice", ok, len(ideals), [], details)


def select_sublattice(s: Setting, selector: str) -> list[int]:
    lat = s.lattice
    if selector == "full":
        return list(range(lat.n))
    if selector == "ideals":
        return enumerate_tensor_ideals(lat, TensorTable(s.table))
    if selector.startswith("chain:"):
        ids = {int(t) for t in selector[6:].split(",") if t.strip()}
        ids |= {lat.bottom, lat.top}
        if any(not 0 <= k < lat.n for k in ids):
            raise ValueError("chain ids out of range")
        ids = sorted(ids)
        if not all(lat.leq[a, b] or lat.leq[b, a] for a in ids for b in ids):
            raise ValueError("selected elements do not form a chain")
        return ids
    if selector.startswith("interval:"):
        lo, hi = (int(t) for t in selector[9:].split(","))
        return lat.interval(lo, hi) if lat.leq[lo, hi] else []
    raise ValueError(f"unknown sublattice selector {selector!r}")


@dataclass
class CentreReport:
    sub: list[int]
    central: list[int]
    sublattice: bool
    join_closed: bool
    distributive: bool
    spatial: bool
    support_bijection: bool
    identities: bool
    adjoint_sound: bool
    points: list[int]
    supports: dict[str, list[int]]

    @property
    def passed(self) -> bool:
        return all((self.sublattice, self.join_closed, self.distributive, self.spatial,
                    self.support_bijection, self.identities, self.adjoint_sound))


def centre_report(s: Setting, sub: list[int]) -> CentreReport:
    lat = s.lattice
    cent = centre(lat, sub, s.commuting)
    is_sub = lat.is_sublattice(cent, bounded=False)
    joins_ok = all(int(lat.join[a, b]) in cent for a in cent for b in cent)
    alg = verify_central_algebra(lat, cent, sub)
    z = lat.restrict(cent) if is_sub else None
    dist = z is not None and frames.is_distributive(z)
    spatial = dist and frames.spatial_check(z)
    zmembers = [lat.members[k] for k in cent]
    bij = dist and frames.support_bijection_check(z, zmembers)
    pts = [cent[p] for p in frames.points(z)] if dist else []
    supports = {}
    if dist:
        for x in range(len(s.table)):
            supp = frames.central_support(z, zmembers, {x})
            supports[s.names[x]] = sorted(cent[p] for p in supp)
    # the perpendicular criterion concerns centrality in the whole lattice, so it
    # is audited on the absolute centre whatever sublattice was selected
    absolute = cent if len(sub) == lat.n else centre(lat, cm=s.commuting)
    adjoint_sound = all(adjoint_criterion(s.table, lat.members[k]) for k in absolute)
    return CentreReport(list(sub), cent, is_sub, joins_ok, dist, spatial, bij, alg.passed,
                        adjoint_sound, pts, supports)


def frame_functoriality(s: Setting) -> CheckResult:
    """Restriction U -> U ^ S and quotient U -> U v S are frame maps between centres."""
    lat, cat = s.lattice, s.category
    cent = centre(lat, cm=s.commuting)
    fails, cases = [], 0
    for sidx in range(lat.n):
        below = lat.interval(lat.bottom, sidx)
        above = lat.interval(sidx, lat.top)
        cent_below = centre(lat, below, s.commuting)
        smem = lat.members[sidx]
        cent_above = [u for u in above
                      if all(commutes_in_quotient(cat, smem, lat.members[u], lat.members[v]) for v in above)]
        cases += 1
        if not frames.restriction_morphism(lat, cent, sidx, cent_below):
            fails.append({"S": lat.labels[sidx], "map": "restriction"})
        if not frames.quotient_morphism(lat, cent, sidx, cent_above):
            fails.append({"S": lat.labels[sidx], "map": "quotient"})
    return CheckResult("restriction_and_quotient_are_frame_maps", not fails, cases, fails)
