"""Named property checks and the registry behind ``ncpart check``.

A check runs one invariant over an exhaustive family and returns a
``CheckReport``. Failing reports carry concrete counterexamples; passing ones
carry the measured values. Report-only checks run a scan whose outcome is
recorded, never asserted.
"""

from __future__ import annotations

import inspect
import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from backend import autos
from backend.complex import (
    SubcomplexTag,
    adjacent,
    apartments,
    as_tag,
    base_chambers,
    chamber_from_partitions,
    chamber_graph,
    chambers,
    codim1_face_count,
    constructive_gallery_ncp_in_pn_apartment,
    constructive_gallery_pn,
    convex_hull,
    distance,
    flag_sublattice,
    hull_equality_scan,
    hull_vertices,
    hurwitz_stats,
    is_base,
    is_universal,
    link_property_scan,
    nc_apartment_scan_B3,
    rank_top_vertices_in_pn,
    strand_scan,
    universal_chambers,
)
from backend.linalg import embed_nc
from backend.metric import (
    FLOAT_TOLERANCE,
    GAMMA_2_RANKS,
    GAMMA_3_RANKS,
    barycenter_edge_length,
    edge_length,
    exact_cos_total,
    opposite_link_path_length,
    path_length,
)
from backend.ncp import hasse_graph, narayana, nc_count, nc_enumerate
from backend.perm import _length, _normalize_type, format_element, rank
from utils.config import active_limits
from utils.errors import DomainError, NcpartError, VerificationError
from utils.notation import format_chamber, parse_chamber, parse_partition
from utils.tables import (
    apartment_table,
    base_count,
    element_table,
    table_mismatches,
    universal_count,
)

logger = logging.getLogger(__name__)

# chamber pairs whose non-crossing distance exceeds the building distance
NCP5_WITNESS: Tuple[str, str] = ("(1 3)(4 5)(1 2)(3 5)", "(2 4)(1 5)(2 3)(1 4)")
NCP6_WITNESS: Tuple[str, str] = ("(1 2)(3 6)(4 5)(2 6)(3 5)", "(2 4)(1 4)(5 6)(2 3)(4 6)")

# the five |NCP_6| neighbours of the second witness chamber, as chains of partitions
NCP6_NEIGHBOURS: Dict[str, Tuple[str, ...]] = {
    "A": ("{1,2}", "{1,2,4}", "{1,2,4|5,6}", "{1,2,3,4|5,6}"),
    "B": ("{2,4}", "{1,2,4}", "{1,2,3,4}", "{1,2,3,4|5,6}"),
    "E": ("{2,4}", "{1,2,4}", "{1,2,4|5,6}", "{1,2,4,5,6}"),
    "F": ("{2,4}", "{2,4|5,6}", "{1,2,4|5,6}", "{1,2,3,4|5,6}"),
    "G": ("{1,4}", "{1,2,4}", "{1,2,4|5,6}", "{1,2,3,4|5,6}"),
}
# (d_building, d_ncp) from the first witness chamber; None where only a lower bound is known
NCP6_NEIGHBOUR_DISTANCES: Dict[str, Tuple[int, Optional[int]]] = {
    "B": (7, 7),
    "E": (7, 7),
    "F": (8, None),
    "G": (7, 8),
}

MAX_DETAILS = 20


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REPORT = "report-only"


@dataclass(frozen=True)
class CheckReport:
    name: str
    params: Mapping[str, Any]
    status: Status
    details: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "status", Status(self.status))
        object.__setattr__(self, "details", tuple(self.details))
        if self.status is Status.FAIL and not self.details:
            raise VerificationError(f"failing check {self.name} carries no counterexample")

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def as_record(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "params": dict(self.params),
            "status": self.status.value,
            "details": list(self.details),
        }

    def __str__(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"{self.name} {params}".strip() + f": {self.status.value}"
        return "\n".join([head] + [f"  {line}" for line in self.details])


Outcome = Tuple[Status, Sequence[str]]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    run: Callable[..., Outcome]
    summary: str
    small: Tuple[Dict[str, Any], ...] = ({},)
    full: Tuple[Dict[str, Any], ...] = ()


_REGISTRY: Dict[str, CheckSpec] = {}


def register(name: str, summary: str, small: Sequence[Dict[str, Any]] = ({},), full: Sequence[Dict[str, Any]] = ()):
    def decorator(fn: Callable[..., Outcome]) -> Callable[..., Outcome]:
        _REGISTRY[name] = CheckSpec(name, fn, summary, tuple(small), tuple(full))
        return fn

    return decorator


def _verdict(failures: Sequence[str], measured: Sequence[str] = ()) -> Outcome:
    if failures:
        return Status.FAIL, list(failures)[:MAX_DETAILS]
    return Status.PASS, list(measured)


def _expect(label: str, found: Any, expected: Any) -> List[str]:
    return [] if found == expected else [f"{label}: found {found}, expected {expected}"]


# --------------------------------------------------------------------------
# counts


@register(
    "nc-counts",
    "enumerated |NC(W)| against its closed form; Narayana rank profile in type A",
    small=[{"cox_type": "A", "n": k} for k in range(1, 8)] + [{"cox_type": "B", "n": 3}, {"cox_type": "D", "n": 4}],
    full=[{"cox_type": "A", "n": 8}, {"cox_type": "B", "n": 4}, {"cox_type": "D", "n": 5}],
)
def _check_nc_counts(cox_type: str = "A", n: int = 4) -> Outcome:
    kind = _normalize_type(cox_type)
    levels = nc_enumerate(kind, n)
    total = sum(len(level) for level in levels.values())
    failures = _expect(f"|NC({kind}{n})|", total, nc_count(kind, n))
    if kind == "A":
        for r, level in levels.items():
            failures += _expect(f"rank {r}", len(level), narayana(n, n - r))
    return _verdict(failures, [f"|NC({kind}{n})| = {total}", "ranks " + ",".join(str(len(v)) for v in levels.values())])


@register(
    "element-counts",
    "|NCP_n|, |P_n| and |Λ(F_2^{n-1})| by classifying every subspace",
    small=[{"n": 6}],
)
def _check_element_counts(n: int = 6) -> Outcome:
    frame = element_table(n, "A", strict=True)
    last = frame.iloc[-1]
    measured = [f"n={n}: NCP {last['ncp_enumerated']}, P {last['p_enumerated']}, Λ {last['lambda_enumerated']}"]
    return _verdict(table_mismatches(frame), measured)


@register(
    "apartment-counts",
    "apartments of |NCP_n|, |P_n| and the building against their closed forms",
    small=[{"n": 5}],
    full=[{"n": 6}],
)
def _check_apartment_counts(n: int = 5) -> Outcome:
    frame = apartment_table(n, strict=True)
    last = frame.iloc[-1]
    measured = [f"n={n}: NCP {last['ncp_enumerated']}, PN {last['pn_enumerated']}, BUILDING {last['building_enumerated']}"]
    return _verdict(table_mismatches(frame), measured)


@register("top-vertices", "every hyperplane of F_2^{n-1} is a partition subspace", small=[{"n": 5}])
def _check_top_vertices(n: int = 5) -> Outcome:
    total, inside = rank_top_vertices_in_pn(n)
    return _verdict(_expect("partition hyperplanes", inside, total) + _expect("hyperplanes", total, 2 ** (n - 1) - 1), [f"{inside} of {total}"])


# --------------------------------------------------------------------------
# distances


@register(
    "dist-pn",
    "d_PN = d_building for every pair of |P_n| chambers; the join construction is minimal",
    small=[{"n": 3}, {"n": 4}, {"n": 5}],
)
def _check_dist_pn(n: int = 4) -> Outcome:
    pn = chambers(SubcomplexTag.PN, n)
    failures = []
    pairs = 0
    for C, D in combinations(pn, 2):
        pairs += 1
        d_pn = distance(SubcomplexTag.PN, C, D)
        d_building = distance(SubcomplexTag.BUILDING, C, D)
        if d_pn != d_building:
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: d_pn={d_pn} d_building={d_building}")
        gallery = constructive_gallery_pn(C, D)
        if gallery.length != d_pn:
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: join gallery of length {gallery.length}, d_pn={d_pn}")
    return _verdict(failures, [f"{pairs} pairs"])


@register(
    "dist-ncp",
    "d_NC = d_PN for |NCP_n| pairs sharing an apartment of |P_n|; the meet construction is minimal",
    small=[{"n": 3}, {"n": 4}, {"n": 5}],
)
def _check_dist_ncp(n: int = 4) -> Outcome:
    ncp = chambers(SubcomplexTag.NCP, n)
    shared: Dict[Tuple[Any, Any], Any] = {}
    for apartment in apartments(SubcomplexTag.PN, n):
        inside = [C for C in ncp if apartment.contains(C)]
        for C, D in combinations(inside, 2):
            shared.setdefault((C, D), apartment)
    failures = []
    for (C, D), apartment in shared.items():
        d_ncp = distance(SubcomplexTag.NCP, C, D)
        d_pn = distance(SubcomplexTag.PN, C, D)
        if d_ncp != d_pn:
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: d_ncp={d_ncp} d_pn={d_pn}")
            continue
        gallery = constructive_gallery_ncp_in_pn_apartment(C, D, apartment)
        if gallery.length != d_ncp:
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: meet gallery of length {gallery.length}, d_ncp={d_ncp}")
    return _verdict(failures, [f"{len(shared)} pairs share a |P_{n}| apartment"])


@register(
    "hulls",
    "d_NC >= d_PN >= d_building; NC hulls stay in the star of C∩D; building hulls span the flags' sublattice",
    small=[{"n": 3}, {"n": 4}],
    full=[{"n": 5}],
)
def _check_hulls(n: int = 4) -> Outcome:
    failures = []
    for C, D in combinations(chambers(SubcomplexTag.NCP, n), 2):
        d = [distance(tag, C, D) for tag in (SubcomplexTag.NCP, SubcomplexTag.PN, SubcomplexTag.BUILDING)]
        if d != sorted(d, reverse=True):
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: d_ncp, d_pn, d_building = {d}")
        shared = set(C.flag) & set(D.flag)
        outside = [E for E in convex_hull(SubcomplexTag.NCP, C, D) if not shared <= set(E.flag)]
        if outside:
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: {format_chamber(outside[0])} leaves the star")
    pairs = 0
    for C, D in combinations(chambers(SubcomplexTag.BUILDING, n), 2):
        pairs += 1
        if hull_vertices(SubcomplexTag.BUILDING, C, D) != flag_sublattice(C, D):
            failures.append(f"{format_chamber(C)} / {format_chamber(D)}: hull vertices differ from the generated sublattice")
    return _verdict(failures, [f"{pairs} building pairs"])


def _witness(texts: Tuple[str, str]):
    return tuple(parse_chamber(text) for text in texts)


@register("ncp5-witness", "five-point pair with d_NC = d_building + 1 and a three-strand hull")
def _check_ncp5_witness() -> Outcome:
    C, D = _witness(NCP5_WITNESS)
    d = {tag: distance(tag, C, D) for tag in SubcomplexTag}
    failures = (
        _expect("d_building", d[SubcomplexTag.BUILDING], 6)
        + _expect("d_pn", d[SubcomplexTag.PN], 6)
        + _expect("d_ncp", d[SubcomplexTag.NCP], 7)
    )
    ends = [E for E in convex_hull(SubcomplexTag.NCP, C, D) if adjacent(E, D) is not None]
    failures += _expect("hull chambers next to D", len(ends), 3)
    for E in ends:
        failures += _expect(f"d_ncp(C, {format_chamber(E)})", distance(SubcomplexTag.NCP, C, E), 6)
    measured = [f"d_building={d[SubcomplexTag.BUILDING]} d_pn={d[SubcomplexTag.PN]} d_ncp={d[SubcomplexTag.NCP]}", f"{len(ends)} hull chambers next to D"]
    return _verdict(failures, measured)


def ncp6_neighbours() -> Dict[str, Any]:
    """Named neighbours of the second witness chamber."""

    return {
        name: chamber_from_partitions(6, [parse_partition(text, n=6) for text in chain])
        for name, chain in NCP6_NEIGHBOURS.items()
    }


@register("ncp6-witness", "six-point pair with d_NC = d_building + 1 and the distances from C to the neighbours of D")
def _check_ncp6_witness() -> Outcome:
    C, D = _witness(NCP6_WITNESS)
    d_building = distance(SubcomplexTag.BUILDING, C, D)
    d_ncp = distance(SubcomplexTag.NCP, C, D)
    failures = _expect("d_building", d_building, 7) + _expect("d_ncp", d_ncp, 8)
    named = ncp6_neighbours()
    found = set(chamber_graph(SubcomplexTag.NCP, 6).neighbors(D))
    failures += _expect("neighbours of D", sorted(map(format_chamber, found)), sorted(map(format_chamber, named.values())))
    measured = [f"d_building={d_building} d_ncp={d_ncp}"]
    for name, E in named.items():
        db, dn = distance(SubcomplexTag.BUILDING, C, E), distance(SubcomplexTag.NCP, C, E)
        measured.append(f"{name} {format_chamber(E)}: d_building={db} d_ncp={dn}")
        if name not in NCP6_NEIGHBOUR_DISTANCES:
            continue
        want_db, want_dn = NCP6_NEIGHBOUR_DISTANCES[name]
        failures += _expect(f"d_building(C, {name})", db, want_db)
        if want_dn is None:
            if dn < want_db:
                failures.append(f"d_ncp(C, {name}) = {dn} is below d_building = {want_db}")
        else:
            failures += _expect(f"d_ncp(C, {name})", dn, want_dn)
    return _verdict(failures, measured)


# --------------------------------------------------------------------------
# links, special chambers


@register(
    "link-property",
    "vertices outside the subcomplex with their whole apartment link inside",
    small=[{"n": 5, "tag": "NCP"}, {"n": 5, "tag": "PN"}, {"n": 4, "tag": "NCP"}],
)
def _check_link_property(n: int = 5, tag: str = "NCP") -> Outcome:
    violations = link_property_scan(n, as_tag(tag))
    listed = [f"<{U}> (rank {U.dim})" for U in violations]
    if n >= 5:
        return _verdict(listed, ["no violations"])
    if n == 4 and not any(U.dim == 1 and U.bits == (0b111,) for U in violations):
        return Status.FAIL, [f"<111> missing from {listed or 'an empty scan'}"]
    return Status.REPORT, listed or ["no violations"]


@register(
    "special-chambers",
    "universal and base chamber counts; codimension-1 faces with three chambers characterise them",
    small=[{"n": 4}, {"n": 5}],
    full=[{"n": 6}],
)
def _check_special_chambers(n: int = 5, faces: Optional[bool] = None) -> Outcome:
    faces = n <= 5 if faces is None else faces
    failures = _expect("universal chambers", len(universal_chambers(n)), universal_count(n))
    failures += _expect("base chambers", len(base_chambers(n)), base_count(n))
    if faces:
        for tag, special in ((SubcomplexTag.NCP, is_universal), (SubcomplexTag.PN, is_base)):
            for C in chambers(tag, n):
                all_three = all(k == 3 for k in codim1_face_count(tag, C))
                if all_three != special(C):
                    failures.append(f"{tag.value} {format_chamber(C)}: faces {codim1_face_count(tag, C)}, special={special(C)}")
    return _verdict(failures, [f"{universal_count(n)} universal, {base_count(n)} base"])


# --------------------------------------------------------------------------
# metric, Hurwitz graphs


@register("metric-holes", "length-pi paths through opposite links, exact cosines and the two hull strands", small=[{"r_max": 12}])
def _check_metric_holes(r_max: int = 12) -> Outcome:
    failures = []
    worst = 0.0
    for r in range(2, r_max + 1):
        for x, y in combinations(range(1, r + 1), 2):
            error = abs(opposite_link_path_length(x, y, r).total - math.pi)
            worst = max(worst, error)
            if error >= FLOAT_TOLERANCE:
                failures.append(f"x={x} y={y} r={r}: |A+B+C-pi| = {error:.3e}")
            try:
                cos_total = exact_cos_total(x, y, r)
            except VerificationError as exc:
                failures.append(f"x={x} y={y} r={r}: {exc}")
                continue
            if cos_total != -1:
                failures.append(f"x={x} y={y} r={r}: cos(A+B+C) = {cos_total}")
    for r in range(2, 6):
        for i, j in combinations(range(1, r + 1), 2):
            if abs(edge_length(i, j, r) - barycenter_edge_length(i, j, r)) >= 1e-10:
                failures.append(f"l_{i}{j} (r={r}) differs from the barycentre arc")
    strands = path_length(GAMMA_2_RANKS, 3) + path_length(GAMMA_3_RANKS, 3)
    if abs(strands - 2 * math.pi) >= FLOAT_TOLERANCE:
        failures.append(f"strand lengths sum to {strands}, not 2 pi")
    return _verdict(failures, [f"max |A+B+C-pi| = {worst:.3e}", f"strands sum to {strands / math.pi:.15f} pi"])


@register(
    "hurwitz",
    "radius of the Hurwitz graph against binom(rank, 2); equality in type A",
    small=[{"cox_type": "A", "n": 4}, {"cox_type": "A", "n": 5}, {"cox_type": "B", "n": 3}],
)
def _check_hurwitz(cox_type: str = "A", n: int = 4) -> Outcome:
    kind = _normalize_type(cox_type)
    stats = hurwitz_stats(kind, n)
    failures = []
    if stats.radius < stats.lower_bound:
        failures.append(f"radius {stats.radius} below binom({rank(kind, n)}, 2) = {stats.lower_bound}")
    if kind == "A":
        failures += _expect("radius", stats.radius, stats.lower_bound)
    return _verdict(failures, [f"{stats.chambers} chains, radius {stats.radius}, diameter {stats.diameter}"])


# --------------------------------------------------------------------------
# automorphisms


@register(
    "aut-orders",
    "orders of the dihedral, starred, skew and full automorphism groups of NC",
    small=[{"cox_type": "A", "n": 4}, {"cox_type": "B", "n": 3}, {"cox_type": "D", "n": 4}, {"cox_type": "D", "n": 5}],
    full=[{"cox_type": "A", "n": 5}],
)
def _check_aut_orders(cox_type: str = "A", n: int = 4) -> Outcome:
    kind = _normalize_type(cox_type)
    failures: List[str] = []
    measured: List[str] = []
    star = kind == "D"
    try:
        group = autos.dihedral_group(kind, n, star=star)
        measured.append(f"|D{'*' if star else ''}| = {len(group)}")
        skew = autos.skew_group(kind, n)
        measured.append(f"|skew| = {len(skew)}")
    except VerificationError as exc:
        return Status.FAIL, [str(exc)]
    if n > active_limits().limit(f"full_aut_group:{kind}"):
        measured.append("full group above its size guard, skipped")
        return _verdict(failures, measured)
    full = autos.full_aut_group(kind, n)
    measured.append(f"|Aut| = {len(full)}")
    if kind == "D" and n == 4:
        zeta = autos.exotic_zeta()
        if len(full) <= len(group):
            failures.append(f"|Aut(NC(D4))| = {len(full)} is not above |D*| = {len(group)}")
        if zeta not in full:
            failures.append("zeta is missing from the full group")
    else:
        failures += _expect("|Aut|", len(full), len(group))
    return _verdict(failures, measured)


def _dihedral_maps(kind: str, n: int) -> Tuple[autos.LatticeMap, ...]:
    return autos.dihedral_group(kind, n, star=kind == "D")


@register(
    "lambda-extension",
    "every dihedral automorphism extends to a linear automorphism of the subspace lattice",
    small=[{"cox_type": "A", "n": 4, "p": 2}, {"cox_type": "B", "n": 3, "p": 3}, {"cox_type": "D", "n": 4, "p": 3}],
)
def _check_lambda_extension(cox_type: str = "A", n: int = 4, p: int = 2) -> Outcome:
    kind = _normalize_type(cox_type)
    failures = []
    group = _dihedral_maps(kind, n)
    for k, lmap in enumerate(group):
        try:
            autos.extend_to_lambda(lmap, p)
        except VerificationError as exc:
            failures.append(f"element {k}: {exc}")
    return _verdict(failures, [f"{len(group)} maps extend over F_{p}"])


@register(
    "antiauto-extension",
    "the bilinear-form complement sends f(w) to f(w^-1 c)",
    small=[{"cox_type": "A", "n": 4, "p": 2}, {"cox_type": "B", "n": 3, "p": 3}, {"cox_type": "D", "n": 4, "p": 3}],
)
def _check_antiauto_extension(cox_type: str = "A", n: int = 4, p: int = 2) -> Outcome:
    kind = _normalize_type(cox_type)
    bad = autos.antiauto_extension_failures(kind, n, p)
    return _verdict([f"f({format_element(w)})^perp != f(w^-1 c)" for w in bad], ["complement matches Kreweras on every element"])


@register(
    "rank2-tables",
    "enumerated reduced words of rank-2 elements against the type-B and type-D tables",
    small=[{"cox_type": "B", "n": 3}, {"cox_type": "B", "n": 4}, {"cox_type": "D", "n": 4}],
    full=[{"cox_type": "B", "n": 5}, {"cox_type": "D", "n": 5}],
)
def _check_rank2_tables(cox_type: str = "B", n: int = 4) -> Outcome:
    kind = _normalize_type(cox_type)
    rows = autos.instantiate_rank2_table(kind, n)
    return _verdict(autos.rank2_table_mismatches(kind, n), [f"{len(rows)} table rows agree"])


@register(
    "form-vanishing",
    "b(alpha_s, alpha_t) = 0 whenever s is subordinate to t",
    small=[{"cox_type": "A", "n": k} for k in (3, 4, 5)]
    + [{"cox_type": "B", "n": k} for k in (2, 3, 4, 5)]
    + [{"cox_type": "D", "n": k} for k in (4, 5)],
)
def _check_form_vanishing(cox_type: str = "A", n: int = 4) -> Outcome:
    kind = _normalize_type(cox_type)
    bad = autos.form_vanishing_failures(kind, n)
    return _verdict([f"b({format_element(s)}, {format_element(t)}) = {v}" for s, t, v in bad], ["all subordinate pairs vanish"])


@register(
    "embedding",
    "f is injective on NC, sends absolute length to dimension and covers to inclusions",
    small=[{"cox_type": "A", "n": k, "p": 2} for k in range(2, 7)]
    + [{"cox_type": "B", "n": k, "p": 3} for k in range(2, 5)]
    + [{"cox_type": "D", "n": k, "p": 3} for k in (3, 4)],
)
def _check_embedding(cox_type: str = "A", n: int = 4, p: int = 2) -> Outcome:
    kind = _normalize_type(cox_type)
    graph = hasse_graph(kind, n)
    images = {w: embed_nc(kind, w, p) for w in graph.nodes}
    failures = []
    seen: Dict[Any, Any] = {}
    for w, U in images.items():
        if U in seen:
            failures.append(f"f({format_element(w)}) = f({format_element(seen[U])})")
        seen[U] = w
        if U.dim != _length(w):
            failures.append(f"f({format_element(w)}) has dimension {U.dim}, length {_length(w)}")
    for low, high in graph.edges:
        if not images[low].is_subspace_of(images[high]):
            failures.append(f"f({format_element(low)}) is not inside f({format_element(high)})")
    return _verdict(failures, [f"{len(images)} elements, {graph.number_of_edges()} covers"])


# --------------------------------------------------------------------------
# report-only scans


@register("hull-equality", "NCP pairs at equal distances whose hulls still differ", small=[{"n": 4}])
def _check_hull_equality(n: int = 4) -> Outcome:
    pairs = hull_equality_scan(n)
    lines = [f"{format_chamber(C)} / {format_chamber(D)}" for C, D in pairs[:MAX_DETAILS]]
    return Status.REPORT, [f"{len(pairs)} pairs"] + lines


@register("b3-apartments", "frames of F_3^3 inside f(NC(B3)) against reduced words of c", small=[{"p": 3}])
def _check_b3_apartments(p: int = 3) -> Outcome:
    scan = nc_apartment_scan_B3(p)
    return Status.REPORT, [f"{scan.nc_frames} of {scan.frames} frames inside NC, {scan.reduced_words} reduced words"]


@register("strands", "shortest strand paths of the five-point witness and their pairwise sums against pi")
def _check_strands() -> Outcome:
    C, D = _witness(NCP5_WITNESS)
    strands, sums = strand_scan(C, D)
    lines = [f"strand to {format_chamber(s.end)}: {s.chambers} chambers, length {s.length / math.pi:.6f} pi" for s in strands]
    lines += [f"strands {a}+{b}: {total / math.pi:.6f} pi ({'>=' if total >= math.pi - FLOAT_TOLERANCE else '<'} pi)" for a, b, total in sums]
    return Status.REPORT, lines


@register("zeta-extension", "linear extension of the exotic automorphism of NC(D4) from its atom images", small=[{"p": 3}])
def _check_zeta_extension(p: int = 3) -> Outcome:
    attempt = autos.zeta_extension_attempt(p)
    return Status.REPORT, [f"F_{p}: " + ("extension found" if attempt.success else attempt.reason)]


# --------------------------------------------------------------------------
# running


def list_checks() -> Tuple[Tuple[str, str], ...]:
    return tuple((spec.name, spec.summary) for spec in sorted(_REGISTRY.values(), key=lambda s: s.name))


def _spec(name: str) -> CheckSpec:
    if name not in _REGISTRY:
        raise DomainError(f"unknown check {name!r}; registered: {', '.join(sorted(_REGISTRY))}")
    return _REGISTRY[name]


def run_check(name: str, **params: Any) -> CheckReport:
    """Run one check; ``None`` parameters fall back to the check's defaults."""

    spec = _spec(name)
    signature = inspect.signature(spec.run)
    given = {k: v for k, v in params.items() if v is not None}
    unknown = sorted(set(given) - set(signature.parameters))
    if unknown:
        raise DomainError(f"check {name} takes {sorted(signature.parameters) or 'no parameters'}, not {unknown}")
    bound = signature.bind(**given)
    bound.apply_defaults()
    status, details = spec.run(**bound.arguments)
    report = CheckReport(name, dict(bound.arguments), status, tuple(details))
    logger.info("check %s %s: %s", name, report.params, report.status.value)
    return report


def run_all(small: bool = True) -> Tuple[CheckReport, ...]:
    """Every registered check over its small parameter sets, plus the full ones unless ``small``."""

    reports = []
    for spec in sorted(_REGISTRY.values(), key=lambda s: s.name):
        for params in spec.small + (() if small else spec.full):
            try:
                reports.append(run_check(spec.name, **params))
            except NcpartError as exc:
                reports.append(CheckReport(spec.name, params, Status.FAIL, (f"{type(exc).__name__}: {exc}",)))
    return tuple(reports)
