"""Census pipeline: enumerate, reduce, and classify crossed modules.

The pipeline runs in three stages.  all_xmods builds every crossed module
over catalog representatives of a given order pair, reduce_by_isomorphism
keeps the first representative of each isomorphism class, and
classify_families partitions the representatives into isoclinism families
with one invariant report per family.  census composes the stages and can
persist the finished result as a directory of structured-text files;
group_census produces the analogous per-order family table for groups.
"""

from __future__ import annotations

import math
import multiprocessing
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from xmodkit import __version__ as ENGINE_VERSION

from .catalog import GroupCatalog, catalog_group, load_catalog
from .groups import (
    FiniteGroup,
    all_homs,
    automorphism_group,
    center,
    generating_sequence,
    group_family_partition,
    group_fingerprint,
    group_lower_central_series,
    group_middle_length,
    group_nilpotency_class,
    group_rank,
    quotient_group,
)
from .invariants import (
    center_xmod,
    displacement_subgroup,
    lower_central_series,
    middle_length_of_xmod,
    nilpotency_class,
    rank_of_xmod,
)
from .isoclinism import xmod_family_partition
from .values import NOT_NILPOTENT, LogValue, PairValue
from .xmods import (
    CrossedModule,
    is_isomorphic_xmod,
    make_xmod,
    parse_xmod,
    serialize_xmod,
    xmod_fingerprint,
)

_META_VERSION = "census v1"
_FAMILIES_VERSION = "families v1"
_REPORT_VERSION = "report v1"

_META_NAME = "meta"
_REPS_DIR = "reps"
_FAMILIES_NAME = "families"
_REPORT_NAME = "report"


class CensusError(RuntimeError):
    """Raised when a census result fails its own consistency checks."""


@dataclass(frozen=True)
class FamilyReport:
    """Shared invariants of one isoclinism family.

    Every field is recomputed for every member and compared; a family whose
    members disagree is a pipeline bug and raises CensusError.  gamma_sizes
    lists the sizes of the distinct lower-central terms from the second one
    on, without the trailing trivial term of a nilpotent series.
    """

    family_index: int
    members: tuple[int, ...]
    member_count: int
    rank: PairValue
    middle_length: PairValue
    nilpotency_class: object
    central_quotient_size: tuple[int, int]
    gamma_sizes: tuple[tuple[int, int], ...]


@dataclass(eq=False)
class CensusResult:
    """Output of the census pipeline, filled in stage by stage.

    The raw stage stores every constructed crossed module in
    representatives; the reduction stage replaces the list with one
    representative per isomorphism class and records class_map (raw index
    to representative index); the family stage adds families and reports.
    A result loaded from cache has class_map None.
    """

    order_pair: tuple[int, int]
    raw_count: int
    representatives: list
    class_map: Optional[tuple[int, ...]] = None
    families: Optional[list[tuple[int, ...]]] = None
    reports: Optional[list[FamilyReport]] = None
    catalog_version: str = ""
    engine_version: str = ENGINE_VERSION

    @property
    def stage(self) -> str:
        if self.families is not None:
            return "families"
        if self.class_map is not None:
            return "representatives"
        return "raw"

    def counts(self) -> tuple[int, int, int]:
        """(raw, isomorphism classes, families) of a finished census."""
        if self.families is None:
            raise ValueError("census pipeline has not finished")
        return (self.raw_count, len(self.representatives), len(self.families))

    def validate(self) -> "CensusResult":
        n_reps = len(self.representatives)
        if self.class_map is not None:
            if len(self.class_map) != self.raw_count:
                raise CensusError("class map does not cover the raw count")
            if sorted(set(self.class_map)) != list(range(n_reps)):
                raise CensusError("class map misses a representative")
        if self.families is not None:
            flat = sorted(i for fam in self.families for i in fam)
            if flat != list(range(n_reps)):
                raise CensusError("families do not partition representatives")
            if self.reports is None or len(self.reports) != len(self.families):
                raise CensusError("one report per family required")
            for report, fam in zip(self.reports, self.families):
                if report.member_count != len(fam):
                    raise CensusError("report member count mismatch")
        return self


# --- stage 1: raw enumeration ---


def _aut_tables(G: FiniteGroup) -> tuple:
    if "auttables" not in G._cache:
        _, morphisms = automorphism_group(G)
        G._cache["auttables"] = tuple(f.image_of for f in morphisms)
    return G._cache["auttables"]


def _boundary_images(G1: FiniteGroup, G0: FiniteGroup) -> tuple:
    key = ("homimgs", G0.catalog_id)
    if G0.catalog_id is not None and key in G1._cache:
        return G1._cache[key]
    images = tuple(h.image_of for h in all_homs(G1, G0))
    if G0.catalog_id is not None:
        G1._cache[key] = images
    return images


def _stage1_scan(G1: FiniteGroup, G0: FiniteGroup, phi_images) -> list:
    """(action, boundary) image pairs satisfying CM1 and CM2.

    phi_images are action homomorphisms G0 -> Aut(G1) given by tables of
    automorphism indices.  CM1 and CM2 hold everywhere once they hold on
    generating sequences (both sides extend multiplicatively), and
    make_xmod revalidates each survivor in full.
    """
    tables = _aut_tables(G1)
    boundaries = _boundary_images(G1, G0)
    gens1 = generating_sequence(G1)
    gens0 = generating_sequence(G0)
    conj = {a: tuple(G1.conj(a, b) for b in G1.elements) for a in gens1}
    mul0, inv0 = G0.mul, G0.inv
    hits = []
    for phi in phi_images:
        rows = tuple(tables[j] for j in phi)
        allowed = {}
        feasible = True
        for a in gens1:
            want = conj[a]
            fits = frozenset(x for x in G0.elements if rows[x] == want)
            if not fits:
                feasible = False
                break
            allowed[a] = fits
        if not feasible:
            continue
        for img in boundaries:
            if any(img[a] not in allowed[a] for a in gens1):
                continue
            bad = False
            for x in gens0:
                row = rows[x]
                for a in gens1:
                    if img[row[a]] != mul0[mul0[x][img[a]]][inv0[x]]:
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                hits.append((phi, img))
    return hits


def _stage1_task(args):
    # worker entry: resolves groups from the bundled catalog by id
    n, i1, m, i0, phi_images = args
    return _stage1_scan(catalog_group(n, i1), catalog_group(m, i0), phi_images)


def all_xmods(
    n: int,
    m: int,
    *,
    workers: Optional[int] = None,
    catalog: Optional[GroupCatalog] = None,
) -> CensusResult:
    """Every crossed module of order [n, m] over catalog representatives.

    Iterates ordered pairs of catalog groups in catalog order, action
    homomorphisms G0 -> Aut(G1), and boundary homomorphisms G1 -> G0
    jointly satisfying CM1 and CM2.  The order of the output is
    deterministic.  workers > 1 spreads the scan over a process pool
    (bundled catalog only); a custom catalog runs sequentially.
    """
    cat = catalog if catalog is not None else load_catalog()
    ents1 = cat.entries_of_order(n)
    ents0 = cat.entries_of_order(m)
    if not ents1 or not ents0:
        raise ValueError(f"catalog does not cover order pair [{n},{m}]")
    pool_ok = workers is not None and workers > 1 and catalog is None
    tasks = []
    for e1 in ents1:
        G1 = cat.group(e1.order, e1.index)
        aut_carrier, _ = automorphism_group(G1)
        for e0 in ents0:
            G0 = cat.group(e0.order, e0.index)
            actions = tuple(h.image_of for h in all_homs(G0, aut_carrier))
            step = len(actions)
            if pool_ok:
                step = max(1, math.ceil(len(actions) / (workers * 2)))
            for lo in range(0, len(actions), step):
                tasks.append((n, e1.index, m, e0.index, actions[lo:lo + step]))
    if pool_ok:
        with multiprocessing.Pool(workers) as pool:
            payloads = pool.map(_stage1_task, tasks, chunksize=1)
    else:
        payloads = [
            _stage1_scan(cat.group(n, t[1]), cat.group(m, t[3]), t[4])
            for t in tasks
        ]
    raw = []
    for task, hits in zip(tasks, payloads):
        G1 = cat.group(n, task[1])
        G0 = cat.group(m, task[3])
        tables = _aut_tables(G1)
        for phi, img in hits:
            rows = tuple(tables[j] for j in phi)
            raw.append(make_xmod(G1, G0, img, rows))
    return CensusResult(
        order_pair=(n, m),
        raw_count=len(raw),
        representatives=raw,
        catalog_version=cat.version,
    ).validate()


# --- stage 2: isomorphism reduction ---


def _iso_bucket_key(X: CrossedModule) -> tuple:
    d = X.boundary.image_of
    rank = rank_of_xmod(X)
    ml = middle_length_of_xmod(X)
    return (
        X.g1.catalog_id or group_fingerprint(X.g1),
        X.g0.catalog_id or group_fingerprint(X.g0),
        xmod_fingerprint(X),
        sum(1 for v in d if v == X.g0.identity),
        len(set(d)),
        center_xmod(X).order,
        displacement_subgroup(X).order,
        (rank.level1_order, rank.level0_order),
        (ml.level1_order, ml.level0_order),
    )


def reduce_by_isomorphism(result: CensusResult, *, slow: bool = False) -> CensusResult:
    """First representative of each isomorphism class, plus the class map.

    Candidates are bucketed by cheap invariants before the isomorphism
    search; slow=True drops the buckets and the fingerprint prefilter and
    compares pairwise against every prior representative.
    """
    reps: list = []
    class_map: list[int] = []
    buckets: dict = {}
    for X in result.representatives:
        key = X.order() if slow else _iso_bucket_key(X)
        bucket = buckets.setdefault(key, [])
        hit = None
        for ridx in bucket:
            if is_isomorphic_xmod(X, reps[ridx], slow=slow) is not None:
                hit = ridx
                break
        if hit is None:
            hit = len(reps)
            reps.append(X)
            bucket.append(hit)
        class_map.append(hit)
    return CensusResult(
        order_pair=result.order_pair,
        raw_count=result.raw_count,
        representatives=reps,
        class_map=tuple(class_map),
        catalog_version=result.catalog_version,
        engine_version=result.engine_version,
    ).validate()


# --- stage 3: family classification ---


def _member_row(X: CrossedModule) -> tuple:
    z = center_xmod(X)
    n1, n0 = X.order()
    z1, z0 = z.order
    sizes = lower_central_series(X).sizes()[1:]
    if sizes and sizes[-1] == (1, 1):
        sizes = sizes[:-1]
    return (
        rank_of_xmod(X),
        middle_length_of_xmod(X),
        nilpotency_class(X),
        (n1 // z1, n0 // z0),
        tuple(sizes),
    )


def _family_report(index: int, members: Sequence[int], reps) -> FamilyReport:
    rows = [_member_row(reps[i]) for i in members]
    for row in rows[1:]:
        if row != rows[0]:
            raise CensusError(f"family {index} members disagree on invariants")
    rank, ml, cls, quotient, gammas = rows[0]
    return FamilyReport(
        family_index=index,
        members=tuple(members),
        member_count=len(members),
        rank=rank,
        middle_length=ml,
        nilpotency_class=cls,
        central_quotient_size=quotient,
        gamma_sizes=gammas,
    )


def classify_families(result: CensusResult, *, slow: bool = False) -> CensusResult:
    """Partition representatives into isoclinism families and report each."""
    if result.class_map is None:
        raise ValueError("classify_families needs the representatives stage")
    reps = result.representatives
    families = [tuple(f) for f in xmod_family_partition(reps, slow=slow)]
    reports = [_family_report(i, fam, reps) for i, fam in enumerate(families)]
    return CensusResult(
        order_pair=result.order_pair,
        raw_count=result.raw_count,
        representatives=reps,
        class_map=result.class_map,
        families=families,
        reports=reports,
        catalog_version=result.catalog_version,
        engine_version=result.engine_version,
    ).validate()


# --- persistence ---


def _census_dir(cache_dir, n: int, m: int) -> Path:
    return Path(cache_dir) / f"census-{n}-{m}"


def _render_meta(result: CensusResult) -> str:
    n, m = result.order_pair
    return (
        f"{_META_VERSION}\n"
        f"order {n} {m}\n"
        f"raw {result.raw_count}\n"
        f"classes {len(result.representatives)}\n"
        f"families {len(result.families)}\n"
        f"catalog {result.catalog_version}\n"
        f"engine {result.engine_version}\n"
    )


def _render_families(families) -> str:
    lines = [_FAMILIES_VERSION]
    for i, fam in enumerate(families):
        lines.append(f"{i}: " + " ".join(str(v) for v in fam))
    return "\n".join(lines) + "\n"


def _render_report_records(reports) -> str:
    lines = [_REPORT_VERSION]
    for r in reports:
        cls = "-" if r.nilpotency_class is NOT_NILPOTENT else str(r.nilpotency_class)
        gammas = " ".join(f"{a},{b}" for a, b in r.gamma_sizes) or "-"
        lines.append(
            f"{r.family_index} count {r.member_count}"
            f" rank {r.rank.level1_order} {r.rank.level0_order}"
            f" ml {r.middle_length.level1_order} {r.middle_length.level0_order}"
            f" class {cls}"
            f" quotient {r.central_quotient_size[0]} {r.central_quotient_size[1]}"
            f" gammas {gammas}"
        )
    return "\n".join(lines) + "\n"


def _parse_families(text: str, expected: int) -> list[tuple[int, ...]]:
    lines = text.splitlines()
    if not lines or lines[0] != _FAMILIES_VERSION:
        raise ValueError("unsupported families record")
    families = []
    for i, line in enumerate(lines[1:]):
        label, _, rest = line.partition(":")
        if int(label) != i:
            raise ValueError("families record out of order")
        families.append(tuple(int(v) for v in rest.split()))
    if len(families) != expected:
        raise ValueError("family count mismatch")
    return families


def _take(parts: list, keyword: str, count: int) -> list[str]:
    if parts[0] != keyword:
        raise ValueError(f"expected {keyword!r} in report record")
    del parts[0]
    taken = parts[:count]
    del parts[:count]
    return taken


def _parse_report_records(text: str, families) -> list[FamilyReport]:
    lines = text.splitlines()
    if not lines or lines[0] != _REPORT_VERSION:
        raise ValueError("unsupported report record")
    if len(lines) - 1 != len(families):
        raise ValueError("report row count mismatch")
    reports = []
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if int(parts.pop(0)) != i:
            raise ValueError("report record out of order")
        (count,) = _take(parts, "count", 1)
        rank = _take(parts, "rank", 2)
        ml = _take(parts, "ml", 2)
        (cls_text,) = _take(parts, "class", 1)
        quotient = _take(parts, "quotient", 2)
        if parts[0] != "gammas":
            raise ValueError("expected 'gammas' in report record")
        gamma_parts = parts[1:]
        gammas = tuple(
            tuple(int(v) for v in item.split(",")) for item in gamma_parts
        ) if gamma_parts != ["-"] else ()
        cls = NOT_NILPOTENT if cls_text == "-" else int(cls_text)
        reports.append(
            FamilyReport(
                family_index=i,
                members=tuple(families[i]),
                member_count=int(count),
                rank=PairValue(int(rank[0]), int(rank[1])),
                middle_length=PairValue(int(ml[0]), int(ml[1])),
                nilpotency_class=cls,
                central_quotient_size=(int(quotient[0]), int(quotient[1])),
                gamma_sizes=gammas,
            )
        )
    return reports


def save_census(result: CensusResult, cache_dir) -> Path:
    """Persist a finished census as a directory, replacing any stale copy."""
    if result.families is None or result.reports is None:
        raise ValueError("only a finished census persists")
    n, m = result.order_pair
    final = _census_dir(cache_dir, n, m)
    tmp = final.with_name(final.name + ".tmp")
    for stale in (tmp, final):
        if stale.exists():
            shutil.rmtree(stale)
    (tmp / _REPS_DIR).mkdir(parents=True)
    for i, X in enumerate(result.representatives):
        (tmp / _REPS_DIR / f"{i:05d}.xmod").write_text(serialize_xmod(X))
    (tmp / _FAMILIES_NAME).write_text(_render_families(result.families))
    (tmp / _REPORT_NAME).write_text(_render_report_records(result.reports))
    (tmp / _META_NAME).write_text(_render_meta(result))
    tmp.rename(final)
    return final


def load_census(cache_dir, n: int, m: int) -> Optional[CensusResult]:
    """Cached census for [n, m], or None when absent, stale, or damaged.

    Version or content mismatches mean "rebuild", never an error.  The
    class map is not persisted; loaded results carry class_map None.
    """
    final = _census_dir(cache_dir, n, m)
    try:
        meta = (final / _META_NAME).read_text().splitlines()
        if not meta or meta[0] != _META_VERSION:
            return None
        fields = dict(line.split(" ", 1) for line in meta[1:] if line)
        if fields["order"] != f"{n} {m}":
            return None
        if fields["catalog"] != load_catalog().version:
            return None
        if fields["engine"] != ENGINE_VERSION:
            return None
        rep_files = sorted((final / _REPS_DIR).glob("*.xmod"))
        if len(rep_files) != int(fields["classes"]):
            return None
        reps = [parse_xmod(p.read_text()) for p in rep_files]
        families = _parse_families(
            (final / _FAMILIES_NAME).read_text(), int(fields["families"])
        )
        reports = _parse_report_records(
            (final / _REPORT_NAME).read_text(), families
        )
        return CensusResult(
            order_pair=(n, m),
            raw_count=int(fields["raw"]),
            representatives=reps,
            families=families,
            reports=reports,
            catalog_version=fields["catalog"],
            engine_version=fields["engine"],
        ).validate()
    except (OSError, ValueError, KeyError, IndexError, CensusError):
        return None


def census(
    n: int,
    m: int,
    *,
    workers: Optional[int] = None,
    cache_dir=None,
    slow: bool = False,
) -> CensusResult:
    """Full pipeline for order [n, m], with optional directory caching.

    A cache hit returns the stored result; any mismatch rebuilds and
    overwrites.  slow=True routes both reduction and classification
    through the brute-force paths (the counts must not change).
    """
    if cache_dir is not None:
        cached = load_census(cache_dir, n, m)
        if cached is not None:
            return cached
    result = classify_families(
        reduce_by_isomorphism(all_xmods(n, m, workers=workers), slow=slow),
        slow=slow,
    )
    if cache_dir is not None:
        save_census(result, cache_dir)
    return result


# --- group families per order ---


@dataclass(frozen=True)
class GroupFamilyReport:
    """Shared invariants of one isoclinism family of groups."""

    family_index: int
    member_ids: tuple[str, ...]
    member_count: int
    representative_id: str
    rank: LogValue
    middle_length: LogValue
    nilpotency_class: object
    quotient_id: str
    gamma_ids: tuple[str, ...]


def _identify_text(cat: GroupCatalog, G: FiniteGroup) -> str:
    hit = cat.identify(G)
    if hit is None:
        raise ValueError(f"group of order {G.order} is not in the catalog")
    return f"{hit[0]}:{hit[1]}"


def _group_row(cat: GroupCatalog, G: FiniteGroup) -> tuple:
    quotient, _ = quotient_group(G, center(G))
    terms = group_lower_central_series(G)[1:]
    if terms and terms[-1].order == 1:
        terms = terms[:-1]
    return (
        group_rank(G),
        group_middle_length(G),
        group_nilpotency_class(G),
        _identify_text(cat, quotient),
        tuple(_identify_text(cat, t.as_group()) for t in terms),
    )


def group_census(
    order: int, *, catalog: Optional[GroupCatalog] = None
) -> list[GroupFamilyReport]:
    """Isoclinism families of the catalog groups of one order.

    One row per family, in first-occurrence catalog order, carrying the
    shared rank, middle length, class, central quotient id and the ids of
    the distinct lower-central terms from the second one on.
    """
    cat = catalog if catalog is not None else load_catalog()
    entries = cat.entries_of_order(order)
    if not entries:
        raise ValueError(f"catalog has no groups of order {order}")
    groups = [cat.group(e.order, e.index) for e in entries]
    ids = [f"{e.order}:{e.index}" for e in entries]
    out = []
    for fi, fam in enumerate(group_family_partition(groups)):
        rows = [_group_row(cat, groups[i]) for i in fam]
        for row in rows[1:]:
            if row != rows[0]:
                raise CensusError(f"group family {fi} invariants disagree")
        rank, ml, cls, quotient_id, gamma_ids = rows[0]
        out.append(
            GroupFamilyReport(
                family_index=fi,
                member_ids=tuple(ids[i] for i in fam),
                member_count=len(fam),
                representative_id=ids[fam[0]],
                rank=rank,
                middle_length=ml,
                nilpotency_class=cls,
                quotient_id=quotient_id,
                gamma_ids=gamma_ids,
            )
        )
    return out
