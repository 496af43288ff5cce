"""Coloring scans, order-type sampling and database scans, annealing search."""
from __future__ import annotations

import enum
import itertools
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .blocking import candidate_cells
from .geom import (
    Color,
    ColoredPointSet,
    GeometryError,
    Point,
    chirotope_fingerprint,
    convex_hull,
    layers,
    orient,
    validate_general_position,
)
from .structures import (
    StructureInstance,
    StructureKind,
    empty_monochromatic_structures,
    kind_mask,
    kinds_label,
    region_contains,
)

MAX_SCAN_POINTS = 24


class TooLarge(ValueError):
    pass


class BadRecordLength(ValueError):
    def __init__(self, offset: int, record_length: int, file_length: int):
        super().__init__(
            f"file length {file_length} is not a multiple of the record length {record_length}; "
            f"incomplete record at byte offset {offset}"
        )
        self.offset = offset


class CoordOutOfRange(ValueError):
    pass


# -- coloring scans ------------------------------------------------------------------

class Verdict(enum.Enum):
    ALL_COLORINGS_CONTAIN_EMPTY = "all-colorings-contain-empty"
    COUNTEREXAMPLE = "counterexample-coloring"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GarmentReport:
    n: int
    kinds: frozenset
    verdict: Verdict
    colors: tuple[Color, ...] | None = None
    checked: int = 0
    total: int = 0

    @property
    def counterexample(self) -> bool:
        return self.verdict is Verdict.COUNTEREXAMPLE

    def to_dict(self) -> dict:
        d = {"n": self.n, "kinds": kinds_label(self.kinds), "verdict": self.verdict.value,
             "checked": self.checked, "total": self.total}
        if self.colors is not None:
            d["colors"] = [c.name.lower() for c in self.colors]
        return d


def mask_colors(red_mask: int, n: int) -> tuple[Color, ...]:
    return tuple(Color.RED if red_mask >> i & 1 else Color.BLUE for i in range(n))


def _empty_quad_masks(ps: Sequence[Point], kinds) -> np.ndarray:
    xs = [p[0] for p in ps]
    ys = [p[1] for p in ps]
    rows, _ = kernels.instance_table(xs, ys, kind_mask(kinds), True)
    return kernels.quad_masks(rows)


def _scan_range(args):
    qmasks, n, start, stop = args
    return kernels.find_coloring(qmasks, n, start, stop)


def scan_colorings(ps: Sequence[Point], kinds: Iterable[StructureKind], jobs: int = 1,
                   colorings: Iterable[int] | None = None, limit: int | None = None) -> GarmentReport:
    """Check 2-colorings of ``ps`` for one with no empty monochromatic structure.

    Point 0 is fixed red (a global color swap maps empty monochromatic
    structures to themselves). ``colorings`` restricts the scan to the given
    red masks; ``limit`` caps the number of colorings and yields INCONCLUSIVE
    when it cuts the scan short.
    """
    kinds = frozenset(kinds)
    n = len(ps)
    if n > MAX_SCAN_POINTS:
        raise TooLarge(f"{n} points exceed the {MAX_SCAN_POINTS}-point coloring scan")
    if n < 4 or not kinds:
        return GarmentReport(n, kinds, Verdict.COUNTEREXAMPLE, mask_colors((1 << n) - 1, n), 1, 1)
    qmasks = _empty_quad_masks(ps, kinds)
    if colorings is not None:
        masks = sorted({int(m) for m in qmasks})
        checked = 0
        for red in colorings:
            if limit is not None and checked >= limit:
                return GarmentReport(n, kinds, Verdict.INCONCLUSIVE, None, checked, checked)
            checked += 1
            if all(0 < (m & red) < m for m in masks):
                return GarmentReport(n, kinds, Verdict.COUNTEREXAMPLE, mask_colors(red, n), checked, checked)
        return GarmentReport(n, kinds, Verdict.ALL_COLORINGS_CONTAIN_EMPTY, None, checked, checked)
    total = 1 << (n - 1)
    stop = total if limit is None else min(total, limit)
    if jobs > 1 and stop > 4096:
        bounds = np.linspace(0, stop, jobs * 4 + 1, dtype=np.int64)
        args = [(qmasks, n, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ProcessPoolExecutor(jobs) as ex:
            hits = [h for h in ex.map(_scan_range, args) if h >= 0]
        found = min(hits, key=lambda r: r >> 1) if hits else -1
    else:
        found = kernels.find_coloring(qmasks, n, 0, stop)
    if found >= 0:
        return GarmentReport(n, kinds, Verdict.COUNTEREXAMPLE, mask_colors(found, n), (found >> 1) + 1, total)
    verdict = Verdict.ALL_COLORINGS_CONTAIN_EMPTY if stop == total else Verdict.INCONCLUSIVE
    return GarmentReport(n, kinds, verdict, None, stop, total)


def naive_scan_colorings(ps: Sequence[Point], kinds: Iterable[StructureKind]) -> GarmentReport:
    """Every coloring, no symmetry, each checked from scratch. Test oracle."""
    kinds = frozenset(kinds)
    n = len(ps)
    for red in range(1 << n):
        cps = ColoredPointSet(ps, mask_colors(red, n), check="none")
        if not empty_monochromatic_structures(cps, kinds):
            return GarmentReport(n, kinds, Verdict.COUNTEREXAMPLE, cps.colors, red + 1, 1 << n)
    return GarmentReport(n, kinds, Verdict.ALL_COLORINGS_CONTAIN_EMPTY, None, 1 << n, 1 << n)


def layered_colorings(ps: Sequence[Point]) -> list[int]:
    """Red masks matching the 6-versus-5 structure forced for 11 points:
    red hull triangle, blue second layer of 4, then 3 red and 1 blue inside.
    Empty when the layers do not have those sizes."""
    ls = layers(ps)
    if len(ps) != 11 or len(ls) < 2 or len(ls[0]) != 3 or len(ls[1]) != 4:
        return []
    hull = sum(1 << i for i in ls[0])
    rest = [i for layer in ls[2:] for i in layer]
    return [hull | sum(1 << i for i in rest if i != blue) for blue in rest]


# -- order-type database ---------------------------------------------------------------

def default_coord_bytes(n: int) -> int:
    return 1 if n <= 8 else 2


def read_order_type_db(path, n: int, coord_bytes: int | None = None, byteorder: str = "little",
                       start: int = 0) -> Iterator[tuple[int, list[Point]]]:
    """Yield (record index, points) from a fixed-length binary order-type file."""
    if not 3 <= n <= 11:
        raise ValueError("order-type files cover 3 <= n <= 11")
    width = coord_bytes or default_coord_bytes(n)
    if width not in (1, 2):
        raise CoordOutOfRange(f"coordinate width must be 1 or 2 bytes, not {width}")
    if byteorder not in ("little", "big"):
        raise ValueError("byteorder must be 'little' or 'big'")
    reclen = 2 * n * width
    size = os.path.getsize(path)
    if size % reclen:
        raise BadRecordLength(size - size % reclen, reclen, size)
    dtype = np.dtype(np.uint8) if width == 1 else np.dtype("<u2" if byteorder == "little" else ">u2")
    with open(path, "rb") as fh:
        fh.seek(start * reclen)
        index = start
        while True:
            chunk = fh.read(reclen * 65536)
            if not chunk:
                return
            arr = np.frombuffer(chunk, dtype=dtype).reshape(-1, n, 2)
            for rec in arr:
                yield index, [Point(int(x), int(y)) for x, y in rec]
                index += 1


@dataclass
class DbScanSummary:
    records: int = 0
    skipped: int = 0
    counterexamples: int = 0
    next_record: int = 0


def scan_order_type_db(path, n: int, kinds: Iterable[StructureKind], coord_bytes: int | None = None,
                       byteorder: str = "little", start: int = 0, limit: int | None = None,
                       hull_sizes: Iterable[int] | None = None, policy: str = "all",
                       checkpoint: str | os.PathLike | None = None, checkpoint_every: int = 10**6,
                       on_checkpoint: Callable[[DbScanSummary], None] | None = None,
                       ) -> Iterator[tuple[int, GarmentReport]]:
    """Run scan_colorings on each record; yields (record index, report).

    ``policy`` is "all" (every coloring) or "layered" (only the colorings of
    :func:`layered_colorings`). With ``checkpoint`` set, the summary and the
    next record index are written there every ``checkpoint_every`` records;
    resuming from a checkpoint picks up at its next record.
    """
    kinds = frozenset(kinds)
    hull_sizes = set(hull_sizes) if hull_sizes else None
    summary = DbScanSummary(next_record=start)
    if checkpoint and Path(checkpoint).exists():
        saved = json.loads(Path(checkpoint).read_text())
        summary = DbScanSummary(**saved)
        start = summary.next_record
    done = 0
    for index, pts in read_order_type_db(path, n, coord_bytes, byteorder, start):
        if limit is not None and done >= limit:
            break
        done += 1
        summary.next_record = index + 1
        try:
            validate_general_position(pts, "full")
        except GeometryError as exc:
            raise GeometryError(f"record {index}: {exc}") from None
        if hull_sizes is not None and len(convex_hull(pts)) not in hull_sizes:
            summary.skipped += 1
        else:
            cols = layered_colorings(pts) if policy == "layered" else None
            if policy == "layered" and not cols:
                summary.skipped += 1
            else:
                report = scan_colorings(pts, kinds, colorings=cols)
                summary.records += 1
                summary.counterexamples += report.counterexample
                yield index, report
        if summary.next_record % checkpoint_every == 0:
            _checkpoint(summary, checkpoint, on_checkpoint)
    _checkpoint(summary, checkpoint, on_checkpoint)


def _checkpoint(summary, path, hook):
    if path:
        tmp = Path(str(path) + ".tmp")
        tmp.write_text(json.dumps(summary.__dict__))
        tmp.replace(path)
    if hook:
        hook(summary)


def write_order_type_db(path, sets: Iterable[Sequence[Point]], coord_bytes: int, byteorder: str = "little") -> None:
    dtype = np.dtype(np.uint8) if coord_bytes == 1 else np.dtype("<u2" if byteorder == "little" else ">u2")
    limit = 1 << (8 * coord_bytes)
    with open(path, "wb") as fh:
        for pts in sets:
            arr = np.asarray(pts, dtype=np.int64)
            if arr.min() < 0 or arr.max() >= limit:
                raise CoordOutOfRange(f"coordinates must lie in [0, {limit})")
            fh.write(arr.astype(dtype).tobytes())


# -- order-type sampling -----------------------------------------------------------------

@dataclass
class OrderTypeSample:
    n: int
    sets: list[list[Point]]
    curve: list[int]  # distinct types after each batch
    fingerprints: list[bytes] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def hull_histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.sets:
            h = len(convex_hull(s))
            out[h] = out.get(h, 0) + 1
        return dict(sorted(out.items()))


def _snap_into_cell(base: Sequence[Point], rep: tuple[Fraction, Fraction]) -> list[Point] | None:
    """Scale ``base`` by a power of two and round ``rep`` so it stays in its cell."""
    target = [orient(base[i], base[j], rep) for i, j in itertools.combinations(range(len(base)), 2)]
    for k in range(0, 24):
        f = 1 << k
        pts = [Point(x * f, y * f) for x, y in base]
        q = Point(round(rep[0] * f), round(rep[1] * f))
        if all(orient(pts[i], pts[j], q) == t
               for (i, j), t in zip(itertools.combinations(range(len(base)), 2), target)):
            return _shrink(pts + [q])
    return None


def _shrink(pts: list[Point]) -> list[Point]:
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    mx, my = min(xs), min(ys)
    return [Point(x - mx, y - my) for x, y in pts]


def sample_order_types(n: int, budget: int = 20000, seed: int = 0, batch: int = 1000, size: int = 256,
                       extend: bool = True) -> OrderTypeSample:
    """Distinct order types of n points, one integer realization each.

    Random sets in [0, size)^2 are sampled in batches; with ``extend`` every
    type of n - 1 points (found the same way, recursively) is then extended by
    a point in each cell of its line arrangement. ``curve`` records the
    number of distinct types after each batch and after the extension pass.
    """
    if not 3 <= n <= 10:
        raise ValueError("sampling covers 3 <= n <= 10")
    rng = random.Random(seed)
    seen: dict[bytes, list[Point]] = {}
    curve = []

    def add(pts):
        fp = chirotope_fingerprint(pts).data
        if fp not in seen:
            seen[fp] = list(pts)

    done = 0
    while done < budget:
        for _ in range(min(batch, budget - done)):
            pts = [Point(rng.randrange(size), rng.randrange(size)) for _ in range(n)]
            try:
                validate_general_position(pts, "full")
            except GeometryError:
                continue
            add(pts)
        done += batch
        curve.append(len(seen))
    if extend and n > 3:
        smaller = sample_order_types(n - 1, budget, seed + 1, batch, size, extend)
        for base in smaller.sets:
            for cell in candidate_cells(base, within_hull=False):
                pts = _snap_into_cell(base, cell.rep)
                if pts is not None:
                    add(pts)
        curve.append(len(seen))
    keys = sorted(seen)
    return OrderTypeSample(n, [seen[k] for k in keys], curve, keys)


# -- construction search --------------------------------------------------------------------

@dataclass
class ConstructionResult:
    cps: ColoredPointSet
    kinds: frozenset
    energy: int
    trace: list[int]
    seed: int
    moves: int

    @property
    def success(self) -> bool:
        return self.energy == 0


def _collinear_with(xs, ys, i) -> bool:
    x, y = xs[i], ys[i]
    n = len(xs)
    dx = [xs[j] - x for j in range(n)]
    dy = [ys[j] - y for j in range(n)]
    dirs = set()
    for j in range(n):
        if j == i:
            continue
        a, b = dx[j], dy[j]
        if a == 0 and b == 0:
            return True
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        if (a, b) in dirs:
            return True
        dirs.add((a, b))
    return False


def lower_bound_search(n: int, kinds: Iterable[StructureKind], budget: int = 10**6, seed: int = 0,
                       size: int = 1 << 16, t_start: float = 2.0, t_end: float = 0.05,
                       cycle: int = 20000, trace_every: int = 1000) -> ConstructionResult:
    """Simulated annealing over integer coordinates and a coloring.

    Energy is the number of empty monochromatic structures of ``kinds``.
    Moves: jitter one point, flip one color, swap the colors of two points.
    The temperature falls geometrically over each cycle of ``cycle`` moves; a
    cycle that ends without improving the best state restarts from it.
    Deterministic for a fixed seed.
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    kinds = frozenset(kinds)
    km = kind_mask(kinds)
    rng = random.Random(seed)
    while True:
        xs = [rng.randrange(size) for _ in range(n)]
        ys = [rng.randrange(size) for _ in range(n)]
        if not any(_collinear_with(xs, ys, i) for i in range(n)):
            break
    red = 0
    for i in rng.sample(range(n), n // 2):
        red |= 1 << i
    energy = kernels.empty_mono_count(xs, ys, red, km)
    best = (energy, list(xs), list(ys), red)
    trace = [energy]
    ratio = (t_end / t_start) ** (1.0 / cycle)
    temp = t_start
    improved = False
    moves = 0
    while moves < budget and best[0] > 0:
        moves += 1
        u = rng.random()
        i = rng.randrange(n)
        if u < 0.6:
            scale = (size >> 3, size >> 7, 64, 4)[rng.randrange(4)]
            ox, oy = xs[i], ys[i]
            nx_ = min(size - 1, max(0, ox + rng.randint(-scale, scale)))
            ny_ = min(size - 1, max(0, oy + rng.randint(-scale, scale)))
            xs[i], ys[i] = nx_, ny_
            if (nx_ == ox and ny_ == oy) or _collinear_with(xs, ys, i):
                xs[i], ys[i] = ox, oy
                continue
            new_red = red
        elif u < 0.85:
            ox = None
            new_red = red ^ (1 << i)
        else:
            ox = None
            j = rng.randrange(n)
            if (red >> i & 1) == (red >> j & 1):
                continue
            new_red = red ^ (1 << i) ^ (1 << j)
        e = kernels.empty_mono_count(xs, ys, new_red, km)
        if e <= energy or rng.random() < math.exp((energy - e) / temp):
            energy, red = e, new_red
            if e < best[0]:
                best = (e, list(xs), list(ys), red)
                improved = True
        elif ox is not None:
            xs[i], ys[i] = ox, oy
        temp *= ratio
        if moves % cycle == 0:
            if not improved:
                energy, xs, ys, red = best[0], list(best[1]), list(best[2]), best[3]
            improved = False
            temp = t_start
        if moves % trace_every == 0:
            trace.append(energy)
    trace.append(best[0])
    cps = ColoredPointSet(list(zip(best[1], best[2])), mask_colors(best[3], n), check="full")
    return ConstructionResult(cps, kinds, best[0], trace, seed, moves)


@dataclass(frozen=True)
class CensusEntry:
    instance: StructureInstance
    color: Color
    blocker: int | None  # an opposite-color point in the region
    intruder: int | None  # a same-color point in the region

    @property
    def empty(self) -> bool:
        return self.blocker is None and self.intruder is None


def structure_census(cps: ColoredPointSet, kinds: Iterable[StructureKind]) -> list[CensusEntry]:
    """Every monochromatic instance of the kinds with a point that spoils it, if any."""
    from .structures import all_instances

    out = []
    for inst in all_instances(cps.points, kinds):
        cols = {cps.colors[i] for i in inst.points}
        if len(cols) != 1:
            continue
        color = cps.colors[inst.points[0]]
        blocker = intruder = None
        members = set(inst.points)
        for j, p in enumerate(cps.points):
            if j in members or not region_contains(inst, cps.points, p):
                continue
            if cps.colors[j] is color:
                intruder = j if intruder is None else intruder
            elif blocker is None:
                blocker = j
        out.append(CensusEntry(inst, color, blocker, intruder))
    return out


def verify_construction(cps: ColoredPointSet, kinds: Iterable[StructureKind]) -> tuple[bool, list[CensusEntry]]:
    """True iff no empty monochromatic structure of the kinds exists."""
    census = structure_census(cps, kinds)
    return all(not e.empty for e in census), census


def empty_structures(cps: ColoredPointSet, kinds: Iterable[StructureKind]) -> list[StructureInstance]:
    return [e.instance for e in structure_census(cps, kinds) if e.empty]


__all__ = [
    "TooLarge", "BadRecordLength", "CoordOutOfRange", "Verdict", "GarmentReport", "scan_colorings",
    "naive_scan_colorings", "layered_colorings", "read_order_type_db", "write_order_type_db",
    "scan_order_type_db", "DbScanSummary", "OrderTypeSample", "sample_order_types", "ConstructionResult",
    "lower_bound_search", "CensusEntry", "structure_census", "verify_construction", "empty_structures",
]
