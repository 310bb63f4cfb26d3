"""Exhaustive and sampled censuses of smooth cubic surfaces and their lines.

Modes
-----
exhaustive        walk every class of P^19(F_q) in rank order, decide
                  smoothness, and count the lines on each smooth surface.
sieve-then-count  build the singular bitmap, then for each line count the
                  smooth classes inside its 16-dimensional containment
                  subspace.  No per-surface histogram.
crosscheck        both of the above; every shared tally must agree.

Work is split into contiguous chunks (class-rank ranges for the surface
walk, line-index ranges for the line scan).  Chunk tallies are merged by
addition, so the result does not depend on chunking or worker count.

Report schema (JSON, version REPORT_SCHEMA): see ``CensusReport.content``;
``metadata`` (timings, workers, host) is excluded from the checksum.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import _kernels, _moduli
from .cubic import CubicForm
from .gf import FieldDescriptor
from .lefschetz import predicted_counts
from .linalg import inverse_table, matmul_mod_p
from .projgeom import class_rank, class_unrank, enumerate_lines, normalize_rows, proj_count, restriction_stack
from .smoothness import (
    ResourceBudgetError,
    SmoothnessBitmap,
    is_smooth_pointsearch,
    pointsearch_batch,
    rank_weights,
    sieve_singular,
)

REPORT_SCHEMA = 1
CHECKPOINT_VERSION = 1
MAX_LINES = 27
MODES = ("exhaustive", "sieve-then-count", "crosscheck")
ORACLES = ("sieve", "pointsearch")
EXHAUSTIVE_Q = (2, 3, 4, 5)
LONG_RUNNING_CLASSES = 10**8  # runs above this many classes need allow_long


class CheckpointError(RuntimeError):
    pass


class Interrupted(RuntimeError):
    """Raised when a run stops early on request (max_chunks)."""


def modulus_table_hash() -> str:
    items = sorted((f"{p},{k}", list(v)) for (p, k), v in _moduli.SHIPPED.items())
    return hashlib.sha256(json.dumps(items).encode()).hexdigest()


# -- tallies -------------------------------------------------------------------


@dataclass
class SurfaceTally:
    """Per-surface accumulation over a range of classes."""

    classes: int
    smooth: int
    incident: int
    histogram: list[int]
    per_line: list[int]

    @classmethod
    def zero(cls, nlines: int) -> SurfaceTally:
        return cls(0, 0, 0, [0] * (MAX_LINES + 1), [0] * nlines)

    def __add__(self, o: SurfaceTally) -> SurfaceTally:
        return SurfaceTally(
            self.classes + o.classes,
            self.smooth + o.smooth,
            self.incident + o.incident,
            [a + b for a, b in zip(self.histogram, o.histogram)],
            [a + b for a, b in zip(self.per_line, o.per_line)],
        )

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@lru_cache(maxsize=None)
def _flat_restrictions(field: FieldDescriptor) -> np.ndarray:
    return np.ascontiguousarray(restriction_stack(field).reshape(-1, 20).T, dtype=np.float32)


def line_counts(field: FieldDescriptor, coeffs: np.ndarray) -> np.ndarray:
    """(B, L) containment matrix: entry True when the form contains line l."""
    R = restriction_stack(field)  # (L, 4, 20)
    L = R.shape[0]
    if field.k == 1:
        if 20 * (field.p - 1) ** 2 < 2**24:
            vals = coeffs.astype(np.float32) @ _flat_restrictions(field)
            return _kernels.contained_lines(vals, field.p, L)
        vals = matmul_mod_p(coeffs, R.reshape(-1, 20).T, field.p)
        return ~np.any(vals.reshape(coeffs.shape[0], L, 4), axis=-1)
    vals = field.sum(field.mul(R[None], coeffs[:, None, None, :]), axis=-1)
    return ~np.any(vals, axis=-1)


def smooth_mask(field: FieldDescriptor, coeffs: np.ndarray, oracle: str, bitmap: SmoothnessBitmap | None, ranks=None):
    if oracle == "sieve":
        return bitmap.is_smooth_ranks(ranks)
    return pointsearch_batch(field, coeffs).smooth


def surface_chunk(field: FieldDescriptor, start: int, stop: int, oracle: str, bitmap=None, sub: int = 1 << 16) -> SurfaceTally:
    nlines = restriction_stack(field).shape[0]
    tally = SurfaceTally.zero(nlines)
    for a in range(start, stop, sub):
        b = min(stop, a + sub)
        ranks = np.arange(a, b, dtype=np.int64)
        coeffs = class_unrank(field.q, 19, ranks)
        sm = smooth_mask(field, coeffs, oracle, bitmap, ranks)
        good = coeffs[sm]
        contain = line_counts(field, good) if good.shape[0] else np.zeros((0, nlines), dtype=bool)
        per_surface = contain.sum(axis=1)
        if per_surface.size and per_surface.max() > MAX_LINES:
            raise AssertionError(f"a smooth surface with {int(per_surface.max())} lines")
        hist = np.bincount(per_surface, minlength=MAX_LINES + 1)
        tally = tally + SurfaceTally(
            b - a,
            int(sm.sum()),
            int(per_surface.sum()),
            [int(x) for x in hist],
            [int(x) for x in contain.sum(axis=0)],
        )
    return tally


def line_scan_chunk(field: FieldDescriptor, start: int, stop: int, bitmap: SmoothnessBitmap) -> list[int]:
    """Smooth classes containing each line in [start, stop)."""
    R = np.ascontiguousarray(restriction_stack(field)[start:stop], dtype=np.int64)
    weights, offs = rank_weights(field.p)
    out = _kernels.count_unmarked_in_kernels(R, field.p, inverse_table(field.p), weights, offs, bitmap.marks)
    return [int(x) for x in out]


# -- reports -------------------------------------------------------------------


@dataclass
class CensusReport:
    q: int
    mode: str
    oracle: str
    total_classes: int
    smooth: int
    incident_pairs: int
    histogram: list[int] | None
    per_line: list[int]
    modulus: list[int]
    chunks: int
    crosscheck: dict | None = None
    metadata: dict = dc_field(default_factory=dict)

    @property
    def average(self) -> Fraction:
        return Fraction(self.incident_pairs, self.smooth) if self.smooth else Fraction(0)

    def identities(self) -> dict[str, bool]:
        ids = {
            "per_line_sum_equals_incident_pairs": sum(self.per_line) == self.incident_pairs,
            "per_line_counts_all_equal": len(set(self.per_line)) <= 1,
            "line_count_matches_grassmannian": len(self.per_line) == (self.q**2 + 1) * (self.q**2 + self.q + 1),
            "total_is_p19": self.total_classes == proj_count(19, self.q),
        }
        if self.histogram is not None:
            ids["histogram_mass_equals_smooth"] = sum(self.histogram) == self.smooth
            ids["histogram_weighted_sum_equals_incident_pairs"] = (
                sum(i * c for i, c in enumerate(self.histogram)) == self.incident_pairs
            )
            ids["histogram_within_27"] = len(self.histogram) == MAX_LINES + 1
        if self.crosscheck is not None:
            for k, v in self.crosscheck.items():
                ids[f"crosscheck_{k}"] = bool(v)
        return ids

    def comparison(self) -> dict:
        pred = predicted_counts(self.q)
        return {
            "predicted_smooth": pred.smooth_surfaces,
            "predicted_incident_pairs": pred.incident_pairs,
            "smooth_matches": self.smooth == pred.smooth_surfaces,
            "incident_pairs_match": self.incident_pairs == pred.incident_pairs,
            "average_is_one": self.average == 1,
        }

    def identities_hold(self) -> bool:
        return all(self.identities().values())

    def content(self) -> dict:
        avg = self.average
        return {
            "schema": REPORT_SCHEMA,
            "q": self.q,
            "modulus": self.modulus,
            "mode": self.mode,
            "oracle": self.oracle,
            "total_classes": self.total_classes,
            "smooth_surfaces": self.smooth,
            "incident_pairs": self.incident_pairs,
            "average_lines": f"{avg.numerator}/{avg.denominator}",
            "histogram": self.histogram,
            "per_line": self.per_line,
            "crosscheck": self.crosscheck,
            "identities": self.identities(),
            "comparison": self.comparison(),
        }

    @property
    def checksum(self) -> str:
        blob = json.dumps(self.content(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> str:
        doc = self.content()
        doc["checksum"] = self.checksum
        doc["metadata"] = self.metadata
        return json.dumps(doc, indent=2, sort_keys=True)

    def canonical_bytes(self) -> bytes:
        """The report without run metadata; equal across workers, chunking and resumes."""
        doc = self.content()
        doc["checksum"] = self.checksum
        return json.dumps(doc, indent=2, sort_keys=True).encode()

    def summary(self) -> str:
        avg = self.average
        cmp = self.comparison()
        lines = [
            f"q = {self.q}  mode = {self.mode}  oracle = {self.oracle}",
            f"classes enumerated: {self.total_classes}",
            f"smooth surfaces #M: {self.smooth}  (predicted {cmp['predicted_smooth']})",
            f"incident pairs #M~: {self.incident_pairs}  (predicted {cmp['predicted_incident_pairs']})",
            f"average lines: {avg.numerator}/{avg.denominator}",
        ]
        if self.per_line:
            lines.append(f"per-line counts: min {min(self.per_line)} max {max(self.per_line)} over {len(self.per_line)} lines")
        if self.histogram is not None:
            lines.append("histogram: " + " ".join(f"{i}:{c}" for i, c in enumerate(self.histogram) if c))
        for k, v in self.identities().items():
            lines.append(f"identity {k}: {'ok' if v else 'FAILED'}")
        lines.append(f"checksum: {self.checksum}")
        return "\n".join(lines)

    def write(self, directory) -> tuple[Path, Path | None]:
        """Append-only: never overwrite an existing report."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        stem = f"census_q{self.q}_{self.mode}_{self.checksum[:16]}"
        path = d / f"{stem}.json"
        n = 1
        while path.exists():
            path = d / f"{stem}.{n}.json"
            n += 1
        path.write_text(self.to_json())
        csv_path = None
        if self.histogram is not None:
            csv_path = path.with_suffix(".csv")
            with open(csv_path, "x", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["lines", "surfaces"])
                for i, c in enumerate(self.histogram):
                    w.writerow([i, c])
        return path, csv_path


# -- checkpoints ---------------------------------------------------------------


@dataclass
class Checkpoint:
    path: Path
    q: int
    mode: str
    oracle: str
    chunk_size: int
    modulus_hash: str
    completed: dict = dc_field(default_factory=dict)  # key -> {"range": [a, b], "tally": ...}
    seed: int | None = None
    bitmap_sha256: str | None = None
    version: int = CHECKPOINT_VERSION

    @property
    def bitmap_path(self) -> Path:
        return self.path.with_name(self.path.name + ".bitmap")

    def as_dict(self) -> dict:
        return {
            "format_version": self.version,
            "q": self.q,
            "mode": self.mode,
            "oracle": self.oracle,
            "chunk_size": self.chunk_size,
            "modulus_table_hash": self.modulus_hash,
            "seed": self.seed,
            "bitmap_sha256": self.bitmap_sha256,
            "completed": self.completed,
        }

    def save(self) -> None:
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(json.dumps(self.as_dict(), sort_keys=True))
        os.replace(tmp, self.path)

    @classmethod
    def load(cls, path) -> Checkpoint:
        path = Path(path)
        d = json.loads(path.read_text())
        if d.get("format_version") != CHECKPOINT_VERSION:
            raise CheckpointError(f"checkpoint format {d.get('format_version')} is not {CHECKPOINT_VERSION}")
        return cls(
            path,
            d["q"],
            d["mode"],
            d["oracle"],
            d["chunk_size"],
            d["modulus_table_hash"],
            d["completed"],
            d.get("seed"),
            d.get("bitmap_sha256"),
        )

    def check_matches(self, q: int, mode: str, oracle: str, chunk_size: int) -> None:
        mine = (self.q, self.mode, self.oracle, self.chunk_size, self.modulus_hash)
        want = (q, mode, oracle, chunk_size, modulus_table_hash())
        if mine != want:
            raise CheckpointError(f"checkpoint was written for {mine}, this run is {want}")

    def save_bitmap(self, bitmap: SmoothnessBitmap) -> None:
        packed = np.packbits(bitmap.marks)
        self.bitmap_sha256 = hashlib.sha256(packed.tobytes()).hexdigest()
        tmp = self.bitmap_path.with_name(self.bitmap_path.name + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(packed.tobytes())
        os.replace(tmp, self.bitmap_path)
        self.save()

    def load_bitmap(self) -> SmoothnessBitmap | None:
        if not self.bitmap_sha256 or not self.bitmap_path.exists():
            return None
        raw = self.bitmap_path.read_bytes()
        if hashlib.sha256(raw).hexdigest() != self.bitmap_sha256:
            raise CheckpointError("bitmap sidecar does not match its recorded hash")
        n = proj_count(19, self.q)
        marks = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=n).astype(bool)
        return SmoothnessBitmap(self.q, marks)


# -- driver --------------------------------------------------------------------

_WORKER_STATE: dict = {}


def _surface_task(args):
    start, stop = args
    s = _WORKER_STATE
    return surface_chunk(s["field"], start, stop, s["oracle"], s["bitmap"])


def _line_task(args):
    start, stop = args
    s = _WORKER_STATE
    return line_scan_chunk(s["field"], start, stop, s["bitmap"])


def _run_chunks(task, ranges, workers, key_prefix, ckpt, max_chunks, to_json, from_json):
    """Run task over ranges, skipping those the checkpoint already holds."""
    results = {}
    todo = []
    for a, b in ranges:
        key = f"{key_prefix}:{a}-{b}"
        if ckpt is not None and key in ckpt.completed:
            results[key] = from_json(ckpt.completed[key]["tally"])
        else:
            todo.append((key, (a, b)))
    if max_chunks is not None:
        stop_after = max_chunks
    else:
        stop_after = len(todo)

    def record(key, rng, value):
        results[key] = value
        if ckpt is not None:
            ckpt.completed[key] = {"range": list(rng), "tally": to_json(value)}
            ckpt.save()

    batch = todo[:stop_after]
    if workers > 1 and len(batch) > 1:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
            for (key, rng), value in zip(batch, ex.map(task, [r for _, r in batch])):
                record(key, rng, value)
    else:
        for key, rng in batch:
            record(key, rng, task(rng))
    if len(batch) < len(todo):
        raise Interrupted(f"stopped after {len(batch)} chunks; resume from the checkpoint")
    return [results[f"{key_prefix}:{a}-{b}"] for a, b in ranges]


def _ranges(n: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(n, a + size)) for a in range(0, n, size)]


def run_census(
    field: FieldDescriptor,
    mode: str = "exhaustive",
    workers: int = 1,
    oracle: str = "sieve",
    chunk_size: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    resume: bool = False,
    allow_long: bool = False,
    budget: int | None = None,
    max_chunks: int | None = None,
    line_chunk: int = 8,
) -> CensusReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if oracle not in ORACLES:
        raise ValueError(f"oracle must be one of {ORACLES}")
    q = field.q
    total = proj_count(19, q)
    if mode in ("exhaustive", "crosscheck") and q not in EXHAUSTIVE_Q:
        raise ValueError(f"exhaustive censuses are limited to q in {EXHAUSTIVE_Q}")
    if total > LONG_RUNNING_CLASSES and not allow_long:
        raise ResourceBudgetError(f"{total} classes: pass allow_long to run this census")
    needs_bitmap = mode != "exhaustive" or oracle == "sieve"
    if needs_bitmap and field.k != 1:
        raise ResourceBudgetError("the sieve bitmap is only built over prime fields")
    chunk_size = chunk_size or (1 << 18)

    t0 = time.time()
    ckpt = None
    if checkpoint is not None:
        path = Path(checkpoint)
        if resume and path.exists():
            ckpt = Checkpoint.load(path)
            ckpt.check_matches(q, mode, oracle, chunk_size)
        else:
            if path.exists():
                raise CheckpointError(f"{path} exists; pass resume to continue it")
            ckpt = Checkpoint(path, q, mode, oracle, chunk_size, modulus_table_hash())
            ckpt.save()

    bitmap = None
    timings = {}
    if needs_bitmap:
        bitmap = ckpt.load_bitmap() if ckpt is not None else None
        if bitmap is None:
            t = time.time()
            bitmap = sieve_singular(field, budget=budget, workers=workers)
            timings["sieve_seconds"] = round(time.time() - t, 3)
            if ckpt is not None:
                ckpt.save_bitmap(bitmap)

    _WORKER_STATE.clear()
    _WORKER_STATE.update(field=field, oracle=oracle, bitmap=bitmap)
    nlines = restriction_stack(field).shape[0]

    surf = None
    if mode in ("exhaustive", "crosscheck"):
        t = time.time()
        parts = _run_chunks(
            _surface_task,
            _ranges(total, chunk_size),
            workers,
            "surfaces",
            ckpt,
            max_chunks,
            SurfaceTally.as_dict,
            lambda d: SurfaceTally(**d),
        )
        surf = SurfaceTally.zero(nlines)
        for p in parts:
            surf = surf + p
        timings["surface_seconds"] = round(time.time() - t, 3)

    per_line_scan = None
    if mode in ("sieve-then-count", "crosscheck"):
        t = time.time()
        parts = _run_chunks(
            _line_task,
            _ranges(nlines, line_chunk),
            workers,
            "lines",
            ckpt,
            max_chunks,
            list,
            list,
        )
        per_line_scan = [c for p in parts for c in p]
        timings["line_scan_seconds"] = round(time.time() - t, 3)

    meta = {"workers": workers, "wall_seconds": round(time.time() - t0, 3), **timings}
    modulus = list(field.modulus)
    if mode == "sieve-then-count":
        return CensusReport(
            q, mode, "sieve", total, bitmap.smooth_count, sum(per_line_scan), None, per_line_scan, modulus,
            len(_ranges(nlines, line_chunk)), None, meta,
        )
    cross = None
    if mode == "crosscheck":
        cross = {
            "per_surface_equals_per_line_incident_pairs": surf.incident == sum(per_line_scan),
            "per_line_vectors_identical": surf.per_line == per_line_scan,
            "oracle_smooth_equals_bitmap_smooth": surf.smooth == bitmap.smooth_count,
        }
    return CensusReport(
        q, mode, oracle, surf.classes, surf.smooth, surf.incident, surf.histogram, surf.per_line, modulus,
        len(_ranges(total, chunk_size)), cross, meta,
    )


def unnormalized_tallies(field: FieldDescriptor, chunk: int = 1 << 16) -> tuple[int, int]:
    """(smooth vectors, incident pairs) over all nonzero coefficient vectors, by point search."""
    if field.k != 1:
        raise ValueError("prime fields only")
    q = field.q
    n = q**20
    smooth = incident = 0
    for a in range(1, n, chunk):
        idx = np.arange(a, min(n, a + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // (q ** np.arange(19, -1, -1, dtype=np.int64))) % q
        sm = pointsearch_batch(field, coeffs).smooth
        smooth += int(sm.sum())
        incident += int(line_counts(field, coeffs[sm]).sum())
    return smooth, incident


def count_lines_on(F: CubicForm, lines=None, check_smooth: bool = True) -> tuple[int, list]:
    """Lines of P^3(F_q) contained in the smooth surface F = 0."""
    if check_smooth and not is_smooth_pointsearch(F).smooth:
        raise ValueError("count_lines_on expects a smooth form")
    lines = enumerate_lines(F.field) if lines is None else list(lines)
    on = [ln for ln in lines if F.contains(ln)]
    if len(on) > MAX_LINES:
        raise AssertionError(f"{len(on)} lines on a smooth cubic surface")
    return len(on), on


# -- sampling ------------------------------------------------------------------


@dataclass
class SampleReport:
    q: int
    n: int
    seed: int
    smooth: int
    histogram: list[int]
    incident: int
    modulus: list[int]
    metadata: dict = dc_field(default_factory=dict)

    @property
    def smooth_fraction(self) -> float:
        return self.smooth / self.n

    @property
    def smooth_fraction_se(self) -> float:
        p = self.smooth_fraction
        return math.sqrt(p * (1 - p) / self.n)

    @property
    def mean_lines(self) -> Fraction:
        return Fraction(self.incident, self.smooth) if self.smooth else Fraction(0)

    @property
    def mean_lines_se(self) -> float:
        m = self.smooth
        if m < 2:
            return float("inf")
        mean = self.incident / m
        var = sum(c * (i - mean) ** 2 for i, c in enumerate(self.histogram)) / (m - 1)
        return math.sqrt(var / m)

    def content(self) -> dict:
        ml = self.mean_lines
        return {
            "schema": REPORT_SCHEMA,
            "q": self.q,
            "modulus": self.modulus,
            "n": self.n,
            "seed": self.seed,
            "smooth_samples": self.smooth,
            "smooth_fraction": self.smooth_fraction,
            "smooth_fraction_se": self.smooth_fraction_se,
            "incident_pairs": self.incident,
            "mean_lines": f"{ml.numerator}/{ml.denominator}",
            "mean_lines_float": float(ml),
            "mean_lines_se": self.mean_lines_se,
            "histogram": self.histogram,
        }

    @property
    def checksum(self) -> str:
        blob = json.dumps(self.content(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> str:
        doc = self.content()
        doc["checksum"] = self.checksum
        doc["metadata"] = self.metadata
        return json.dumps(doc, indent=2, sort_keys=True)

    def summary(self) -> str:
        pred = predicted_counts(self.q)
        dens = pred.smooth_surfaces / pred.classes
        return "\n".join(
            [
                f"q = {self.q}  n = {self.n}  seed = {self.seed}",
                f"smooth fraction: {self.smooth_fraction:.6f} +- {self.smooth_fraction_se:.6f}  (predicted density {dens:.6f})",
                f"mean lines per smooth surface: {float(self.mean_lines):.6f} +- {self.mean_lines_se:.6f}",
                "histogram: " + " ".join(f"{i}:{c}" for i, c in enumerate(self.histogram) if c),
                f"checksum: {self.checksum}",
            ]
        )


def sample_classes(field: FieldDescriptor, n: int, seed: int) -> np.ndarray:
    """n uniform classes of P^19(F_q): uniform nonzero vectors, then normalised."""
    rng = np.random.default_rng(seed)
    out = []
    have = 0
    while have < n:
        v = rng.integers(0, field.q, size=(n - have, 20), dtype=np.int64)
        v = v[v.any(axis=1)]
        out.append(v)
        have += v.shape[0]
    return normalize_rows(field, np.concatenate(out)[:n])


def sample_census(
    field: FieldDescriptor,
    n: int,
    seed: int,
    oracle: str = "pointsearch",
    bitmap: SmoothnessBitmap | None = None,
    chunk: int = 8192,
) -> SampleReport:
    if n < 1:
        raise ValueError("sample size must be positive")
    t0 = time.time()
    classes = sample_classes(field, n, seed)
    smooth = incident = 0
    hist = np.zeros(MAX_LINES + 1, dtype=np.int64)
    for a in range(0, n, chunk):
        c = classes[a : a + chunk]
        if oracle == "sieve":
            if bitmap is None:
                bitmap = sieve_singular(field)
            sm = bitmap.is_smooth_ranks(class_rank(field.q, c))
        else:
            sm = pointsearch_batch(field, c).smooth
        cnt = line_counts(field, c[sm]).sum(axis=1)
        if cnt.size and cnt.max() > MAX_LINES:
            raise AssertionError("more than 27 lines on a smooth surface")
        hist += np.bincount(cnt, minlength=MAX_LINES + 1)
        smooth += int(sm.sum())
        incident += int(cnt.sum())
    return SampleReport(
        field.q, n, seed, smooth, [int(x) for x in hist], incident, list(field.modulus),
        {"wall_seconds": round(time.time() - t0, 3), "oracle": oracle},
    )
