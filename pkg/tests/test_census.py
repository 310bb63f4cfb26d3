from __future__ import annotations

import json

import numpy as np
import pytest

from cubiccensus import census as cs
from cubiccensus.cubic import CubicForm, fermat
from cubiccensus.gf import make_field
from cubiccensus.lefschetz import predicted_counts
from cubiccensus.projgeom import Line, enumerate_lines
from cubiccensus.smoothness import ResourceBudgetError

from conftest import random_invertible


def test_q2_census_tallies(census2):
    r = census2
    assert r.total_classes == 1_048_575
    assert r.smooth == 322_560 and r.incident_pairs == 322_560
    assert r.average == 1
    assert r.per_line == [9216] * 35
    assert r.identities_hold(), r.identities()
    assert len(r.histogram) == 28 and max(i for i, c in enumerate(r.histogram) if c) <= 27


def test_determinism_across_workers_and_chunks(f2, census2):
    a = cs.run_census(f2, mode="crosscheck", workers=2, chunk_size=1 << 17)
    b = cs.run_census(f2, mode="crosscheck", workers=1, chunk_size=3 * 10**5, line_chunk=5)
    assert a.checksum == b.checksum == census2.checksum
    assert a.canonical_bytes() == census2.canonical_bytes()


def test_sieve_then_count_matches_per_surface(f2, census2):
    r = cs.run_census(f2, mode="sieve-then-count")
    assert r.histogram is None
    assert r.per_line == census2.per_line and r.smooth == census2.smooth


def test_pointsearch_oracle_census(f2, census2):
    r = cs.run_census(f2, mode="exhaustive", oracle="pointsearch")
    assert r.histogram == census2.histogram and r.per_line == census2.per_line


def test_checkpoint_resume_is_identical(f2, census2, tmp_path):
    path = tmp_path / "run.ckpt"
    with pytest.raises(cs.Interrupted):
        cs.run_census(f2, mode="crosscheck", chunk_size=1 << 17, checkpoint=path, max_chunks=3)
    saved = json.loads(path.read_text())
    assert len(saved["completed"]) == 3 and saved["format_version"] == cs.CHECKPOINT_VERSION
    assert (tmp_path / "run.ckpt.bitmap").exists()
    with pytest.raises(cs.CheckpointError):
        cs.run_census(f2, mode="crosscheck", chunk_size=1 << 17, checkpoint=path)
    resumed = cs.run_census(f2, mode="crosscheck", chunk_size=1 << 17, checkpoint=path, resume=True)
    assert "sieve_seconds" not in resumed.metadata  # the bitmap came from the sidecar
    assert resumed.canonical_bytes() == census2.canonical_bytes()


def test_checkpoint_mismatches_are_rejected(f2, tmp_path):
    path = tmp_path / "c.ckpt"
    with pytest.raises(cs.Interrupted):
        cs.run_census(f2, chunk_size=1 << 18, checkpoint=path, max_chunks=1)
    with pytest.raises(cs.CheckpointError):
        cs.run_census(f2, chunk_size=1 << 17, checkpoint=path, resume=True)
    d = json.loads(path.read_text())
    d["modulus_table_hash"] = "0" * 64
    path.write_text(json.dumps(d))
    with pytest.raises(cs.CheckpointError):
        cs.run_census(f2, chunk_size=1 << 18, checkpoint=path, resume=True)
    d["format_version"] = 99
    path.write_text(json.dumps(d))
    with pytest.raises(cs.CheckpointError):
        cs.run_census(f2, chunk_size=1 << 18, checkpoint=path, resume=True)


def test_corrupt_bitmap_sidecar_is_rejected(f2, tmp_path):
    path = tmp_path / "b.ckpt"
    with pytest.raises(cs.Interrupted):
        cs.run_census(f2, chunk_size=1 << 18, checkpoint=path, max_chunks=1)
    side = tmp_path / "b.ckpt.bitmap"
    raw = bytearray(side.read_bytes())
    raw[100] ^= 1
    side.write_bytes(bytes(raw))
    with pytest.raises(cs.CheckpointError):
        cs.run_census(f2, chunk_size=1 << 18, checkpoint=path, resume=True)


def test_resource_gates(f3, f4, f7):
    with pytest.raises(ResourceBudgetError):
        cs.run_census(f3)
    with pytest.raises(ValueError):
        cs.run_census(f7)
    with pytest.raises(ResourceBudgetError):
        cs.run_census(f4, mode="sieve-then-count", allow_long=True)
    with pytest.raises(ValueError):
        cs.run_census(make_field(2), mode="bogus")


def test_reports_are_append_only(census2, tmp_path):
    p1, c1 = census2.write(tmp_path)
    p2, _ = census2.write(tmp_path)
    assert p1 != p2 and p1.read_text() == p2.read_text()
    assert p1.name.startswith("census_q2_crosscheck_")
    rows = c1.read_text().splitlines()
    assert rows[0] == "lines,surfaces" and len(rows) == 29
    doc = json.loads(p1.read_text())
    assert doc["checksum"] == census2.checksum and doc["average_lines"] == "1/1"


def test_unnormalised_pass_scales_by_q_minus_1(f2, census2):
    smooth, incident = cs.unnormalized_tallies(f2)
    assert smooth == census2.smooth * (f2.q - 1)
    assert incident == census2.incident_pairs * (f2.q - 1)


def test_fermat_lines_over_f2(f2):
    n, lines = cs.count_lines_on(fermat(f2))
    assert n == 3
    expected = {
        Line.from_basis(f2, [[1, 1, 0, 0], [0, 0, 1, 1]]),
        Line.from_basis(f2, [[1, 0, 1, 0], [0, 1, 0, 1]]),
        Line.from_basis(f2, [[1, 0, 0, 1], [0, 1, 1, 0]]),
    }
    assert set(lines) == expected


def test_count_lines_rejects_singular(f2):
    with pytest.raises(ValueError):
        cs.count_lines_on(CubicForm.from_terms(f2, {(3, 0, 0, 0): 1}))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_line_count_equivariance(q, rng):
    from cubiccensus.gf import field_of_order
    from cubiccensus.smoothness import pointsearch_batch

    F = field_of_order(q)
    found = 0
    while found < 3:
        c = rng.integers(0, q, size=20)
        if not c.any() or not pointsearch_batch(F, c[None]).smooth[0]:
            continue
        f = CubicForm(F, tuple(c))
        g = random_invertible(F, rng)
        n1, l1 = cs.count_lines_on(f)
        n2, l2 = cs.count_lines_on(f.compose(g))
        assert n1 == n2 <= 27
        assert {ln.transform(g) for ln in l2} == set(l1)
        found += 1


def test_line_counts_batch_matches_single(f3, rng):
    lines = enumerate_lines(f3)
    c = rng.integers(0, 3, size=(50, 20))
    m = cs.line_counts(f3, c)
    for row, vec in zip(m, c):
        f = CubicForm(f3, tuple(vec))
        assert row.tolist() == [f.contains(ln) for ln in lines]


def test_sample_guards_and_reproducibility(f2):
    with pytest.raises(ValueError):
        cs.sample_census(f2, 0, seed=1)
    a = cs.sample_census(f2, 2000, seed=1)
    b = cs.sample_census(f2, 2000, seed=1)
    c = cs.sample_census(f2, 2000, seed=2)
    assert a.checksum == b.checksum != c.checksum


def test_sample_oracles_agree(f2, bitmap2):
    a = cs.sample_census(f2, 5000, seed=3)
    b = cs.sample_census(f2, 5000, seed=3, oracle="sieve", bitmap=bitmap2)
    assert (a.smooth, a.incident, a.histogram) == (b.smooth, b.incident, b.histogram)


def test_sample_q2_smooth_fraction():
    f2 = make_field(2)
    r = cs.sample_census(f2, 100_000, seed=42)
    density = 322_560 / 1_048_575
    assert abs(r.smooth_fraction - density) <= 5 * r.smooth_fraction_se


def test_sample_classes_are_normalised(f5):
    c = cs.sample_classes(f5, 1000, seed=0)
    lead = c[np.arange(1000), np.argmax(c != 0, axis=1)]
    assert np.all(lead == 1)


def test_prediction_comparison_fields(census2):
    cmp = census2.comparison()
    assert cmp["predicted_smooth"] == predicted_counts(2).smooth_surfaces
    assert cmp["smooth_matches"] and cmp["incident_pairs_match"] and cmp["average_is_one"]
