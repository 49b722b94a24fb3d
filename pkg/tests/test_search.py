import numpy as np
import pytest

from supersinglet import search
from supersinglet.search import GridSpec, ScanRecord, evaluate, refine_optimum, scan, scan_surface, sweep_detuning
from supersinglet.tables import TABLES, table_params


@pytest.mark.parametrize(
    "times, g, delta, fid, prob",
    [
        ((23, 1, 45), 1.0, 0.0, 0.976124, 0.629),
        ((12, 1, 45), 1.0, 0.0, 0.975297, 0.670),
        ((5, 1, 2), 1.0, 0.1, 0.923425, 0.651),
    ],
)
def test_single_point_scan(times, g, delta, fid, prob):
    fixed = dict(zip(("t1", "t2", "t3"), times), delta=delta, g=g)
    (rec,) = scan(GridSpec({}), fixed)
    assert rec.fidelity == pytest.approx(fid, abs=5e-7)
    assert rec.success_prob == pytest.approx(prob, abs=5e-4)


def test_scan_ordering_and_size():
    grid = GridSpec({"t1": (1, 2, 1), "t3": (1, 3, 1)})
    records = scan(grid, {"t2": 1, "delta": 0.0, "g": 1.0})
    assert [(r.t1, r.t3) for r in records] == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]


def test_scan_axis_conflicts():
    with pytest.raises(ValueError):
        scan(GridSpec({"t1": (1, 2, 1)}), {"t1": 1, "t2": 1, "t3": 1, "delta": 0})
    with pytest.raises(ValueError):
        scan(GridSpec({"t1": (1, 2, 1)}), {"t2": 1, "delta": 0})
    with pytest.raises(ValueError):
        GridSpec({"t1": (2, 1, 1)})
    with pytest.raises(ValueError):
        GridSpec({"t1": (1, 2, 0)})
    with pytest.raises(ValueError):
        GridSpec({"t4": (1, 2, 1)})


def test_grid_values_include_stop():
    assert GridSpec({"delta": (0, 0.3, 0.1)}).values("delta") == pytest.approx([0, 0.1, 0.2, 0.3])


@pytest.mark.parametrize("times, g, fid", [((23, 1, 45), 1.0, 0.976124), ((15, 38, 95), 17.5, 0.963001)])
def test_detuning_sweep(times, g, fid):
    deltas = np.linspace(0, g, 21)
    records = sweep_detuning(times, g, deltas)
    assert records[0].fidelity == pytest.approx(fid, abs=5e-7)
    assert all(r.fidelity <= records[0].fidelity for r in records[1:])


@pytest.mark.parametrize("t1, cell, g, fid", [(23, (1, 45), 1.0, 0.976124), (15, (38, 95), 17.5, 0.963001)])
def test_surface(t1, cell, g, fid):
    t2 = [cell[0] - 1, cell[0], cell[0] + 1]
    t3 = [cell[1] - 2, cell[1], cell[1] + 2]
    m = scan_surface(t1, t2, t3, g)
    assert m.shape == (3, 3)
    assert m[1, 1] == pytest.approx(fid, abs=5e-7)
    assert ((m >= 0) & (m <= 1)).all()


def test_surface_csv_layout():
    text = search.surface_to_csv([1, 2], [3, 4, 5], np.arange(6.0).reshape(2, 3))
    assert text.splitlines() == ["t2_us\\t3_us,3,4,5", "1,0,1,2", "2,3,4,5"]


def test_csv_format_and_determinism():
    records = scan(GridSpec({"t3": (44, 46, 1)}), {"t1": 23, "t2": 1, "delta": 0, "g": 1.0})
    text = search.records_to_csv(records)
    assert text == search.records_to_csv(scan(GridSpec({"t3": (44, 46, 1)}), {"t1": 23, "t2": 1, "delta": 0, "g": 1.0}))
    lines = text.split("\n")
    assert lines[0] == "t1_us,t2_us,t3_us,g_rad_per_us,delta_rad_per_us,fidelity,success_prob"
    assert lines[2] == "23,1,45,1,0,0.976124194,0.629410989"
    assert "\r" not in text and text.endswith("\n")


def test_parallel_matches_serial():
    grid = GridSpec({"t1": (1, 3, 1), "t3": (1, 4, 1)})
    fixed = {"t2": 1, "delta": 0.1, "g": 1.0}
    assert search.records_to_csv(scan(grid, fixed, workers=2)) == search.records_to_csv(scan(grid, fixed))


@pytest.mark.parametrize("seed, g, floor", [((23, 1, 45), 1.0, 0.976124), ((15, 38, 95), 17.5, 0.963001)])
def test_refine_improves(seed, g, floor):
    rec = refine_optimum(seed, g)
    assert rec.fidelity >= floor
    assert rec.fidelity >= evaluate(seed, g).fidelity


def test_refine_is_stationary_at_a_maximum():
    first = refine_optimum((23, 1, 45), 1.0, tol=1e-4)
    again = refine_optimum(first.times, 1.0, radius=0.05, tol=1e-4)
    assert np.allclose(again.times, first.times, atol=1e-3)
    assert again.fidelity >= first.fidelity


@pytest.mark.parametrize("number", [1, 2, 3, 4])
def test_table_regression(number):
    """Every published row, to the printed rounding (6 decimals, 0.1 %)."""
    records = search.reproduce_table(number)
    g, delta = table_params(number)
    for rec, (t1, t2, t3, fid, pct) in zip(records, TABLES[number]):
        assert (rec.t1, rec.t2, rec.t3, rec.g, rec.delta) == (t1, t2, t3, g, delta)
        assert rec.fidelity == pytest.approx(fid, abs=5.01e-7), (t1, t2, t3)
        assert 100 * rec.success_prob == pytest.approx(pct, abs=0.0501), (t1, t2, t3)


def test_record_bounds():
    rec = evaluate((0, 0, 0), 1.0)
    assert isinstance(rec, ScanRecord)
    assert rec.fidelity == pytest.approx(1 / 6)
    assert rec.success_prob == 1
