import numpy as np
import pytest

from steersim.errors import ContractError, DomainError
from steersim.sweeps import Axis, SweepTable, default_threads, grid_points, ordered_map


def test_axis_values():
    ax = Axis("tau", 0.0, 10.0, 5)
    assert np.allclose(ax.values(), [0.0, 2.5, 5.0, 7.5, 10.0])


@pytest.mark.parametrize("lo,hi,steps", [(0.0, 1.0, 1), (1.0, 0.0, 5), (1.0, 1.0, 5)])
def test_axis_rejects_degenerate_ranges(lo, hi, steps):
    with pytest.raises(DomainError):
        Axis("x", lo, hi, steps)


def test_table_rejects_ragged_rows():
    with pytest.raises(ContractError):
        SweepTable(("a", "b"), ((1.0, 2.0), (3.0,)))


def test_table_column_lookup():
    table = SweepTable(("a", "b"), ((1.0, 2.0), (3.0, 4.0)))
    assert np.array_equal(table.column("b"), [2.0, 4.0])
    with pytest.raises(DomainError):
        table.column("c")


def test_csv_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(7)
    rows = tuple(tuple(rng.normal() for _ in range(3)) for _ in range(20))
    table = SweepTable(("x", "y", "z"), rows)
    path = tmp_path / "out.csv"
    table.write_csv(path)
    back = SweepTable.read_csv(path)
    assert back.columns == table.columns
    assert back.rows == table.rows  # repr round-trips floats bit-for-bit


def test_csv_rendering_is_stable(tmp_path):
    table = SweepTable(("x",), ((0.1,), (1e-300,), (12345.6789,)))
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    table.write_csv(p1)
    SweepTable.read_csv(p1).write_csv(p2)
    assert p1.read_bytes() == p2.read_bytes()
    text = p1.read_text(encoding="utf-8")
    assert text.endswith("\n") and "\r" not in text


def test_read_csv_rejects_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ContractError):
        SweepTable.read_csv(path)


def test_grid_points_row_major_order():
    pts = grid_points([Axis("a", 0.0, 1.0, 2), Axis("b", 0.0, 2.0, 3)])
    assert pts == [(0.0, 0.0), (0.0, 1.0), (0.0, 2.0),
                   (1.0, 0.0), (1.0, 1.0), (1.0, 2.0)]
    assert all(isinstance(x, float) for pt in pts for x in pt)


def test_ordered_map_preserves_order_across_pool_sizes():
    items = list(range(50))
    expect = [x * x for x in items]
    for threads in (1, 2, 8):
        assert ordered_map(lambda x: x * x, items, threads) == expect


def test_default_threads_positive():
    assert default_threads() >= 1
