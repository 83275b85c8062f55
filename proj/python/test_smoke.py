import json

import pytest

import ramcount


def test_discriminant_counts():
    assert ramcount.valid_discriminants(3, 9)[:5] == [1, 2, 4, 5, 7]
    assert ramcount.count_by_discriminant(3, 9, 7) == 162


def test_polygons_and_orbits():
    assert ramcount.polygons(3, 9, 7) == ["1,7;9,0", "1,7;3,3;9,0"]
    assert ramcount.count_by_polygon(3, 9, "1,7;3,3;9,0") == 108
    orbits = ramcount.invariants(3, 9, "1,10;3,3;9,0")
    assert [o["count"] for o in orbits] == [162, 162]
    assert orbits[0]["members"] == ["1,1|1,0,0,1", "1,2|2,0,0,1"]


def test_polynomial_invariants():
    f = [3, 9, 0, 6, 0, 0, 0, 0, 0]  # x^9 + 6x^3 + 9x + 3
    assert ramcount.ram_polygon_of(3, f) == "1,10;3,3;9,0"
    assert ramcount.residual_tuple_of(3, f) == "1,1|1,0,0,1"


def test_errors():
    with pytest.raises(ramcount.OreViolation):
        ramcount.count_by_discriminant(3, 9, 3)
    with pytest.raises(ramcount.InfeasiblePolygon):
        ramcount.count_by_polygon(3, 9, "1,7;3,5;9,0")
    with pytest.raises(ramcount.RamcountError):
        ramcount.polygons(4, 2, 1)


def test_cli_in_process():
    code, out, _ = ramcount.run(["table", "--p", "2", "--n", "4", "--format", "json"])
    assert code == 0
    rows = json.loads(out)["rows"]
    assert sum(int(r["count"]) for r in rows) == 4 + 8 + 16 + 16 + 16 + 32
