from fractions import Fraction

import pytest

import soficlab


def test_witt_certificate_is_exact():
    cert = soficlab.witt_certificate(2, 50)
    assert cert["defect_ratio"] == Fraction(4, 101)
    assert cert["defect_ratio"] <= soficlab.witt_defect_bound(2, 50)
    assert cert["element_ranks"][-2] == Fraction(98, 101)
    assert cert["element_ranks"][0] == Fraction(100, 101)
    assert cert["carrier_dim"] == 101


def test_prime_field():
    cert = soficlab.witt_certificate(1, 3, field="fp:7")
    assert cert["field"] == {"Fp": 7}


def test_virasoro_takes_exact_weights():
    a = soficlab.virasoro_certificate(2, 4, 3, h=1, c=Fraction(1))
    b = soficlab.virasoro_certificate(2, 4, 3, h="1", c="1")
    assert a["defect_ratio"] == b["defect_ratio"] == Fraction(6, 7)
    with pytest.raises(TypeError):
        soficlab.virasoro_certificate(2, 4, 3, h=0.5)


def test_verma_dim():
    assert soficlab.verma_dim(3, 2) == 10


def test_heisenberg_growth():
    assert soficlab.pbw_dims("heisenberg", 4) == [1, 3, 7, 13, 22]
    rows = soficlab.growth_table("heisenberg", 2, 4)
    assert [r["m"] for r in rows] == [3, 4]
    assert rows[0]["ratio"] == Fraction(10, 13)
    assert all(r["certified_eps"] <= r["ratio"] for r in rows)


def test_uea_report():
    assert soficlab.uea_report("abelian:1", 2) == {
        "monomial_count": 3,
        "rank": 3,
        "injective": True,
        "degree": 2,
        "field": "Q",
    }
    assert soficlab.uea_report("abelian:1", 2, field="fp:2")["rank"] == 2
    assert soficlab.uea_report("sl2", 2)["rank"] == 10


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        soficlab.uea_report("e8", 2)
    with pytest.raises(soficlab.SizeCapExceeded):
        soficlab.uea_report("sl2", 13)
