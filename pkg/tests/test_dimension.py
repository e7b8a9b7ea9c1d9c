import math

import pytest

from cfdim import dimension as dm
from cfdim.cf import LinearIndex
from cfdim.errors import ValidationError


@pytest.fixture(scope="module")
def solver():
    return dm.PressureSolver()


def test_parse_descriptors():
    assert dm.parse_psi("poly(2, 3)") == dm.Poly(2.0, 3.0)
    assert dm.parse_psi("exp(3)") == dm.Exponential(3.0)
    assert dm.parse_psi("dexp(1.5e0)") == dm.DoubleExponential(1.5)
    for bad in ("foo(1)", "poly(1)", "exp(0.5)", "poly(0.5,1)"):
        with pytest.raises(ValidationError):
            dm.parse_psi(bad)


def test_closed_form_exponents():
    ex = dm.exponents_from_psi(dm.GrowthSpec(dm.Exponential(3.0), LinearIndex(2, 0)), 50)
    assert (ex.B, ex.b, ex.exact) == (3.0, 1.0, True)
    ex = dm.exponents_from_psi(dm.GrowthSpec(dm.DoubleExponential(5.0)), 50)
    assert ex.B == math.inf and ex.b == 5.0
    ex = dm.exponents_from_psi(dm.GrowthSpec(dm.Poly(1, 1)), 50)
    assert ex.B == 1.0
    # trace records finite-horizon estimates for every N' in [10, N]
    assert [row[0] for row in ex.trace] == list(range(10, 51))
    with pytest.raises(ValidationError):
        dm.exponents_from_psi(dm.GrowthSpec(dm.Poly(1, 1)), 5)


def test_table_exponents(tmp_path):
    path = tmp_path / "psi.csv"
    rows = ["n,psi"] + [f"{n},{4 ** n}" for n in range(1, 61)]
    path.write_text("\n".join(rows) + "\n")
    spec = dm.GrowthSpec(dm.parse_psi(f"table:{path}"))
    ex = dm.exponents_from_psi(spec, 60)
    assert not ex.exact
    assert ex.B == pytest.approx(4.0, rel=1e-12)
    with pytest.raises(ValidationError):
        dm.exponents_from_psi(spec, 61)


def test_table_huge_values(tmp_path):
    # psi(n) = e^(3^(n^2)) is far beyond float range; parsed through mpmath
    import mpmath

    path = tmp_path / "psi.csv"
    lines = ["n,psi"]
    for n in range(1, 13):
        lines.append(f"{n},{mpmath.nstr(mpmath.exp(mpmath.mpf(3) ** (n * n)), 30)}")
    path.write_text("\n".join(lines) + "\n")
    ex = dm.exponents_from_psi(dm.GrowthSpec(dm.parse_psi(f"table:{path}")), 12)
    assert ex.B == math.inf
    assert ex.b == pytest.approx(3.0, rel=1e-6)


def test_table_log_column_and_skips(tmp_path):
    path = tmp_path / "psi.csv"
    path.write_text("n,log_psi\n" + "".join(f"{n},{0.5}\n" for n in range(1, 21)))
    ex = dm.exponents_from_psi(dm.GrowthSpec(dm.parse_psi(f"table:{path}")), 20)
    assert ex.skipped == 20 and ex.B == pytest.approx(1.0, abs=0.03)


def test_table_errors(tmp_path):
    path = tmp_path / "psi.csv"
    path.write_text("n,psi\n1,2\n3,4\n")
    with pytest.raises(ValidationError):
        dm.parse_psi(f"table:{path}")
    path.write_text("n,psi\n1,0.5\n")
    with pytest.raises(ValidationError):
        dm.parse_psi(f"table:{path}")


def test_dispatch_closed_cases(solver):
    assert dm.dim_Ef(dm.Exponents(1.0, 1.0), solver).value == 1.0
    r = dm.dim_Ef(dm.Exponents(math.inf, 3.0), solver)
    assert (r.case, r.value) == (dm.B_INFINITE, 0.25)
    r = dm.dim_Ef(dm.Exponents(math.inf, math.inf), solver)
    assert (r.case, r.value) == (dm.B_INFINITE_B_INFINITE, 0.0)
    assert dm.dim_E1(1.0).value == 1.0
    assert dm.dim_E1(math.inf, 2.0).value == 1 / 3
    with pytest.raises(ValidationError):
        dm.dim_Ef(dm.Exponents(0.5, 1.0))
    with pytest.raises(ValidationError):
        dm.dim_Em(math.inf, 2)


def test_dispatch_total(solver):
    for B, b in [(1.0, 1.0), (2.0, 1.0), (math.inf, 2.0), (math.inf, math.inf)]:
        r = dm.dim_Ef(dm.Exponents(B, b), solver)
        assert r.case in dm.CASES and 0.0 <= r.value <= 1.0


def test_finite_case(solver):
    r = dm.dim_Ef(dm.Exponents(2.0, 1.0), solver)
    assert r.case == dm.B_FINITE and 0.5 <= r.value <= 1.0
    assert "raw_estimate" in r.diagnostics


def test_E1_reduces_to_Em1(solver):
    assert dm.dim_E1(2.0, 1.0, solver).value == dm.dim_Em(2.0, 1, solver).value


@pytest.mark.parametrize("B", [2.0, 8.0])
def test_E1_below_Ef(solver, B):
    # the E_1 weight s exceeds 2s - 1 for s < 1, so its root is smaller
    e1 = dm.dim_E1(B, 1.0, solver)
    ef = dm.dim_Ef(dm.Exponents(B, 1.0), solver)
    assert 0.5 < e1.value < 1
    assert e1.value < ef.value


def test_Em_cells_nondecreasing_in_m(solver):
    ests = [solver.estimate(2.0, LinearIndex(1, 0), m=m) for m in range(1, 6)]
    for key in ests[0].tableau:
        vals = [e.tableau[key] for e in ests]
        assert all(b >= a - 1e-11 for a, b in zip(vals, vals[1:])), key


def test_Em_extrapolated_ordering_within_bands(solver):
    res = [dm.dim_Em(2.0, m, solver) for m in range(1, 6)]
    for a, b in zip(res, res[1:]):
        slack = a.diagnostics["uncertainty"] + b.diagnostics["uncertainty"]
        assert b.value >= a.value - slack


def test_Ef_nonincreasing_in_B(solver):
    vals = [dm.dim_Ef(dm.Exponents(B, 1.0), solver).value for B in (1.2, 2, 4, 8, 16, 64)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
