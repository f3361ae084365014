"""Spectral dataset ingestion, L-values, and trace-formula assembly."""

import numpy as np
import pytest

from rsmoment.spectral import (MaassFormRecord, SpectralDataError,
                               first_moment_lhs, kuznetsov_sides,
                               load_dataset, lvalue)
from rsmoment.transforms import TestFunction

from conftest import cached_dataset


def test_dataset_loads_and_is_sorted():
    ds = cached_dataset()
    assert len(ds) == 35
    rs = [rec.r for rec in ds]
    assert rs == sorted(rs)
    assert ds.r_max == pytest.approx(30.4106788047)
    # Known small eigenvalues (Hejhal / Steil / LMFDB tables).
    assert rs[0] == pytest.approx(9.5336952614, abs=1e-6)
    assert rs[1] == pytest.approx(12.1730083247, abs=1e-6)
    assert rs[2] == pytest.approx(13.7797513519, abs=1e-6)


def test_dataset_rejects_hecke_violation(tmp_path):
    ds = cached_dataset()
    rec = ds.records[0]
    fields = ["%.10f" % rec.r, "odd", "%.6e" % rec.rho1_sq]
    lams = list(rec.lambdas[2:])
    lams[2] += 1e-3   # corrupt lambda(4): breaks lambda(2)^2 = lambda(4)+1
    fields += ["%.10f" % v for v in lams]
    p = tmp_path / "bad.msf"
    p.write_text(" ".join(fields) + "\n")
    with pytest.raises(SpectralDataError, match="line 1"):
        load_dataset(str(p))


def test_dataset_warns_when_incomplete(tmp_path):
    ds = cached_dataset()
    lines = []
    for rec in ds.records[::3]:   # keep only a third of the forms
        fields = ["%.10f" % rec.r, "even" if rec.parity == 0 else "odd",
                  "%.6e" % rec.rho1_sq]
        fields += ["%.10f" % v for v in rec.lambdas[2:]]
        lines.append(" ".join(fields))
    p = tmp_path / "sparse.msf"
    p.write_text("\n".join(lines) + "\n")
    with pytest.warns(UserWarning, match="counting function"):
        load_dataset(str(p))


def test_lambda_accessor_bounds():
    rec = cached_dataset().records[0]
    assert rec.lam(1) == 1.0
    with pytest.raises(SpectralDataError):
        rec.lam(65)


def test_lvalue_frozen_oracle_and_symmetries():
    ds = cached_dataset()
    even = next(rec for rec in ds if rec.parity == 0)
    v0 = lvalue(even, 0.0)
    assert abs(v0.imag) < 1e-12
    assert v0.real == pytest.approx(3.4107486962372358, rel=1e-6)
    v = lvalue(even, 0.5)
    assert v == pytest.approx(
        complex(3.007977726836116, -1.2450387740035822), rel=1e-6)
    # Real coefficients: L(1/2 - it) is the conjugate of L(1/2 + it).
    assert lvalue(even, -0.5) == pytest.approx(np.conj(v), rel=1e-10)


def test_lvalue_odd_central_zero():
    ds = cached_dataset()
    odd = next(rec for rec in ds if rec.parity == 1)
    assert lvalue(odd, 0.0) == 0.0


def test_kuznetsov_both_sides_close():
    ds = cached_dataset()
    hf = TestFunction(12.0)
    rep = kuznetsov_sides(ds, 1, 1, hf)
    spec = rep.spectral_total()
    geom = rep.geometric_total()
    assert spec == pytest.approx(8.9358, rel=1e-3)
    assert abs(spec - geom) <= 1e-3 * abs(spec) + sum(rep.tails.values())


def test_kuznetsov_coverage_warning():
    ds = cached_dataset()
    with pytest.warns(UserWarning, match="truncated"):
        kuznetsov_sides(ds, 1, 1, TestFunction(40.0), q_max=5)


def test_first_moment_lhs_frozen():
    ds = cached_dataset()
    hf = TestFunction(12.0)
    rep = first_moment_lhs(ds, 1, 0.0, hf)
    assert abs(rep.total().imag) < 1e-9
    assert rep.total().real == pytest.approx(22.81365362, rel=1e-6)
    assert rep.tails["lvalue_truncation"] < 0.1


def test_first_moment_invalid_n():
    ds = cached_dataset()
    with pytest.raises(SpectralDataError):
        first_moment_lhs(ds, 0, 0.0, TestFunction(12.0))
