import math

import pytest

import flab

GAUSS = flab.expr("gaussian", a=1)


def test_version():
    assert flab.__version__ == "0.1.0"


def test_gaussian_transform():
    for y in (0.0, 0.5, 2.0):
        v = flab.fourier(GAUSS, y)
        assert abs(v - math.sqrt(math.pi) * math.exp(-y * y / 4)) < 1e-9
    u = flab.fourier(GAUSS, 0.0, convention="unitary")
    assert abs(u - math.sqrt(0.5)) < 1e-9


def test_convolve_and_inverse():
    # e^{-x²} * e^{-x²} at 0 is sqrt(pi/2)
    assert abs(flab.convolve(GAUSS, GAUSS, 0.0) - math.sqrt(math.pi / 2)) < 1e-9
    fhat = flab.expr("scalar", c=2 * math.pi, inner={"kind": "poisson", "u": 1})
    assert abs(flab.inverse_symmetric(fhat, 1.0) - math.exp(-1.0)) < 1e-5


def test_kernels():
    assert abs(flab.kernel("poisson", 1.0, 0.0) - 1 / math.pi) < 1e-15
    assert flab.kernel("fejer", 2.0, 0.0, hat=True) == pytest.approx(1.0)
    with pytest.raises(flab.FlabError):
        flab.kernel("poisson", -1.0, 0.0)


def test_errors():
    with pytest.raises(flab.FlabError):
        flab.fourier("{bad", 0.0)


def test_verify_suite():
    ids = flab.check_ids()
    assert "eq7.gaussian" in ids and ids == sorted(ids)
    report = flab.verify("kernels")
    assert report["summary"]["total"] == len(report["checks"]) > 0
    assert report["summary"]["passed"] == report["summary"]["total"]
    assert {"id", "citation", "residual", "tolerance", "pass", "runtime_ms"} <= set(report["checks"][0])
