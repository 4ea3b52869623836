import pytest
from hypothesis import HealthCheck, settings

import l3kit.exactla as exactla
from l3kit import _elim_py

settings.register_profile("l3kit", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("l3kit")


def _backends():
    out = [("python", _elim_py.row_echelon)]
    try:
        from l3kit._elim_ext import row_echelon
        out.append(("cython", row_echelon))
    except ImportError:
        pass
    return out


BACKENDS = _backends()


@pytest.fixture(params=[name for name, _ in BACKENDS])
def backend(request, monkeypatch):
    """Route exact linear algebra through each available elimination kernel."""
    fn = dict(BACKENDS)[request.param]
    monkeypatch.setattr(exactla, "row_echelon", fn)
    return request.param
