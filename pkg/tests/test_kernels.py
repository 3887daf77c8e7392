import numpy as np
import pytest

from fracrd import _kernels
from fracrd.etd import StepperContext
from fracrd.models import fitzhugh_nagumo, gierer_meinhardt, gray_scott, schnakenberg3d

BACKENDS = _kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")


def test_default_backend_listed():
    assert _kernels.BACKEND in BACKENDS
    assert _kernels.get_backend() is _kernels.backend
    with pytest.raises(ValueError):
        _kernels.get_backend("fortran")


def test_env_forces_numpy(monkeypatch):
    import importlib
    monkeypatch.setenv("FRACRD_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(_kernels)
        assert mod.BACKEND == "numpy"
    finally:
        monkeypatch.delenv("FRACRD_PURE_PYTHON")
        importlib.reload(_kernels)


@needs_both
def test_compiled_backend_is_default():
    assert BACKENDS[0] == "cython"


def pair():
    return _kernels.get_backend("cython"), _kernels.get_backend("numpy")


@needs_both
def test_coefficients_bitwise(rng):
    c, n = pair()
    y = np.concatenate([[0.0, 4.0], rng.random(500) * 10.0 ** rng.integers(-6, 6, 500)])
    for a, b in zip(c.etd_coefficients(y, 0.3), n.etd_coefficients(y, 0.3)):
        assert np.array_equal(a, b)


@needs_both
@pytest.mark.parametrize("dtype", [float, complex])
def test_combine_bitwise(dtype, rng):
    c, n = pair()
    shape = (17, 9)
    w = [rng.random(shape) for _ in range(4)]
    x = [rng.standard_normal(shape).astype(dtype) * (1 + 1j if dtype is complex else 1) for _ in range(4)]
    assert np.array_equal(c.combine2(w[0], x[0], w[1], x[1]), n.combine2(w[0], x[0], w[1], x[1]))
    args = [v for pair_ in zip(w, x) for v in pair_]
    assert np.array_equal(c.combine4(*args), n.combine4(*args))
    out = np.empty(shape, dtype=dtype)
    assert c.combine4(*args, out=out) is out
    assert np.array_equal(out, n.combine4(*args))


@needs_both
def test_reactions_bitwise(rng):
    c, n = pair()
    u = rng.random((12, 12))
    v = rng.random((12, 12)) + 0.1
    cases = [("gray_scott", (0.03, 0.055)), ("schnakenberg", (1.0, 0.1, 0.9)),
             ("fitzhugh_nagumo", (0.1, 0.01, 0.5, 1.0, 0.0)), ("gierer_meinhardt", (0.04, 0.1))]
    for name, params in cases:
        outs = []
        for k in (c, n):
            fu, fv = np.empty_like(u), np.empty_like(u)
            getattr(k, name)(u, v, *params, fu, fv)
            outs.append((fu, fv))
        assert np.array_equal(outs[0][0], outs[1][0]), name
        assert np.array_equal(outs[0][1], outs[1][1]), name


@needs_both
def test_gm_bad_count_agrees():
    c, n = pair()
    u = np.ones(10)
    v = np.array([1, 0, -1, 2, np.nan, 1, 1, 1, 1, 1], dtype=float)
    counts = []
    for k in (c, n):
        counts.append(k.gierer_meinhardt(u, v, 0.04, 0.1, np.empty(10), np.empty(10)))
    assert counts == [3, 3]


@needs_both
def test_noncontiguous_output_rejected():
    c, _ = pair()
    u = np.ones((4, 4))
    with pytest.raises(ValueError):
        c.gray_scott(u, u, 0.03, 0.055, np.empty((4, 8))[:, ::2], np.empty((4, 4)))


@needs_both
@pytest.mark.parametrize("builder, N", [(gray_scott, 32), (fitzhugh_nagumo, 32),
                                        (gierer_meinhardt, 16), (schnakenberg3d, 8)])
def test_full_steps_bitwise(builder, N):
    m = builder()
    g = m.make_grid(N)
    results = []
    for name in ("cython", "numpy"):
        k = _kernels.get_backend(name)
        ctx = StepperContext(g, m, 0.1, kernels=k, reaction=m.reaction(g, k))
        arrays = m.initial_state(g).arrays
        for step in range(3):
            arrays = ctx.step(arrays, 0.1 * step, step)
        results.append(arrays)
    for a, b in zip(*results):
        assert np.array_equal(a, b)
