"""Array-level wrappers around the compiled loops in ``_ckernels``."""
import numpy as np

from . import _ckernels as _c

NAME = "cython"


def _flat(a):
    a = np.ascontiguousarray(a)
    if a.dtype == np.complex128:
        return a.reshape(-1).view(np.float64), 2
    return a.astype(np.float64, copy=False).reshape(-1), 1


def _weights(c):
    return np.ascontiguousarray(c, dtype=np.float64).reshape(-1)


def etd_coefficients(y, tau):
    y = np.ascontiguousarray(y, dtype=np.float64)
    outs = [np.empty_like(y) for _ in range(6)]
    _c.etd_coefficients(y.reshape(-1), float(tau), *[o.reshape(-1) for o in outs])
    return tuple(outs)


def _prepare_out(out, shape, dtype):
    if out is None:
        return np.empty(shape, dtype=dtype)
    if not out.flags.c_contiguous or out.dtype != dtype:
        raise ValueError("out must be a C-contiguous array of the result dtype")
    return out


def combine2(c1, x1, c2, x2, out=None):
    dtype = np.result_type(x1, x2)
    out = _prepare_out(out, np.shape(x1), dtype)
    fx1, stride = _flat(np.asarray(x1, dtype=dtype))
    fx2, _ = _flat(np.asarray(x2, dtype=dtype))
    fout, _ = _flat(out)
    _c.combine2(_weights(c1), fx1, _weights(c2), fx2, fout, stride)
    return out


def combine4(c0, x0, c1, x1, c2, x2, c3, x3, out=None):
    dtype = np.result_type(x0, x1, x2, x3)
    out = _prepare_out(out, np.shape(x0), dtype)
    xs = [_flat(np.asarray(x, dtype=dtype))[0] for x in (x0, x1, x2, x3)]
    fout, stride = _flat(out)
    _c.combine4(_weights(c0), xs[0], _weights(c1), xs[1], _weights(c2), xs[2],
                _weights(c3), xs[3], fout, stride)
    return out


def _pair(u, v, fu, fv):
    # outputs are written through flat views, so they must not be copies
    if not (fu.flags.c_contiguous and fv.flags.c_contiguous):
        raise ValueError("reaction outputs must be C-contiguous")
    return (np.ascontiguousarray(u, dtype=np.float64).reshape(-1),
            np.ascontiguousarray(v, dtype=np.float64).reshape(-1),
            fu.reshape(-1), fv.reshape(-1))


def gray_scott(u, v, F, K, fu, fv):
    uf, vf, _, _ = _pair(u, v, fu, fv)
    _c.gray_scott(uf, vf, float(F), float(K), fu.reshape(-1), fv.reshape(-1))


def schnakenberg(u, v, gamma, a, b, fu, fv):
    uf, vf, _, _ = _pair(u, v, fu, fv)
    _c.schnakenberg(uf, vf, float(gamma), float(a), float(b), fu.reshape(-1), fv.reshape(-1))


def fitzhugh_nagumo(u, v, mu, eps, beta, gamma, delta, fu, fv):
    uf, vf, _, _ = _pair(u, v, fu, fv)
    _c.fitzhugh_nagumo(uf, vf, float(mu), float(eps), float(beta), float(gamma), float(delta),
                       fu.reshape(-1), fv.reshape(-1))


def gierer_meinhardt(u, v, eps, mu, fu, fv):
    uf, vf, _, _ = _pair(u, v, fu, fv)
    return int(_c.gierer_meinhardt(uf, vf, float(eps), float(mu), fu.reshape(-1), fv.reshape(-1)))
