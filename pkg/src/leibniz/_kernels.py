"""Numeric integration kernels.

Two independent implementations of the same fixed-step RK4 and adaptive
Dormand-Prince 5(4) loops:

* scalar-loop kernels compiled with numba ``@njit`` (used by default), and
* a vectorized pure-numpy fallback.

The fallback is selected when the environment variable ``LEIBNIZ_NO_NUMBA``
is set to a non-empty value, or when numba is unavailable.  Right-hand sides
arrive as flat polynomial tables: ``coeffs[t]`` and integer exponent rows
``expts[t, :]`` for term ``t``, with component ``i`` owning the slice
``offsets[i]:offsets[i + 1]``.

Status codes returned by every kernel:
    0  completed
    1  max_steps exhausted before reaching t_end
    2  non-finite state encountered (blow-up)
    3  adaptive step size underflow
"""

from __future__ import annotations

import math
import os

import numpy as np

try:  # pragma: no cover - exercised implicitly by kernel selection
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    njit = None
    NUMBA_AVAILABLE = False

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_NONFINITE = 2
STATUS_UNDERFLOW = 3

# Dormand-Prince 5(4) tableau
_DP_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
# 5th-order weights (row 7 of A doubles as b); error weights b5 - b4
_DP_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_SAFETY = 0.9


def use_numba() -> bool:
    """True when the compiled kernels should be used for this call."""
    return NUMBA_AVAILABLE and not os.environ.get("LEIBNIZ_NO_NUMBA")


# -- pure-numpy implementation ---------------------------------------------------


def eval_rhs_numpy(coeffs, expts, offsets, y):
    """Evaluate all rhs components at one state, vectorized over terms."""
    if coeffs.shape[0] == 0:
        return np.zeros(offsets.shape[0] - 1)
    terms = coeffs * np.prod(y[np.newaxis, :] ** expts, axis=1)
    d = offsets.shape[0] - 1
    out = np.empty(d)
    for i in range(d):
        out[i] = terms[offsets[i] : offsets[i + 1]].sum()
    return out


def rk4_numpy(coeffs, expts, offsets, y0, t_end, n_steps):
    d = y0.shape[0]
    h = t_end / n_steps
    times = np.empty(n_steps + 1)
    states = np.empty((n_steps + 1, d))
    times[0] = 0.0
    states[0] = y0
    y = y0.copy()
    for step in range(n_steps):
        k1 = eval_rhs_numpy(coeffs, expts, offsets, y)
        k2 = eval_rhs_numpy(coeffs, expts, offsets, y + 0.5 * h * k1)
        k3 = eval_rhs_numpy(coeffs, expts, offsets, y + 0.5 * h * k2)
        k4 = eval_rhs_numpy(coeffs, expts, offsets, y + h * k3)
        y_new = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y_new)):
            # abort, keeping the last finite state
            return times[: step + 1], states[: step + 1], step, 0, STATUS_NONFINITE
        y = y_new
        times[step + 1] = (step + 1) * h
        states[step + 1] = y
    return times, states, n_steps, 0, STATUS_OK


def dp54_numpy(coeffs, expts, offsets, y0, t_end, h_init, abs_tol, rel_tol, max_steps):
    d = y0.shape[0]
    times = np.empty(max_steps + 1)
    states = np.empty((max_steps + 1, d))
    times[0] = 0.0
    states[0] = y0
    n = 1
    t = 0.0
    y = y0.copy()
    h = min(h_init, t_end)
    accepted = 0
    rejected = 0
    a = [np.array(row) for row in _DP_A]
    e = np.array(_DP_E)
    k = np.empty((7, d))
    k[0] = eval_rhs_numpy(coeffs, expts, offsets, y)
    if not np.all(np.isfinite(k[0])):
        return times[:n], states[:n], accepted, rejected, STATUS_NONFINITE
    steps = 0
    while t < t_end:
        if steps >= max_steps:
            return times[:n], states[:n], accepted, rejected, STATUS_MAX_STEPS
        steps += 1
        if h < 1e-14 * max(1.0, abs(t)):
            return times[:n], states[:n], accepted, rejected, STATUS_UNDERFLOW
        h = min(h, t_end - t)
        for s in range(1, 7):
            ys = y + h * (a[s - 1][np.newaxis, :] @ k[:s]).ravel()
            k[s] = eval_rhs_numpy(coeffs, expts, offsets, ys)
        y5 = ys  # stage 7 state uses the 5th-order weights (row 6 of A)
        err_vec = h * (e @ k)
        finite = np.all(np.isfinite(y5)) and np.all(np.isfinite(err_vec))
        if finite:
            scale = abs_tol + rel_tol * np.abs(y5)
            err = float(np.max(np.abs(err_vec) / scale))
        else:
            err = math.inf
        if err <= 1.0:
            t = t + h
            y = y5
            k[0] = k[6]  # first-same-as-last
            times[n] = t
            states[n] = y
            n += 1
            accepted += 1
            factor = _MAX_FACTOR if err == 0.0 else _SAFETY * err ** (-0.2)
        else:
            rejected += 1
            factor = max(_MIN_FACTOR, _SAFETY * err ** (-0.2)) if math.isfinite(err) else _MIN_FACTOR
        h = h * min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
    return times[:n], states[:n], accepted, rejected, STATUS_OK


# -- numba implementation ----------------------------------------------------------

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _eval_rhs_nb(coeffs, expts, offsets, y, out):  # pragma: no cover - compiled
        d = offsets.shape[0] - 1
        for i in range(d):
            acc = 0.0
            for t in range(offsets[i], offsets[i + 1]):
                term = coeffs[t]
                for kk in range(y.shape[0]):
                    p = expts[t, kk]
                    v = y[kk]
                    while p > 0:
                        term *= v
                        p -= 1
                acc += term
            out[i] = acc

    @njit(cache=True)
    def rk4_numba(coeffs, expts, offsets, y0, t_end, n_steps):  # pragma: no cover
        d = y0.shape[0]
        h = t_end / n_steps
        times = np.empty(n_steps + 1)
        states = np.empty((n_steps + 1, d))
        times[0] = 0.0
        states[0] = y0
        y = y0.copy()
        k1 = np.empty(d)
        k2 = np.empty(d)
        k3 = np.empty(d)
        k4 = np.empty(d)
        tmp = np.empty(d)
        for step in range(n_steps):
            _eval_rhs_nb(coeffs, expts, offsets, y, k1)
            for i in range(d):
                tmp[i] = y[i] + 0.5 * h * k1[i]
            _eval_rhs_nb(coeffs, expts, offsets, tmp, k2)
            for i in range(d):
                tmp[i] = y[i] + 0.5 * h * k2[i]
            _eval_rhs_nb(coeffs, expts, offsets, tmp, k3)
            for i in range(d):
                tmp[i] = y[i] + h * k3[i]
            _eval_rhs_nb(coeffs, expts, offsets, tmp, k4)
            ok = True
            for i in range(d):
                tmp[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                if not np.isfinite(tmp[i]):
                    ok = False
            if not ok:
                # abort, keeping the last finite state
                return times[: step + 1], states[: step + 1], step, 0, STATUS_NONFINITE
            for i in range(d):
                y[i] = tmp[i]
            times[step + 1] = (step + 1) * h
            states[step + 1] = y
        return times, states, n_steps, 0, STATUS_OK

    @njit(cache=True)
    def dp54_numba(
        coeffs, expts, offsets, y0, t_end, h_init, abs_tol, rel_tol, max_steps
    ):  # pragma: no cover - compiled
        d = y0.shape[0]
        times = np.empty(max_steps + 1)
        states = np.empty((max_steps + 1, d))
        times[0] = 0.0
        states[0] = y0
        n = 1
        t = 0.0
        y = y0.copy()
        h = h_init if h_init < t_end else t_end
        accepted = 0
        rejected = 0
        aa = np.zeros((6, 6))
        aa[0, 0] = 0.2
        aa[1, 0] = 3.0 / 40.0
        aa[1, 1] = 9.0 / 40.0
        aa[2, 0] = 44.0 / 45.0
        aa[2, 1] = -56.0 / 15.0
        aa[2, 2] = 32.0 / 9.0
        aa[3, 0] = 19372.0 / 6561.0
        aa[3, 1] = -25360.0 / 2187.0
        aa[3, 2] = 64448.0 / 6561.0
        aa[3, 3] = -212.0 / 729.0
        aa[4, 0] = 9017.0 / 3168.0
        aa[4, 1] = -355.0 / 33.0
        aa[4, 2] = 46732.0 / 5247.0
        aa[4, 3] = 49.0 / 176.0
        aa[4, 4] = -5103.0 / 18656.0
        aa[5, 0] = 35.0 / 384.0
        aa[5, 1] = 0.0
        aa[5, 2] = 500.0 / 1113.0
        aa[5, 3] = 125.0 / 192.0
        aa[5, 4] = -2187.0 / 6784.0
        aa[5, 5] = 11.0 / 84.0
        ee = np.empty(7)
        ee[0] = 71.0 / 57600.0
        ee[1] = 0.0
        ee[2] = -71.0 / 16695.0
        ee[3] = 71.0 / 1920.0
        ee[4] = -17253.0 / 339200.0
        ee[5] = 22.0 / 525.0
        ee[6] = -1.0 / 40.0
        k = np.empty((7, d))
        ys = np.empty(d)
        _eval_rhs_nb(coeffs, expts, offsets, y, k[0])
        for i in range(d):
            if not np.isfinite(k[0, i]):
                return times[:n], states[:n], accepted, rejected, STATUS_NONFINITE
        steps = 0
        while t < t_end:
            if steps >= max_steps:
                return times[:n], states[:n], accepted, rejected, STATUS_MAX_STEPS
            steps += 1
            lim = 1.0 if t > -1.0 and t < 1.0 else abs(t)
            if h < 1e-14 * lim:
                return times[:n], states[:n], accepted, rejected, STATUS_UNDERFLOW
            if h > t_end - t:
                h = t_end - t
            for s in range(1, 7):
                for i in range(d):
                    acc = 0.0
                    for j in range(s):
                        acc += aa[s - 1, j] * k[j, i]
                    ys[i] = y[i] + h * acc
                _eval_rhs_nb(coeffs, expts, offsets, ys, k[s])
            err = 0.0
            finite = True
            for i in range(d):
                if not np.isfinite(ys[i]):
                    finite = False
                ev = 0.0
                for s in range(7):
                    ev += ee[s] * k[s, i]
                ev *= h
                if not np.isfinite(ev):
                    finite = False
                if finite:
                    sc = abs_tol + rel_tol * abs(ys[i])
                    r = abs(ev) / sc
                    if r > err:
                        err = r
            if finite and err <= 1.0:
                t = t + h
                for i in range(d):
                    y[i] = ys[i]
                    k[0, i] = k[6, i]
                times[n] = t
                states[n] = y
                n += 1
                accepted += 1
                factor = _MAX_FACTOR if err == 0.0 else _SAFETY * err ** (-0.2)
            else:
                rejected += 1
                factor = _MIN_FACTOR
                if finite:
                    f2 = _SAFETY * err ** (-0.2)
                    if f2 > factor:
                        factor = f2
            if factor > _MAX_FACTOR:
                factor = _MAX_FACTOR
            if factor < _MIN_FACTOR:
                factor = _MIN_FACTOR
            h = h * factor
        return times[:n], states[:n], accepted, rejected, STATUS_OK

else:  # pragma: no cover
    rk4_numba = None
    dp54_numba = None
