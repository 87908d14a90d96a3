"""Pure-numpy moment kernels.

Used when the compiled ``_kernels`` extension is unavailable, or when
``NGENT_PURE_PYTHON=1`` is set.
"""

import numpy as np


def _lowered(amps, s, t):
    """Return a^s b^t applied to ``amps``, on the (D-s, D-t) sub-lattice."""
    d = amps.shape[0]
    if s >= d or t >= d:
        return None
    out = amps[s:, t:]
    if s:
        i = np.arange(s, d)
        w = np.ones(d - s)
        for u in range(s):
            w *= i - u
        out = out * np.sqrt(w)[:, None]
    if t:
        j = np.arange(t, d)
        w = np.ones(d - t)
        for u in range(t):
            w *= j - u
        out = out * np.sqrt(w)[None, :]
    return out


def moment(amps, k, l, p, q):
    """<psi| a+^k a^l b+^p b^q |psi> as <a^k b^p psi | a^l b^q psi>."""
    left = _lowered(amps, k, p)
    right = _lowered(amps, l, q)
    if left is None or right is None:
        return 0j
    n = min(left.shape[0], right.shape[0])
    m = min(left.shape[1], right.shape[1])
    return complex(np.vdot(left[:n, :m], right[:n, :m]))


def moments(amps, monos):
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    out = np.empty(len(monos), dtype=np.complex128)
    for idx, (k, l, p, q) in enumerate(monos):
        out[idx] = moment(amps, int(k), int(l), int(p), int(q))
    return out
