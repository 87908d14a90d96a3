import numpy as np
import pytest
from scipy.linalg import expm


def dense_ops(cutoff):
    """Dense (a, b) on the (cutoff+1)^2 lattice, index n_a*(cutoff+1) + n_b."""
    d = cutoff + 1
    lower = np.diag(np.sqrt(np.arange(1, d)), 1)
    eye = np.eye(d)
    return np.kron(lower, eye), np.kron(eye, lower)


def dense_expectation(state, op):
    v = state.amplitudes.reshape(-1)
    return complex(np.vdot(v, op @ v))


def beamsplitter_state(n, m, r):
    """U|n,m> via expm of the beamsplitter generator on a lattice closed under it."""
    total = n + m
    a, b = dense_ops(total)
    theta, phi = np.arctan(abs(r)), np.angle(r)
    gen = theta * (np.exp(1j * phi) * a.conj().T @ b - np.exp(-1j * phi) * a @ b.conj().T)
    v = np.zeros((total + 1) ** 2, dtype=complex)
    v[n * (total + 1) + m] = 1.0
    return (expm(gen) @ v).reshape(total + 1, total + 1)


def squeezer_state(M, N, xi, cutoff):
    """V_xi|M,N> via expm of the two-mode squeezing generator, truncated at ``cutoff``.

    The generator conserves n_a - n_b, so it is exponentiated on that band only.
    """
    s, theta = np.arctanh(abs(xi)), np.angle(xi)
    shift = M - N
    # band states |k + shift, k> (shift >= 0) or |k, k - shift>
    idx = [(k + max(shift, 0), k - min(shift, 0)) for k in range(cutoff + 1)]
    idx = [(i, j) for i, j in idx if i <= cutoff and j <= cutoff]
    pos = {p: t for t, p in enumerate(idx)}
    g = np.zeros((len(idx), len(idx)), dtype=complex)
    for (i, j), t in pos.items():
        # a+ b+ |i,j> = sqrt((i+1)(j+1)) |i+1,j+1>
        u = pos.get((i + 1, j + 1))
        if u is not None:
            amp = np.sqrt((i + 1) * (j + 1))
            g[u, t] += s * np.exp(1j * theta) * amp
            g[t, u] -= s * np.exp(-1j * theta) * amp
    v = np.zeros(len(idx), dtype=complex)
    v[pos[(M, N)]] = 1.0
    w = expm(g) @ v
    out = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for (i, j), t in pos.items():
        out[i, j] = w[t]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20121030)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
