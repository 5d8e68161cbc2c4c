"""Brute-force verification in the raw 2^(N1+N2+1)-dimensional product basis.

Nothing here reuses the collective-spin algebra: the Hamiltonian is
assembled spin by spin from elementary tensor products, evolved by full
eigendecomposition, and the bath ground state is found by enumeration.
Agreement with the analytic module is the package's keystone check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

MAX_BATH_SPINS = 14  # dimension guard: 2 * 2^14 = 32768


class OracleSizeError(ValueError):
    pass


def _check_size(n1: int, n2: int):
    if n1 + n2 > MAX_BATH_SPINS:
        raise OracleSizeError(
            f"bath sizes N1+N2={n1 + n2} exceed the oracle limit of "
            f"{MAX_BATH_SPINS} spins")


@dataclass(frozen=True)
class DenseHamiltonian:
    dimension: int
    matrix: np.ndarray
    n1: int
    n2: int


_SZ_HALF = np.diag([0.5, -0.5]).astype(complex)  # basis: index 0 = up
_SX = np.array([[0, 1], [1, 0]], dtype=complex)


def _embed(site_ops: dict[int, np.ndarray], n_sites: int) -> np.ndarray:
    """Tensor product over all sites, identity where no operator is given."""
    out = np.array([[1.0 + 0j]])
    for site in range(n_sites):
        out = np.kron(out, site_ops.get(site, np.eye(2, dtype=complex)))
    return out


def build_hamiltonian(config: SystemConfig) -> DenseHamiltonian:
    """Full Hamiltonian, site ordering: dimer qubit, bath-1 spins, bath-2 spins."""
    n1, n2 = config.bath1.N, config.bath2.N
    _check_size(n1, n2)
    n_sites = 1 + n1 + n2
    dim = 2 ** n_sites
    d = config.dimer

    proj = {1: np.diag([1.0, 0.0]).astype(complex),
            2: np.diag([0.0, 1.0]).astype(complex)}
    bath_sites = {1: range(1, 1 + n1), 2: range(1 + n1, 1 + n1 + n2)}
    params = {1: config.bath1, 2: config.bath2}

    H = d.J * _embed({0: _SX}, n_sites)
    for i in (1, 2):
        eps = d.epsilon1 if i == 1 else d.epsilon2
        H += eps * _embed({0: proj[i]}, n_sites)
        for k in bath_sites[i]:
            H += params[i].alpha * _embed({k: _SZ_HALF}, n_sites)
            H += params[i].gamma * _embed({0: proj[i], k: _SZ_HALF}, n_sites)
    q = config.correlation.q
    if q != 0.0:
        for k in bath_sites[1]:
            for l in bath_sites[2]:
                H += q * _embed({k: _SZ_HALF, l: _SZ_HALF}, n_sites)

    assert np.abs(H - H.conj().T).max() <= 1e-13 * max(1.0, np.abs(H).max())
    return DenseHamiltonian(dimension=dim, matrix=H, n1=n1, n2=n2)


def _bath_magnetizations(n1: int, n2: int):
    """m1, m2 for every bath basis index (bit set = spin down)."""
    idx = np.arange(2 ** (n1 + n2))
    down1 = np.zeros_like(idx)
    down2 = np.zeros_like(idx)
    for bit in range(n1 + n2):
        # bit 0 is the last site in the kron ordering (bath-2 end)
        site = n1 + n2 - 1 - bit
        v = (idx >> bit) & 1
        if site < n1:
            down1 += v
        else:
            down2 += v
    m1 = n1 / 2.0 - down1
    m2 = n2 / 2.0 - down2
    return m1, m2


def thermal_ensemble(config: SystemConfig) -> np.ndarray:
    """Probability of each bath z-configuration in the canonical state.

    Zero temperature returns the uniform mixture over the exact energy
    minimizers (the beta -> infinity limit of the canonical state).
    """
    n1, n2 = config.bath1.N, config.bath2.N
    m1, m2 = _bath_magnetizations(n1, n2)
    energy = (config.bath1.alpha * m1 + config.bath2.alpha * m2
              + config.correlation.q * m1 * m2)
    if config.thermal.is_zero_temperature:
        emin = energy.min()
        ground = energy <= emin + 1e-12 * max(1.0, abs(emin))
        probs = ground / ground.sum()
    else:
        logw = -config.thermal.beta * energy
        logw -= logw.max()
        probs = np.exp(logw)
        probs /= probs.sum()
    return probs


def evolve_probability(config: SystemConfig, t, identity_shift: float = 0.0):
    """P(level 1 -> level 2) by exact unitary evolution of the thermal ensemble.

    One eigendecomposition per config, reused across all time points.
    identity_shift adds c*I to H; the result must not depend on it.
    """
    t = np.asarray(t, dtype=float)
    ham = build_hamiltonian(config)
    H = ham.matrix
    if identity_shift != 0.0:
        H = H + identity_shift * np.eye(ham.dimension)
    evals, evecs = np.linalg.eigh(H)

    nbath = 2 ** (ham.n1 + ham.n2)
    probs = thermal_ensemble(config)
    # global index = dimer_bit * nbath + bath_index; dimer bit 0 = level 1
    rows1 = np.arange(nbath)
    rows2 = rows1 + nbath
    # amplitude <2,b| e^{-iHt} |1,b> = sum_k V[2b,k] e^{-iE_k t} V*[1b,k]
    W = evecs[rows2, :] * evecs[rows1, :].conj()
    phases = np.exp(-1j * np.multiply.outer(evals, t))
    amps = W @ phases  # (nbath, nt)
    p = probs @ (np.abs(amps) ** 2)
    return float(p) if p.ndim == 0 else p


def brute_force_bath_ground(alpha1: float, alpha2: float, q: float,
                            N1: int, N2: int) -> list[tuple[float, float]]:
    """All (m1, m2) minimizing the bath energy, within a 1e-12 relative band."""
    if N1 < 1 or N2 < 1:
        raise ValueError("bath sizes must be >= 1")
    m1 = np.arange(-N1, N1 + 1, 2) / 2.0
    m2 = np.arange(-N2, N2 + 1, 2) / 2.0
    M1, M2 = np.meshgrid(m1, m2, indexing="ij")
    E = alpha1 * M1 + alpha2 * M2 + q * M1 * M2
    emin = E.min()
    band = E <= emin + 1e-12 * max(1.0, abs(emin))
    return [(float(a), float(b)) for a, b in zip(M1[band], M2[band])]
