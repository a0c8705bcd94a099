"""Modular S-matrix of su(N) at level k and the dimensions derived from it.

The vacuum row is evaluated through the closed product of sines over the
positive roots; the remaining rows multiply it by the finite Weyl character
of the row weight at the group element attached to the column weight.  The
resulting matrix is unitary, symmetric, and has a strictly positive vacuum
row, which pins the normalization completely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .weights import (
    AlgebraSpec,
    Weight,
    integrable_weights,
    shifted_v,
)

UNITARY_TOL = 1e-9
SYMMETRY_TOL = 1e-9
VACUUM_ROW_TOL = 1e-12


@dataclass(frozen=True)
class SMatrix:
    """Modular S-matrix over the integrable weights of one su(N) factor."""

    spec: AlgebraSpec
    basis: tuple[Weight, ...]
    entries: np.ndarray  # complex, square, basis order

    def index(self, w: Weight) -> int:
        try:
            return self._index[w]
        except KeyError:
            raise KeyError(f"weight {w} not in S-matrix basis") from None

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.basis)})

    @property
    def vacuum_row(self) -> np.ndarray:
        return self.entries[0].real


@lru_cache(maxsize=None)
def s_matrix(spec: AlgebraSpec) -> SMatrix:
    """Kac-Peterson S-matrix of a single su(N) factor at level k."""
    n, k = spec.single()
    h = k + n
    basis = tuple(integrable_weights(spec))
    tvecs = np.array([shifted_v(w.labels[0]) for w in basis])  # (m, n) ints

    # vacuum row: prod over positive roots of 2 sin(pi (t_a - t_b) / h)
    norm = (n * h ** (n - 1)) ** -0.5
    s0 = np.full(len(basis), norm)
    for a in range(n):
        for b in range(a + 1, n):
            s0 *= 2.0 * np.sin(np.pi * (tvecs[:, a] - tvecs[:, b]) / h)

    # Weyl characters via the ratio of alternants: chi_lam(mu) =
    # det(x_b(mu)^{t_a(lam)}) / det(x_b(mu)^{t_a(0)}) with x_b at the
    # traceless coordinates of (mu+rho)/h; evaluating at the raw partial
    # sums instead costs one overall phase per column, restored below.
    phases = np.exp(
        (-2j * np.pi / h) * np.einsum("la,mb->lmab", tvecs, tvecs)
    )
    dets = np.linalg.det(phases)  # (m, m): rows lam, cols mu
    vac = 0  # lexicographic enumeration puts the zero labels first
    sums = tvecs.sum(axis=1)
    trace_fix = np.exp(
        (2j * np.pi / (n * h)) * np.outer(sums - sums[vac], sums)
    )
    chars = dets / dets[vac][None, :] * trace_fix
    entries = s0[None, :] * chars

    m = len(basis)
    if np.abs(entries @ entries.conj().T - np.eye(m)).max() > UNITARY_TOL:
        raise ArithmeticError(f"S-matrix for su({n})_{k} failed unitarity")
    if np.abs(entries - entries.T).max() > SYMMETRY_TOL:
        raise ArithmeticError(f"S-matrix for su({n})_{k} failed symmetry")
    row0 = entries[0]
    if np.abs(row0.imag).max() > VACUUM_ROW_TOL or (row0.real < VACUUM_ROW_TOL).any():
        raise ArithmeticError(f"S-matrix for su({n})_{k} vacuum row not positive")
    return SMatrix(spec, basis, entries)


def asymptotic_dimension(s: SMatrix, w: Weight) -> float:
    """Vacuum-row entry a(L) = S_{0,L}, strictly positive."""
    return float(s.entries[0, s.index(w)].real)


def quantum_dimension(s: SMatrix, w: Weight) -> float:
    """Statistical dimension S_{0,L} / S_{0,0}; always >= 1."""
    return float((s.entries[0, s.index(w)] / s.entries[0, 0]).real)


def product_quantum_dimension(spec: AlgebraSpec, w: Weight) -> float:
    """Product of per-factor quantum dimensions of a (multi-factor) weight."""
    if w.spec != spec:
        raise ValueError("weight is bound to a different spec")
    d = 1.0
    for i in range(len(spec.factors)):
        sub = w.factor(i)
        d *= quantum_dimension(s_matrix(sub.spec), sub)
    return d
