"""Dense complex linear algebra for small (2x2, 4x4) operators.

States and operators are plain complex ndarrays throughout the package;
this module supplies the handful of operations everything else is built
on: tensor products, partial traces, Hermitian eigendecompositions and
matrix exponentials of Hermitian generators.

Index convention for joint (system + auxiliary) objects: the system
factor comes first, so a joint index is i = 2*s + m with s the system
index and m the auxiliary index.  Every 4x4 object in the package uses
this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-entry distance of m from its own adjoint."""
    return float(np.abs(m - dagger(m)).max())


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the system-major index convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(joint: np.ndarray, keep: str) -> np.ndarray:
    """Trace out one qubit of a 4x4 joint operator.

    keep is "system" (trace out the auxiliary) or "auxiliary" (trace out
    the system).
    """
    joint = np.asarray(joint, dtype=complex)
    if joint.shape != (4, 4):
        raise ValueError(f"partial_trace expects a 4x4 matrix, got {joint.shape}")
    r = joint.reshape(2, 2, 2, 2)
    if keep == "system":
        return np.trace(r, axis1=1, axis2=3)
    if keep == "auxiliary":
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'system' or 'auxiliary', got {keep!r}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors are the matching
    orthonormal columns, so V diag(w) V^dag reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eig(m: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises ValueError if the input is not Hermitian to within
    HERMITICITY_TOL (max-entry norm).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    # eigh returns ascending eigenvalues and is deterministic for a
    # fixed input, which is all the downstream entropy code needs.
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def unitary_from_generator(g: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t g) for Hermitian g, via the spectral decomposition."""
    eig = hermitian_eig(g)
    v = eig.eigenvectors
    return (v * np.exp(-1j * t * eig.eigenvalues)) @ dagger(v)
