"""Reproducing kernels of minimal invariant spaces and their verification.

Under the uniform-probability inner product the kernel of point evaluation of
the projection is K_x(y) = n * P[y, x], so the kernel matrix is just the
projector rescaled by the number of points. The verifier checks the five
kernel identities numerically: Hermitian symmetry, reproduction of the
projection, equivariance under the action, stabilizer fixity, and a constant
positive diagonal (which the trace forces to equal the space dimension).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import MinimalSpace
from .errors import PropertyViolation
from .linalg import max_abs
from .perm_action import GroupAction, stabilizer

KERNEL_TOL = 1e-9


@dataclass(frozen=True)
class KernelFamily:
    """Column x holds the kernel vector of point x: matrix[y, x] = K_x(y)."""

    space_id: int
    matrix: np.ndarray


@dataclass(frozen=True)
class KernelPropertyReport:
    space_id: int
    symmetry: float
    reproduction: float
    equivariance: float
    stabilizer_fix: float
    diagonal_spread: float
    diagonal_dim_gap: float
    membership: float
    diagonal_value: float

    @property
    def max_residual(self) -> float:
        return max(
            self.symmetry,
            self.reproduction,
            self.equivariance,
            self.stabilizer_fix,
            self.diagonal_spread,
            self.diagonal_dim_gap,
            self.membership,
        )


def kernel_family(space: MinimalSpace, n_points: int) -> KernelFamily:
    """Kernels of the projection onto the space, scaled for the 1/n weight."""
    p = space.projector
    if p.shape != (n_points, n_points):
        raise ValueError("projector shape does not match the point count")
    return KernelFamily(space_id=space.id, matrix=n_points * p)


def verify_kernel_properties(
    family: KernelFamily,
    space: MinimalSpace,
    action: GroupAction,
    tol: float = KERNEL_TOL,
    trials: int = 50,
    seed: int = 0,
) -> KernelPropertyReport:
    """Residuals for the five kernel identities plus membership in the space.

    Raises PropertyViolation naming the first identity whose residual exceeds
    tol. Stabilizer fixity is checked at point 0 with the full stabilizer and
    at three seeded points via conjugated stabilizers.
    """
    k = family.matrix
    p = space.projector
    n = action.n_points
    rng = np.random.default_rng(seed)

    symmetry = max_abs(k - k.conj().T)

    fs = rng.standard_normal((n, trials)) + 1j * rng.standard_normal((n, trials))
    reproduction = max_abs(p @ fs - (k @ fs) / n)

    equivariance = 0.0
    for g in action.generators:
        img = g.images
        inv = np.argsort(img)
        equivariance = max(equivariance, max_abs(k[:, img] - k[inv, :]))

    stabilizer_fix = _stabilizer_residual(k, action, rng)

    diag = np.diagonal(k)
    dim = space.dim
    diagonal_spread = float(max_abs(diag - diag.mean())) if diag.size else 0.0
    diagonal_dim_gap = float(max_abs(diag - dim)) if dim > 0 else float(max_abs(diag))
    diagonal_value = float(diag.real.mean()) if diag.size else 0.0

    membership = max_abs(k - p @ k)

    report = KernelPropertyReport(
        space_id=family.space_id,
        symmetry=symmetry,
        reproduction=reproduction,
        equivariance=equivariance,
        stabilizer_fix=stabilizer_fix,
        diagonal_spread=diagonal_spread,
        diagonal_dim_gap=diagonal_dim_gap,
        membership=membership,
        diagonal_value=diagonal_value,
    )

    checks = [
        ("1-symmetry", symmetry),
        ("2-reproduction", reproduction),
        ("3-equivariance", equivariance),
        ("4-stabilizer-fix", stabilizer_fix),
        ("5-diagonal", max(diagonal_spread, diagonal_dim_gap)),
        ("membership", membership),
    ]
    for name, residual in checks:
        if residual > tol:
            raise PropertyViolation(name, residual)
    if dim > 0 and float(diag.real.min()) <= 0.0:
        raise PropertyViolation("5-positivity", float(diag.real.min()))
    return report


def _stabilizer_residual(k: np.ndarray, action: GroupAction, rng) -> float:
    """Kernel fixity under stabilizers: at 0 directly, elsewhere by conjugation."""
    n = action.n_points
    stab0 = stabilizer(action, 0)
    worst = 0.0
    col0 = k[:, 0]
    for ei in stab0.members:
        img = action.images[ei]
        worst = max(worst, max_abs(col0[img] - col0))
    if n > 1:
        points = rng.choice(np.arange(1, n), size=min(3, n - 1), replace=False)
        for x in points:
            ti = int(np.nonzero(action.images[:, 0] == x)[0][0])
            t = action.elements[ti]
            t_inv = t.inverse()
            colx = k[:, int(x)]
            for ei in stab0.members:
                conj = t.compose(action.elements[ei]).compose(t_inv)
                worst = max(worst, max_abs(colx[conj.images] - colx))
    return worst
