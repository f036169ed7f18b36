"""Invariant subspaces as direct sums of minimal spaces.

Any collection of vectors generates a smallest invariant subspace (its orbit
span); its signature is the set of minimal spaces it meets, and the structure
verification asserts that the subspace equals the direct sum over its
signature. When two minimal spaces are isomorphic the equality can fail, and
the twisted-diagonal construction produces a deliberate witness of that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import multiplicity_free
from .errors import InternalInconsistency, StructureFailure
from .linalg import DEFAULT_TOL, Subspace, max_abs, orthonormalize, projector, subspace_equal
from .perm_action import GroupAction
from .schur import group_average


@dataclass(frozen=True)
class SignatureSet:
    """Sorted ids of the minimal spaces a subspace projects onto nontrivially."""

    omega: tuple

    def __contains__(self, i) -> bool:
        return i in self.omega

    def __iter__(self):
        return iter(self.omega)

    def __len__(self) -> int:
        return len(self.omega)


@dataclass(frozen=True)
class StructureWitness:
    """A subspace that fails (or is checked against) the direct-sum equality."""

    omega: tuple
    dim_subspace: int
    dim_direct_sum: int
    residual: float


@dataclass(frozen=True)
class StructureReport:
    trials: int
    passes: int
    max_residual: float
    failures: tuple


def orbit_span(vectors, action: GroupAction, tol: float = DEFAULT_TOL) -> Subspace:
    """Smallest invariant subspace containing the given columns."""
    v = np.asarray(vectors, dtype=complex)
    if v.ndim == 1:
        v = v[:, None]
    n = action.n_points
    if v.shape[0] != n:
        raise ValueError("vectors do not match the point count")
    if v.shape[1] == 0:
        return Subspace(n, np.zeros((n, 0), dtype=complex), tol)
    translated = v[action.images]  # (order, n, m): row g holds columns L_g v
    stacked = np.transpose(translated, (1, 0, 2)).reshape(n, -1)
    sub = orthonormalize(stacked, tol)
    p = projector(sub)
    for g in action.generators:
        lp = p[g.images, :]
        if max_abs(lp - p @ lp) > tol:
            raise InternalInconsistency("orbit span is not invariant")
    return sub


def signature(y: Subspace, spaces, tol: float = DEFAULT_TOL) -> SignatureSet:
    """Ids of the minimal spaces with nonvanishing projection of y."""
    py = projector(y)
    ids = tuple(sorted(s.id for s in spaces if max_abs(s.projector @ py) > tol))
    return SignatureSet(omega=ids)


def direct_sum(omega, spaces) -> Subspace:
    """Concatenation of the (mutually orthogonal) bases of the selected spaces."""
    by_id = {s.id: s for s in spaces}
    ids = sorted(omega.omega if isinstance(omega, SignatureSet) else omega)
    if not spaces:
        raise ValueError("need at least one space to fix the ambient dimension")
    unknown = [i for i in ids if i not in by_id]
    if unknown:
        raise ValueError(f"ids {unknown} are not in the decomposition")
    ambient = spaces[0].space.ambient_dim
    tol = max(s.space.tol for s in spaces)
    mats = [by_id[i].space.basis for i in ids]
    basis = np.concatenate(mats, axis=1) if mats else np.zeros((ambient, 0), dtype=complex)
    return Subspace(ambient, basis, tol)


def verify_structure(
    action: GroupAction,
    spaces,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> StructureReport:
    """Random orbit spans vs. the direct sums over their signatures.

    Failures are recorded as witnesses. When the decomposition is
    multiplicity-free the equality is a theorem, so a failure there raises
    StructureFailure instead of being recorded quietly.
    """
    rng = np.random.default_rng(seed)
    n = action.n_points
    passes = 0
    max_residual = 0.0
    failures = []
    for _ in range(trials):
        m = int(rng.integers(1, 4))
        vecs = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
        y = orbit_span(vecs, action, tol)
        om = signature(y, spaces, tol)
        e = direct_sum(om, spaces)
        residual = max_abs(projector(y) - projector(e))
        if y.rank == e.rank and residual <= tol:
            passes += 1
            max_residual = max(max_residual, residual)
        else:
            failures.append(
                StructureWitness(
                    omega=om.omega,
                    dim_subspace=y.rank,
                    dim_direct_sum=e.rank,
                    residual=residual,
                )
            )
    report = StructureReport(
        trials=trials, passes=passes, max_residual=max_residual, failures=tuple(failures)
    )
    if failures and multiplicity_free(action):
        raise StructureFailure(
            "invariant subspace does not match its direct sum despite a "
            "multiplicity-free decomposition",
            witness=failures[0],
        )
    return report


def twisted_diagonal_witness(
    action: GroupAction,
    spaces,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> StructureWitness | None:
    """Deliberate counterexample from a pair of isomorphic minimal spaces.

    The graph of a nonzero intertwiner H_i -> H_j is invariant and meets both
    spaces, yet spans neither, so it is strictly smaller than the direct sum
    over its signature. Returns None when no isomorphic pair exists (the
    multiplicity-free case, where the theorem leaves nothing to witness).
    """
    rng = np.random.default_rng(seed)
    n = action.n_points
    for i in range(len(spaces)):
        for j in range(len(spaces)):
            if i == j or spaces[i].dim != spaces[j].dim:
                continue
            for _ in range(3):
                a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                t = group_average(a, spaces[i], spaces[j], action)
                if max_abs(t) > max(100 * tol, 1e-6):
                    basis = spaces[i].space.basis
                    y = orthonormalize(basis + t @ basis, tol)
                    om = signature(y, spaces, tol)
                    e = direct_sum(om, spaces)
                    if subspace_equal(y, e, tol):
                        continue
                    return StructureWitness(
                        omega=om.omega,
                        dim_subspace=y.rank,
                        dim_direct_sum=e.rank,
                        residual=max_abs(projector(y) - projector(e)),
                    )
    return None


def signature_roundtrip_exhaustive(spaces, tol: float = DEFAULT_TOL):
    """Check signature(direct_sum(omega)) == omega for every subset.

    Returns (ok, n_subsets). A passing round trip makes the subset-to-subspace
    map injective. Exponential in the number of spaces; capped at 12.
    """
    ids = [s.id for s in spaces]
    if len(ids) > 12:
        raise ValueError("exhaustive check is limited to 12 spaces")
    ok = True
    count = 0
    for mask in range(2 ** len(ids)):
        omega = tuple(ids[b] for b in range(len(ids)) if mask & (1 << b))
        e = direct_sum(omega, spaces)
        if signature(e, spaces, tol).omega != omega:
            ok = False
        count += 1
    return ok, count
