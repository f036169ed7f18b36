"""Truncated Fourier model of rotation-invariant function spaces on the n-torus.

Functions are finitely supported coefficient maps k -> c_k inside the degree
box |k|_inf <= d, for n up to 3. Rotations act by coefficient-wise unimodular
multipliers, so inner products are exact (Parseval under the normalized
measure) and every verified identity is a statement about coefficients.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import DimensionMismatch

MAX_TORUS_DIM = 3


class TorusPoint:
    """Point of the n-torus: unit-modulus complex coordinates."""

    __slots__ = ("w",)

    def __init__(self, w) -> None:
        arr = np.asarray(w, dtype=complex).reshape(-1)
        if not 1 <= arr.size <= MAX_TORUS_DIM:
            raise DimensionMismatch(f"torus dimension must be 1..{MAX_TORUS_DIM}")
        if np.max(np.abs(np.abs(arr) - 1.0)) > 1e-12:
            raise ValueError("coordinates must have unit modulus")
        arr.setflags(write=False)
        self.w = arr

    @classmethod
    def from_angles(cls, theta) -> "TorusPoint":
        return cls(np.exp(1j * np.asarray(theta, dtype=float).reshape(-1)))

    @property
    def n(self) -> int:
        return int(self.w.size)


class FourierFunction:
    """Sparse trigonometric polynomial: coefficients on multi-indices in a box."""

    __slots__ = ("n", "degree", "coeffs")

    def __init__(self, n: int, degree: int, coeffs) -> None:
        if not 1 <= n <= MAX_TORUS_DIM:
            raise DimensionMismatch(f"torus dimension must be 1..{MAX_TORUS_DIM}")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean = {}
        for k, c in coeffs.items():
            key = _as_key(k, n)
            if any(abs(kj) > degree for kj in key):
                raise ValueError(f"multi-index {key} outside the degree-{degree} box")
            val = complex(c)
            if not (np.isfinite(val.real) and np.isfinite(val.imag)):
                raise ValueError("coefficients must be finite")
            if val != 0:
                clean[key] = clean.get(key, 0j) + val
        self.n = int(n)
        self.degree = int(degree)
        self.coeffs = {k: v for k, v in clean.items() if v != 0}

    def support(self) -> tuple:
        return tuple(sorted(self.coeffs))

    def coefficient(self, k) -> complex:
        return self.coeffs.get(_as_key(k, self.n), 0j)

    def norm2(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for _, c in sorted(self.coeffs.items()))))

    def __add__(self, other: "FourierFunction") -> "FourierFunction":
        if self.n != other.n:
            raise DimensionMismatch("dimension mismatch")
        merged = dict(self.coeffs)
        for k, c in other.coeffs.items():
            merged[k] = merged.get(k, 0j) + c
        return FourierFunction(self.n, max(self.degree, other.degree), merged)

    def __sub__(self, other: "FourierFunction") -> "FourierFunction":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "FourierFunction":
        return FourierFunction(
            self.n, self.degree, {k: c * complex(scalar) for k, c in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"FourierFunction(n={self.n}, degree={self.degree}, terms={len(self.coeffs)})"


def _as_key(k, n: int) -> tuple:
    if isinstance(k, int):
        key = (k,)
    else:
        key = tuple(int(kj) for kj in k)
    if len(key) != n:
        raise DimensionMismatch(f"multi-index {key} has length {len(key)}, expected {n}")
    return key


def monomial(n: int, degree: int, k, coeff=1.0) -> FourierFunction:
    return FourierFunction(n, degree, {_as_key(k, n): coeff})


def act(w: TorusPoint, f: FourierFunction) -> FourierFunction:
    """Rotation by w: each coefficient picks up the unimodular factor w**k."""
    if w.n != f.n:
        raise DimensionMismatch("rotation and function dimensions differ")
    out = {}
    for k, c in f.coeffs.items():
        factor = complex(np.prod([w.w[j] ** k[j] for j in range(f.n)]))
        out[k] = c * factor
    return FourierFunction(f.n, f.degree, out)


def inner_product(f: FourierFunction, g: FourierFunction) -> complex:
    """Parseval sum over the common support (normalized measure, total mass 1)."""
    if f.n != g.n:
        raise DimensionMismatch("dimension mismatch")
    total = 0j
    for k in sorted(set(f.coeffs) & set(g.coeffs)):
        total += f.coeffs[k] * np.conj(g.coeffs[k])
    return complex(total)


def project_k(f: FourierFunction, k) -> FourierFunction:
    """Projection onto the single-monomial space of power k."""
    key = _as_key(k, f.n)
    if any(abs(kj) > f.degree for kj in key):
        raise ValueError(f"multi-index {key} outside the degree-{f.degree} box")
    c = f.coeffs.get(key, 0j)
    return FourierFunction(f.n, f.degree, {key: c} if c != 0 else {})


def fejer_multiplier(k, d: int) -> float:
    """Coefficient damping of convolution with the n-fold Fejer kernel of degree d."""
    out = 1.0
    for kj in k:
        out *= max(0.0, 1.0 - abs(kj) / (d + 1))
    return out


def fejer_smooth(f: FourierFunction, d: int) -> FourierFunction:
    """Convolution with the product Fejer kernel: a nonnegative unit-mass mollifier."""
    if d < 0:
        raise ValueError("Fejer degree must be nonnegative")
    return FourierFunction(
        f.n, f.degree, {k: c * fejer_multiplier(k, d) for k, c in f.coeffs.items()}
    )


def polydisc_signature(f: FourierFunction) -> bool:
    """True iff every supported multi-index has nonnegative coordinates."""
    return all(min(k) >= 0 for k in f.coeffs)


def separation_check(omega, g: FourierFunction) -> bool:
    """Separate g from the span of the monomials indexed by omega.

    Builds the annihilating functional: pairing against the normalized
    component of g outside the span. It vanishes on the span exactly (disjoint
    supports) and takes real value 1 on g; returns True when that separation
    exists, False when g has no component outside the span.
    """
    omega_keys = {_as_key(k, g.n) for k in omega}
    outside = {k: c for k, c in g.coeffs.items() if k not in omega_keys}
    if not outside:
        return False
    norm_sq = sum(abs(c) ** 2 for _, c in sorted(outside.items()))
    # pairing of any omega-monomial with the outside component is identically 0
    vanishes = all(k not in outside for k in omega_keys)
    value = sum(g.coeffs[k] * np.conj(c) for k, c in sorted(outside.items())) / norm_sq
    return vanishes and value.real >= 0.5


# -- verification suites (shared by the CLI and the acceptance tests) --------


def box_indices(n: int, degree: int) -> list:
    """All multi-indices of the degree box, lexicographically sorted."""
    return sorted(itertools.product(range(-degree, degree + 1), repeat=n))


def random_function(n: int, degree: int, rng, max_terms: int = 12) -> FourierFunction:
    """Seeded random function with at least one nonconstant supported index."""
    box = box_indices(n, degree)
    nonzero = [k for k in box if any(k)] or box
    m = int(rng.integers(1, min(max_terms, len(box)) + 1))
    picks = [nonzero[int(rng.integers(len(nonzero)))]]
    picks += [box[int(i)] for i in rng.integers(0, len(box), size=m)]
    coeffs = {}
    for k in picks:
        coeffs[k] = complex(rng.standard_normal(), rng.standard_normal())
    return FourierFunction(n, degree, coeffs)


def random_point(n: int, rng) -> TorusPoint:
    return TorusPoint.from_angles(rng.uniform(0.0, 2.0 * np.pi, size=n))


def monomial_orthonormality_residual(n: int, degree: int, seed: int = 0) -> float:
    """Deviation of monomial inner products from the identity pattern.

    Exhaustive over the box when small, seeded sampling otherwise.
    """
    box = box_indices(n, degree)
    worst = 0.0
    for k in box:
        worst = max(worst, abs(inner_product(monomial(n, degree, k), monomial(n, degree, k)) - 1.0))
    if len(box) ** 2 <= 100_000:
        pairs = [(i, j) for i in range(len(box)) for j in range(len(box)) if i != j]
    else:
        rng = np.random.default_rng(seed)
        draws = rng.integers(0, len(box), size=(20_000, 2))
        pairs = [(int(i), int(j)) for i, j in draws if i != j]
    for i, j in pairs:
        worst = max(
            worst, abs(inner_product(monomial(n, degree, box[i]), monomial(n, degree, box[j])))
        )
    return worst


def unitarity_residual(n: int, degree: int, trials: int = 50, seed: int = 0) -> float:
    """max |<act(w,f), act(w,g)> - <f,g>| over seeded random triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        f = random_function(n, degree, rng)
        g = random_function(n, degree, rng)
        w = random_point(n, rng)
        worst = max(worst, abs(inner_product(act(w, f), act(w, g)) - inner_product(f, g)))
    return worst


def fejer_error_profile(f: FourierFunction, degrees) -> list:
    return [float((f - fejer_smooth(f, d)).norm2()) for d in degrees]


def fejer_monotonicity(
    n: int, degree: int, functions: int = 20, degrees=(1, 2, 4, 8, 16), seed: int = 0
):
    """Smoothing error profiles on seeded random functions.

    Returns (profiles, monotone): monotone means every step is non-increasing
    and the last error is strictly below the first. Steps can tie exactly while
    every supported frequency is still annihilated by both kernel degrees; once
    a damping factor activates the decrease is strict.
    """
    rng = np.random.default_rng(seed)
    profiles = []
    monotone = True
    for _ in range(functions):
        errs = fejer_error_profile(random_function(n, degree, rng), degrees)
        profiles.append(errs)
        if any(b > a for a, b in zip(errs, errs[1:])) or not errs[-1] < errs[0]:
            monotone = False
    return profiles, monotone


def polydisc_rotation_trials(n: int, degree: int, trials: int = 100, seed: int = 0):
    """Rotations must preserve the support, hence the nonnegative-support class."""
    rng = np.random.default_rng(seed)
    preserved = True
    for _ in range(trials):
        f = random_function(n, degree, rng)
        # fold the support into the nonnegative orthant
        folded = FourierFunction(
            n, degree, {tuple(abs(kj) for kj in k): c for k, c in f.coeffs.items()}
        )
        w = random_point(n, rng)
        rotated = act(w, folded)
        if not polydisc_signature(folded):
            preserved = False
        if not polydisc_signature(rotated) or rotated.support() != folded.support():
            preserved = False
    return trials, preserved


def smoothing_commutes_residual(n: int, degree: int, trials: int = 25, seed: int = 0) -> float:
    """max coefficient gap between smooth-then-rotate and rotate-then-smooth."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        f = random_function(n, degree, rng)
        w = random_point(n, rng)
        d = int(rng.integers(0, degree + 2))
        lhs = fejer_smooth(act(w, f), d)
        rhs = act(w, fejer_smooth(f, d))
        keys = set(lhs.coeffs) | set(rhs.coeffs)
        for k in sorted(keys):
            worst = max(worst, abs(lhs.coeffs.get(k, 0j) - rhs.coeffs.get(k, 0j)))
    return worst


def completeness_residual_model(n: int, degree: int, trials: int = 25, seed: int = 0) -> float:
    """Summing the single-index projections over the box reconstructs f."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    box = box_indices(n, degree)
    for _ in range(trials):
        f = random_function(n, degree, rng)
        total = FourierFunction(n, degree, {})
        for k in box:
            total = total + project_k(f, k)
        worst = max(worst, (f - total).norm2())
    return worst


def separation_scan_1d(degree: int = 4):
    """Exhaustive scan of the one-dimensional degree box.

    For every subset omega of the box and every nonempty support S, the check
    must return True exactly when S reaches outside omega. Returns
    (pairs, mismatches).
    """
    box = box_indices(1, degree)
    nb = len(box)
    supports = []
    for mask in range(1, 2**nb):
        supports.append((mask, [box[b] for b in range(nb) if mask & (1 << b)]))
    pairs = 0
    mismatches = 0
    for g_mask, g_support in supports:
        g = FourierFunction(1, degree, {k: 1.0 for k in g_support})
        for o_mask in range(2**nb):
            omega = [box[b] for b in range(nb) if o_mask & (1 << b)]
            expected = bool(g_mask & ~o_mask)
            if separation_check(omega, g) != expected:
                mismatches += 1
            pairs += 1
    return pairs, mismatches
