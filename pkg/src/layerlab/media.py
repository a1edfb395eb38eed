"""Impedance profiles and the impedance <-> reflectivity transform.

A piecewise-constant medium is a list of complex impedance increments C_j
jumping at strictly increasing depths X_j.  The forward engine works on the
transformed pair (w, tau): reflectivities in the closed unit disk and exact
rational two-way travel times.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    FloatDepthWarning,
    ImpedanceNotInRightHalfPlane,
    NonIncreasingDepths,
    NotNormalized,
    PoleError,
)

NORMALIZATION_TOL = 1e-12


def to_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, or string ("num/den" or decimal).

    Binary floats are accepted and converted to their exact binary value,
    with a FloatDepthWarning since the caller probably meant the decimal.
    """
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        warnings.warn(
            "float converted to its exact binary value; pass a string for "
            "a decimal reading",
            FloatDepthWarning,
            stacklevel=3,
        )
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@dataclass(frozen=True)
class ImpedanceProfile:
    """Impedance jump increments C_0..C_n and jump depths X_1..X_n."""

    C: tuple
    X: tuple

    @property
    def n(self):
        return len(self.X)

    def partial_sums(self):
        """The n impedance values (C_0, C_0+C_1, ..., C_0+...+C_{n-1})."""
        sums = []
        acc = 0j
        for c in self.C[:-1]:
            acc += c
            sums.append(acc)
        return sums


def validate_profile(C, X) -> ImpedanceProfile:
    """Check all profile invariants and return the validated profile.

    C has n+1 complex increments summing to 1 (tolerance 1e-12); X has n
    strictly increasing positive depths, ingested as exact rationals; every
    partial sum C_0+...+C_j (j <= n-1) must lie in the open right half
    plane.
    """
    C = tuple(complex(c) for c in C)
    X = tuple(to_fraction(x) for x in X)
    if len(C) != len(X) + 1 or len(X) < 1:
        raise DomainError(
            f"need n+1 increments and n depths, got {len(C)} and {len(X)}"
        )
    prev = Fraction(0)
    for x in X:
        if x <= prev:
            raise NonIncreasingDepths(f"depths must satisfy 0 < X_1 < ... ; got {X}")
        prev = x
    total = sum(C)
    if abs(total - 1) > NORMALIZATION_TOL:
        raise NotNormalized(f"increments sum to {total}, expected 1")
    acc = 0j
    for j, c in enumerate(C[:-1]):
        acc += c
        if acc.real <= 0:
            raise ImpedanceNotInRightHalfPlane(
                f"partial sum C_0+...+C_{j} = {acc} has nonpositive real part"
            )
    return ImpedanceProfile(C, X)


@dataclass(frozen=True)
class MediumParams:
    """Reflectivity vector w in the closed polydisk, exact travel times tau."""

    w: tuple
    tau: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(complex(v) for v in self.w))
        object.__setattr__(self, "tau", tuple(to_fraction(t) for t in self.tau))
        if len(self.w) != len(self.tau) or not self.w:
            raise DomainError("w and tau must have equal positive length")
        for v in self.w:
            if abs(v) > 1 + 1e-12:
                raise DomainError(f"reflectivity {v} outside the closed unit disk")
        for t in self.tau:
            if t <= 0:
                raise DomainError(f"travel time {t} must be positive")

    @property
    def n(self):
        return len(self.w)


def phi_map(zeta) -> list:
    """Impedance-to-reflectivity transform on C_+^n.

    w_j = (zeta_j - zeta_{j+1}) / (zeta_j + conj(zeta_{j+1})) for j < n and
    w_n = (zeta_n - 1)/(zeta_n + 1); maps into the open polydisk.
    """
    zeta = [complex(z) for z in zeta]
    for z in zeta:
        if z.real <= 0:
            raise DomainError(f"{z} not in the open right half plane")
    w = []
    for j in range(len(zeta) - 1):
        w.append((zeta[j] - zeta[j + 1]) / (zeta[j] + zeta[j + 1].conjugate()))
    zn = zeta[-1]
    w.append((zn - 1) / (zn + 1))
    return w


def phi_inverse(w) -> list:
    """Back-substitution inverse of phi_map, from the open polydisk."""
    w = [complex(v) for v in w]
    for v in w:
        if abs(v) >= 1:
            raise DomainError(f"reflectivity {v} not in the open unit disk")
    zeta = [0j] * len(w)
    zeta[-1] = (1 + w[-1]) / (1 - w[-1])
    for j in range(len(w) - 2, -1, -1):
        nxt = zeta[j + 1]
        zeta[j] = (nxt + w[j] * nxt.conjugate()) / (1 - w[j])
    return zeta


def profile_to_params(profile: ImpedanceProfile) -> MediumParams:
    """Convert a validated profile to (w, tau).

    Reflectivities come from phi_map applied to the impedance partial sums;
    travel times are the exact depth differences.
    """
    w = phi_map(profile.partial_sums())
    tau = [profile.X[0]]
    for a, b in zip(profile.X[1:], profile.X[:-1]):
        tau.append(a - b)
    return MediumParams(tuple(w), tuple(tau))


def mobius(w: complex, z: complex, v: complex) -> complex:
    """One scattering step: z * (v + conj(w)) / (1 + w*v).

    Raises PoleError at the pole 1 + w*v == 0, which is only reachable when
    |w| = |v| = 1.
    """
    w, z, v = complex(w), complex(z), complex(v)
    denom = 1 + w * v
    if denom == 0:
        raise PoleError(f"pole at w={w}, v={v}")
    return z * (v + w.conjugate()) / denom


def layer_collapse(w) -> complex:
    """The delay-free recurrence E(w): compose all maps with unit z at 0."""
    v = 0j
    for wj in reversed(list(w)):
        v = mobius(wj, 1.0, v)
    return v
