"""Forward synthesis of boundary impulse responses.

Produces everything measurable: the Fourier-domain backward recurrence and
its torus generalization, enumeration of the arrival lattice, the closed
form arrival amplitudes, the time-limited delta train, sampled spectra, and
the universal amplitude wavefield whose lattice samples reproduce the
amplitudes.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, LatticeLimitExceeded
from .media import MediumParams, mobius, to_fraction
from .spoly import scattering_value_polar

DEFAULT_MAX_LATTICE = 10**7
MAX_LATTICE_ENV = "LAYERLAB_MAX_LATTICE"

LatticePoint = tuple  # integer vector with k_1 = 1, see is_lattice_point


def is_lattice_point(k) -> bool:
    """Membership in the arrival index set.

    Requires k_1 = 1, all entries nonnegative, and the zero-suffix rule:
    once an entry before the last is zero, everything after it is zero.
    """
    k = tuple(k)
    if not k or k[0] != 1:
        return False
    if any(kj < 0 for kj in k):
        return False
    for j in range(len(k) - 1):
        if k[j] == 0 and k[j + 1] != 0:
            return False
    return True


@dataclass(frozen=True)
class DeltaTrain:
    """Finite delta train: sorted (exact rational time, complex amplitude).

    Times are strictly increasing and lie in [0, horizon]; coincident
    arrivals have already been merged by summing amplitudes.
    """

    arrivals: tuple
    horizon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "horizon", to_fraction(self.horizon))
        arr = tuple((to_fraction(t), complex(a)) for t, a in self.arrivals)
        object.__setattr__(self, "arrivals", arr)
        prev = None
        for t, _ in arr:
            if t < 0 or t > self.horizon:
                raise DomainError(f"arrival time {t} outside [0, {self.horizon}]")
            if prev is not None and t <= prev:
                raise DomainError("arrival times must be strictly increasing")
            prev = t

    def times(self):
        return tuple(t for t, _ in self.arrivals)

    def amplitudes(self):
        return tuple(a for _, a in self.arrivals)

    def power(self) -> float:
        """Sum of squared amplitude moduli over the merged arrivals."""
        return float(sum(abs(a) ** 2 for _, a in self.arrivals))

    def __len__(self):
        return len(self.arrivals)


@dataclass(frozen=True)
class SpectrumTrace:
    """Samples of the truncated transform on an angular-frequency grid."""

    sigma: tuple
    values: tuple


def generalized_K(w, z) -> complex:
    """Torus recurrence K(w, z): compose the maps with free unimodular z_j."""
    w = list(w)
    z = list(z)
    if len(w) != len(z):
        raise DomainError("w and z must have equal length")
    v = 0j
    for wj, zj in zip(reversed(w), reversed(z)):
        v = mobius(wj, zj, v)
    return v


def backward_recurrence(params: MediumParams, sigma: float) -> complex:
    """Fourier transform of the impulse response at angular frequency sigma.

    Restriction of generalized_K to the line z_j = e^(i sigma tau_j); this
    is literally the same code path, so the restriction identity is exact.
    """
    z = [cmath.exp(1j * sigma * float(t)) for t in params.tau]
    return generalized_K(params.w, z)


def _lattice_limit(max_points):
    if max_points is not None:
        return int(max_points)
    env = os.environ.get(MAX_LATTICE_ENV)
    return int(env) if env else DEFAULT_MAX_LATTICE


def _integerize_times(tau, T):
    """Common denominator D and integer vectors A, Tint with tau_j = A_j/D."""
    tau = [to_fraction(t) for t in tau]
    T = to_fraction(T)
    D = 1
    for t in tau + [T]:
        D = D * t.denominator // math.gcd(D, t.denominator)
    A = [int(t * D) for t in tau]
    return D, A, int(T * D)


def enumerate_lattice(tau, T, max_points=None) -> list:
    """All lattice points with time pairing <k, tau> <= T, in lex order.

    Depth-first search over k_2..k_n with the remaining integerized time
    budget; the zero-suffix rule prunes whole subtrees.  Complete and
    duplicate-free by construction.  Raises LatticeLimitExceeded beyond
    max_points (default from LAYERLAB_MAX_LATTICE, else 10^7).
    """
    tau = [to_fraction(t) for t in tau]
    T = to_fraction(T)
    if any(t <= 0 for t in tau):
        raise DomainError("travel times must be positive")
    if T < 0:
        raise DomainError("horizon must be nonnegative")
    n = len(tau)
    limit = _lattice_limit(max_points)
    D, A, Tint = _integerize_times(tau, T)
    rem0 = Tint - A[0]
    if rem0 < 0:
        return []
    out = []

    def emit(prefix):
        if len(out) >= limit:
            raise LatticeLimitExceeded(
                f"more than {limit} lattice points; raise {MAX_LATTICE_ENV}"
            )
        out.append(prefix + (0,) * (n - len(prefix)))

    def descend(j, prefix, rem):
        if j == n:
            emit(prefix)
            return
        emit(prefix)  # k_j = 0 forces a zero suffix
        a = A[j]
        v = 1
        budget = rem - a
        while budget >= 0:
            descend(j + 1, prefix + (v,), budget)
            v += 1
            budget -= a
        return

    descend(1, (1,), rem0)
    return out


def _polar(w):
    w = [complex(v) for v in w]
    rs = [abs(v) for v in w]
    thetas = [cmath.phase(v) for v in w]
    return rs, thetas, w


def _amplitude_polar(rs, thetas, ws, k) -> complex:
    n = len(rs)
    amp = 1 + 0j
    for j in range(n):
        p = k[j]
        q = k[j + 1] if j + 1 < n else 0
        f = scattering_value_polar(p, q, rs[j], thetas[j], ws[j])
        if f == 0:
            return 0j
        amp *= f
    return amp


def amplitude_c_k(w, k) -> complex:
    """Arrival amplitude c_k(w): product of phi^(k_j, k_{j+1})(w_j).

    Uses the convention k_{n+1} = 0 and returns exact complex zero whenever
    k_1 != 1 or any factor vanishes (indices outside the lattice set).
    """
    k = tuple(int(v) for v in k)
    w = [complex(v) for v in w]
    if len(k) != len(w):
        raise DomainError("k and w must have equal length")
    if k[0] != 1:
        return 0j
    rs, thetas, ws = _polar(w)
    return _amplitude_polar(rs, thetas, ws, k)


def greens_function(params: MediumParams, T) -> DeltaTrain:
    """Time-limited boundary impulse response as a finite delta train.

    Evaluates the amplitude at every lattice point within the horizon,
    merges exactly coincident rational arrival times by summing, drops
    exact-zero amplitudes, and sorts by time.  No epsilon thresholds.
    """
    T = to_fraction(T)
    pts = enumerate_lattice(params.tau, T)
    D, A, _ = _integerize_times(params.tau, T)
    rs, thetas, ws = _polar(params.w)
    acc = {}
    for k in pts:
        a = _amplitude_polar(rs, thetas, ws, k)
        if a == 0:
            continue
        tkey = sum(kj * aj for kj, aj in zip(k, A))
        acc[tkey] = acc.get(tkey, 0j) + a
    arrivals = sorted(
        (Fraction(tkey, D), a) for tkey, a in acc.items() if a != 0
    )
    return DeltaTrain(tuple(arrivals), T)


def amplitude_power_sum(params: MediumParams, T) -> float:
    """Sum of |c_k|^2 over the enumerated lattice points (pre-merge)."""
    pts = enumerate_lattice(params.tau, to_fraction(T))
    rs, thetas, ws = _polar(params.w)
    return float(
        sum(abs(_amplitude_polar(rs, thetas, ws, k)) ** 2 for k in pts)
    )


def spectrum(train: DeltaTrain, sigma_grid) -> SpectrumTrace:
    """Partial sum sum_j a_j e^(i t_j sigma) over the grid.

    Sign convention f_hat(sigma) = integral f(t) e^(i sigma t) dt.
    """
    sig = np.asarray(list(sigma_grid), dtype=float)
    vals = np.zeros(len(sig), dtype=complex)
    if train.arrivals:
        ts = np.array([float(t) for t, _ in train.arrivals])
        amps = np.array([a for _, a in train.arrivals])
        chunk = 4096
        for lo in range(0, len(ts), chunk):
            block = np.exp(1j * np.outer(sig, ts[lo : lo + chunk]))
            vals += block @ amps[lo : lo + chunk]
    return SpectrumTrace(tuple(sig.tolist()), tuple(vals.tolist()))


def _strict_floor(x: float) -> int:
    """sup{ j in Z : j < x }: the floor, except integers map one down."""
    return math.ceil(x) - 1


def wavefield_psi(z) -> complex:
    """Universal amplitude wavefield on C^n.

    The integer part (strict floor) of Re z is the lattice index; the
    fractional remainder in (0, 1] is a radius and Im z an angle, which
    together reconstruct a reflectivity vector; the value is that vector's
    arrival amplitude.  Total on its domain.
    """
    z = [complex(v) for v in z]
    k = []
    rs = []
    thetas = []
    ws = []
    for zj in z:
        kj = _strict_floor(zj.real)
        k.append(kj)
        rho = zj.real - kj
        rs.append(rho)
        thetas.append(zj.imag)
        ws.append(cmath.rect(rho, zj.imag))
    if k[0] != 1:
        return 0j
    return _amplitude_polar(rs, thetas, ws, tuple(k))


def _shell_points(pts, n):
    """Sample of nearby non-member indices that must all map to zero."""
    shell = set()
    sample = pts[: min(len(pts), 32)]
    for k in sample:
        shell.add((0,) + k[1:])
        shell.add((2,) + k[1:])
        if n >= 2:
            shell.add((1, -1) + k[2:])
    if n >= 3:
        shell.add((1, 0) + (1,) * (n - 2))  # violates the zero-suffix rule
    return [k for k in shell if not is_lattice_point(k)]


def pushforward_check(params: MediumParams, T) -> DeltaTrain:
    """Rebuild the delta train purely through wavefield samples at k + w°.

    w° is the polar-coordinate vector |w_j| + i arg(w_j); sampling the
    wavefield there must reproduce every arrival amplitude, and a shell of
    non-member indices must contribute exactly zero (verified here).  The
    result must equal greens_function on the same inputs.
    """
    if any(v == 0 for v in params.w):
        raise DomainError("wavefield sampling requires nonzero reflectivities")
    T = to_fraction(T)
    pts = enumerate_lattice(params.tau, T)
    D, A, _ = _integerize_times(params.tau, T)
    w0 = [complex(abs(v), cmath.phase(v)) for v in params.w]
    acc = {}
    for k in pts:
        zz = [kj + w0j for kj, w0j in zip(k, w0)]
        a = wavefield_psi(zz)
        if a == 0:
            continue
        tkey = sum(kj * aj for kj, aj in zip(k, A))
        acc[tkey] = acc.get(tkey, 0j) + a
    for k in _shell_points(pts, params.n):
        zz = [kj + w0j for kj, w0j in zip(k, w0)]
        val = wavefield_psi(zz)
        if val != 0:
            raise AssertionError(f"non-member index {k} gave amplitude {val}")
    arrivals = sorted(
        (Fraction(tkey, D), a) for tkey, a in acc.items() if a != 0
    )
    return DeltaTrain(tuple(arrivals), T)
