"""Independent ground truth via a discrete equal-delay medium.

Realizes the backward recurrence as arithmetic on truncated power series in
the unit delay Z: travel times are put on a common rational grid, each
layer becomes one reflector preceded by pure delays, and the recurrence is
evaluated with series addition, multiplication, and division.  This path
knows nothing about scattering polynomials, so agreement with the main
engine is a genuine two-sided check.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, TruncationTooSmall
from .forward import DeltaTrain
from .media import MediumParams, to_fraction


@dataclass
class TruncatedSeries:
    """Polynomial sum c_m Z^m truncated modulo Z^(N+1).

    coeffs is a complex array of length N+1; all arithmetic is exact modulo
    the truncation order.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or len(self.coeffs) < 1:
            raise DomainError("coeffs must be a nonempty 1-d array")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int):
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def constant(cls, value: complex, order: int):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    def copy(self):
        return TruncatedSeries(self.coeffs.copy())

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.coeffs + other.coeffs)
        out = self.coeffs.copy()
        out[0] += other
        return TruncatedSeries(out)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = len(self.coeffs)
            return TruncatedSeries(np.convolve(self.coeffs, other.coeffs)[:n])
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def shift(self, s: int = 1):
        """Multiply by Z^s, dropping coefficients beyond the truncation."""
        if s < 0:
            raise DomainError("shift must be nonnegative")
        out = np.zeros_like(self.coeffs)
        if s < len(self.coeffs):
            out[s:] = self.coeffs[: len(self.coeffs) - s]
        return TruncatedSeries(out)

    def reciprocal(self):
        """Series inverse; requires a nonzero constant term."""
        c = self.coeffs
        if c[0] == 0:
            raise DomainError("reciprocal needs a nonzero constant term")
        n = len(c)
        r = np.zeros(n, dtype=complex)
        r[0] = 1 / c[0]
        for m in range(1, n):
            r[m] = -np.dot(c[1 : m + 1], r[m - 1 :: -1]) / c[0]
        return TruncatedSeries(r)

    def divide(self, den: "TruncatedSeries"):
        """self / den modulo the truncation, single forward substitution."""
        d = den.coeffs
        if d[0] == 0:
            raise DomainError("division needs a nonzero constant term")
        n = len(self.coeffs)
        q = np.zeros(n, dtype=complex)
        for m in range(n):
            s = self.coeffs[m]
            if m:
                s = s - np.dot(d[1 : m + 1], q[m - 1 :: -1])
            q[m] = s / d[0]
        return TruncatedSeries(q)


def common_grid(tau):
    """Largest rational dividing every travel time, and the integer ratios.

    For tau_j = a_j/b_j in lowest terms the grid step is
    gcd(a_1,...,a_n) / lcm(b_1,...,b_n).
    """
    tau = [to_fraction(t) for t in tau]
    if not tau or any(t <= 0 for t in tau):
        raise DomainError("travel times must be positive rationals")
    num = 0
    den = 1
    for t in tau:
        num = math.gcd(num, t.numerator)
        den = den * t.denominator // math.gcd(den, t.denominator)
    delta = Fraction(num, den)
    m = []
    for t in tau:
        ratio = t / delta
        assert ratio.denominator == 1
        m.append(int(ratio))
    return delta, m


def expand_medium(w, m):
    """Reflector sequence on the unit grid: m_j - 1 pure delays, then w_j."""
    w = [complex(v) for v in w]
    if len(w) != len(m) or any(mj < 1 for mj in m):
        raise DomainError("need one positive grid multiple per reflector")
    out = []
    for wj, mj in zip(w, m):
        out.extend([0j] * (mj - 1))
        out.append(wj)
    return out


def series_recurrence(expanded_w, N: int) -> TruncatedSeries:
    """Backward recurrence with every delay replaced by the formal unit Z.

    Folding from the deepest reflector up: a zero reflector is a pure shift
    by Z, a real reflector applies Z*(v + conj(u))/(1 + u*v) in truncated
    series arithmetic.  Coefficient m of the result is the amplitude
    arriving at m grid steps.
    """
    if N < 1:
        raise TruncationTooSmall(f"truncation order {N} < 1")
    v = TruncatedSeries.zero(N)
    pending_shift = 0
    for u in reversed(list(expanded_w)):
        u = complex(u)
        if u == 0:
            pending_shift += 1
            continue
        if pending_shift:
            v = v.shift(pending_shift)
            pending_shift = 0
        num = v + u.conjugate()
        den = (v * u) + 1
        v = num.divide(den).shift(1)
    if pending_shift:
        v = v.shift(pending_shift)
    return v


def oracle_train(params: MediumParams, T) -> DeltaTrain:
    """Delta train computed entirely on the discrete grid.

    Arrival times are exact multiples of the common grid step; exact-zero
    coefficients are omitted so the support matches the lattice pushforward.
    """
    T = to_fraction(T)
    if T < 0:
        raise DomainError("horizon must be nonnegative")
    delta, m = common_grid(params.tau)
    N = int(T / delta)  # floor for positive rationals
    if N < 1:
        return DeltaTrain((), T)
    expanded = expand_medium(params.w, m)
    series = series_recurrence(expanded, N)
    arrivals = [
        (i * delta, complex(c))
        for i, c in enumerate(series.coeffs)
        if c != 0
    ]
    return DeltaTrain(tuple(arrivals), T)


def compare_trains(a: DeltaTrain, b: DeltaTrain):
    """Exact time-set difference and max amplitude discrepancy.

    Returns (mismatched_times, max_diff): times present in only one train
    (their amplitudes count toward the discrepancy in full), and the
    maximum modulus of the amplitude difference over all times.
    """
    da = dict(a.arrivals)
    db = dict(b.arrivals)
    mismatched = sorted(set(da) ^ set(db))
    max_diff = 0.0
    for t in set(da) | set(db):
        diff = abs(da.get(t, 0j) - db.get(t, 0j))
        if diff > max_diff:
            max_diff = diff
    return mismatched, max_diff


def random_medium(
    rng: random.Random,
    n: int,
    max_den: int = 16,
    rho_min: float = 0.05,
    rho_max: float = 0.9,
) -> MediumParams:
    """Seeded random medium for dual-path checks.

    Travel times share one base denominator <= max_den (so the common grid
    step stays bounded below) with numerators putting tau_j in [3/4, 2];
    reflectivities are complex with modulus in [rho_min, rho_max], never 0.
    """
    if n < 1:
        raise DomainError("need at least one layer")
    den = rng.randint(1, max_den)
    tau = []
    for _ in range(n):
        num = rng.randint(-(-3 * den // 4), 2 * den)
        tau.append(Fraction(num, den))
    w = []
    for _ in range(n):
        rho = rng.uniform(rho_min, rho_max)
        theta = rng.uniform(-math.pi, math.pi)
        w.append(cmath.rect(rho, theta))
    return MediumParams(tuple(w), tuple(tau))
