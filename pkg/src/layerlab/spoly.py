"""Scattering polynomials on the unit disk and their radial forms.

Exact bivariate polynomial calculus in the pair (zeta, conj(zeta)) with
rational coefficients, the disk eigenfunction family phi^(p,q), and the
associated radial machinery: the finite-sum radial form, the Jacobi
three-term recurrence, and the power-series recurrence coefficients.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, MixedAngularIndex, NotAnEigenvalue


class BivariatePolynomial:
    """Finite sum a_ij * zeta^i * conj(zeta)^j with exact coefficients.

    Terms are stored canonically: one dict entry per exponent pair (i, j),
    never with a zero coefficient.  Coefficients are ints or Fractions.
    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), a in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            if a != 0:
                clean[(i, j)] = a
        self.terms = clean

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for ij, a in other.terms.items():
            out[ij] = out.get(ij, 0) + a
        return BivariatePolynomial(out)

    def __neg__(self):
        return BivariatePolynomial({ij: -a for ij, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariatePolynomial):
            out = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    ij = (i1 + i2, j1 + j2)
                    out[ij] = out.get(ij, 0) + a * b
            return BivariatePolynomial(out)
        # scalar
        return BivariatePolynomial({ij: a * other for ij, a in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = BivariatePolynomial({(0, 0): 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def dz(self):
        """Partial derivative with respect to zeta."""
        return BivariatePolynomial(
            {(i - 1, j): a * i for (i, j), a in self.terms.items() if i >= 1}
        )

    def dzbar(self):
        """Partial derivative with respect to conj(zeta)."""
        return BivariatePolynomial(
            {(i, j - 1): a * j for (i, j), a in self.terms.items() if j >= 1}
        )

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=0)

    def __repr__(self):
        if self.is_zero:
            return "BivariatePolynomial(0)"
        bits = []
        for (i, j) in sorted(self.terms):
            a = self.terms[(i, j)]
            mono = "".join(
                s for s in (f"z^{i}" if i else "", f"zb^{j}" if j else "") if s
            )
            bits.append(f"{a}*{mono}" if mono else f"{a}")
        return "BivariatePolynomial(" + " + ".join(bits) + ")"


_ZERO = BivariatePolynomial()
_ONE_MINUS_ZZBAR = BivariatePolynomial({(0, 0): 1, (1, 1): -1})


@lru_cache(maxsize=None)
def scattering_poly(p: int, q: int) -> BivariatePolynomial:
    """Construct phi^(p,q) exactly.

    For min(p, q) >= 1 this differentiates (1 - z*zb)^(p+q-1) symbolically
    p times in zeta and q times in conj(zeta), multiplies by the prefactor
    (1 - z*zb) and the normalizing constant (-1)^p / (q*(p+q-1)!); for
    q == 0 and p >= 0 it is conj(zeta)^p; all other index pairs give the
    zero polynomial.  The result always has integer coefficients, which is
    asserted, and the coefficients are stored as Python ints.

    Results are memoized; callers must treat them as immutable.
    """
    if q == 0 and p >= 0:
        return BivariatePolynomial({(0, p): 1})
    if p < 1 or q < 1:
        return _ZERO
    deriv = _ONE_MINUS_ZZBAR ** (p + q - 1)
    for _ in range(p):
        deriv = deriv.dz()
    for _ in range(q):
        deriv = deriv.dzbar()
    alpha = Fraction((-1) ** p, q * factorial(p + q - 1))
    poly = (_ONE_MINUS_ZZBAR * deriv) * alpha
    terms = {}
    for ij, a in poly.terms.items():
        a = Fraction(a)
        assert a.denominator == 1, f"non-integer coefficient {a} in phi^({p},{q})"
        terms[ij] = int(a)
    return BivariatePolynomial(terms)


def eval_poly(poly: BivariatePolynomial, zeta: complex) -> complex:
    """Evaluate sum a_ij * zeta^i * conj(zeta)^j in floating point."""
    z = complex(zeta)
    zb = z.conjugate()
    total = 0j
    for (i, j), a in poly.terms.items():
        total += a * z**i * zb**j
    return total


def eval_poly_exact(poly: BivariatePolynomial, re: Fraction, im: Fraction):
    """Evaluate at zeta = re + i*im over the Gaussian rationals.

    Returns the pair (real, imag) of exact Fractions.
    """
    re, im = Fraction(re), Fraction(im)
    max_i = max((i for i, _ in poly.terms), default=0)
    max_j = max((j for _, j in poly.terms), default=0)
    zpow = [(Fraction(1), Fraction(0))]
    for _ in range(max_i):
        a, b = zpow[-1]
        zpow.append((a * re - b * im, a * im + b * re))
    zbpow = [(Fraction(1), Fraction(0))]
    for _ in range(max_j):
        a, b = zbpow[-1]
        zbpow.append((a * re + b * im, -a * im + b * re))
    tot_re, tot_im = Fraction(0), Fraction(0)
    for (i, j), c in poly.terms.items():
        a, b = zpow[i]
        u, v = zbpow[j]
        tot_re += c * (a * u - b * v)
        tot_im += c * (a * v + b * u)
    return tot_re, tot_im


def hybrid_laplacian_apply(poly: BivariatePolynomial) -> BivariatePolynomial:
    """Apply (1 - z*zb) * d^2/dz dzb termwise, exactly.

    Each monomial z^i zb^j maps to i*j*(z^(i-1) zb^(j-1) - z^i zb^j).
    """
    out = {}
    for (i, j), a in poly.terms.items():
        if i >= 1 and j >= 1:
            c = a * i * j
            lo = (i - 1, j - 1)
            out[lo] = out.get(lo, 0) + c
            out[(i, j)] = out.get((i, j), 0) - c
    return BivariatePolynomial(out)


def angular_index(poly: BivariatePolynomial) -> int:
    """Common value of j - i over all monomials (equals p - q for phi^(p,q)).

    Raises MixedAngularIndex if two monomials disagree, DomainError on the
    zero polynomial.
    """
    if poly.is_zero:
        raise DomainError("zero polynomial has no angular index")
    diffs = {j - i for i, j in poly.terms}
    if len(diffs) > 1:
        raise MixedAngularIndex(f"mixed exponent differences {sorted(diffs)}")
    return diffs.pop()


def _series_coeff(j: int, nu: int, m: int) -> int:
    # (j+nu+m)! / (j! (j+m)! (nu-j-1)!) is an integer: it equals
    # (j+nu+m) * multinomial(j+nu+m-1; j, j+m, nu-1-j).
    num = factorial(j + nu + m)
    den = factorial(j) * factorial(j + m) * factorial(nu - j - 1)
    assert num % den == 0
    return num // den


def radial_f(p: int, q: int, r):
    """Radial part f^(p,q)(r) of the scattering polynomial.

    Uses the closed finite sum for min(p, q) >= 1; r^p for q == 0; zero for
    p == 0 with q >= 1.  The arithmetic follows the type of r, so Fraction
    input gives an exact rational result.
    """
    if p < 0 or q < 0:
        raise DomainError("p and q must be nonnegative")
    if r < 0 or r > 1:
        raise DomainError(f"radius {r} outside [0, 1]")
    if q == 0:
        return r**p
    if p == 0:
        return 0 * r
    nu = min(p, q)
    m = abs(p - q)
    r2 = r * r
    acc = 0 * r
    rpow = 1
    for j in range(nu):
        c = _series_coeff(j, nu, m)
        acc = acc + (-c if j % 2 else c) * rpow
        rpow = rpow * r2
    sign = -1 if (q + nu) % 2 else 1
    return sign * (1 - r2) * r**m * acc / q


def jacobi_eval(nu: int, alpha, beta, x):
    """Jacobi polynomial P^(alpha,beta)_nu(x) by the three-term recurrence.

    Arithmetic follows the argument types; exact for Fraction inputs.
    """
    if nu < 0:
        raise DomainError("degree must be nonnegative")
    if nu == 0:
        return 1 + 0 * x
    p_prev = 1 + 0 * x
    p_cur = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    for n in range(2, nu + 1):
        s = 2 * n + alpha + beta
        a_n = 2 * n * (n + alpha + beta) * (s - 2)
        b_n = (s - 1) * (s * (s - 2) * x + alpha * alpha - beta * beta)
        c_n = 2 * (n + alpha - 1) * (n + beta - 1) * s
        p_cur, p_prev = (b_n * p_cur - c_n * p_prev) / a_n, p_cur
    return p_cur


def radial_via_jacobi(p: int, q: int, r):
    """f^(p,q)(r) through the Jacobi-polynomial identity.

    Numerically stable for large p, q (the finite sum of radial_f suffers
    catastrophic cancellation there); exact for Fraction input.
    """
    if p < 0 or q < 0:
        raise DomainError("p and q must be nonnegative")
    if r < 0 or r > 1:
        raise DomainError(f"radius {r} outside [0, 1]")
    if q == 0:
        return r**p
    if p == 0:
        return 0 * r
    nu = min(p, q)
    m = abs(p - q)
    r2 = r * r
    jac = jacobi_eval(nu - 1, m, 1, 1 - 2 * r2)
    sign = -1 if (q + nu) % 2 else 1
    return sign * (m + nu) * (1 - r2) * r**m * jac / q


def scattering_value_polar(
    p: int, q: int, r: float, theta: float, zeta: complex | None = None
) -> complex:
    """phi^(p,q) at zeta = r*e^(i*theta), via the radial Jacobi route.

    This is the evaluation kernel shared by the amplitude product and the
    wavefield sampler, so both see bit-identical factor values for equal
    polar inputs.  When the complex point is already at hand, passing it
    makes the q == 0 branch an exact conjugate power (no polar round trip).
    Returns exact complex zero outside the support.
    """
    if p < 0 or q < 0:
        return 0j
    if q == 0:
        if p == 0:
            return 1 + 0j
        z = cmath.rect(r, theta) if zeta is None else zeta
        return z.conjugate() ** p
    if p == 0:
        return 0j
    if r == 0:
        return 1 + 0j if p == q else 0j
    f = radial_via_jacobi(p, q, r)
    if f == 0:
        return 0j
    return f * cmath.exp(1j * (q - p) * theta)


def scattering_value(p: int, q: int, zeta: complex) -> complex:
    """phi^(p,q)(zeta), numerically stable at large p, q."""
    z = complex(zeta)
    return scattering_value_polar(p, q, abs(z), cmath.phase(z), z)


@dataclass(frozen=True)
class RadialCoefficients:
    """Even-offset Taylor coefficients b_m, b_{m+2}, ..., b_{m+2*nu}.

    Angular order m, leading coefficient normalized to b_m = 1; the odd
    offsets and everything above degree m + 2*nu vanish.
    """

    m: int
    coeffs: tuple

    @property
    def nu(self):
        return len(self.coeffs) - 1

    def degrees(self):
        return tuple(self.m + 2 * j for j in range(len(self.coeffs)))

    def evaluate(self, r):
        r2 = r * r
        acc = 0 * r
        rpow = 1
        for b in self.coeffs:
            acc = acc + b * rpow
            rpow = rpow * r2
        return acc * r**self.m


def radial_from_recurrence(n: int, k: int) -> RadialCoefficients:
    """Solve the radial eigen-recurrence for angular order n, eigenvalue k.

    The returned coefficients satisfy
        b_{m+2j} = ((j-1)(m+j-1) - k) / (j(m+j)) * b_{m+2j-2},  b_m = 1,
    with m = |n|, terminating at j = nu where k = nu*(m+nu).  Raises
    NotAnEigenvalue when no such nu exists.
    """
    m = abs(n)
    if k < 1:
        raise NotAnEigenvalue(f"{k} is not a positive eigenvalue")
    nu = None
    s = 1
    while s * (m + s) <= k:
        if s * (m + s) == k:
            nu = s
            break
        s += 1
    if nu is None:
        raise NotAnEigenvalue(f"{k} != nu*({m}+nu) for every nu >= 1")
    coeffs = [Fraction(1)]
    for j in range(1, nu + 1):
        factor = Fraction((j - 1) * (m + j - 1) - k, j * (m + j))
        coeffs.append(coeffs[-1] * factor)
    return RadialCoefficients(m, tuple(coeffs))


def xi_product(k, m: int, N: int):
    """Partial product prod_{nu=1..N} (1 - k/(nu*(m+nu))).

    Vanishes exactly when k = nu0*(m+nu0) for some nu0 <= N.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if m < 0:
        raise DomainError("m must be nonnegative")
    result = 1 - k * 0
    for nu in range(1, N + 1):
        result = result * (1 - k / (nu * (m + nu)))
    return result


def radial_coefficients_of_poly(poly: BivariatePolynomial) -> dict:
    """Map r-degree -> coefficient for a fixed-angular-index polynomial.

    phi(r e^(i theta)) = e^(i (j - i) theta) * sum a_ij r^(i+j); with a
    single angular index each total degree occurs at most once.
    """
    angular_index(poly)  # raises on mixed indices
    return {i + j: a for (i, j), a in poly.terms.items()}
