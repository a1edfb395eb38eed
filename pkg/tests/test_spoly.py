"""Tests for the disk polynomial family and radial machinery.

The construction oracle here expands the defining derivative in closed
form (binomial expansion differentiated termwise), written independently
of the library's symbolic differentiation path.
"""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from layerlab import (
    BivariatePolynomial,
    DomainError,
    MixedAngularIndex,
    NotAnEigenvalue,
    angular_index,
    eval_poly,
    eval_poly_exact,
    hybrid_laplacian_apply,
    jacobi_eval,
    radial_f,
    radial_from_recurrence,
    scattering_poly,
    scattering_value,
    xi_product,
)
from layerlab.spoly import radial_coefficients_of_poly, radial_via_jacobi


def expansion_terms(p, q):
    """Closed-form monomial expansion of phi^(p,q), derived independently.

    Expanding (1-u)^(p+q-1) binomially with u = z*zb, differentiating each
    power termwise and collecting, the nonzero part for min(p,q) >= 1 is
        ((-1)^(q+nu)/q) (1-u) z^(m+nu-p) zb^(m+nu-q)
        * sum_j (-1)^j (j+nu+m)!/(j!(j+m)!(nu-j-1)!) u^j
    with nu = min(p,q), m = |p-q|.
    """
    if q == 0 and p >= 0:
        return {(0, p): 1}
    if p < 1 or q < 1:
        return {}
    nu, m = min(p, q), abs(p - q)
    bi, bj = m + nu - p, m + nu - q
    pref = Fraction((-1) ** (q + nu), q)
    terms = {}
    for j in range(nu):
        c = Fraction(
            math.factorial(j + nu + m),
            math.factorial(j) * math.factorial(j + m) * math.factorial(nu - j - 1),
        )
        c = pref * c * (-1) ** j
        for (di, dj), s in (((0, 0), 1), ((1, 1), -1)):
            ij = (bi + j + di, bj + j + dj)
            terms[ij] = terms.get(ij, Fraction(0)) + s * c
    out = {}
    for ij, c in terms.items():
        if c != 0:
            assert c.denominator == 1
            out[ij] = int(c)
    return out


class TestConstruction:
    def test_pure_conjugate_powers(self):
        assert scattering_poly(3, 0).terms == {(0, 3): 1}
        assert scattering_poly(0, 0).terms == {(0, 0): 1}

    def test_zero_outside_support(self):
        assert scattering_poly(-1, 3).is_zero
        assert scattering_poly(0, 4).is_zero
        assert scattering_poly(2, -2).is_zero

    def test_simplest_interior(self):
        assert scattering_poly(1, 1).terms == {(0, 0): 1, (1, 1): -1}

    @pytest.mark.parametrize("m", range(1, 7))
    def test_first_row_closed_form(self, m):
        # phi^(1,m) = (-1)^(m+1) (1 - z zb) z^(m-1), closed by hand
        sign = (-1) ** (m + 1)
        expected = {(m - 1, 0): sign, (m, 1): -sign}
        assert scattering_poly(1, m).terms == expected

    @pytest.mark.parametrize("p", range(0, 9))
    @pytest.mark.parametrize("q", range(0, 9))
    def test_matches_independent_expansion(self, p, q):
        assert scattering_poly(p, q).terms == expansion_terms(p, q)

    def test_integer_coefficients(self):
        for p in range(1, 11):
            for q in range(1, 11):
                for a in scattering_poly(p, q).terms.values():
                    assert isinstance(a, int)

    def test_memoized_identity(self):
        assert scattering_poly(4, 6) is scattering_poly(4, 6)


class TestHybridLaplacian:
    def test_constant_annihilated(self):
        one = BivariatePolynomial({(0, 0): 1})
        assert hybrid_laplacian_apply(one).is_zero

    def test_lowest_eigenfunction(self):
        phi = scattering_poly(1, 1)
        assert hybrid_laplacian_apply(phi) == -1 * phi

    def test_known_eigenvalue(self):
        phi = scattering_poly(2, 3)
        assert hybrid_laplacian_apply(phi) == -6 * phi

    def test_exact_eigen_identity_grid(self):
        for p in range(1, 11):
            for q in range(1, 11):
                phi = scattering_poly(p, q)
                assert (hybrid_laplacian_apply(phi) + (p * q) * phi).is_zero


class TestAngularIndex:
    def test_examples(self):
        assert angular_index(scattering_poly(2, 5)) == -3
        assert angular_index(scattering_poly(4, 0)) == 4
        with pytest.raises(MixedAngularIndex):
            angular_index(BivariatePolynomial({(0, 0): 1, (1, 0): 1}))
        with pytest.raises(DomainError):
            angular_index(BivariatePolynomial())

    def test_purity_scan(self):
        for p in range(0, 9):
            for q in range(0, 9):
                if scattering_poly(p, q).is_zero:
                    continue
                assert angular_index(scattering_poly(p, q)) == p - q


class TestEvaluation:
    def test_center_and_boundary(self):
        phi = scattering_poly(1, 1)
        assert eval_poly(phi, 0) == 1
        for theta in (0.0, 0.9, 2.4):
            assert abs(eval_poly(phi, cmath.exp(1j * theta))) < 1e-15

    def test_matches_radial_form(self):
        zeta = 0.3 + 0.4j
        r, theta = abs(zeta), cmath.phase(zeta)
        got = eval_poly(scattering_poly(2, 3), zeta)
        want = cmath.exp(1j * theta) * radial_f(2, 3, r)
        assert abs(got - want) < 1e-12

    def test_boundedness_exact_on_rational_grid(self):
        # |phi|^2 <= 1 on the closed disk, checked in exact arithmetic
        grid = [Fraction(i, 8) for i in range(-8, 9)]
        points = [(x, y) for x in grid for y in grid if x * x + y * y <= 1]
        for p, q in [(1, 1), (2, 3), (5, 2), (7, 7), (10, 1), (10, 10)]:
            phi = scattering_poly(p, q)
            for x, y in points:
                re, im = eval_poly_exact(phi, x, y)
                assert re * re + im * im <= 1

    def test_boundedness_float_grid(self):
        rs = np.linspace(0, 1, 21)
        thetas = np.linspace(-math.pi, math.pi, 23)
        for p in range(1, 6):
            for q in range(1, 6):
                phi = scattering_poly(p, q)
                for r in rs:
                    for t in thetas:
                        assert abs(eval_poly(phi, r * cmath.exp(1j * t))) <= 1 + 1e-12

    def test_exact_radial_consistency_pythagorean(self):
        # On zeta = r*(3+4i)/5 the polar pieces are rational, so the
        # angular-radial split can be checked with zero tolerance.
        for p, q in [(1, 1), (2, 3), (3, 2), (4, 4), (5, 1), (2, 6)]:
            phi = scattering_poly(p, q)
            for r in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
                re, im = (
                    r * Fraction(3, 5),
                    r * Fraction(4, 5),
                )
                got = eval_poly_exact(phi, re, im)
                f = radial_f(p, q, r)
                # exact complex power ((3+4i)/5)^(q-p)
                ure, uim = Fraction(3, 5), Fraction(4, 5)
                n = q - p
                if n < 0:
                    uim, n = -uim, -n
                are, aim = Fraction(1), Fraction(0)
                for _ in range(n):
                    are, aim = are * ure - aim * uim, are * uim + aim * ure
                assert got == (f * are, f * aim)

    def test_stable_evaluator_agrees(self):
        for p, q in [(1, 1), (2, 3), (4, 2), (5, 5)]:
            phi = scattering_poly(p, q)
            for zeta in (0.1 + 0.7j, -0.4 + 0.2j, 0.85j):
                assert abs(eval_poly(phi, zeta) - scattering_value(p, q, zeta)) < 1e-12


def jacobi_sum_formula(n, alpha, beta, x):
    """Independent finite-sum definition of the Jacobi polynomial."""
    acc = Fraction(0)
    for s in range(n + 1):
        acc += (
            math.comb(n + alpha, n - s)
            * math.comb(n + beta, s)
            * (Fraction(x - 1, 2)) ** s
            * (Fraction(x + 1, 2)) ** (n - s)
        )
    return acc


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_eval(0, 3, 1, 0.7) == 1

    def test_degree_one_closed_form(self):
        for alpha, beta, x in [(2, 1, 0.3), (0, 1, -0.5), (4, 4, 0.9)]:
            want = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
            assert abs(jacobi_eval(1, alpha, beta, x) - want) < 1e-14

    def test_recurrence_vs_sum_formula(self):
        for n in range(0, 8):
            for alpha in range(0, 5):
                for beta in range(0, 3):
                    for x in (Fraction(-1), Fraction(-1, 3), Fraction(0), Fraction(5, 7), Fraction(1)):
                        assert jacobi_eval(n, alpha, beta, x) == jacobi_sum_formula(
                            n, alpha, beta, x
                        )

    def test_against_scipy(self):
        from scipy.special import eval_jacobi

        rng = np.random.default_rng(77)
        for _ in range(100):
            n = int(rng.integers(0, 20))
            alpha = float(rng.uniform(0, 6))
            beta = float(rng.uniform(0, 3))
            x = float(rng.uniform(-1, 1))
            want = eval_jacobi(n, alpha, beta, x)
            assert jacobi_eval(n, alpha, beta, x) == pytest.approx(want, rel=1e-10, abs=1e-10)


class TestRadial:
    def test_conjugate_row(self):
        for p in range(0, 5):
            assert radial_f(p, 0, 0.6) == pytest.approx(0.6**p, abs=1e-15)
        assert radial_f(0, 3, 0.4) == 0

    def test_lowest(self):
        assert radial_f(1, 1, 0.5) == 0.75
        assert radial_f(1, 1, Fraction(1, 2)) == Fraction(3, 4)

    def test_boundary_zero(self):
        for p, q in [(1, 1), (3, 2), (5, 5)]:
            assert radial_f(p, q, Fraction(1)) == 0

    def test_domain(self):
        with pytest.raises(DomainError):
            radial_f(1, 1, 1.5)
        with pytest.raises(DomainError):
            radial_f(1, 1, -0.1)

    def test_jacobi_identity_exact(self):
        for p in range(1, 11):
            for q in range(1, 11):
                for r in (Fraction(0), Fraction(1, 7), Fraction(2, 3), Fraction(1)):
                    assert radial_f(p, q, r) == radial_via_jacobi(p, q, r)


class TestRecurrenceCoefficients:
    def test_ground_mode(self):
        rc = radial_from_recurrence(0, 1)
        assert rc.m == 0
        assert rc.coeffs == (Fraction(1), Fraction(-1))
        assert rc.degrees() == (0, 2)

    def test_rejects_non_eigenvalue(self):
        with pytest.raises(NotAnEigenvalue):
            radial_from_recurrence(2, 5)
        with pytest.raises(NotAnEigenvalue):
            radial_from_recurrence(0, 3)

    def test_boundary_zero_exact(self):
        # f(1) = 0 is what quantizes the eigenvalues
        for n, nu in [(0, 1), (1, 2), (3, 1), (2, 4)]:
            m = abs(n)
            rc = radial_from_recurrence(n, nu * (m + nu))
            assert rc.evaluate(Fraction(1)) == 0
            assert rc.coeffs[-1] != 0

    def test_proportional_to_constructed_polynomials(self):
        for p in range(1, 11):
            for q in range(1, 11):
                nu, m = min(p, q), abs(p - q)
                rc = radial_from_recurrence(p - q, nu * (m + nu))
                poly_coeffs = radial_coefficients_of_poly(scattering_poly(p, q))
                assert set(poly_coeffs) == set(rc.degrees())
                ratios = {
                    Fraction(poly_coeffs[d]) / rc.coeffs[i]
                    for i, d in enumerate(rc.degrees())
                }
                assert len(ratios) == 1

    def test_cumulative_product_form(self):
        # Independent route to the same coefficients: with
        # beta_j = 1 - k/(j(m+j)) and P_j = beta_0*...*beta_j, the radial
        # polynomial is r^m (1-r^2) sum_{j<nu} P_j r^(2j), so the
        # coefficient at r^(m+2j) must equal P_j - P_{j-1}.
        for m in range(0, 6):
            for nu in range(1, 6):
                k = nu * (m + nu)
                rc = radial_from_recurrence(m, k)
                prods = []
                acc = Fraction(1)
                for j in range(nu):
                    if j > 0:
                        acc *= 1 - Fraction(k, j * (m + j))
                    prods.append(acc)
                for j, b in enumerate(rc.coeffs):
                    upper = prods[j] if j < nu else Fraction(0)
                    lower = prods[j - 1] if j > 0 else Fraction(0)
                    assert b == upper - lower


class TestXiProduct:
    def test_exact_zero_at_eigenvalues(self):
        assert xi_product(6, 1, 5) == 0  # nu=2: 2*(1+2)=6
        assert xi_product(4.0, 0, 10) == 0.0  # nu=2: 2*2=4
        assert xi_product(Fraction(12), 1, 3) == 0  # nu=3: 3*4=12

    def test_unperturbed(self):
        assert xi_product(0, 4, 25) == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            xi_product(1.0, 0, 0)

    def test_convergent_tail(self):
        vals = [xi_product(0.5, 0, N) for N in (100, 200, 400, 800)]
        gaps = [abs(a - b) for a, b in zip(vals, vals[1:])]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[-1] < 1e-3


def theta_first_inner(pa, pb, weight, n_theta, n_r=64):
    """Disk inner product with the angular integral done first.

    The theta average over a uniform grid is exact for trigonometric
    polynomials of degree below the grid size; the radial integral then
    uses Gauss-Legendre on [0, 1].
    """
    nodes, weights = np.polynomial.legendre.leggauss(n_r)
    total = 0j
    for x, wr in zip(nodes, weights):
        r = 0.5 * (x + 1)
        ssum = 0j
        for k in range(n_theta):
            th = 2 * math.pi * k / n_theta
            z = r * cmath.exp(1j * th)
            ssum += eval_poly(pa, z) * eval_poly(pb, z).conjugate()
        ssum *= 2 * math.pi / n_theta
        total += 0.5 * wr * ssum * weight(r) * r
    return total


class TestOrthogonality:
    @pytest.mark.parametrize(
        "a,b",
        [((1, 2), (2, 1)), ((1, 1), (1, 2)), ((2, 3), (3, 1)), ((2, 0), (0, 0)), ((3, 0), (2, 3))],
    )
    def test_different_angular_frequencies(self, a, b):
        pa, pb = scattering_poly(*a), scattering_poly(*b)
        assert (a[1] - a[0]) != (b[1] - b[0])
        deg = pa.total_degree() + pb.total_degree()
        n_theta = 2 * deg + 5
        flat = theta_first_inner(pa, pb, lambda r: 1.0, n_theta)
        metric = theta_first_inner(pa, pb, lambda r: 4 / (1 - r * r), n_theta)
        assert abs(flat) < 1e-8
        assert abs(metric) < 1e-8
