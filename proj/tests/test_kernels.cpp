#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "persist/fredholm.hpp"
#include "persist/kernels.hpp"

using namespace persist;

TEST_CASE("k_theta closed forms") {
    for (double s : {0.3, 1.0, 2.7}) {
        CHECK(std::fabs(k_theta(0.5, s) - 1.0 / (2.0 * M_PI * std::cosh(0.5 * s)))
              < 1e-15);
        CHECK(std::fabs(k_theta(0.0, s) - 2.0 / (M_PI * M_PI) * s / std::sinh(s))
              < 1e-15);
    }
    CHECK(std::fabs(k_theta(0.5, 0.0) - 1.0 / (2.0 * M_PI)) < 1e-16);
    CHECK(std::fabs(k_theta(0.0, 0.0) - 2.0 / (M_PI * M_PI)) < 1e-16);
    const double th = 0.3;
    CHECK(std::fabs(k_theta(th, 0.0)
                    - th / (std::tan(0.5 * M_PI * th) * M_PI)) < 1e-15);
    // removable singularity: approach along s -> 0
    CHECK(std::fabs(k_theta(th, 1e-7) - k_theta(th, 0.0)) < 1e-14);
    CHECK_THROWS_AS(k_theta(1.0, 0.5), std::domain_error);
}

TEST_CASE("k_theta even in s and in theta") {
    for (double th : {0.0, 0.25, 0.5, 0.75})
        for (double s : {0.1, 0.9, 3.3, 7.0}) {
            CHECK(k_theta(th, s) == k_theta(th, -s));
            CHECK(std::fabs(k_theta(th, s) - k_theta(-th, s)) < 1e-16);
        }
}

TEST_CASE("k_theta normalization over [-120, 120]") {
    for (double th : {0.0, 0.25, 0.5, 0.75}) {
        double total = 0.0;
        // panel-wise Gauss-Legendre; the integrand decays like e^{-(1-th)s}
        for (double a = -120.0; a < 120.0 - 0.5; a += 5.0) {
            const Quadrature q = gauss_legendre(40, a, a + 5.0);
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                total += q.weights[i] * k_theta(th, q.nodes[i]);
        }
        CHECK(std::fabs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("markov kernel and its symbol") {
    CHECK(markov_kernel(0.0) == 0.5);
    CHECK(markov_kernel(2.0) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-15));
    CHECK(markov_kernel(-2.0) == markov_kernel(2.0));
    // Fourier transform 1/(1+u^2) by quadrature, symbol u^2/(1+u^2)
    for (double u : {0.0, 0.7, 1.9}) {
        double hat = 0.0;
        for (double a = -40.0; a < 40.0 - 0.5; a += 2.0) {
            const Quadrature q = gauss_legendre(30, a, a + 2.0);
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                hat += q.weights[i] * markov_kernel(q.nodes[i])
                     * std::cos(u * q.nodes[i]);
        }
        CHECK(std::fabs(hat - 1.0 / (1.0 + u * u)) < 1e-8);
        CHECK(std::fabs((1.0 - hat) - u * u / (1.0 + u * u)) < 1e-8);
    }
}

TEST_CASE("fourier_k_theta") {
    for (double th : {0.0, 0.25, 0.5, 0.75})
        CHECK(std::fabs(fourier_k_theta(th, 0.0) - 1.0) < 1e-15);
    for (double u : {0.2, 1.0, 2.5}) {
        CHECK(std::fabs(fourier_k_theta(0.5, u) - 1.0 / std::cosh(M_PI * u))
              < 1e-15);
        CHECK(std::fabs(fourier_k_theta(0.0, u)
                        - 2.0 / (std::cosh(M_PI * u) + 1.0)) < 1e-15);
        CHECK(fourier_k_theta(0.3, u) == fourier_k_theta(0.3, -u));
    }
}

TEST_CASE("uniformizer phi_of_xi / xi_of_phi") {
    for (double th : {0.0, 0.25, 0.5}) {
        CHECK(std::fabs(phi_of_xi(0.0, th) - th) < 1e-14);
        CHECK(std::fabs(phi_of_xi(1.0, th) - 1.0) < 1e-14);
        double prev = th;
        for (double xi = 0.05; xi < 1.0; xi += 0.05) {
            const double ph = phi_of_xi(xi, th);
            CHECK(ph > prev);          // strictly increasing in xi
            CHECK(ph <= 1.0);
            CHECK(std::fabs(xi_of_phi(ph, th) - xi) < 1e-13);
            prev = ph;
        }
    }
    // frozen references at theta = 1/2
    CHECK(std::fabs(phi_of_xi(0.75, 0.5) - 0.7699465438373841148) < 1e-15);
    CHECK(std::fabs(phi_of_xi(8.0 / 9.0, 0.5) - 0.8485219752737065566) < 1e-15);
    // phi(1 - m^2, 1/2) = (2/pi) arccos sqrt(m^2/2)
    for (double m : {0.2, 0.5, 0.9}) {
        const double ph = phi_of_xi(1.0 - m * m, 0.5);
        CHECK(std::fabs(ph - 2.0 / M_PI * std::acos(std::sqrt(0.5 * m * m)))
              < 1e-14);
    }
    CHECK_THROWS_AS(phi_of_xi(1.5, 0.5), std::domain_error);
}

TEST_CASE("wh_symbol matches 1 - xi K_hat and stays in (0, 1]") {
    const double th = 0.5;
    for (double xi : {0.2, 0.75, 1.0}) {
        const double ph = phi_of_xi(xi, th);
        for (double u : {0.0, 0.3, 1.0, 4.0}) {
            const double w = wh_symbol(u, th, ph);
            CHECK(std::fabs(w - (1.0 - xi * fourier_k_theta(th, u))) < 1e-14);
            const double direct = (std::cosh(M_PI * u) + std::cos(M_PI * ph))
                                / (std::cosh(M_PI * u) + std::cos(M_PI * th));
            CHECK(std::fabs(w - direct) < 1e-14);
            if (xi < 1.0) {
                CHECK(w > 0.0);
                CHECK(w <= 1.0);
            }
        }
    }
    CHECK(std::fabs(wh_symbol(0.0, 0.5, 1.0)) < 1e-15);   // double zero at u=0
    CHECK(std::fabs(wh_symbol(0.0, 0.5, 0.75) - (1.0 - std::sqrt(2.0) / 2.0))
          < 1e-14);
    for (double u : {0.1, 0.8})
        CHECK(std::fabs(wh_symbol(u, 0.3, 0.3) - 1.0) < 1e-15);
}

TEST_CASE("wh_factor origin value and factorization at u = 0") {
    for (double th : {0.25, 0.5}) {
        for (double ph : {0.6, 0.9}) {
            const double f0 = wh_factor(0.0, th, ph);
            CHECK(std::fabs(f0 - std::cos(0.5 * M_PI * ph)
                                 / std::cos(0.5 * M_PI * th)) < 1e-13);
            CHECK(std::fabs(f0 * f0 - wh_symbol(0.0, th, ph)) < 1e-13);
        }
        CHECK(std::fabs(wh_factor(0.0, th, th) - 1.0) < 1e-14);
    }
}

TEST_CASE("kernel_matrix_entry parity projections") {
    KernelSpec spec;
    spec.theta = 0.5;
    spec.xi = 0.8;

    spec.parity = Parity::even;
    CHECK(std::fabs(kernel_matrix_entry(spec, 0.0, 0.0)
                    - spec.xi * k_theta(0.5, 0.0)) < 1e-16);
    spec.parity = Parity::odd;
    CHECK(kernel_matrix_entry(spec, 0.0, 0.0) == 0.0);
    spec.parity = Parity::none;
    CHECK(std::fabs(kernel_matrix_entry(spec, 2.5, 0.5)
                    - 0.8 / (2.0 * M_PI * std::cosh(1.0))) < 1e-15);
    // symmetry in (x, y) for all parities
    for (Parity p : {Parity::none, Parity::even, Parity::odd}) {
        spec.parity = p;
        CHECK(kernel_matrix_entry(spec, 0.7, 1.9)
              == kernel_matrix_entry(spec, 1.9, 0.7));
    }
}

TEST_CASE("validate rejects out-of-range specs") {
    KernelSpec spec;
    CHECK_NOTHROW(validate(spec));
    spec.xi = 1.5;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.xi = -0.1;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.xi = 1.0;
    spec.theta = 1.0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.theta = 0.5;
    spec.nu = 2.0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}
