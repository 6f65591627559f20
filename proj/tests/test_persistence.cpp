#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "persist/asymptotics.hpp"
#include "persist/persistence.hpp"

using namespace persist;

namespace {

PersistenceResult query(double ell, double m, Method method = Method::auto_select)
{
    PersistenceQuery q;
    q.ell = ell;
    q.m = m;
    q.method = method;
    return distribution(q);
}

} // namespace

TEST_CASE("pfaffian decomposition") {
    const PfaffianSplit even = pfaffian_decompose(0.7, 0.9, 0.0);
    CHECK(even.p_plus == 0.35);
    CHECK(even.p_minus == 0.35);
    CHECK(even.p_total == 0.7);

    const PfaffianSplit biased = pfaffian_decompose(0.7, 0.9, 0.5);
    CHECK(std::fabs(biased.p_plus - 0.5 * (0.7 + 0.45)) < 1e-16);
    CHECK(std::fabs(biased.p_minus - 0.5 * (0.7 - 0.45)) < 1e-16);
    CHECK(std::fabs(biased.p_plus + biased.p_minus - 0.7) < 1e-16);

    const PfaffianSplit full = pfaffian_decompose(1.0, 1.0, 1.0);
    CHECK(full.p_plus == 1.0);
    CHECK(full.p_minus == 0.0);

    CHECK_THROWS_AS(pfaffian_decompose(0.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pfaffian_decompose(0.5, 1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pfaffian_decompose(0.5, 0.9, 1.5), std::invalid_argument);
}

TEST_CASE("distribution at frozen dual-quadrature references") {
    // ell = 1, m = 0: xi = 1 parity determinants on [-1, 1]
    const PersistenceResult sym = query(1.0, 0.0, Method::nystrom);
    CHECK(std::fabs(sym.d_plus - 0.7034177101236332) < 1e-9);
    CHECK(std::fabs(sym.d_minus - 0.9786380065521879) < 1e-9);
    CHECK(std::fabs(sym.p_total - sym.d_plus) < 1e-16);
    CHECK(std::fabs(sym.p_plus - 0.5 * sym.d_plus) < 1e-16);
    CHECK(std::fabs(sym.kappa - 0.375) < 1e-15);
    CHECK(sym.method_used == Method::nystrom);

    // ell = 1, m = 0.5: xi = 0.75
    const PersistenceResult biased = query(1.0, 0.5, Method::nystrom);
    CHECK(std::fabs(biased.d_plus - 0.7774950053997429) < 1e-9);
    CHECK(std::fabs(biased.d_minus - 0.9839782317626128) < 1e-9);
    CHECK(std::fabs(biased.p_plus
                    - 0.5 * (biased.d_plus + 0.5 * biased.d_minus)) < 1e-16);
    CHECK(std::fabs(biased.p_minus
                    - 0.5 * (biased.d_plus - 0.5 * biased.d_minus)) < 1e-16);
    CHECK(std::fabs(biased.kappa - kappa(0.5)) < 1e-15);
}

TEST_CASE("degenerate endpoints") {
    const PersistenceResult start = query(0.0, 0.3);
    CHECK(start.p_total == 1.0);
    CHECK(std::fabs(start.p_plus - 0.65) < 1e-15);
    CHECK(std::fabs(start.p_minus - 0.35) < 1e-15);

    const PersistenceResult frozen = query(4.0, 1.0);
    CHECK(frozen.p_total == 1.0);
    CHECK(frozen.p_plus == 1.0);
    CHECK(frozen.p_minus == 0.0);

    CHECK_THROWS_AS(query(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(query(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("mirror symmetry and monotonicity") {
    for (double ell : {0.5, 2.0, 6.0}) {
        for (double m : {0.25, 0.6}) {
            const PersistenceResult a = query(ell, m);
            const PersistenceResult b = query(ell, -m);
            CHECK(std::fabs(a.p_plus - b.p_minus) < 1e-14);
            CHECK(std::fabs(a.p_minus - b.p_plus) < 1e-14);
            CHECK(std::fabs(a.p_total - b.p_total) < 1e-14);
        }
    }
    double prev = 1.0 + 1e-12;
    for (double ell : {0.5, 1.0, 2.0, 4.0, 8.0, 12.0}) {
        const PersistenceResult r = query(ell, 0.5);
        CHECK(r.p_total < prev);
        CHECK(r.p_plus > 0.0);
        CHECK(r.p_minus > 0.0);
        CHECK(r.p_plus <= 1.0);
        prev = r.p_total;
    }
    // p_plus non-decreasing in m at fixed ell
    double prev_p = -1.0;
    for (double m : {-0.75, -0.25, 0.0, 0.25, 0.75}) {
        const PersistenceResult r = query(3.0, m);
        CHECK(r.p_plus > prev_p);
        prev_p = r.p_plus;
    }
}

TEST_CASE("backend cross-agreement") {
    for (double ell : {2.0, 6.0, 10.0}) {
        for (double m : {0.0, 0.5}) {
            const PersistenceResult ny = query(ell, m, Method::nystrom);
            const PersistenceResult od = query(ell, m, Method::ode);
            CHECK(std::fabs(ny.p_plus - od.p_plus) < 1e-6);
            CHECK(std::fabs(ny.p_minus - od.p_minus) < 1e-6);
            CHECK(std::fabs(ny.p_total - od.p_total) < 1e-6);
        }
    }
    // auto-selection: nystrom up to ell = 12, ode beyond
    CHECK(query(11.0, 0.0).method_used == Method::nystrom);
    CHECK(query(14.0, 0.0).method_used == Method::ode);
    // asymptotic backend only on explicit request
    const PersistenceResult as = query(15.0, 0.0, Method::asymptotic);
    const PersistenceResult od = query(15.0, 0.0, Method::ode);
    CHECK(as.method_used == Method::asymptotic);
    CHECK(std::fabs(as.p_total - od.p_total) < 1e-3 * od.p_total);
}

TEST_CASE("decay slope matches kappa on ell in [15, 25]") {
    for (double m : {0.0, 0.5}) {
        const PersistenceResult lo = query(15.0, m, Method::ode);
        const PersistenceResult hi = query(25.0, m, Method::ode);
        const double slope = (std::log(lo.p_total) - std::log(hi.p_total)) / 10.0;
        CHECK(std::fabs(slope - kappa(m)) < 1e-3);
    }
}

TEST_CASE("parity determinants approach the |m| amplitude ratio") {
    // lim d_plus / d_minus = |m|; equivalently int_0^inf S = -log|m|
    const double m = 0.5;
    PersistenceQuery q;
    q.ell = 25.0;
    q.m = m;
    q.method = Method::ode;
    const PersistenceResult r = distribution(q);
    CHECK(std::fabs(r.d_plus / r.d_minus - m) < 1e-3);
}

TEST_CASE("distribution_sweep shares work across the grid") {
    const std::vector<double> ells{0.0, 1.0, 3.0, 7.0};
    const std::vector<PersistenceResult> sweep =
        distribution_sweep(ells, 0.25, Method::ode);
    REQUIRE(sweep.size() == ells.size());
    for (std::size_t i = 0; i < ells.size(); ++i) {
        const PersistenceResult single = query(ells[i], 0.25, Method::ode);
        CHECK(sweep[i].ell == ells[i]);
        CHECK(std::fabs(sweep[i].p_total - single.p_total) < 1e-12);
        CHECK(std::fabs(sweep[i].p_plus - single.p_plus) < 1e-12);
    }
}

TEST_CASE("potts view") {
    // q = 1 is the single-color chain: p0 = 1 for any window
    CHECK(std::fabs(potts_view(1.0, 3.0, 17.0) - 1.0) < 1e-14);
    // q = 2 doubles the symmetric p_plus
    const double p0 = potts_view(2.0, 10.0, 10.0 * std::exp(2.0));
    const PersistenceResult ising = query(2.0, 0.0);
    CHECK(std::fabs(p0 - 2.0 * ising.p_plus) < 1e-12);
    CHECK(std::fabs(p0 - ising.p_total) < 1e-12);

    CHECK_THROWS_AS(potts_view(0.5, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(potts_view(3.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("potts q = 3 slope reproduces the DHP exponent") {
    // the two parity terms cancel at leading order for m < 0, leaving
    // the slower theta_hat(3) = kappa + 2 (1 - phi) decay
    const double t1 = 1.0;
    const double la = 18.0, lb = 26.0;
    const double pa = potts_view(3.0, t1, t1 * std::exp(la));
    const double pb = potts_view(3.0, t1, t1 * std::exp(lb));
    const double slope = (std::log(pa) - std::log(pb)) / (lb - la);
    CHECK(std::fabs(slope - dhp_exponent(3.0)) < 0.01);
}
