#include "persist/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "persist/fredholm.hpp"
#include "persist/specfun.hpp"

namespace persist {

namespace {

const double kPi = 3.14159265358979323846;

void check_pair(double theta, double phi)
{
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("asymptotics: theta must lie in (-1, 1)");
    if (!(phi >= std::fabs(theta) && phi <= 1.0))
        throw std::domain_error("asymptotics: phi must lie in [|theta|, 1]");
}

void check_subcritical(double theta, double phi)
{
    check_pair(theta, phi);
    if (phi >= 1.0)
        throw std::domain_error("asymptotics: phi = 1 is the critical point, "
                                "use critical_constants");
}

// leading amplitude c of f(ell) ~ c e^{-(1-phi) ell}
double small_c(double theta, double phi)
{
    if (phi == theta)
        return 0.0;
    const double pref = 0.5 * (theta * theta - phi * phi);
    return pref * gamma_signed(0.5 * (theta - phi))
                * gamma_signed(0.5 * (-theta - phi))
                / (gamma_signed(0.5 * (theta + phi))
                 * gamma_signed(0.5 * (phi - theta)))
                * gamma_signed(phi) / gamma_signed(1.0 - phi);
}

// subleading amplitude of f(ell), the e^{-(1+phi) ell} companion term
double small_c2(double theta, double phi)
{
    if (phi == theta)
        return 0.0;
    const double pref = 0.5 * (theta * theta - phi * phi);
    return pref * gamma_signed(0.5 * (theta + phi))
                * gamma_signed(0.5 * (phi - theta))
                / (gamma_signed(0.5 * (theta - phi))
                 * gamma_signed(0.5 * (-theta - phi)))
                * gamma_signed(-phi) / gamma_signed(1.0 + phi);
}

// composite Gauss-Legendre quadrature over [0, upper] in fixed panels
template <typename F>
double integrate_panels(F&& f, double upper, double panel = 5.0, int m = 24)
{
    static thread_local Quadrature unit;
    if (static_cast<int>(unit.nodes.size()) != m)
        unit = gauss_legendre(m, 0.0, 1.0);
    double total = 0.0;
    double a = 0.0;
    while (a < upper) {
        const double b = std::min(a + panel, upper);
        const double len = b - a;
        for (int i = 0; i < m; ++i)
            total += len * unit.weights[i] * f(a + len * unit.nodes[i]);
        a = b;
    }
    return total;
}

} // namespace

double e_func(double x, double theta, double phi)
{
    check_pair(theta, phi);
    const double t = std::fabs(theta);
    const double p = std::fabs(phi);
    const double ax = std::fabs(x);
    if (ax < 1e-6) {
        // (cosh t x - cosh p x)/(x sinh x) = (t^2-p^2)/2 + (t^4-p^4) x^2/24 + ...
        const double t2 = t * t, p2 = p * p;
        return 0.5 * (t2 - p2) + ax * ax * ((t2 * t2 - p2 * p2) / 24.0
                                            - (t2 - p2) / 12.0);
    }
    if (ax > 25.0) {
        const double num = std::exp((t - 1.0) * ax) * (1.0 + std::exp(-2.0 * t * ax))
                         - std::exp((p - 1.0) * ax) * (1.0 + std::exp(-2.0 * p * ax));
        return num / (ax * (1.0 - std::exp(-2.0 * ax)));
    }
    return (std::cosh(t * ax) - std::cosh(p * ax)) / (ax * std::sinh(ax));
}

double a_const(double theta, double phi)
{
    check_pair(theta, phi);
    return 0.5 * (theta * theta - phi * phi);
}

double b_const(double theta, double phi)
{
    check_subcritical(theta, phi);
    const double sp = 0.5 * (theta + phi);
    const double dm = 0.5 * (theta - phi);
    return 2.0 * (log_barnes_g(1.0 + sp) + log_barnes_g(1.0 - sp)
                + log_barnes_g(1.0 + dm) + log_barnes_g(1.0 - dm))
         - (log_barnes_g(1.0 + theta) + log_barnes_g(1.0 - theta)
          + log_barnes_g(1.0 + phi) + log_barnes_g(1.0 - phi));
}

double b_const_integral(double theta, double phi)
{
    check_subcritical(theta, phi);
    const double upper = 40.0 + 40.0 / (1.0 - phi);
    return integrate_panels([&](double x) {
        const double e = e_func(x, theta, phi);
        return x * e * e;
    }, upper);
}

double widom_dyson_c(double theta, double phi)
{
    check_subcritical(theta, phi);
    const double c = small_c(theta, phi);
    const double r = c / (2.0 * (1.0 - phi));
    return r * r;
}

double f_leading(double ell, double theta, double phi)
{
    check_subcritical(theta, phi);
    return small_c(theta, phi) * std::exp(-(1.0 - phi) * ell)
         + small_c2(theta, phi) * std::exp(-(1.0 + phi) * ell);
}

double trace_tail(double ell, double theta, double phi)
{
    check_subcritical(theta, phi);
    const double c = small_c(theta, phi);
    const double c2 = small_c2(theta, phi);
    const double a = 1.0 - phi;
    const double b = 1.0 + phi;
    // int_0^inf s f(ell+s)^2 ds with the two-term f
    return c * c * std::exp(-2.0 * a * ell) / (4.0 * a * a)
         + 2.0 * c * c2 * std::exp(-(a + b) * ell) / ((a + b) * (a + b))
         + c2 * c2 * std::exp(-2.0 * b * ell) / (4.0 * b * b);
}

double logdet_expansion(double ell, double theta, double phi)
{
    return a_const(theta, phi) * ell + b_const(theta, phi)
         - widom_dyson_c(theta, phi) * std::exp(-2.0 * (1.0 - phi) * ell);
}

double logdet_expansion_resummed(double ell, double theta, double phi)
{
    return a_const(theta, phi) * ell + b_const(theta, phi)
         + std::log1p(-widom_dyson_c(theta, phi)
                      * std::exp(-2.0 * (1.0 - phi) * ell));
}

double h_asym(double ell, double theta, double phi)
{
    return a_const(theta, phi)
         + 2.0 * (1.0 - phi) * widom_dyson_c(theta, phi)
               * std::exp(-2.0 * (1.0 - phi) * ell);
}

CriticalConstants critical_constants(double theta)
{
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("critical_constants: theta must lie in (-1, 1)");
    const double t = std::fabs(theta);
    CriticalConstants out;
    out.a = 0.5 * (t * t - 1.0);
    out.c = -2.0 * euler_gamma() - digamma(0.5 * (1.0 + t))
                                 - digamma(0.5 * (1.0 - t));
    out.b = 2.0 * std::log(kPi) - t * t * std::log(4.0)
          + 8.0 * log_barnes_g(0.5)
          + log_barnes_g(1.0 - t) + log_barnes_g(1.0 + t)
          - 4.0 * (log_barnes_g(1.0 - 0.5 * t) + log_barnes_g(1.0 + 0.5 * t));
    return out;
}

double critical_b_integral(double theta)
{
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("critical_b_integral: theta must lie in (-1, 1)");
    const double t = std::fabs(theta);
    const double upper = 40.0 + 40.0 / (1.0 - t);
    return integrate_panels([&](double x) {
        if (x < 1e-12)
            return -2.0 + x * e_func(x, t, 1.0) * e_func(x, t, 1.0);
        const double e = e_func(x, t, 1.0);
        return x * e * e - (1.0 - std::exp(-2.0 * x)) / x;
    }, upper);
}

double critical_logdet(double ell, double theta)
{
    const CriticalConstants cc = critical_constants(theta);
    return cc.a * ell + std::log(ell + cc.c) + cc.b;
}

double kappa(double m)
{
    if (!(m >= -1.0 && m <= 1.0))
        throw std::domain_error("kappa: m must lie in [-1, 1]");
    const double ac = std::acos(std::sqrt(0.5 * m * m));
    return -0.125 + (2.0 / (kPi * kPi)) * ac * ac;
}

double dhp_exponent(double q)
{
    if (!(q >= 1.0))
        throw std::domain_error("dhp_exponent: q must be >= 1");
    const double ac = std::acos((2.0 - q) / (std::sqrt(2.0) * q));
    return -0.125 + (2.0 / (kPi * kPi)) * ac * ac;
}

double potts_ising_map(double q)
{
    if (!(q >= 1.0))
        throw std::domain_error("potts_ising_map: q must be >= 1");
    return 2.0 / q - 1.0;
}

} // namespace persist
