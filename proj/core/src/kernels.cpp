#include "persist/kernels.hpp"
#include "persist/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace persist {

namespace {

const double kPi = 3.14159265358979323846;

// sinh(a t) / sinh(t) for t >= 0, 0 <= a < 1, overflow safe
double sinh_ratio(double a, double t)
{
    if (t < 1e-6)
        return a * (1.0 + (a * a - 1.0) * t * t / 6.0);
    if (t > 25.0)
        return std::exp((a - 1.0) * t) * (1.0 - std::exp(-2.0 * a * t))
                                       / (1.0 - std::exp(-2.0 * t));
    return std::sinh(a * t) / std::sinh(t);
}

} // namespace

void validate(const KernelSpec& spec)
{
    if (!(spec.theta > -1.0 && spec.theta < 1.0))
        throw std::invalid_argument("KernelSpec: theta must lie in (-1, 1)");
    if (spec.nu != 1.0)
        throw std::invalid_argument("KernelSpec: nu is pinned to 1");
    if (!(spec.xi >= 0.0 && spec.xi <= 1.0))
        throw std::invalid_argument("KernelSpec: xi must lie in [0, 1]");
}

double k_theta(double theta, double s)
{
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("k_theta: theta must lie in (-1, 1)");
    const double a = std::fabs(theta);   // K is even in theta and in s
    const double t = std::fabs(s);
    if (a < 1e-7)
        return (2.0 / (kPi * kPi)) * (t < 1e-6 ? 1.0 - t * t / 6.0
                                               : t / std::sinh(t));
    const double pref = 1.0 / (kPi * std::tan(kPi * a / 2.0));
    return pref * sinh_ratio(a, t);
}

double markov_kernel(double s)
{
    return 0.5 * std::exp(-std::fabs(s));
}

double kernel_value(const KernelSpec& spec, double s)
{
    if (spec.family == KernelFamily::markov)
        return markov_kernel(s);
    return k_theta(spec.theta, s);
}

double kernel_matrix_entry(const KernelSpec& spec, double x, double y)
{
    validate(spec);
    switch (spec.parity) {
    case Parity::even:
        return 0.5 * spec.xi * (kernel_value(spec, x - y) + kernel_value(spec, x + y));
    case Parity::odd:
        return 0.5 * spec.xi * (kernel_value(spec, x - y) - kernel_value(spec, x + y));
    default:
        return spec.xi * kernel_value(spec, x - y);
    }
}

double fourier_k_theta(double theta, double u)
{
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("fourier_k_theta: theta must lie in (-1, 1)");
    const double c = std::cos(kPi * theta);
    return (1.0 + c) / (std::cosh(kPi * u) + c);
}

double wh_symbol(double u, double theta, double phi)
{
    return (std::cosh(kPi * u) + std::cos(kPi * phi))
         / (std::cosh(kPi * u) + std::cos(kPi * theta));
}

double wh_factor(double z, double theta, double phi)
{
    const double num = gamma_signed(0.5 * (1.0 + theta) - z)
                     * gamma_signed(0.5 * (1.0 - theta) - z);
    const double den = gamma_signed(0.5 * (1.0 + phi) - z)
                     * gamma_signed(0.5 * (1.0 - phi) - z);
    return num / den;
}

double phi_of_xi(double xi, double theta)
{
    if (!(xi >= 0.0 && xi <= 1.0))
        throw std::domain_error("phi_of_xi: xi must lie in [0, 1]");
    if (!(theta > -1.0 && theta < 1.0))
        throw std::domain_error("phi_of_xi: theta must lie in (-1, 1)");
    const double c = std::sqrt(1.0 - xi) * std::cos(kPi * theta / 2.0);
    return (2.0 / kPi) * std::acos(c);
}

double xi_of_phi(double phi, double theta)
{
    const double cp = std::cos(kPi * phi / 2.0);
    const double ct = std::cos(kPi * theta / 2.0);
    return 1.0 - (cp * cp) / (ct * ct);
}

} // namespace persist
