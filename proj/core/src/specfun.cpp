#include "persist/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace persist {

namespace {

const double kZetaPrimeMinusOne = -0.16542114370045092921;
const double kEulerGamma = 0.57721566490153286061;
const double kLogTwoPi = 1.83787706640934548356;

} // namespace

double zeta_prime_minus_one() { return kZetaPrimeMinusOne; }

double euler_gamma() { return kEulerGamma; }

double log_gamma(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("log_gamma: requires z > 0");
    return std::lgamma(z);
}

double gamma_signed(double z)
{
    if (z > 0.0)
        return std::exp(std::lgamma(z));
    if (z == std::floor(z))
        throw std::domain_error("gamma_signed: pole at non-positive integer");
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const double pi = 3.14159265358979323846;
    return pi / (std::sin(pi * z) * std::exp(std::lgamma(1.0 - z)));
}

double digamma(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("digamma: requires z > 0");
    // shift into the asymptotic region with Psi(z) = Psi(z+1) - 1/z
    double acc = 0.0;
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    const double w = 1.0 / (z * z);
    double series = 0.0;
    series += w * (1.0 / 12.0);
    series -= w * w * (1.0 / 120.0);
    series += w * w * w * (1.0 / 252.0);
    series -= w * w * w * w * (1.0 / 240.0);
    series += w * w * w * w * w * (1.0 / 132.0);
    series -= w * w * w * w * w * w * (691.0 / 32760.0);
    series += w * w * w * w * w * w * w * (1.0 / 12.0);
    return acc + std::log(z) - 0.5 / z - series;
}

namespace {

// ln G(1+y) for y >= 13 by the asymptotic expansion
double log_barnes_g_asym(double y)
{
    const double y2 = y * y;
    double v = 0.5 * y2 * std::log(y) - 0.75 * y2 + 0.5 * y * kLogTwoPi
             - std::log(y) / 12.0 + kZetaPrimeMinusOne;
    // sum B_{2k+2} / (2k (2k+2) y^{2k})
    const double w = 1.0 / y2;
    double series = 0.0;
    series -= w * (1.0 / 240.0);
    series += w * w * (1.0 / 1008.0);
    series -= w * w * w * (1.0 / 1440.0);
    series += w * w * w * w * (1.0 / 1056.0);
    series -= w * w * w * w * w * (691.0 / 327600.0);
    return v + series;
}

} // namespace

double log_barnes_g(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("log_barnes_g: requires z > 0");
    // raise the argument with ln G(z) = ln G(z+1) - ln Gamma(z)
    double acc = 0.0;
    while (z < 14.0) {
        acc -= std::lgamma(z);
        z += 1.0;
    }
    return acc + log_barnes_g_asym(z - 1.0);
}

double glaisher_log()
{
    return 1.0 / 12.0 - kZetaPrimeMinusOne;
}

} // namespace persist
