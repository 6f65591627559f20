#pragma once

namespace persist {

// ln Gamma(z), z > 0
double log_gamma(double z);

// Gamma(z) for any non-pole real z (reflection formula for z < 0)
double gamma_signed(double z);

// digamma Psi(z) = Gamma'(z)/Gamma(z), z > 0
double digamma(double z);

// ln G(z) for the Barnes function, z > 0; G(z+1) = Gamma(z) G(z), G(1) = 1
double log_barnes_g(double z);

// ln A for the Glaisher-Kinkelin constant, ln A = 1/12 - zeta'(-1)
double glaisher_log();

// stored high-precision constants
double zeta_prime_minus_one();
double euler_gamma();

} // namespace persist
