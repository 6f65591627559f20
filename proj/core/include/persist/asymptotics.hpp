#pragma once

namespace persist {

// e(x) = (cosh theta x - cosh phi x) / (x sinh x), even, e(0) = (theta^2 - phi^2)/2
double e_func(double x, double theta, double phi);

// linear coefficient A = (theta^2 - phi^2) / 2 of log det
double a_const(double theta, double phi);

// constant term B in closed Barnes-function form, phi < 1
double b_const(double theta, double phi);

// B as the defining integral int_0^inf x e(x)^2 dx, quadrature cross-check
double b_const_integral(double theta, double phi);

// amplitude C of the exponential remainder, C = (c / (2(1-phi)))^2
double widom_dyson_c(double theta, double phi);

// two-term tail of the Wiener-Hopf symbol transform
double f_leading(double ell, double theta, double phi);

// Tr L(ell) = int_0^inf s f(ell+s)^2 ds for the two-term tail
double trace_tail(double ell, double theta, double phi);

// log det models on an interval of full length ell, phi < 1
double logdet_expansion(double ell, double theta, double phi);           // A ell + B - C e^{-2(1-phi) ell}
double logdet_expansion_resummed(double ell, double theta, double phi);  // A ell + B + log(1 - C e^{-2(1-phi) ell})

// h(ell) = A + 2 (1-phi) C e^{-2(1-phi) ell}, the slope approached from above
double h_asym(double ell, double theta, double phi);

// critical point xi = 1 (phi = 1): log det = a ell + log(ell + c) + b + small
struct CriticalConstants {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

CriticalConstants critical_constants(double theta);

// defining integral for b at the critical point, quadrature cross-check
double critical_b_integral(double theta);

// critical log det model a ell + log(ell + c) + b
double critical_logdet(double ell, double theta);

// persistence exponent kappa(m) = -1/8 + (2/pi^2) arccos^2 sqrt(m^2/2)
double kappa(double m);

// q-state exponent theta_hat(q) = -1/8 + (2/pi^2) arccos^2 ((2-q)/(sqrt 2 q))
double dhp_exponent(double q);

// magnetization bias equivalent to a q-state zero-temperature quench
double potts_ising_map(double q);

} // namespace persist
