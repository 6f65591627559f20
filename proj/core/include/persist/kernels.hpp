#pragma once

namespace persist {

enum class Parity { none, even, odd };
enum class KernelFamily { ktheta, markov };

// operator spec: xi * K applied on an interval, optionally split by parity
struct KernelSpec {
    double theta = 0.5;          // -1 < theta < 1
    double nu = 1.0;             // scale parameter, pinned to 1
    double xi = 1.0;             // coupling, 0 <= xi <= 1
    Parity parity = Parity::none;
    KernelFamily family = KernelFamily::ktheta;
};

void validate(const KernelSpec& spec);

// K_theta(s) = cot(pi theta / 2) / pi * sinh(theta s) / sinh(s)
double k_theta(double theta, double s);

// exponential kernel (1/2) exp(-|s|) of the two-state Markov chain
double markov_kernel(double s);

// translation-invariant profile of the chosen family, without xi or parity
double kernel_value(const KernelSpec& spec, double s);

// xi-weighted, parity-projected kernel value at (x, y)
double kernel_matrix_entry(const KernelSpec& spec, double x, double y);

// Fourier transform of K_theta: (1 + cos pi theta) / (cosh pi u + cos pi theta)
double fourier_k_theta(double theta, double u);

// symbol of I - xi K_theta expressed through the uniformizer phi
double wh_symbol(double u, double theta, double phi);

// scalar Wiener-Hopf factor built from Gamma ratios
double wh_factor(double z, double theta, double phi);

// uniformizer phi(xi) in [theta, 1] and its inverse
double phi_of_xi(double xi, double theta);
double xi_of_phi(double phi, double theta);

} // namespace persist
