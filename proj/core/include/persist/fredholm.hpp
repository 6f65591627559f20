#pragma once

#include <vector>

#include "persist/kernels.hpp"

namespace persist {

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes on [a, b]
Quadrature gauss_legendre(int n, double a, double b);

// default node count for an interval of length L
int default_node_count(double length);

// det(I - xi K^parity) on [a, b] by the symmetrized Nystrom method.
// Parity projections require a == 0; they mirror the grid to [-b, b].
// n = 0 picks the default node count. The markov family is refined by a
// two-level Richardson ladder over n/4, n/2, n to absorb the |s| kink.
double fredholm_det(const KernelSpec& spec, double a, double b, int n = 0);

// leading k eigenvalues of the symmetrized Nystrom matrix, descending
std::vector<double> eigenvalues(const KernelSpec& spec, double a, double b,
                                int n, int k);

struct ResolventSample {
    double T = 0.0;
    double R = 0.0;               // diagonal value R(T, T)
    double S = 0.0;               // anti-diagonal value R(-T, T)
    bool conditioning_warning = false;
};

// resolvent kernel of xi K on the symmetric interval [-T, T]
ResolventSample resolvent_RS(const KernelSpec& spec, double T, int n = 0);

// d/d ell of log det on an interval of full length ell.
// parity == none uses [0, ell]; parity splits use the mirrored [-ell/2, ell/2].
double log_det_derivative(const KernelSpec& spec, double ell, int n = 0);

// R(T,T)^2 - R(-T,T)^2, the two-point Janossy-type combination
double janossy_two_point(const KernelSpec& spec, double T, int n = 0);

} // namespace persist
