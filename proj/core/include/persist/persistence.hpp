#pragma once

#include <vector>

namespace persist {

enum class Method { auto_select, nystrom, ode, asymptotic };

struct PersistenceQuery {
    double m = 0.0;              // magnetization bias, -1 <= m <= 1
    double ell = 1.0;            // logarithmic time window log(t2/t1)
    Method method = Method::auto_select;
};

struct PfaffianSplit {
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_total = 0.0;
};

// split the parity determinants into the signed persistence pair
PfaffianSplit pfaffian_decompose(double d_plus, double d_minus, double m);

struct PersistenceResult {
    double ell = 0.0;
    double m = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double p_total = 0.0;
    double d_plus = 0.0;
    double d_minus = 0.0;
    double kappa = 0.0;          // closed-form decay rate attached
    Method method_used = Method::auto_select;
};

PersistenceResult distribution(const PersistenceQuery& query);

// shared-work sweep over an ell grid at fixed m
std::vector<PersistenceResult>
distribution_sweep(const std::vector<double>& ells, double m,
                   Method method = Method::auto_select);

// q-state view: probability that a block keeps its initial color,
// p0 = q p_plus at m = 2/q - 1 and ell = log(t2/t1)
double potts_view(double q, double t1, double t2);

} // namespace persist
