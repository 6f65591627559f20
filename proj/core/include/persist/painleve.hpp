#pragma once

#include <array>
#include <string>
#include <vector>

#include "persist/resolvent_ode.hpp"

namespace persist {

// local monodromy exponents in the slot order (infinity, 0, 1, t)
struct Monodromy {
    double ta = 0.0;
    double tb = 0.0;
    double tc = 0.0;
    double td = 0.0;
};

struct PviCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

PviCoefficients coefficients_from_monodromy(const Monodromy& m);
Monodromy monodromy_from_coefficients(const PviCoefficients& c);
double weyl_theta(const Monodromy& m);       // Theta = (1 - sum exponents)/2

// exponent quadruple of the sigma form, 2b1 = tb+tc, 2b2 = tb-tc,
// 2b3 = td-1+ta, 2b4 = td-1-ta
std::array<double, 4> b_from_monodromy(const Monodromy& m);

// sigma-form residual for h(s); returns LHS with *scale = 1 + sum |terms|
double sigma_residual(double s, double h, double hp, double hpp,
                      const std::array<double, 4>& b, double* scale = nullptr);

// second-order residual of Q(t) against the standard equation
double pvi_residual(double t, double Q, double Qp, double Qpp,
                    const PviCoefficients& c, double* scale = nullptr);

// sigma-form variables mapped from a trajectory node
struct SigmaPoint {
    double x = 0.0;                          // trajectory abscissa
    double s = 0.0;                          // (1 + coth x)/2
    double h = 0.0, hp = 0.0, hpp = 0.0;     // h and d/ds derivatives
};

std::vector<SigmaPoint> h_from_H(const CauchyTrajectory& traj,
                                 double x_lo = 0.1, double x_hi = 1e300);

// companion solution of the second exponent set, q = s - h/h'
double q_from_h(double s, double h, double hp);

// Okamoto Hamiltonian, impulsion, motion and Lagrangian
double hamiltonian(double s, double q, double p, const Monodromy& m);
double impulsion(double s, double q, double qp, const Monodromy& m);
double qprime_from_impulsion(double s, double q, double p, const Monodromy& m);
double lagrangian(double s, double q, double p, const Monodromy& m);

// physical branch of the first exponent set recovered from (h, h')
struct WallRecovery {
    double q = 0.0;
    double p = 0.0;
    double qprime = 0.0;                     // implicit derivative dq/ds
};

WallRecovery wall_from_sigma(double s, double h, double hp, double hpp,
                             double theta);

// quadratic fold between exponent patterns {2a,0,0,2d} at s and {a,a,d,d} at t
struct FoldPoint { double t = 0.0, Q = 0.0, P = 0.0; };
struct WallPoint { double s = 0.0, q = 0.0, p = 0.0; };

WallPoint fold_up(const FoldPoint& f, double a, double d);
FoldPoint fold_down(const WallPoint& w, double a, double d,
                    int branch_t = 1, int branch_q = 1);

// residual of the Chazy-type scalar equation for g(t) = sqrt(-h')
double chazy_residual(double t, double g, double gp, double gpp,
                      double theta, double* scale = nullptr);

enum class MetricBranch { tanh_branch, coth_branch };

struct MetricPoint { double x = 0.0, t = 0.0, g = 0.0, gp = 0.0, gpp = 0.0; };

// g = sqrt(-h') over t = tanh^2(x/2) or coth^2(x/2)
std::vector<MetricPoint> metric_g(const CauchyTrajectory& traj,
                                  MetricBranch branch,
                                  double x_lo = 0.5, double x_hi = 5.0);

// derivative at t[2] of the Lagrange interpolant through five points
double five_point_derivative(const double* t, const double* y);

// fold / permutation / relabel chain driven by one trajectory
struct ManinReport {
    int points = 0;
    double max_wall_identity = 0.0;        // h vs s(s-1) H at the wall set
    double max_level2_residual = 0.0;      // q2(s2) under (1/2, 0, 0, 1/2)
    double max_manin_residual = 0.0;       // relabeled Q(t) with zero coefficients
    double max_hamiltonian_defect = 0.0;   // folded Hamiltonian relation
    double max_lagrangian_defect = 0.0;    // L1 ds1 = 2 L0 dt0
    double max_lagrangian_net = 0.0;       // L2 ds2 = 4 L0 dt0
    double max_g_defect = 0.0;             // 2 P0 Q0 vs sqrt(-h')
    double max_qprime_defect = 0.0;        // implicit dq/ds vs Hamilton flow
    double min_exclusion = 0.0;            // min |Q0 - sqrt(t0)|
    double min_p = 0.0, max_p = 0.0;       // impulsion range on the window
};

ManinReport manin_verification_pipeline(const CauchyTrajectory& traj,
                                        double x_lo = 0.5, double x_hi = 5.0);

// surface data attached to the trajectory
struct GeometryReport {
    double kappa = 0.0;
    double willmore_integral = 0.0;        // 2 pi (H(0+) - H(x_max))
    double willmore_boundary = 0.0;        // 2 pi (kappa - xi K_theta(0))
    double willmore_display = 0.0;         // 2 pi kappa - xi/4
    double discrepancy = 0.0;              // boundary - display
    std::vector<double> x, meanH, skewL, gaussK;
};

GeometryReport geometry_report(const CauchyTrajectory& traj);

// dump of the sigma-form and metric series for external inspection
void write_mapped_series_csv(const CauchyTrajectory& traj,
                             const std::string& path);

} // namespace persist
