#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace persist {

enum class IcConvention { density_normalized, paper };

struct OdeConfig {
    double theta = 0.5;
    double xi = 1.0;
    IcConvention ic = IcConvention::density_normalized;
    double x_max = 30.0;
    double tol = 1e-10;
    double max_step = 0.02;
};

// Cauchy trajectory of the slope function H(x) = d/dx log D(full length x),
// integrated in the explicit third-order form together with the two
// quadratures J_-/J_+ = int_0^x (H -+ sqrt(-H')) / 2 that rebuild the
// parity determinants
struct CauchyTrajectory {
    double theta = 0.5;
    double xi = 1.0;
    double x0 = 1e-4;                 // series / integrator handoff
    double x_max = 30.0;
    double h0 = 0.0;                  // H(0+)
    std::array<double, 7> series{};   // H0, a1 .. a6 about x = 0
    bool xi_zero = false;

    // accepted steps: state, third derivative, quadratures, raw residual
    std::vector<double> x, H, Hp, Hpp, H3, Jm, Jp, residual;

    double eval_H(double xq) const;
    double eval_Hp(double xq) const;
    double eval_Hpp(double xq) const;
    double eval_Jm(double xq) const;  // log D^+ at full length xq
    double eval_Jp(double xq) const;  // log D^- at full length xq
};

CauchyTrajectory integrate_H(const OdeConfig& cfg);

// first-integral residual LHS - theta^2; *scale receives 1 + sum |terms|
double hazzidakis_residual(double x, double H, double Hp, double Hpp,
                           double theta, double* scale = nullptr);

enum class SiblingKind { rs_pair, r_ode, mu_ode, s_ode };

// scaled residual series of a sibling equation at trajectory nodes x >= 0.1
std::vector<double> siblings_residual(SiblingKind kind,
                                      const CauchyTrajectory& traj);

// parity determinants D^sign at the requested full lengths;
// sign = +1 for D^+, -1 for D^-
std::vector<std::pair<double, double>>
det_from_H(const CauchyTrajectory& traj, int sign,
           const std::vector<double>& ells);

// decay rate -lim H estimated from the trajectory endpoint plus the
// known tail correction (1/(x+c) at xi = 1, exponential below)
double kappa_from_trajectory(const CauchyTrajectory& traj);

// accepted-step dump with columns x,H,Hp,residual
void write_trajectory_csv(const CauchyTrajectory& traj,
                          const std::string& path);

} // namespace persist
