#include "persist/painleve.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "persist/kernels.hpp"

namespace persist {

namespace {

const double kPi = 3.14159265358979323846;

double sq(double v) { return v * v; }

} // namespace

PviCoefficients coefficients_from_monodromy(const Monodromy& m)
{
    PviCoefficients c;
    c.alpha = 0.5 * m.ta * m.ta;
    c.beta = -0.5 * m.tb * m.tb;
    c.gamma = 0.5 * m.tc * m.tc;
    c.delta = 0.5 * (1.0 - m.td * m.td);
    return c;
}

Monodromy monodromy_from_coefficients(const PviCoefficients& c)
{
    if (c.alpha < 0.0 || c.beta > 0.0 || c.gamma < 0.0 || c.delta > 0.5)
        throw std::domain_error("monodromy_from_coefficients: squared "
                                "exponents must be non-negative");
    Monodromy m;
    m.ta = std::sqrt(2.0 * c.alpha);
    m.tb = std::sqrt(-2.0 * c.beta);
    m.tc = std::sqrt(2.0 * c.gamma);
    m.td = std::sqrt(1.0 - 2.0 * c.delta);
    return m;
}

double weyl_theta(const Monodromy& m)
{
    return 0.5 * (1.0 - m.ta - m.tb - m.tc - m.td);
}

std::array<double, 4> b_from_monodromy(const Monodromy& m)
{
    return {0.5 * (m.tb + m.tc), 0.5 * (m.tb - m.tc),
            0.5 * (m.td - 1.0 + m.ta), 0.5 * (m.td - 1.0 - m.ta)};
}

double sigma_residual(double s, double h, double hp, double hpp,
                      const std::array<double, 4>& b, double* scale)
{
    const double b1 = b[0], b2 = b[1], b3 = b[2], b4 = b[3];
    const double t1 = hp * sq(s * (s - 1.0) * hpp);
    const double t2 = sq(hp * hp - 2.0 * hp * (s * hp - h) + b1 * b2 * b3 * b4);
    const double t3 = -(hp + b1 * b1) * (hp + b2 * b2)
                     * (hp + b3 * b3) * (hp + b4 * b4);
    if (scale)
        *scale = 1.0 + std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
    return t1 + t2 + t3;
}

double pvi_residual(double t, double Q, double Qp, double Qpp,
                    const PviCoefficients& c, double* scale)
{
    const double r1 = Qpp;
    const double r2 = -0.5 * (1.0 / Q + 1.0 / (Q - 1.0) + 1.0 / (Q - t))
                    * Qp * Qp;
    const double r3 = (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (Q - t)) * Qp;
    const double bracket = c.alpha + c.beta * t / (Q * Q)
                         + c.gamma * (t - 1.0) / sq(Q - 1.0)
                         + c.delta * t * (t - 1.0) / sq(Q - t);
    const double r4 = -Q * (Q - 1.0) * (Q - t) / (t * t * sq(t - 1.0)) * bracket;
    if (scale)
        *scale = 1.0 + std::fabs(r1) + std::fabs(r2) + std::fabs(r3)
                     + std::fabs(r4);
    return r1 + r2 + r3 + r4;
}

std::vector<SigmaPoint> h_from_H(const CauchyTrajectory& traj,
                                 double x_lo, double x_hi)
{
    std::vector<SigmaPoint> out;
    if (traj.xi_zero)
        return out;
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        const double x = traj.x[k];
        if (x < x_lo || x > x_hi)
            continue;
        const double sh = std::sinh(x), ch = std::cosh(x);
        SigmaPoint pt;
        pt.x = x;
        pt.s = 0.5 * (1.0 + ch / sh);
        pt.h = -0.5 * traj.H[k];
        pt.hp = traj.Hp[k] * sh * sh;
        pt.hpp = -2.0 * sh * sh
               * (traj.Hpp[k] * sh * sh + 2.0 * traj.Hp[k] * sh * ch);
        out.push_back(pt);
    }
    return out;
}

double q_from_h(double s, double h, double hp)
{
    if (hp == 0.0)
        throw std::domain_error("q_from_h: h' must be nonzero");
    return s - h / hp;
}

double hamiltonian(double s, double q, double p, const Monodromy& m)
{
    const double Theta = weyl_theta(m);
    const double comb = m.tb / q + m.tc / (q - 1.0) + (m.td - 1.0) / (q - s);
    return q * (q - 1.0) * (q - s) / (s * (s - 1.0))
         * (p * p - p * comb + (m.ta + Theta) * Theta / (q * (q - 1.0)));
}

double impulsion(double s, double q, double qp, const Monodromy& m)
{
    const double comb = m.tb / q + m.tc / (q - 1.0) + (m.td - 1.0) / (q - s);
    return 0.5 * s * (s - 1.0) * qp / (q * (q - 1.0) * (q - s)) + 0.5 * comb;
}

double qprime_from_impulsion(double s, double q, double p, const Monodromy& m)
{
    const double comb = m.tb / q + m.tc / (q - 1.0) + (m.td - 1.0) / (q - s);
    return q * (q - 1.0) * (q - s) / (s * (s - 1.0)) * (2.0 * p - comb);
}

double lagrangian(double s, double q, double p, const Monodromy& m)
{
    return p * qprime_from_impulsion(s, q, p, m) - hamiltonian(s, q, p, m);
}

WallRecovery wall_from_sigma(double s, double h, double hp, double hpp,
                             double theta)
{
    const double t2 = theta * theta;
    const double u = h - s * hp;
    const double A = hp * hp + t2 * hp;
    const double B = 2.0 * hp * u - t2 * hp;
    const double C = u * u;
    const double disc = t2 * hp * ((t2 - 4.0 * u) * hp - 4.0 * u * u);
    if (disc < 0.0)
        throw std::domain_error("wall_from_sigma: negative discriminant");
    const double root = std::sqrt(disc);
    WallRecovery w;
    w.q = (-B - root) / (2.0 * A);
    w.p = (h + (w.q - s) * hp) / (theta * w.q * (w.q - 1.0));
    // implicit derivative of A q^2 + B q + C = 0 along s
    const double du = -s * hpp;
    const double dA = (2.0 * hp + t2) * hpp;
    const double dB = 2.0 * (hpp * u + hp * du) - t2 * hpp;
    const double dC = 2.0 * u * du;
    w.qprime = -(dA * w.q * w.q + dB * w.q + dC) / (2.0 * A * w.q + B);
    return w;
}

WallPoint fold_up(const FoldPoint& f, double a, double d)
{
    if (!(f.t > 0.0))
        throw std::domain_error("fold_up: requires t > 0");
    if (f.Q * f.Q == f.t)
        throw std::domain_error("fold_up: Q^2 = t is the excluded algebraic point");
    const double rt = std::sqrt(f.t);
    WallPoint w;
    w.s = 0.5 + 0.25 * (rt + 1.0 / rt);
    w.q = 0.5 + 0.25 * (rt / f.Q + f.Q / rt);
    w.p = 4.0 * rt * f.Q / (f.Q * f.Q - f.t)
        * (2.0 * f.P * f.Q - (a + d - 0.5));
    return w;
}

FoldPoint fold_down(const WallPoint& w, double a, double d,
                    int branch_t, int branch_q)
{
    const double ds = w.s * (w.s - 1.0);
    if (ds < 0.0)
        throw std::domain_error("fold_down: s inside (0, 1)");
    const double dq = w.q * (w.q - 1.0);
    if (dq < 0.0)
        throw std::domain_error("fold_down: branch collision, q inside (0, 1)");
    const double rt = (2.0 * w.s - 1.0) + 2.0 * branch_t * std::sqrt(ds);
    FoldPoint f;
    f.t = rt * rt;
    f.Q = rt * ((2.0 * w.q - 1.0) + 2.0 * branch_q * std::sqrt(dq));
    f.P = (w.p * (f.Q * f.Q - f.t) / (4.0 * rt * f.Q) + (a + d - 0.5))
        / (2.0 * f.Q);
    return f;
}

double chazy_residual(double t, double g, double gp, double gpp,
                      double theta, double* scale)
{
    const double t2 = theta * theta;
    const double den = t * sq(t - 1.0);
    const double lhs = 0.5 * sq(gpp + (0.5 / t + 1.0 / (t - 1.0)) * gp
                                + (2.0 * g * g * g - t2 * g) / den);
    const double rhs = 2.0 * sq(0.5 / t - 1.0 / (t - 1.0)) * g * g
                     * (gp * gp + (g * g * g * g - t2 * g * g) / den);
    if (scale)
        *scale = 1.0 + std::fabs(lhs) + std::fabs(rhs);
    return lhs - rhs;
}

double five_point_derivative(const double* t, const double* y)
{
    const double tc = t[2];
    double out = 0.0;
    for (int i = 0; i < 5; ++i) {
        if (i == 2) {
            double si = 0.0;
            for (int k = 0; k < 5; ++k)
                if (k != 2)
                    si += 1.0 / (tc - t[k]);
            out += y[2] * si;
        } else {
            double num = 1.0, den = 1.0;
            for (int k = 0; k < 5; ++k) {
                if (k != i && k != 2)
                    num *= tc - t[k];
                if (k != i)
                    den *= t[i] - t[k];
            }
            out += y[i] * num / den;
        }
    }
    return out;
}

std::vector<MetricPoint> metric_g(const CauchyTrajectory& traj,
                                  MetricBranch branch,
                                  double x_lo, double x_hi)
{
    std::vector<double> xs, ts, gs, gps;
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        const double x = traj.x[k];
        if (x < x_lo || x > x_hi)
            continue;
        const double sh = std::sinh(x), ch = std::cosh(x);
        const double hp = traj.Hp[k] * sh * sh;
        const double g = std::sqrt(-hp);
        const double dhp_dx = traj.Hpp[k] * sh * sh
                            + 2.0 * traj.Hp[k] * sh * ch;
        const double dg_dx = -dhp_dx / (2.0 * g);
        double t, dt_dx;
        if (branch == MetricBranch::tanh_branch) {
            const double th = std::tanh(0.5 * x);
            t = th * th;
            dt_dx = th * (1.0 - th * th);
        } else {
            const double ct = 1.0 / std::tanh(0.5 * x);
            t = ct * ct;
            dt_dx = ct * (1.0 - ct * ct);
        }
        xs.push_back(x);
        ts.push_back(t);
        gs.push_back(g);
        gps.push_back(dg_dx / dt_dx);
    }
    std::vector<MetricPoint> out;
    const int n = static_cast<int>(xs.size());
    for (int i = 2; i + 2 < n; ++i) {
        MetricPoint pt;
        pt.x = xs[i];
        pt.t = ts[i];
        pt.g = gs[i];
        pt.gp = gps[i];
        pt.gpp = five_point_derivative(&ts[i - 2], &gps[i - 2]);
        out.push_back(pt);
    }
    return out;
}

ManinReport manin_verification_pipeline(const CauchyTrajectory& traj,
                                        double x_lo, double x_hi)
{
    if (std::fabs(traj.theta - 0.5) > 1e-12)
        throw std::invalid_argument("manin_verification_pipeline: the fold "
                                    "chain requires theta = 1/2");
    if (traj.xi_zero)
        throw std::invalid_argument("manin_verification_pipeline: xi = 0 "
                                    "trajectory carries no motion");

    const Monodromy wall{0.5, 0.0, 0.0, 0.5};
    const Monodromy quarter{0.25, 0.25, 0.25, 0.25};
    const Monodromy level2{1.0, 0.0, 0.0, 0.0};
    const PviCoefficients c2 = coefficients_from_monodromy(level2);
    const PviCoefficients c0{0.0, 0.0, 0.0, 0.0};

    ManinReport rep;
    rep.min_exclusion = 1e300;
    rep.min_p = 1e300;
    rep.max_p = -1e300;

    std::vector<double> s2v, q2v, q2pv, qmv, qmpv;
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        const double x = traj.x[k];
        if (x < x_lo || x > x_hi)
            continue;
        const double H = traj.H[k], Hp = traj.Hp[k], Hpp = traj.Hpp[k];
        const double sh = std::sinh(x), ch = std::cosh(x);
        const double s1 = 0.5 * (1.0 + ch / sh);
        const double ds1dx = -0.5 / (sh * sh);
        const double h = -0.5 * H;
        const double hp = Hp * sh * sh;
        const double hpp = -2.0 * sh * sh * (Hpp * sh * sh + 2.0 * Hp * sh * ch);

        const WallRecovery wr = wall_from_sigma(s1, h, hp, hpp, traj.theta);
        rep.min_p = std::min(rep.min_p, wr.p);
        rep.max_p = std::max(rep.max_p, wr.p);

        const double q1dot = qprime_from_impulsion(s1, wr.q, wr.p, wall);
        rep.max_qprime_defect = std::max(rep.max_qprime_defect,
            std::fabs(wr.qprime - q1dot) / (1.0 + std::fabs(wr.qprime)));

        const double H1 = hamiltonian(s1, wr.q, wr.p, wall);
        rep.max_wall_identity = std::max(rep.max_wall_identity,
            std::fabs(h - s1 * (s1 - 1.0) * H1)
                / (1.0 + std::fabs(h) + std::fabs(s1 * (s1 - 1.0) * H1)));

        // fold down to the quarter exponents
        const FoldPoint f0 = fold_down({s1, wr.q, wr.p}, 0.25, 0.25, 1, 1);
        const double rt0 = std::sqrt(f0.t);
        rep.min_exclusion = std::min(rep.min_exclusion,
                                     std::fabs(f0.Q - rt0));
        const double g = std::sqrt(-hp);
        rep.max_g_defect = std::max(rep.max_g_defect,
            std::fabs(2.0 * f0.P * f0.Q - g) / (1.0 + g));

        const double H0 = hamiltonian(f0.t, f0.Q, f0.P, quarter);
        const double lhsH = s1 * (s1 - 1.0) * H1;
        const double rhsH = f0.t * (f0.t - 1.0) * H0 / rt0
                          - (f0.t - 1.0) / (2.0 * rt0) * (f0.P * f0.Q);
        rep.max_hamiltonian_defect = std::max(rep.max_hamiltonian_defect,
            std::fabs(lhsH - rhsH) / (1.0 + std::fabs(lhsH) + std::fabs(rhsH)));

        const double L1 = wr.p * q1dot - H1;
        const double L0 = lagrangian(f0.t, f0.Q, f0.P, quarter);
        const double ct = 1.0 / std::tanh(0.5 * x);
        const double dt0dx = ct * (1.0 - ct * ct);
        const double one1 = L1 * ds1dx;
        const double one0 = 2.0 * L0 * dt0dx;
        rep.max_lagrangian_defect = std::max(rep.max_lagrangian_defect,
            std::fabs(one1 - one0) / (1.0 + std::fabs(one1) + std::fabs(one0)));

        // permutation to the second wall, then the Manin relabel
        const double qh = (s1 - wr.q) / (s1 - 1.0);
        const double ex = std::exp(x);
        const double s2 = 0.5 * (1.0 + ch);    // cosh^2(x/2)
        const double ds2dx = 0.5 * sh;
        const double q2 = 0.5 + 0.25 * (ex / qh + qh / ex);
        const double dq1dx = wr.qprime * ds1dx;
        const double dqhdx = ((ds1dx - dq1dx) * (s1 - 1.0)
                              - (s1 - wr.q) * ds1dx) / sq(s1 - 1.0);
        const double dq2dx = 0.25 * (ex / qh - ex * dqhdx / (qh * qh)
                                     + dqhdx / ex - qh / ex);
        const double q2p = dq2dx / ds2dx;
        const double p2 = 0.5 * s2 * (s2 - 1.0) * q2p
                            / (q2 * (q2 - 1.0) * (q2 - s2))
                        - 0.5 / (q2 - s2);
        const double L2 = p2 * q2p - hamiltonian(s2, q2, p2, level2);
        const double one2 = L2 * ds2dx;
        const double four0 = 4.0 * L0 * dt0dx;
        rep.max_lagrangian_net = std::max(rep.max_lagrangian_net,
            std::fabs(one2 - four0) / (1.0 + std::fabs(one2) + std::fabs(four0)));

        const double qm = (q2 - 1.0) * s2 / (q2 - s2);
        const double dqm_dq2 = s2 * (1.0 - s2) / sq(q2 - s2);
        const double dqm_ds2 = (q2 - 1.0) * q2 / sq(q2 - s2);
        const double qmp = dqm_dq2 * q2p + dqm_ds2;

        s2v.push_back(s2);
        q2v.push_back(q2);
        q2pv.push_back(q2p);
        qmv.push_back(qm);
        qmpv.push_back(qmp);
        ++rep.points;
    }

    const int n = static_cast<int>(s2v.size());
    for (int i = 2; i + 2 < n; ++i) {
        double scale = 1.0;
        const double q2pp = five_point_derivative(&s2v[i - 2], &q2pv[i - 2]);
        const double r2 = pvi_residual(s2v[i], q2v[i], q2pv[i], q2pp, c2,
                                       &scale);
        rep.max_level2_residual = std::max(rep.max_level2_residual,
                                           std::fabs(r2) / scale);
        const double qmpp = five_point_derivative(&s2v[i - 2], &qmpv[i - 2]);
        const double rm = pvi_residual(s2v[i], qmv[i], qmpv[i], qmpp, c0,
                                       &scale);
        rep.max_manin_residual = std::max(rep.max_manin_residual,
                                          std::fabs(rm) / scale);
    }
    return rep;
}

GeometryReport geometry_report(const CauchyTrajectory& traj)
{
    GeometryReport rep;
    rep.kappa = kappa_from_trajectory(traj);
    const double k0 = k_theta(traj.theta, 0.0);
    rep.willmore_integral = 2.0 * kPi * (traj.h0 - traj.H.back());
    rep.willmore_boundary = 2.0 * kPi * (rep.kappa - traj.xi * k0);
    rep.willmore_display = 2.0 * kPi * rep.kappa - 0.25 * traj.xi;
    rep.discrepancy = rep.willmore_boundary - rep.willmore_display;
    rep.x = traj.x;
    rep.meanH = traj.H;
    rep.skewL.resize(traj.x.size());
    rep.gaussK.resize(traj.x.size());
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        rep.skewL[k] = std::sqrt(-traj.Hp[k]);
        rep.gaussK[k] = traj.H[k] * traj.H[k] + traj.Hp[k];
    }
    return rep;
}

void write_mapped_series_csv(const CauchyTrajectory& traj,
                             const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_mapped_series_csv: cannot open " + path);
    out << std::setprecision(17);
    out << "x,s,h,hp,hpp,t_tanh,t_coth,g\n";
    for (const SigmaPoint& pt : h_from_H(traj)) {
        const double th = std::tanh(0.5 * pt.x);
        out << pt.x << ',' << pt.s << ',' << pt.h << ',' << pt.hp << ','
            << pt.hpp << ',' << th * th << ',' << 1.0 / (th * th) << ','
            << std::sqrt(-pt.hp) << '\n';
    }
}

} // namespace persist
