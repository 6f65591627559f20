#include "persist/fredholm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace persist {

namespace {

const double kPi = 3.14159265358979323846;

// nodes/weights on [-1, 1] by Newton iteration on the Legendre recurrence
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15)
                break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct Grid {
    std::vector<double> x;
    std::vector<double> sqw;     // sqrt(weight)
};

// discretization grid used for the symmetrized Nystrom matrix;
// parity projections mirror n half-interval nodes onto [-b, b]
Grid make_grid(const KernelSpec& spec, double a, double b, int n)
{
    Grid g;
    if (spec.parity == Parity::none) {
        Quadrature q = gauss_legendre(n, a, b);
        g.x = q.nodes;
        g.sqw.resize(n);
        for (int i = 0; i < n; ++i)
            g.sqw[i] = std::sqrt(q.weights[i]);
    } else {
        Quadrature q = gauss_legendre(n, 0.0, b);
        g.x.resize(2 * n);
        g.sqw.resize(2 * n);
        for (int i = 0; i < n; ++i) {
            g.x[n - 1 - i] = -q.nodes[i];
            g.x[n + i] = q.nodes[i];
            const double s = std::sqrt(q.weights[i]);
            g.sqw[n - 1 - i] = s;
            g.sqw[n + i] = s;
        }
    }
    return g;
}

Eigen::MatrixXd nystrom_matrix(const KernelSpec& spec, double a, double b, int n)
{
    Grid g = make_grid(spec, a, b, n);
    const int dim = static_cast<int>(g.x.size());
    Eigen::MatrixXd M(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const double v = g.sqw[i] * g.sqw[j]
                           * kernel_matrix_entry(spec, g.x[i], g.x[j]);
            M(i, j) = v;
            M(j, i) = v;
        }
    return M;
}

double det_plain(const KernelSpec& spec, double a, double b, int n)
{
    Eigen::MatrixXd M = nystrom_matrix(spec, a, b, n);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M.rows(), M.cols()) - M;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(A).determinant();
}

// largest eigenvalue of the (symmetric PSD) Nystrom matrix by power iteration
double top_eigenvalue(const Eigen::MatrixXd& M)
{
    Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows());
    v.normalize();
    double lam = 0.0;
    for (int it = 0; it < 80; ++it) {
        Eigen::VectorXd u = M * v;
        const double nn = u.norm();
        if (nn == 0.0)
            return 0.0;
        u /= nn;
        lam = u.dot(M * u);
        v = u;
    }
    return lam;
}

// quadratic extrapolation of (x_i, y_i), i = 0..2, to the point xe
double extrapolate3(const double* xs, const double* ys, double xe)
{
    double out = 0.0;
    for (int i = 0; i < 3; ++i) {
        double li = 1.0;
        for (int j = 0; j < 3; ++j)
            if (j != i)
                li *= (xe - xs[j]) / (xs[i] - xs[j]);
        out += li * ys[i];
    }
    return out;
}

} // namespace

Quadrature gauss_legendre(int n, double a, double b)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    if (!(b >= a))
        throw std::invalid_argument("gauss_legendre: requires b >= a");
    std::vector<double> x, w;
    gauss_legendre_unit(n, x, w);
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = mid + half * x[i];
        q.weights[i] = half * w[i];
    }
    return q;
}

int default_node_count(double length)
{
    const int n = static_cast<int>(std::ceil(12.0 * length));
    return std::max(100, n);
}

double fredholm_det(const KernelSpec& spec, double a, double b, int n)
{
    validate(spec);
    if (!(b >= a))
        throw std::invalid_argument("fredholm_det: requires b >= a");
    if (spec.parity != Parity::none && a != 0.0)
        throw std::invalid_argument("fredholm_det: parity intervals must start at 0");
    if (b == a || spec.xi == 0.0)
        return 1.0;
    if (n <= 0)
        n = default_node_count(b - a);

    if (spec.family == KernelFamily::markov) {
        // the |s| kink caps plain Gauss-Legendre at low order; a two-level
        // Richardson ladder over n/4, n/2, n restores fast convergence
        n = ((n + 3) / 4) * 4;
        const double d4 = det_plain(spec, a, b, n / 4);
        const double d2 = det_plain(spec, a, b, n / 2);
        const double d1 = det_plain(spec, a, b, n);
        const double r2 = (4.0 * d2 - d4) / 3.0;
        const double r1 = (4.0 * d1 - d2) / 3.0;
        return (8.0 * r1 - r2) / 7.0;
    }
    return det_plain(spec, a, b, n);
}

std::vector<double> eigenvalues(const KernelSpec& spec, double a, double b,
                                int n, int k)
{
    validate(spec);
    if (!(b >= a))
        throw std::invalid_argument("eigenvalues: requires b >= a");
    if (spec.parity != Parity::none && a != 0.0)
        throw std::invalid_argument("eigenvalues: parity intervals must start at 0");
    if (n <= 0)
        n = default_node_count(b - a);
    Eigen::MatrixXd M = nystrom_matrix(spec, a, b, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();      // ascending
    const int dim = static_cast<int>(ev.size());
    k = std::min(k, dim);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i)
        out[i] = ev[dim - 1 - i];
    return out;
}

ResolventSample resolvent_RS(const KernelSpec& spec, double T, int n)
{
    validate(spec);
    if (spec.parity != Parity::none)
        throw std::invalid_argument("resolvent_RS: expects parity none");
    if (!(T > 0.0))
        throw std::invalid_argument("resolvent_RS: requires T > 0");
    if (n <= 0)
        n = default_node_count(2.0 * T);

    Quadrature q = gauss_legendre(n, -T, T);
    Eigen::MatrixXd M(n, n);
    std::vector<double> sqw(n);
    for (int i = 0; i < n; ++i)
        sqw[i] = std::sqrt(q.weights[i]);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = sqw[i] * sqw[j]
                           * kernel_matrix_entry(spec, q.nodes[i], q.nodes[j]);
            M(i, j) = v;
            M(j, i) = v;
        }

    ResolventSample out;
    out.T = T;
    const double lam0 = top_eigenvalue(M);
    if (lam0 > 1.0 - 1e-10)
        throw std::runtime_error("resolvent_RS: operator is numerically singular");
    if (lam0 > 1.0 - 1e-8)
        out.conditioning_warning = true;

    // B = (I - M)^{-1} M; resolvent kernel R(x_i, x_j) = B_ij / sqrt(w_i w_j)
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - M;
    Eigen::MatrixXd B = A.partialPivLu().solve(M);

    // extrapolate the diagonal and anti-diagonal to the endpoint x = T
    double xs[3], yr[3], ys[3];
    for (int k3 = 0; k3 < 3; ++k3) {
        const int i = n - 3 + k3;
        xs[k3] = q.nodes[i];
        yr[k3] = B(i, i) / (sqw[i] * sqw[i]);
        ys[k3] = B(n - 1 - i, i) / (sqw[n - 1 - i] * sqw[i]);
    }
    out.R = extrapolate3(xs, yr, T);
    out.S = extrapolate3(xs, ys, T);
    return out;
}

double log_det_derivative(const KernelSpec& spec, double ell, int n)
{
    validate(spec);
    if (!(ell > 0.0))
        throw std::invalid_argument("log_det_derivative: requires ell > 0");
    const double h = std::max(1e-4, 1e-3 * ell);
    if (n <= 0)
        n = default_node_count(ell + 2.0 * h);
    // D(ell) is the determinant of an interval of full length ell:
    // [0, ell] for parity none, the mirrored [-ell/2, ell/2] for a projection
    auto logdet = [&](double L) {
        const double b = (spec.parity == Parity::none) ? L : 0.5 * L;
        return std::log(fredholm_det(spec, 0.0, b, n));
    };
    if (ell <= 2.0 * h + 1e-12)
        return (logdet(ell + h) - logdet(std::max(ell - h, 0.0))) / (2.0 * h);
    const double d1 = logdet(ell + h) - logdet(ell - h);
    const double d2 = logdet(ell + 2.0 * h) - logdet(ell - 2.0 * h);
    return (8.0 * d1 - d2) / (12.0 * h);
}

double janossy_two_point(const KernelSpec& spec, double T, int n)
{
    ResolventSample rs = resolvent_RS(spec, T, n);
    return rs.R * rs.R - rs.S * rs.S;
}

} // namespace persist
