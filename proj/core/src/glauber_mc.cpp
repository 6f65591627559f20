#include "persist/glauber_mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace persist {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Xoshiro256pp {
    std::uint64_t s[4];

    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    // counter-based stream: one generator per (seed, replica) pair
    Xoshiro256pp(std::uint64_t seed, std::uint64_t replica)
    {
        std::uint64_t st = seed + (replica + 1) * 0x9E3779B97F4A7C15ULL;
        for (int i = 0; i < 4; ++i)
            s[i] = splitmix64(st);
        if ((s[0] | s[1] | s[2] | s[3]) == 0)
            s[0] = 1;
    }

    std::uint64_t next()
    {
        const std::uint64_t r = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return r;
    }

    double uniform()                 // in [0, 1)
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

struct ReplicaOut {
    std::vector<double> keep_plus;   // counts per checkpoint
    std::vector<double> keep_minus;
    double n_sites = 0.0;
    double mag_drift = 0.0;
    long long events = 0;
    bool monotone = true;
};

ReplicaOut run_replica(const SimConfig& cfg, const std::vector<double>& checks,
                       std::uint64_t replica)
{
    const int L = static_cast<int>(cfg.chain_length);
    const bool ring = cfg.topology == Topology::ring;
    const int nbonds = ring ? L : L - 1;
    Xoshiro256pp rng(cfg.seed, replica);

    std::vector<std::int8_t> spin(L);
    const double p_up = 0.5 * (1.0 + cfg.m);
    long mag0 = 0;
    for (int i = 0; i < L; ++i) {
        spin[i] = rng.uniform() < p_up ? 1 : -1;
        mag0 += spin[i];
    }

    // domain walls live on bonds; bond b separates sites b and b+1
    std::vector<std::int32_t> wallpos;
    std::vector<std::int32_t> wallidx(nbonds, -1);
    wallpos.reserve(nbonds);
    for (int b = 0; b < nbonds; ++b) {
        const int right = ring ? (b + 1) % L : b + 1;
        if (spin[b] != spin[right]) {
            wallidx[b] = static_cast<std::int32_t>(wallpos.size());
            wallpos.push_back(b);
        }
    }

    auto remove_wall = [&](int idx) {
        const int last = static_cast<int>(wallpos.size()) - 1;
        wallidx[wallpos[idx]] = -1;
        if (idx != last) {
            wallpos[idx] = wallpos[last];
            wallidx[wallpos[idx]] = idx;
        }
        wallpos.pop_back();
    };

    ReplicaOut out;
    out.keep_plus.assign(checks.size(), 0.0);
    out.keep_minus.assign(checks.size(), 0.0);
    out.n_sites = ring ? static_cast<double>(L) : 1.0;

    std::vector<std::int8_t> sigma1;
    std::vector<std::uint8_t> flipped(L, 0);
    bool tracking = false;

    auto read_checkpoint = [&](std::size_t ci) {
        if (!tracking) {                     // first checkpoint is t1 itself
            sigma1 = spin;
            std::fill(flipped.begin(), flipped.end(), 0);
            tracking = true;
        }
        if (ring) {
            long np = 0, nm = 0;
            for (int i = 0; i < L; ++i) {
                if (flipped[i])
                    continue;
                if (sigma1[i] > 0)
                    ++np;
                else
                    ++nm;
            }
            out.keep_plus[ci] = static_cast<double>(np);
            out.keep_minus[ci] = static_cast<double>(nm);
        } else {
            if (!flipped[0]) {
                if (sigma1[0] > 0)
                    out.keep_plus[ci] = 1.0;
                else
                    out.keep_minus[ci] = 1.0;
            }
        }
    };

    double t = 0.0;
    std::size_t next_check = 0;
    std::size_t prev_walls = wallpos.size();
    while (next_check < checks.size()) {
        const std::size_t nw = wallpos.size();
        if (nw > prev_walls)
            out.monotone = false;
        prev_walls = nw;
        if (nw == 0) {
            // frozen configuration: no further flips at any later time
            read_checkpoint(next_check++);
            continue;
        }
        const double dt = -std::log(1.0 - rng.uniform())
                        / static_cast<double>(nw);
        const double t_next = t + dt;
        bool sampled = false;
        while (next_check < checks.size() && checks[next_check] < t_next) {
            read_checkpoint(next_check++);
            sampled = true;
        }
        if (sampled && next_check >= checks.size())
            break;
        t = t_next;
        ++out.events;

        int k = static_cast<int>(rng.uniform() * static_cast<double>(nw));
        if (k >= static_cast<int>(nw))
            k = static_cast<int>(nw) - 1;
        const int b = wallpos[k];
        const bool right = (rng.next() & 1ULL) != 0;
        int site;                             // spin carried over by the hop
        int nb;                               // destination bond
        if (right) {
            site = ring ? (b + 1) % L : b + 1;
            nb = b + 1;
            if (ring && nb >= L)
                nb -= L;
        } else {
            site = b;
            nb = b - 1;
            if (ring && nb < 0)
                nb += L;
        }
        spin[site] = static_cast<std::int8_t>(-spin[site]);
        out.mag_drift += 2.0 * spin[site];
        if (tracking)
            flipped[site] = 1;

        if (!ring && (nb < 0 || nb >= nbonds)) {
            remove_wall(k);                   // absorbed at the open end
        } else if (wallidx[nb] >= 0) {
            const int j = wallidx[nb];        // pairwise annihilation
            if (k < j) {
                remove_wall(j);
                remove_wall(k);
            } else {
                remove_wall(k);
                remove_wall(j);
            }
        } else {
            wallidx[b] = -1;
            wallpos[k] = nb;
            wallidx[nb] = k;
        }
    }
    out.mag_drift /= static_cast<double>(L);
    return out;
}

} // namespace

SimulationResult simulate_checkpoints(const SimConfig& cfg,
                                      const std::vector<double>& ratios)
{
    if (cfg.chain_length < 2)
        throw std::invalid_argument("simulate: chain_length must be >= 2");
    if (!(cfg.m >= -1.0 && cfg.m <= 1.0))
        throw std::invalid_argument("simulate: m must lie in [-1, 1]");
    if (!(cfg.t1 > 0.0))
        throw std::invalid_argument("simulate: t1 must be positive");
    if (cfg.replicas < 1)
        throw std::invalid_argument("simulate: replicas must be >= 1");
    if (ratios.empty())
        throw std::invalid_argument("simulate: need at least one ratio");
    for (double r : ratios)
        if (!(r >= 1.0))
            throw std::invalid_argument("simulate: ratios must be >= 1");

    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    // flips count from t1 onward: prepend the reference read when the
    // smallest ratio does not sample t1 itself
    const std::size_t skip0 = sorted.front() > 1.0 ? 1 : 0;
    std::vector<double> checks(sorted.size() + skip0);
    if (skip0)
        checks[0] = cfg.t1;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        checks[i + skip0] = cfg.t1 * sorted[i];

    const int R = cfg.replicas;
    std::vector<ReplicaOut> slots(R);
    int nthreads = cfg.threads > 0 ? cfg.threads
                 : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, R));
    std::vector<std::thread> pool;
    // static interleave keeps the replica -> stream map thread-count free
    auto worker = [&](int tid) {
        for (int r = tid; r < R; r += nthreads)
            slots[r] = run_replica(cfg, checks,
                                   static_cast<std::uint64_t>(r));
    };
    for (int tIdx = 1; tIdx < nthreads; ++tIdx)
        pool.emplace_back(worker, tIdx);
    worker(0);
    for (std::thread& th : pool)
        th.join();

    SimulationResult res;
    res.checkpoints.resize(sorted.size());
    double drift_sum = 0.0, drift_sq = 0.0;
    for (const ReplicaOut& ro : slots) {
        res.events += ro.events;
        res.walls_monotone = res.walls_monotone && ro.monotone;
        drift_sum += ro.mag_drift;
        drift_sq += ro.mag_drift * ro.mag_drift;
    }
    res.mag_drift = drift_sum / R;
    res.mag_drift_se = R > 1
        ? std::sqrt(std::max(0.0, (drift_sq - drift_sum * drift_sum / R)
                                  / (R - 1.0) / R))
        : 0.0;

    for (std::size_t ci = 0; ci < res.checkpoints.size(); ++ci) {
        const std::size_t ti = ci + skip0;
        PersistenceEstimate& est = res.checkpoints[ci];
        est.t1 = cfg.t1;
        est.t2 = checks[ti];
        double sp = 0.0, sm = 0.0, st = 0.0;
        double qp = 0.0, qm = 0.0, qt = 0.0;
        for (const ReplicaOut& ro : slots) {
            const double fp = ro.keep_plus[ti] / ro.n_sites;
            const double fm = ro.keep_minus[ti] / ro.n_sites;
            sp += fp;
            sm += fm;
            st += fp + fm;
            qp += fp * fp;
            qm += fm * fm;
            qt += (fp + fm) * (fp + fm);
            est.n_effective += ro.n_sites;
        }
        est.p_plus = sp / R;
        est.p_minus = sm / R;
        est.p_total = st / R;
        auto se = [R](double s1, double s2) {
            if (R < 2)
                return 0.0;
            return std::sqrt(std::max(0.0, (s2 - s1 * s1 / R)
                                            / (R - 1.0) / R));
        };
        est.se_plus = se(sp, qp);
        est.se_minus = se(sm, qm);
        est.se_total = se(st, qt);
    }
    return res;
}

PersistenceEstimate simulate(const SimConfig& cfg)
{
    if (!(cfg.t2 >= cfg.t1))
        throw std::invalid_argument("simulate: requires t2 >= t1");
    return simulate_checkpoints(cfg, {cfg.t2 / cfg.t1}).checkpoints.front();
}

ExponentFit estimate_exponent(const SimConfig& cfg,
                              const std::vector<double>& ratios)
{
    const SimulationResult sim = simulate_checkpoints(cfg, ratios);
    ExponentFit fit;
    fit.checkpoints = sim.checkpoints;

    // weighted least squares of log p against log(t1/t2)
    double sw = 0.0, sx = 0.0, sy = 0.0;
    std::vector<double> xs, ys, ws;
    for (const PersistenceEstimate& est : sim.checkpoints) {
        if (!(est.p_total > 0.0) || !(est.se_total > 0.0))
            continue;
        const double x = std::log(cfg.t1 / est.t2);
        const double y = std::log(est.p_total);
        const double w = (est.p_total / est.se_total)
                       * (est.p_total / est.se_total);
        xs.push_back(x);
        ys.push_back(y);
        ws.push_back(w);
        sw += w;
        sx += w * x;
        sy += w * y;
    }
    if (xs.size() < 2)
        throw std::runtime_error("estimate_exponent: not enough usable "
                                 "checkpoints for a slope");
    const double xb = sx / sw, yb = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - xb) * (xs[i] - xb);
        sxy += ws[i] * (xs[i] - xb) * (ys[i] - yb);
    }
    fit.exponent = sxy / sxx;
    fit.se = std::sqrt(1.0 / sxx);
    return fit;
}

} // namespace persist
