#pragma once

#include <cstdint>
#include <vector>

namespace persist {

enum class Topology { ring, half_line };

struct SimConfig {
    long chain_length = 100000;
    double m = 0.0;              // initial magnetization bias
    double t1 = 200.0;           // observation start
    double t2 = 400.0;           // observation end (single-checkpoint runs)
    int replicas = 32;
    std::uint64_t seed = 1;
    Topology topology = Topology::ring;
    int threads = 0;             // 0 = hardware concurrency
};

struct PersistenceEstimate {
    double t1 = 0.0;
    double t2 = 0.0;
    double p_plus = 0.0;         // joint: sigma(t1) = +1 and no flip in (t1, t2]
    double p_minus = 0.0;
    double p_total = 0.0;
    double se_plus = 0.0;        // replica-to-replica standard errors
    double se_minus = 0.0;
    double se_total = 0.0;
    double n_effective = 0.0;    // sites contributing per checkpoint
};

struct SimulationResult {
    std::vector<PersistenceEstimate> checkpoints;
    double mag_drift = 0.0;      // mean magnetization change per site
    double mag_drift_se = 0.0;
    long long events = 0;
    bool walls_monotone = true;  // wall count never increased
};

// single pass through the dynamics; the occupation is referenced at t1 and
// flips are tracked from there, with a sample at t1 * ratio for each ratio
SimulationResult simulate_checkpoints(const SimConfig& cfg,
                                      const std::vector<double>& ratios);

// convenience single-checkpoint run at t2 = cfg.t2
PersistenceEstimate simulate(const SimConfig& cfg);

struct ExponentFit {
    double exponent = 0.0;       // positive decay rate of p_total
    double se = 0.0;
    std::vector<PersistenceEstimate> checkpoints;
};

// weighted least-squares slope of log p_total against log(t1/t2)
ExponentFit estimate_exponent(const SimConfig& cfg,
                              const std::vector<double>& ratios);

} // namespace persist
