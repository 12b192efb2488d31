#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "gies/graph.hpp"
#include "gies/interventions.hpp"
#include "gies/scoring.hpp"

namespace gies {

/// mt19937_64 seeded through splitmix64, with independent substreams and
/// platform-independent uniform / normal draws.
class Rng {
public:
    static constexpr std::string_view name = "mt19937_64+splitmix64";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Independent generator for stream k of the same seed.
    Rng substream(std::uint64_t k) const { return Rng(seed_, stream_ * 0x100000001b3ULL + k + 1); }

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on {lo, ..., hi}.
    int uniform_int(int lo, int hi);
    bool bernoulli(double prob) { return uniform() < prob; }
    /// Standard normal (polar method).
    double normal();

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i - 1)));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SimConfig {
    int p = 10;
    double s = 0.2;
    int k = 0;
    int m = 1;
    int n = 1000;
    double level_mean = 2.0;
    double level_sd = 0.2;
    std::uint64_t seed = 1;
};

/// Forward pairs of a random order kept with probability s, then relabelled.
Dag random_dag(int p, double s, Rng& rng);

/// Weights ±U[0.1, 1] on the arrows of d and variances U[0.5, 1].
GaussianModel random_raw_model(const Dag& d, Rng& rng);

/// Rescales the model so that every variable has unit variance.
GaussianModel normalize_model(const GaussianModel& raw);

inline GaussianModel random_model(const Dag& d, Rng& rng) { return normalize_model(random_raw_model(d, rng)); }

/// {∅} followed by k distinct targets of size m. Throws InfeasibleTargets.
TargetFamily random_targets(int p, int k, int m, Rng& rng);

/// Rows are assigned to targets round-robin; intervened variables are drawn
/// from N(level_mean, level_sd²).
InterventionalDataset sample(const GaussianModel& model, const TargetFamily& family, int n, Rng& rng,
                             double level_mean = 2.0, double level_sd = 0.2);

struct Simulation {
    GaussianModel model;
    TargetFamily family;
    InterventionalDataset data;
};

/// DAG, parameters, targets and data drawn from separate substreams of
/// config.seed.
Simulation simulate(const SimConfig& config);

}  // namespace gies
