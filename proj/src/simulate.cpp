#include "gies/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace gies {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (stream * 0xd1b54a32d192ed03ULL);
    std::vector<std::uint32_t> words;
    for (int i = 0; i < 8; ++i) {
        const std::uint64_t x = splitmix64(state);
        words.push_back(static_cast<std::uint32_t>(x));
        words.push_back(static_cast<std::uint32_t>(x >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(seeded_engine(seed, stream)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty integer range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % range);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Dag random_dag(int p, double s, Rng& rng) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex count");
    if (!(s > 0.0 && s < 1.0)) throw Error(ErrorKind::InvalidArgument, "sparseness must lie in (0, 1)");
    std::vector<Edge> forward;
    for (Vertex a = 1; a <= p; ++a) {
        for (Vertex b = a + 1; b <= p; ++b) {
            if (rng.bernoulli(s)) forward.emplace_back(a, b);
        }
    }
    std::vector<Vertex> label(static_cast<std::size_t>(p));
    std::iota(label.begin(), label.end(), 1);
    rng.shuffle(label);
    Graph g(p);
    for (auto [a, b] : forward) g.set_arrow(label[a - 1], label[b - 1]);
    return Dag(std::move(g));
}

GaussianModel random_raw_model(const Dag& d, Rng& rng) {
    const int p = d.p();
    GaussianModel model{d, Eigen::MatrixXd::Zero(p, p), Eigen::VectorXd::Zero(p)};
    for (auto [a, b] : d.arrows()) {
        const double magnitude = rng.uniform(0.1, 1.0);
        model.B(b - 1, a - 1) = rng.bernoulli(0.5) ? magnitude : -magnitude;
    }
    for (int v = 0; v < p; ++v) model.sigma2(v) = rng.uniform(0.5, 1.0);
    return model;
}

GaussianModel normalize_model(const GaussianModel& raw) {
    const Eigen::VectorXd h = implied_covariance(raw).diagonal().array().rsqrt();
    GaussianModel out = raw;
    out.B = h.asDiagonal() * raw.B * h.cwiseInverse().asDiagonal();
    out.sigma2 = h.array().square() * raw.sigma2.array();
    return out;
}

TargetFamily random_targets(int p, int k, int m, Rng& rng) {
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative target count");
    if (k == 0) return TargetFamily::observational();
    if (m < 1 || m > p) throw Error(ErrorKind::InfeasibleTargets, "target size must lie in 1..p");
    if (binomial(p, m) < k) {
        throw Error(ErrorKind::InfeasibleTargets, "only " + std::to_string(static_cast<long long>(binomial(p, m))) +
                                                      " distinct targets of size " + std::to_string(m) + " exist");
    }
    std::vector<Target> targets{Target{}};
    std::set<Target> seen;
    std::vector<Vertex> pool(static_cast<std::size_t>(p));
    while (static_cast<int>(seen.size()) < k) {
        std::iota(pool.begin(), pool.end(), 1);
        // Partial Fisher-Yates for a uniform m-subset.
        for (int i = 0; i < m; ++i) {
            const int j = rng.uniform_int(i, p - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        Target t = make_set(std::vector<Vertex>(pool.begin(), pool.begin() + m));
        if (seen.insert(t).second) targets.push_back(std::move(t));
    }
    return TargetFamily(std::move(targets));
}

InterventionalDataset sample(const GaussianModel& model, const TargetFamily& family, int n, Rng& rng,
                             double level_mean, double level_sd) {
    if (family.empty()) throw Error(ErrorKind::InvalidArgument, "empty target family");
    if (n < static_cast<int>(family.size())) {
        throw Error(ErrorKind::InvalidArgument, "fewer samples than targets");
    }
    const int p = model.dag.p();
    family.validate(p);
    const VertexOrdering order = topological_order(model.dag);
    const Eigen::VectorXd sd = model.sigma2.array().sqrt();

    InterventionalDataset data;
    data.X.resize(n, p);
    data.targets.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Target& t = family[static_cast<std::size_t>(i) % family.size()];
        data.targets.push_back(t);
        for (Vertex v : order) {
            double x;
            if (contains(t, v)) {
                x = level_mean + level_sd * rng.normal();
            } else {
                x = sd(v - 1) * rng.normal();
                for (Vertex a : model.dag.parents(v)) x += model.B(v - 1, a - 1) * data.X(i, a - 1);
            }
            data.X(i, v - 1) = x;
        }
    }
    return data;
}

Simulation simulate(const SimConfig& config) {
    const Rng root(config.seed);
    Rng dag_rng = root.substream(0);
    Rng model_rng = root.substream(1);
    Rng target_rng = root.substream(2);
    Rng data_rng = root.substream(3);
    Simulation sim;
    sim.model = random_model(random_dag(config.p, config.s, dag_rng), model_rng);
    sim.family = random_targets(config.p, config.k, config.m, target_rng);
    sim.data = sample(sim.model, sim.family, config.n, data_rng, config.level_mean, config.level_sd);
    return sim;
}

}  // namespace gies
