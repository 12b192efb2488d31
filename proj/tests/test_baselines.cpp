#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "gies/baselines.hpp"
#include "gies/simulate.hpp"
#include "oracles.hpp"

using namespace gies;
using fixtures::fam;

namespace {

TargetFamily all_singletons(int p) {
    std::vector<Target> t{Target{}};
    for (Vertex v = 1; v <= p; ++v) t.push_back({v});
    return TargetFamily(t);
}

Simulation simulated(int p, double s, int k, int n, std::uint64_t seed) {
    SimConfig c;
    c.p = p;
    c.s = s;
    c.k = k;
    c.n = n;
    c.seed = seed;
    return simulate(c);
}

int max_indegree(const oracle::Matrix& m) {
    int best = 0;
    for (std::size_t b = 0; b < m.size(); ++b) {
        int d = 0;
        for (std::size_t a = 0; a < m.size(); ++a) d += m[a][b];
        best = std::max(best, d);
    }
    return best;
}

double brute_force_optimum(const InterventionalDataset& data, int max_parents) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : oracle::all_dags(data.p())) {
        if (max_indegree(m) <= max_parents) best = std::max(best, oracle::bic(m, data));
    }
    return best;
}

}  // namespace

TEST_CASE("dynamic programming matches exhaustive enumeration") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const int p = seed <= 2 ? 3 : 4;
        const Simulation sim = simulated(p, 0.5, 1, 100, seed);
        const DpResult r = dp_exact(sim.data, sim.family);
        CHECK(oracle::relative_gap(r.score, brute_force_optimum(sim.data, p)) < 1e-9);
        CHECK(oracle::relative_gap(r.score, total_score(r.dag, sim.data)) < 1e-9);
        CHECK_FALSE(r.max_parents.has_value());
        CHECK(is_essential_graph(essential_graph(r.dag, sim.family).graph, sim.family));

        DpOptions capped;
        capped.max_parents = 1;
        const DpResult rc = dp_exact(sim.data, sim.family, capped);
        CHECK(oracle::relative_gap(rc.score, brute_force_optimum(sim.data, 1)) < 1e-9);
        for (Vertex v = 1; v <= p; ++v) CHECK(rc.dag.parents(v).size() <= 1);
    }
}

TEST_CASE("dynamic programming bounds greedy search") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const Simulation sim = simulated(6, 0.4, 2, 300, seed);
        const DpResult dp = dp_exact(sim.data, sim.family);
        const SearchResult g = gies::gies(sim.data, sim.family);
        CHECK(dp.score >= g.score - 1e-9 * std::abs(dp.score));

        DpOptions threaded;
        threaded.threads = 3;
        const DpResult dp3 = dp_exact(sim.data, sim.family, threaded);
        CHECK(dp3.dag == dp.dag);
        CHECK(dp3.score == dp.score);
    }
    const Simulation big = simulated(5, 0.4, 0, 50, 1);
    DpOptions small;
    small.max_p = 4;
    try {
        dp_exact(big.data, big.family, small);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("gds coincides with gies under a complete intervention family") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        Rng rng(seed);
        const int p = 6;
        const TargetFamily f = all_singletons(p);
        const InterventionalDataset data = sample(random_model(random_dag(p, 0.4, rng), rng), f, 700, rng);
        const GaussianBic bic(data);
        ScoreCache cache(bic);
        const SearchResult g = gies::gies(cache, f);
        const GdsResult d = gds(cache, f);
        CHECK(g.graph.graph == d.dag.graph());
        REQUIRE(g.trace.steps.size() == d.trace.steps.size());
        for (std::size_t i = 0; i < g.trace.steps.size(); ++i) {
            const Move& a = g.trace.steps[i].move;
            const Move& b = d.trace.steps[i].move;
            CHECK(a.kind == b.kind);
            CHECK(a.u == b.u);
            CHECK(a.v == b.v);
            CHECK(a.delta == b.delta);
        }
    }
}

TEST_CASE("gds trace and empty-model data") {
    int empty = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const TargetFamily f = fam({{}, {2}});
        const InterventionalDataset data = sample(random_model(Dag(5), rng), f, 200, rng);
        const GaussianBic bic(data);
        ScoreCache cache(bic);
        const GdsResult r = gds(cache, f);
        if (r.dag.num_arrows() == 0) ++empty;
        double previous = r.trace.initial_score;
        for (const auto& step : r.trace.steps) {
            CHECK(step.score > previous);
            previous = step.score;
        }
        CHECK(std::abs(r.score - cache.total(r.dag)) < 1e-9 * std::abs(r.score));
    }
    CHECK(empty > 10);
}

TEST_CASE("gds ignores score-neutral reversals") {
    // Reversing a covered arrow changes the score only by rounding noise.
    SimConfig c;
    c.p = 10;
    c.s = 0.2;
    c.n = 1000;
    c.seed = 8027;
    const Simulation sim = simulate(c);
    const GdsResult d = gds(sim.data, sim.family);
    CHECK(d.trace.steps.size() < 50);
    for (const TraceStep& step : d.trace.steps) CHECK(step.move.delta > SearchOptions{}.min_improvement);
}

TEST_CASE("ges pools the data") {
    const Simulation obs = simulated(6, 0.4, 0, 300, 30);
    const SearchResult a = ges(obs.data);
    const SearchResult b = gies::gies(obs.data, TargetFamily::observational());
    CHECK(a.graph == b.graph);
    CHECK(a.score == b.score);

    Rng rng(31);
    const TargetFamily f = fam({{}, {1}});
    const InterventionalDataset data = sample(random_model(Dag::from_arrows(2, {{1, 2}}), rng), f, 1000, rng);
    const SearchResult r = ges(data);
    CHECK(r.graph.graph.has_line(1, 2));
    CHECK(r.graph.family == TargetFamily::observational());
}
