#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gies/scoring.hpp"
#include "gies/simulate.hpp"
#include "oracles.hpp"

using namespace gies;
using fixtures::fam;

namespace {

InterventionalDataset simulated(int p, double s, const TargetFamily& family, int n, std::uint64_t seed) {
    Rng rng(seed);
    const GaussianModel model = random_model(random_dag(p, s, rng), rng);
    return sample(model, family, n, rng);
}

// Maximises -(n/2) log(t) - rss / (2 t) over t by golden-section search on log t.
double profile_loglik(double rss, double n) {
    auto f = [&](double log_t) { return -0.5 * n * log_t - rss / (2.0 * std::exp(log_t)); };
    double lo = -30.0, hi = 30.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        if (f(x1) < f(x2)) {
            lo = x1;
            x1 = x2;
            x2 = lo + g * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - g * (hi - lo);
        }
    }
    return f(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("parentless local score has a closed form") {
    const InterventionalDataset data = simulated(3, 0.5, fam({{}, {2}}), 60, 1);
    for (Vertex v = 1; v <= 3; ++v) {
        const int n_v = oracle::usable_rows(data, v);
        const double m = oracle::rss_normal_equations(data, v, {}) / n_v;
        const double expected = -0.5 * n_v * (std::log(m) + 1.0) - 0.5 * std::log(60.0);
        CHECK(local_score(v, {}, data) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("local score maximises the per-node likelihood") {
    const InterventionalDataset data = simulated(3, 0.6, fam({{}, {1}}), 50, 2);
    for (Vertex v = 1; v <= 3; ++v) {
        for (const VertexSet& pa : std::vector<VertexSet>{{}, without(VertexSet{1, 2, 3}, v)}) {
            const double n_v = oracle::usable_rows(data, v);
            const double rss = oracle::rss_normal_equations(data, v, pa);
            const double expected = profile_loglik(rss, n_v) - 0.5 * (1.0 + pa.size()) * std::log(50.0);
            CHECK(std::abs(local_score(v, pa, data) - expected) < 1e-6);
        }
    }
}

TEST_CASE("total score matches the likelihood oracle on every small DAG") {
    const InterventionalDataset data = simulated(4, 0.5, fam({{}, {1}, {2, 3}}), 90, 3);
    for (const auto& m : oracle::all_dags(4)) {
        const Dag d(oracle::from_matrix(m));
        CHECK(oracle::relative_gap(total_score(d, data), oracle::bic(m, data)) < 1e-9);
    }
}

TEST_CASE("penalty accounting") {
    const InterventionalDataset data = simulated(4, 0.5, TargetFamily::observational(), 80, 4);
    const Dag d = Dag::from_arrows(4, {{1, 2}, {1, 3}, {2, 4}});
    const GaussianBic bic(data);
    double loglik = 0.0;
    for (Vertex v = 1; v <= 4; ++v) {
        const auto f = bic.fit(v, d.parents(v));
        loglik += -0.5 * f.n_v * (std::log(f.sigma2) + 1.0);
    }
    CHECK(loglik - bic.total(d) == doctest::Approx(0.5 * (4 + 3) * std::log(80.0)).epsilon(1e-12));

    const InterventionalDataset idata = simulated(3, 0.5, fam({{}, {1}}), 40, 5);
    const GaussianBic per_node(idata, ScoreOptions{true});
    const GaussianBic total_n(idata);
    CHECK(per_node.local(1, {}) - total_n.local(1, {}) ==
          doctest::Approx(-0.5 * (std::log(20.0) - std::log(40.0))).epsilon(1e-12));
    CHECK(per_node.local(2, {}) == total_n.local(2, {}));
}

TEST_CASE("decomposability") {
    const InterventionalDataset data = simulated(4, 0.5, fam({{}, {3}}), 100, 6);
    const Dag a = Dag::from_arrows(4, {{1, 2}, {2, 3}});
    const Dag b = Dag::from_arrows(4, {{1, 2}, {2, 3}, {4, 3}});
    CHECK(total_score(b, data) - total_score(a, data) ==
          doctest::Approx(local_score(3, {2, 4}, data) - local_score(3, {2}, data)).epsilon(1e-12));
}

TEST_CASE("score equivalence on three variables") {
    const TargetFamily f = fam({{}, {3}});
    const InterventionalDataset data = simulated(3, 0.7, f, 200, 7);
    const auto dags = oracle::all_dags(3);
    int pairs = 0;
    for (const auto& x : dags) {
        for (const auto& y : dags) {
            if (!oracle::equivalent(x, y, f)) continue;
            ++pairs;
            const double sx = total_score(Dag(oracle::from_matrix(x)), data);
            const double sy = total_score(Dag(oracle::from_matrix(y)), data);
            CHECK(oracle::relative_gap(sx, sy) < 1e-9);
        }
    }
    CHECK(pairs > 25);
}

TEST_CASE("scoring errors") {
    InterventionalDataset data;
    data.X = Eigen::MatrixXd::Random(3, 3);
    data.targets.assign(3, Target{});
    CHECK_THROWS_AS(local_score(1, {2, 3}, data), Error);
    data.X.col(2) = data.X.col(1) * 2.0;
    data.X.conservativeResize(10, 3);
    data.X.bottomRows(6).setRandom();
    data.X.col(2) = data.X.col(1) * 2.0;
    data.targets.assign(10, Target{});
    try {
        local_score(1, {2, 3}, data);
        FAIL("expected SingularDesign");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularDesign);
    }
    CHECK_THROWS_AS(local_score(1, {1}, data), Error);
}

TEST_CASE("maximum-likelihood parameters") {
    InterventionalDataset data;
    data.X.resize(50, 2);
    for (int i = 0; i < 50; ++i) {
        data.X(i, 0) = std::sin(0.37 * i) + 0.1 * i;
        data.X(i, 1) = 0.7 * data.X(i, 0);
    }
    data.targets.assign(50, Target{});
    const GaussianModel fit = mle_params(Dag::from_arrows(2, {{1, 2}}), data);
    CHECK(std::abs(fit.B(1, 0) - 0.7) < 1e-9);
    CHECK(fit.sigma2(1) == doctest::Approx(1e-12));
    CHECK(std::isfinite(local_score(2, {1}, data)));
}

TEST_CASE("mle recovers the generating weights") {
    Rng rng(8);
    const Dag d = Dag::from_arrows(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    const GaussianModel truth = random_model(d, rng);
    const InterventionalDataset data = sample(truth, TargetFamily::observational(), 10000, rng);
    const GaussianModel fit = mle_params(d, data);
    for (Vertex v = 1; v <= 4; ++v) {
        const auto& pa = d.parents(v);
        if (pa.empty()) continue;
        Eigen::MatrixXd x(data.n(), static_cast<Eigen::Index>(pa.size()));
        for (std::size_t j = 0; j < pa.size(); ++j) x.col(static_cast<Eigen::Index>(j)) = data.X.col(pa[j] - 1);
        const Eigen::MatrixXd cov = (x.transpose() * x).inverse() * fit.sigma2(v - 1);
        for (std::size_t j = 0; j < pa.size(); ++j) {
            const double se = std::sqrt(cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
            CHECK(std::abs(fit.B(v - 1, pa[j] - 1) - truth.B(v - 1, pa[j] - 1)) < 3 * se);
        }
    }
}

TEST_CASE("rows intervened at a vertex do not affect its fit") {
    InterventionalDataset data = simulated(3, 0.9, fam({{}, {2}}), 100, 9);
    const Dag d = Dag::from_arrows(3, {{1, 2}, {2, 3}});
    const GaussianModel before = mle_params(d, data);
    for (int i = 0; i < data.n(); ++i) {
        if (contains(data.targets[i], 2)) data.X(i, 1) = 100.0 + i;
    }
    const GaussianModel after = mle_params(d, data);
    CHECK(after.B(1, 0) == before.B(1, 0));
    CHECK(after.sigma2(1) == before.sigma2(1));
}

TEST_CASE("score cache is transparent") {
    const InterventionalDataset data = simulated(5, 0.4, fam({{}, {1}, {4}}), 120, 10);
    const GaussianBic bic(data);
    ScoreCache cache(bic);
    for (int round = 0; round < 2; ++round) {
        for (Vertex v = 1; v <= 5; ++v) {
            for (const VertexSet& pa : std::vector<VertexSet>{{}, without(VertexSet{1, 2}, v), without(VertexSet{3, 4, 5}, v)}) {
                CHECK(cache.local(v, pa) == bic.local(v, pa));
            }
        }
    }
    CHECK(cache.hits() == cache.size());
}

TEST_CASE("dataset helpers") {
    InterventionalDataset data = simulated(3, 0.5, fam({{}, {2}}), 30, 11);
    CHECK_NOTHROW(validate_dataset(data, fam({{}, {2}})));
    CHECK_THROWS_AS(validate_dataset(data, fam({{}})), Error);
    CHECK_THROWS_AS(validate_dataset(data, fam({{}, {2}, {3}})), Error);
    CHECK(family_of(data) == fam({{}, {2}}));

    center_observational(data);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
    int count = 0;
    for (int i = 0; i < data.n(); ++i) {
        if (data.targets[i].empty()) {
            mean += data.X.row(i).transpose();
            ++count;
        }
    }
    CHECK((mean / count).cwiseAbs().maxCoeff() < 1e-12);
}
