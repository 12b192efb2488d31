#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "gies/interventions.hpp"
#include "oracles.hpp"

using namespace gies;
using fixtures::fam;
using fixtures::mixed;

TEST_CASE("target family basics") {
    const TargetFamily f = fam({{}, {4, 3, 4}, {2}, {3, 4}});
    CHECK(f[1] == Target{3, 4});
    CHECK(f.deduplicated().size() == 3);
    CHECK(f.conservative(5));
    CHECK_FALSE(fam({{1}, {1, 2}}).conservative(2));
    CHECK(fam({{1}, {2}}).conservative(2));
    CHECK_THROWS_AS(fam({{7}}).validate(5), Error);

    const TargetSeparation sep(4, fam({{}, {1, 2}, {2}}));
    CHECK(sep.separates(1, 2));
    CHECK(sep.separates(1, 3));
    CHECK_FALSE(sep.separates(3, 4));
}

TEST_CASE("intervention graphs") {
    const Dag d = fixtures::seven_dag();
    const Dag d4 = intervention_graph(d, {4});
    CHECK(d4.num_arrows() == 9);
    CHECK_FALSE(d4.has_arrow(3, 4));
    const Dag d35 = intervention_graph(d, {3, 5});
    CHECK(d35.num_arrows() == 7);
    CHECK_FALSE(d35.has_arrow(2, 3));
    CHECK_FALSE(d35.has_arrow(1, 5));
    CHECK_FALSE(d35.has_arrow(2, 5));
    CHECK(intervention_graph(d, {}) == d);

    std::set<std::tuple<int, int, int>> got;
    for (auto vs : v_structures(d4.graph())) got.insert({vs.a, vs.b, vs.c});
    CHECK(got == oracle::v_structures(oracle::to_matrix(d4.graph())));
}

TEST_CASE("markov equivalence") {
    const TargetFamily f = fam({{}, {4}});
    CHECK(markov_equivalent(fixtures::seven_dag(), fixtures::seven_equiv(), f));
    CHECK_FALSE(markov_equivalent(fixtures::seven_dag(), fixtures::seven_other(), f));
    CHECK(markov_equivalent(fixtures::seven_dag(), fixtures::seven_other(), TargetFamily::observational()));
    CHECK(markov_equivalent(fixtures::seven_dag(), fixtures::seven_dag(), f));

    const Dag a = Dag::from_arrows(2, {{1, 2}});
    const Dag b = Dag::from_arrows(2, {{2, 1}});
    CHECK(markov_equivalent(a, b, TargetFamily::observational()));
    CHECK_FALSE(markov_equivalent(a, b, fam({{}, {1}})));
    CHECK_THROWS_AS(markov_equivalent(a, b, fam({{1}, {1, 2}})), Error);
}

TEST_CASE("strong protection") {
    const Graph g = fixtures::seven_essential();
    const TargetFamily obs = TargetFamily::observational();
    CHECK(strongly_protected(g, obs, 2, 6));
    CHECK(strongly_protected(g, obs, 3, 6));
    CHECK(strongly_protected(g, obs, 5, 6));
    CHECK(strongly_protected(g, obs, 3, 7));
    CHECK_FALSE(strongly_protected(g, obs, 3, 4));
    CHECK_FALSE(strongly_protected(g, obs, 4, 7));

    const TargetFamily f = fam({{}, {4}});
    CHECK(strongly_protected(g, f, 3, 4));
    CHECK(strongly_protected(g, f, 4, 7));

    CHECK_FALSE(strongly_protected(mixed(2, {{1, 2}}, {}), obs, 1, 2));
    CHECK_THROWS_AS(strongly_protected(g, obs, 1, 2), Error);
    CHECK_THROWS_AS(strongly_protected(g, obs, 6, 2), Error);
}

TEST_CASE("replace_unprotected and essential graphs of worked examples") {
    const TargetFamily f = fam({{}, {4}});
    CHECK(replace_unprotected(fixtures::seven_dag().graph(), f).graph == fixtures::seven_essential());
    CHECK(essential_graph(fixtures::seven_dag(), f).graph == fixtures::seven_essential());

    const Dag chain = fixtures::chain_dag(10, 1);
    CHECK(essential_graph(chain, fam({{}, {1}})).graph == chain.graph());
    const Graph line_chain = essential_graph(chain, TargetFamily::observational()).graph;
    CHECK(line_chain.is_undirected());
    CHECK(line_chain.num_lines() == 9);

    const Dag complete = Dag::from_arrows(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK(essential_graph(complete, fam({{}, {1}, {2}, {3}})).graph == complete.graph());
    CHECK_THROWS_AS(essential_graph(complete, fam({{1, 2, 3}})), Error);
}

TEST_CASE("essential graph validation") {
    CHECK(is_essential_graph(fixtures::seven_essential(), fam({{}, {4}})));
    const EssentialCheck obs = check_essential_graph(fixtures::seven_essential(), TargetFamily::observational());
    CHECK_FALSE(obs.ok);
    CHECK(obs.failed_condition == 5);

    const EssentialCheck induced = check_essential_graph(mixed(3, {{1, 2}}, {{2, 3}}), TargetFamily::observational());
    CHECK(induced.failed_condition == 3);

    const EssentialCheck separated = check_essential_graph(mixed(2, {}, {{1, 2}}), fam({{}, {1}}));
    CHECK(separated.failed_condition == 4);

    const EssentialCheck cycle = check_essential_graph(mixed(3, {{1, 2}, {2, 3}, {3, 1}}, {}), TargetFamily::observational());
    CHECK(cycle.failed_condition == 1);

    const EssentialCheck square = check_essential_graph(mixed(4, {}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}), TargetFamily::observational());
    CHECK(square.failed_condition == 2);
}

TEST_CASE("representatives") {
    const TargetFamily f = fam({{}, {4}});
    const EssentialGraph e{fixtures::seven_essential(), f};
    const Dag r = representative(e);
    CHECK(essential_graph(r, f) == e);

    const Dag d = fixtures::seven_dag();
    CHECK(representative(d.graph()) == d);

    const Graph line_chain = skeleton(fixtures::chain_dag(6, 1).graph());
    const Dag rc = representative(line_chain);
    CHECK(rc == fixtures::chain_dag(6, 1));

    const auto all = enumerate_representatives(e, 1000);
    CHECK(all.size() == 8);
    for (const Dag& x : all) CHECK(markov_equivalent(x, d, f));
    CHECK_THROWS_AS(enumerate_representatives(e, 7), Error);
    CHECK(enumerate_representatives(d.graph(), 10) == std::vector<Dag>{d});
}

TEST_CASE("chain representative counts") {
    const int p = 10;
    CHECK(enumerate_representatives(skeleton(fixtures::chain_dag(p, 1).graph()), 100).size() == 10);
    for (int s = 1; s <= p; ++s) {
        for (int v = 1; v <= p; ++v) {
            const EssentialGraph e = essential_graph(fixtures::chain_dag(p, s), fam({{}, {v}}));
            const std::size_t expected = v < s ? p - v : (v > s ? v - 1 : 1);
            CHECK(enumerate_representatives(e, 100).size() == expected);
        }
    }
}

TEST_CASE("count of non-essential edges") {
    CHECK(count_non_essential({fixtures::seven_essential(), fam({{}, {4}})}) == 4);
    CHECK(count_non_essential({fixtures::seven_dag().graph(), fam({{}, {4}})}) == 0);
    CHECK(count_non_essential(essential_graph(fixtures::chain_dag(8, 3), TargetFamily::observational())) == 7);
}

TEST_CASE("brute-force class structure on four vertices") {
    const auto dags = oracle::all_dags(4);
    REQUIRE(dags.size() == 543);
    const std::vector<TargetFamily> families{TargetFamily::observational(), fam({{}, {1}}), fam({{}, {1, 2}}),
                                             fam({{1}, {2}, {3}, {4}})};
    for (const auto& f : families) {
        // Classes under the reference relation.
        std::vector<int> cls(dags.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < dags.size(); ++i) {
            if (cls[i] >= 0) continue;
            cls[i] = next;
            for (std::size_t j = i + 1; j < dags.size(); ++j) {
                if (cls[j] < 0 && oracle::equivalent(dags[i], dags[j], f)) cls[j] = next;
            }
            ++next;
        }
        std::map<int, std::vector<const oracle::Matrix*>> members;
        for (std::size_t i = 0; i < dags.size(); ++i) members[cls[i]].push_back(&dags[i]);

        for (std::size_t i = 0; i < dags.size(); ++i) {
            const Dag d(oracle::from_matrix(dags[i]));
            const EssentialGraph e = essential_graph(d, f);
            CHECK(oracle::to_matrix(e.graph) == oracle::union_of(members[cls[i]]));
            CHECK(is_essential_graph(e.graph, f));
            CHECK(enumerate_representatives(e, 1000).size() == members[cls[i]].size());

            // Interventional classes refine observational ones.
            const Graph e_obs = essential_graph(d, TargetFamily::observational()).graph;
            CHECK(skeleton(e_obs) == skeleton(e.graph));
            for (auto [a, b] : e.graph.lines()) CHECK(e_obs.has_line(a, b));

            // Arrows whose endpoints a target separates stay directed.
            const TargetSeparation sep(4, f);
            for (auto [a, b] : d.arrows()) {
                if (sep.separates(a, b)) CHECK(e.graph.has_arrow(a, b));
            }
        }
        for (std::size_t i = 0; i < dags.size(); i += 7) {
            const Dag di(oracle::from_matrix(dags[i]));
            for (std::size_t j = 0; j < dags.size(); j += 3) {
                const Dag dj(oracle::from_matrix(dags[j]));
                const bool eq = markov_equivalent(di, dj, f);
                CHECK(eq == (cls[i] == cls[j]));
                if (eq) CHECK(markov_equivalent(di, dj, TargetFamily::observational()));
            }
        }
    }
}
