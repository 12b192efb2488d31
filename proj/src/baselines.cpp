#include "gies/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>

namespace gies {

namespace {

template <typename Visit>
void for_each_dag_move(const Graph& g, Phase phase, ScoreCache& cache, const SearchOptions& options, Visit&& visit) {
    const int p = g.p();
    switch (phase) {
        case Phase::Forward: {
            auto capped = [&](Vertex x) { return options.max_degree && g.degree(x) >= *options.max_degree; };
            for (Vertex v = 1; v <= p; ++v) {
                if (capped(v)) continue;
                const auto reach = reachable_from(g, v, {});
                const double base = cache.local(v, g.parents(v));
                for (Vertex u = 1; u <= p; ++u) {
                    if (u == v || g.is_adjacent(u, v) || capped(u) || reach[static_cast<std::size_t>(u - 1)]) continue;
                    visit(Move{MoveKind::Insert, u, v, {}, cache.local(v, with(g.parents(v), u)) - base});
                }
            }
            break;
        }
        case Phase::Backward:
            for (Vertex v = 1; v <= p; ++v) {
                const double base = cache.local(v, g.parents(v));
                for (Vertex u : g.parents(v)) {
                    visit(Move{MoveKind::Delete, u, v, {}, cache.local(v, without(g.parents(v), u)) - base});
                }
            }
            break;
        case Phase::Turning:
            // Reverse a→b into b→a; recorded with v = a, u = b.
            for (Vertex a = 1; a <= p; ++a) {
                for (Vertex b : g.children(a)) {
                    const Edge skip{a, b};
                    if (reachable_from(g, a, {}, &skip)[static_cast<std::size_t>(b - 1)]) continue;
                    const double delta = cache.local(a, with(g.parents(a), b)) + cache.local(b, without(g.parents(b), a)) -
                                         cache.local(a, g.parents(a)) - cache.local(b, g.parents(b));
                    visit(Move{MoveKind::TurnArrow, b, a, {}, delta});
                }
            }
            break;
    }
}

void apply_dag_move(Graph& g, const Move& m) {
    switch (m.kind) {
        case MoveKind::Insert: g.set_arrow(m.u, m.v); break;
        case MoveKind::Delete: g.remove_adjacency(m.u, m.v); break;
        case MoveKind::TurnArrow: g.set_arrow(m.u, m.v); break;
        case MoveKind::TurnLine: throw Error(ErrorKind::InvalidMove, "no lines in a DAG search");
    }
}

}  // namespace

GdsResult gds(ScoreCache& cache, const TargetFamily& family, const SearchOptions& options) {
    const int p = cache.score().p();
    family.validate(p);
    if (!family.conservative(p)) throw Error(ErrorKind::NonConservativeFamily, "target family is not conservative");
    validate_dataset(cache.score().data(), family);
    if (options.phase_order.empty()) throw Error(ErrorKind::InvalidArgument, "empty phase order");

    Graph g(p);
    GdsResult result;
    result.score = cache.total(Dag(p));
    result.trace.initial_score = result.score;

    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < options.phase_order.size(); ++i) {
            const Phase phase = options.phase_order[i];
            for (;;) {
                std::optional<Move> best;
                for_each_dag_move(g, phase, cache, options, [&](Move m) {
                    if (!(m.delta > options.min_improvement)) return;
                    if (!best || better_move(m, *best)) best = std::move(m);
                });
                if (!best) break;
                apply_dag_move(g, *best);
                result.score += best->delta;
                result.trace.steps.push_back({phase, std::move(*best), result.score});
                if (i > 0 || options.first_phase_sets_continue) again = true;
            }
        }
        if (options.single_cycle) break;
    }
    result.dag = Dag(std::move(g));
    return result;
}

GdsResult gds(const InterventionalDataset& data, const TargetFamily& family, const SearchOptions& options,
              ScoreOptions score_options) {
    const GaussianBic score(data, score_options);
    ScoreCache cache(score);
    return gds(cache, family, options);
}

SearchResult ges(const InterventionalDataset& data, const SearchOptions& options, ScoreOptions score_options) {
    InterventionalDataset pooled;
    pooled.X = data.X;
    pooled.targets.assign(data.targets.size(), Target{});
    return gies(pooled, TargetFamily::observational(), options, score_options);
}

DpResult dp_exact(const InterventionalDataset& data, const TargetFamily& family, const DpOptions& options,
                  ScoreOptions score_options) {
    const int p = data.p();
    if (p > options.max_p) {
        throw Error(ErrorKind::TooLarge, "p = " + std::to_string(p) + " exceeds max_p = " + std::to_string(options.max_p));
    }
    if (p > 30) throw Error(ErrorKind::TooLarge, "dynamic programming supports at most 30 variables");
    family.validate(p);
    if (!family.conservative(p)) throw Error(ErrorKind::NonConservativeFamily, "target family is not conservative");
    validate_dataset(data, family);

    DpResult result;
    result.max_parents = options.max_parents;
    if (!result.max_parents && p > 12) result.max_parents = 5;
    const int cap = result.max_parents.value_or(p);

    const GaussianBic score(data, score_options);
    const std::size_t full = (std::size_t{1} << p);
    constexpr double kNone = -std::numeric_limits<double>::infinity();

    auto members = [p](std::size_t mask) {
        VertexSet s;
        for (int i = 0; i < p; ++i) {
            if (mask & (std::size_t{1} << i)) s.push_back(i + 1);
        }
        return s;
    };

    // best[v][S]: best local score of v with parents inside S; arg holds the parent mask.
    std::vector<std::vector<double>> best(static_cast<std::size_t>(p));
    std::vector<std::vector<std::uint32_t>> arg(static_cast<std::size_t>(p));

    auto fill_vertex = [&](int i) {
        auto& b = best[static_cast<std::size_t>(i)];
        auto& a = arg[static_cast<std::size_t>(i)];
        b.assign(full, kNone);
        a.assign(full, 0);
        const std::size_t self = std::size_t{1} << i;
        for (std::size_t S = 0; S < full; ++S) {
            if (S & self) continue;
            if (std::popcount(S) <= cap) {
                try {
                    b[S] = score.local(i + 1, members(S));
                    a[S] = static_cast<std::uint32_t>(S);
                } catch (const Error& e) {
                    if (S == 0 || (e.kind() != ErrorKind::InsufficientSamples && e.kind() != ErrorKind::SingularDesign)) {
                        throw;
                    }
                }
            }
            for (std::size_t rest = S; rest; rest &= rest - 1) {
                const std::size_t sub = S & ~(rest & (~rest + 1));
                if (b[sub] > b[S]) {
                    b[S] = b[sub];
                    a[S] = a[sub];
                }
            }
        }
    };

    const int threads = std::max(1, std::min(options.threads, p));
    if (threads == 1) {
        for (int i = 0; i < p; ++i) fill_vertex(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int i = t; i < p; i += threads) fill_vertex(i);
                } catch (...) {
                    failures[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& f : failures) {
            if (f) std::rethrow_exception(f);
        }
    }

    // Best network on each subset W, choosing its sink last.
    std::vector<double> network(full, kNone);
    std::vector<std::int8_t> sink(full, -1);
    network[0] = 0.0;
    for (std::size_t W = 1; W < full; ++W) {
        for (int i = 0; i < p; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            if (!(W & bit)) continue;
            const double cand = network[W ^ bit] + best[static_cast<std::size_t>(i)][W ^ bit];
            if (cand > network[W]) {
                network[W] = cand;
                sink[W] = static_cast<std::int8_t>(i);
            }
        }
    }

    Graph g(p);
    for (std::size_t W = full - 1; W;) {
        const int i = sink[W];
        const std::size_t bit = std::size_t{1} << i;
        for (Vertex a : members(arg[static_cast<std::size_t>(i)][W ^ bit])) g.set_arrow(a, i + 1);
        W ^= bit;
    }
    result.dag = Dag(std::move(g));
    result.score = network[full - 1];
    return result;
}

}  // namespace gies
