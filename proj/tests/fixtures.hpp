#pragma once

// Worked graphs used across the test suites.

#include <utility>
#include <vector>

#include "gies/graph.hpp"
#include "gies/interventions.hpp"

namespace fixtures {

using gies::Dag;
using gies::Edge;
using gies::Graph;
using gies::TargetFamily;

inline Graph mixed(int p, const std::vector<Edge>& arrows, const std::vector<Edge>& lines) {
    Graph g(p);
    for (auto [a, b] : arrows) g.set_arrow(a, b);
    for (auto [a, b] : lines) g.set_line(a, b);
    return g;
}

// Seven-vertex DAG whose intervention graphs are shown for targets {4}, {3,5}.
inline Dag seven_dag() {
    return Dag::from_arrows(7, {{2, 1}, {2, 3}, {3, 4}, {1, 5}, {2, 5}, {2, 6}, {3, 6}, {5, 6}, {3, 7}, {4, 7}});
}

// Its essential graph under {∅, {4}}.
inline Graph seven_essential() {
    return mixed(7, {{3, 4}, {2, 6}, {3, 6}, {5, 6}, {3, 7}, {4, 7}}, {{1, 2}, {2, 3}, {1, 5}, {2, 5}});
}

// Equivalent to seven_dag under {∅, {4}}.
inline Dag seven_equiv() {
    return Dag::from_arrows(7, {{5, 1}, {1, 2}, {5, 2}, {2, 3}, {3, 4}, {2, 6}, {3, 6}, {5, 6}, {3, 7}, {4, 7}});
}

// Observationally equivalent to seven_dag but not under {∅, {4}}.
inline Dag seven_other() {
    return Dag::from_arrows(7, {{2, 1}, {3, 2}, {4, 3}, {7, 3}, {7, 4}, {1, 5}, {2, 5}, {2, 6}, {3, 6}, {5, 6}});
}

// After inserting (4, 2, {3}).
inline Graph seven_after_insert() {
    return mixed(7, {{2, 1}, {3, 2}, {3, 4}, {2, 5}, {2, 6}, {3, 6}, {5, 6}, {3, 7}, {4, 7}, {4, 2}}, {{1, 5}});
}

// After deleting (2, 5, ∅).
inline Graph seven_after_delete() {
    return mixed(7, {{2, 1}, {5, 1}, {3, 4}, {2, 6}, {3, 6}, {5, 6}, {3, 7}, {4, 7}}, {{2, 3}});
}

// After turning the line (5, 2, {3}).
inline Graph seven_after_turn_line() {
    return mixed(7, {{2, 1}, {5, 1}, {3, 2}, {5, 2}, {3, 4}, {3, 6}, {5, 6}, {3, 7}, {4, 7}}, {{2, 6}});
}

// Five-vertex essential graph (under {∅, {4}}) used for turning an arrow.
inline Graph five_essential() {
    return mixed(5, {{2, 1}, {4, 1}, {2, 5}, {4, 5}}, {{1, 5}, {2, 3}});
}

// After turning the arrow (1, 2, {3}).
inline Graph five_after_turn_arrow() {
    return mixed(5, {{4, 1}, {1, 2}, {3, 2}, {1, 5}, {2, 5}, {4, 5}}, {});
}

// Chordal undirected graph for the LexBFS walk-through.
inline Graph lexbfs_graph() {
    return mixed(7, {}, {{1, 5}, {1, 2}, {2, 5}, {5, 6}, {2, 6}, {2, 3}, {3, 4}, {4, 7}, {3, 7}, {3, 6}});
}

// Its orientation along (6,3,2,5,4,7,1).
inline Dag lexbfs_oriented() {
    return Dag::from_arrows(7, {{2, 1}, {5, 1}, {3, 2}, {6, 2}, {6, 3}, {3, 4}, {2, 5}, {6, 5}, {3, 7}, {4, 7}});
}

// Chain graph with components {1,2,3,5}, {6}, {4,7}.
inline Graph chain_graph() {
    return mixed(7, {{3, 4}, {2, 6}, {3, 6}, {5, 6}, {3, 7}}, {{1, 2}, {2, 3}, {1, 5}, {2, 5}, {4, 7}});
}

inline Dag chain_dag(int p, int source) {
    std::vector<Edge> arrows;
    for (int a = source; a > 1; --a) arrows.emplace_back(a, a - 1);
    for (int a = source; a < p; ++a) arrows.emplace_back(a, a + 1);
    return Dag::from_arrows(p, arrows);
}

inline TargetFamily fam(std::vector<std::vector<int>> targets) { return TargetFamily(std::move(targets)); }

}  // namespace fixtures
