#include "gies/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <string>

namespace gies {

namespace {

void insert_sorted(VertexSet& set, Vertex v) {
    auto it = std::lower_bound(set.begin(), set.end(), v);
    if (it == set.end() || *it != v) set.insert(it, v);
}

void erase_sorted(VertexSet& set, Vertex v) {
    auto it = std::lower_bound(set.begin(), set.end(), v);
    if (it != set.end() && *it == v) set.erase(it);
}

std::string vertex_pair(Vertex a, Vertex b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void require_undirected(const Graph& g, const char* what) {
    if (!g.is_undirected()) {
        throw Error(ErrorKind::NotUndirected, std::string(what) + ": graph has arrows");
    }
}

}  // namespace

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const VertexSet& sub, const VertexSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool contains(const VertexSet& set, Vertex v) {
    return std::binary_search(set.begin(), set.end(), v);
}

VertexSet with(VertexSet set, Vertex v) {
    insert_sorted(set, v);
    return set;
}

VertexSet without(VertexSet set, Vertex v) {
    erase_sorted(set, v);
    return set;
}

VertexSet make_set(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int p) : p_(p) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex count");
    const auto n = static_cast<std::size_t>(p);
    matrix_.assign(n * n, 0);
    pa_.resize(n);
    ch_.resize(n);
    nb_.resize(n);
    ad_.resize(n);
}

void Graph::check_pair(Vertex a, Vertex b) const {
    if (!valid_vertex(a) || !valid_vertex(b)) {
        throw Error(ErrorKind::InvalidArgument, "vertex out of range in " + vertex_pair(a, b));
    }
    if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop " + vertex_pair(a, b));
}

void Graph::refresh_pair(Vertex a, Vertex b, bool had_arrow, bool had_line) {
    if (had_line) --num_lines_;
    if (had_arrow) --num_arrows_;
    for (auto [x, y] : {Edge{a, b}, Edge{b, a}}) {
        erase_sorted(pa_[index(x)], y);
        erase_sorted(ch_[index(x)], y);
        erase_sorted(nb_[index(x)], y);
        erase_sorted(ad_[index(x)], y);
    }
    const bool ab = at(a, b) != 0;
    const bool ba = at(b, a) != 0;
    if (ab && ba) {
        insert_sorted(nb_[index(a)], b);
        insert_sorted(nb_[index(b)], a);
        ++num_lines_;
    } else if (ab) {
        insert_sorted(ch_[index(a)], b);
        insert_sorted(pa_[index(b)], a);
        ++num_arrows_;
    } else if (ba) {
        insert_sorted(ch_[index(b)], a);
        insert_sorted(pa_[index(a)], b);
        ++num_arrows_;
    }
    if (ab || ba) {
        insert_sorted(ad_[index(a)], b);
        insert_sorted(ad_[index(b)], a);
    }
}

void Graph::add_edge(Vertex a, Vertex b) {
    check_pair(a, b);
    const bool line = has_line(a, b);
    const bool arrow = is_adjacent(a, b) && !line;
    at(a, b) = 1;
    refresh_pair(a, b, arrow, line);
}

void Graph::remove_edge(Vertex a, Vertex b) {
    check_pair(a, b);
    const bool line = has_line(a, b);
    const bool arrow = is_adjacent(a, b) && !line;
    at(a, b) = 0;
    refresh_pair(a, b, arrow, line);
}

void Graph::set_arrow(Vertex a, Vertex b) {
    check_pair(a, b);
    const bool line = has_line(a, b);
    const bool arrow = is_adjacent(a, b) && !line;
    at(a, b) = 1;
    at(b, a) = 0;
    refresh_pair(a, b, arrow, line);
}

void Graph::set_line(Vertex a, Vertex b) {
    check_pair(a, b);
    const bool line = has_line(a, b);
    const bool arrow = is_adjacent(a, b) && !line;
    at(a, b) = 1;
    at(b, a) = 1;
    refresh_pair(a, b, arrow, line);
}

void Graph::remove_adjacency(Vertex a, Vertex b) {
    check_pair(a, b);
    const bool line = has_line(a, b);
    const bool arrow = is_adjacent(a, b) && !line;
    at(a, b) = 0;
    at(b, a) = 0;
    refresh_pair(a, b, arrow, line);
}

std::vector<Edge> Graph::arrows() const {
    std::vector<Edge> out;
    out.reserve(num_arrows_);
    for (Vertex a = 1; a <= p_; ++a) {
        for (Vertex b : children(a)) out.emplace_back(a, b);
    }
    return out;
}

std::vector<Edge> Graph::lines() const {
    std::vector<Edge> out;
    out.reserve(num_lines_);
    for (Vertex a = 1; a <= p_; ++a) {
        for (Vertex b : neighbors(a)) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(Graph graph) : graph_(std::move(graph)) {
    if (!graph_.is_directed()) throw Error(ErrorKind::NotDirected, "DAG must not contain lines");
    if (!is_acyclic(graph_)) throw Error(ErrorKind::DirectedCycle, "graph has a directed cycle");
}

Dag Dag::from_arrows(int p, const std::vector<Edge>& arrows) {
    Graph g(p);
    for (auto [a, b] : arrows) {
        if (g.is_adjacent(a, b)) {
            throw Error(ErrorKind::InvalidArgument, "duplicate adjacency " + vertex_pair(a, b));
        }
        g.set_arrow(a, b);
    }
    return Dag(std::move(g));
}

// ---------------------------------------------------------------------------
// Basic operations

Graph skeleton(const Graph& g) {
    Graph out(g.p());
    for (Vertex a = 1; a <= g.p(); ++a) {
        for (Vertex b : g.adjacent(a)) {
            if (a < b) out.set_line(a, b);
        }
    }
    return out;
}

std::vector<VStructure> v_structures(const Graph& g) {
    std::vector<VStructure> out;
    for (Vertex b = 1; b <= g.p(); ++b) {
        const auto& pa = g.parents(b);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = i + 1; j < pa.size(); ++j) {
                if (!g.is_adjacent(pa[i], pa[j])) out.push_back({pa[i], b, pa[j]});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Connected components of the lines of g, each sorted; component ids follow
// the smallest vertex.
std::vector<VertexSet> line_components(const Graph& g, std::vector<std::size_t>& component_of) {
    const auto n = static_cast<std::size_t>(g.p());
    constexpr auto unset = static_cast<std::size_t>(-1);
    component_of.assign(n, unset);
    std::vector<VertexSet> comps;
    for (Vertex s = 1; s <= g.p(); ++s) {
        if (component_of[static_cast<std::size_t>(s - 1)] != unset) continue;
        VertexSet comp;
        std::vector<Vertex> stack{s};
        component_of[static_cast<std::size_t>(s - 1)] = comps.size();
        while (!stack.empty()) {
            Vertex a = stack.back();
            stack.pop_back();
            comp.push_back(a);
            for (Vertex b : g.neighbors(a)) {
                auto& slot = component_of[static_cast<std::size_t>(b - 1)];
                if (slot == unset) {
                    slot = comps.size();
                    stack.push_back(b);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

}  // namespace

ChainComponents chain_components(const Graph& g) {
    std::vector<std::size_t> comp_of;
    auto comps = line_components(g, comp_of);
    const std::size_t k = comps.size();

    std::vector<std::vector<std::size_t>> succ(k);
    std::vector<int> indeg(k, 0);
    for (auto [a, b] : g.arrows()) {
        const auto ca = comp_of[static_cast<std::size_t>(a - 1)];
        const auto cb = comp_of[static_cast<std::size_t>(b - 1)];
        if (ca == cb) {
            throw Error(ErrorKind::DirectedCycle,
                        "arrow " + vertex_pair(a, b) + " inside a chain component");
        }
        succ[ca].push_back(cb);
        ++indeg[cb];
    }

    // Kahn on components, smallest component id (= smallest vertex) first.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t c = 0; c < k; ++c) {
        if (indeg[c] == 0) ready.push(c);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        auto c = ready.top();
        ready.pop();
        order.push_back(c);
        for (auto d : succ[c]) {
            if (--indeg[d] == 0) ready.push(d);
        }
    }
    if (order.size() != k) throw Error(ErrorKind::DirectedCycle, "chain components form a cycle");

    ChainComponents out;
    std::vector<std::size_t> rank(k);
    for (std::size_t i = 0; i < k; ++i) rank[order[i]] = i;
    out.components.resize(k);
    for (std::size_t c = 0; c < k; ++c) out.components[rank[c]] = std::move(comps[c]);
    out.component_of.resize(comp_of.size());
    for (std::size_t v = 0; v < comp_of.size(); ++v) out.component_of[v] = rank[comp_of[v]];
    return out;
}

VertexSet chain_component_of(const Graph& g, Vertex v) {
    VertexSet comp;
    std::vector<bool> seen(static_cast<std::size_t>(g.p()), false);
    std::vector<Vertex> stack{v};
    seen[static_cast<std::size_t>(v - 1)] = true;
    while (!stack.empty()) {
        Vertex a = stack.back();
        stack.pop_back();
        comp.push_back(a);
        for (Vertex b : g.neighbors(a)) {
            if (!seen[static_cast<std::size_t>(b - 1)]) {
                seen[static_cast<std::size_t>(b - 1)] = true;
                stack.push_back(b);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

bool is_acyclic(const Graph& g) {
    try {
        chain_components(g);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DirectedCycle) return false;
        throw;
    }
}

VertexOrdering topological_order(const Graph& g) {
    if (!g.is_directed()) throw Error(ErrorKind::NotDirected, "topological order needs a DAG");
    std::vector<int> indeg(static_cast<std::size_t>(g.p()));
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 1; v <= g.p(); ++v) {
        indeg[static_cast<std::size_t>(v - 1)] = static_cast<int>(g.parents(v).size());
        if (g.parents(v).empty()) ready.push(v);
    }
    VertexOrdering order;
    order.reserve(static_cast<std::size_t>(g.p()));
    while (!ready.empty()) {
        Vertex v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Vertex c : g.children(v)) {
            if (--indeg[static_cast<std::size_t>(c - 1)] == 0) ready.push(c);
        }
    }
    if (order.size() != static_cast<std::size_t>(g.p())) {
        throw Error(ErrorKind::DirectedCycle, "graph has a directed cycle");
    }
    return order;
}

VertexOrdering topological_order(const Dag& d) { return topological_order(d.graph()); }

// ---------------------------------------------------------------------------
// Chordality, LexBFS, orientation

VertexOrdering lexbfs_lines(const VertexOrdering& start, const Graph& g) {
    // Sequence of FIFO "sets"; each step takes the head of the first set and
    // splits every set into (neighbors, rest), keeping relative order.
    std::vector<std::vector<Vertex>> sigma;
    if (!start.empty()) sigma.push_back(start);
    std::vector<std::uint8_t> is_nb(static_cast<std::size_t>(g.p()) + 1, 0);

    VertexOrdering out;
    out.reserve(start.size());
    while (!sigma.empty()) {
        auto& first = sigma.front();
        Vertex a = first.front();
        first.erase(first.begin());
        if (first.empty()) sigma.erase(sigma.begin());
        out.push_back(a);

        const auto& nb = g.neighbors(a);
        for (Vertex b : nb) is_nb[static_cast<std::size_t>(b)] = 1;
        std::vector<std::vector<Vertex>> next;
        next.reserve(sigma.size() * 2);
        for (auto& set : sigma) {
            std::vector<Vertex> hit, miss;
            for (Vertex b : set) (is_nb[static_cast<std::size_t>(b)] ? hit : miss).push_back(b);
            if (!hit.empty()) next.push_back(std::move(hit));
            if (!miss.empty()) next.push_back(std::move(miss));
        }
        for (Vertex b : nb) is_nb[static_cast<std::size_t>(b)] = 0;
        sigma = std::move(next);
    }
    return out;
}

namespace {

void require_permutation(const VertexOrdering& order, int p, const char* what) {
    if (order.size() != static_cast<std::size_t>(p)) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": ordering has wrong length");
    }
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    for (Vertex v : order) {
        if (v < 1 || v > p || seen[static_cast<std::size_t>(v - 1)]) {
            throw Error(ErrorKind::InvalidArgument, std::string(what) + ": not a permutation");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

}  // namespace

VertexOrdering lexbfs(const VertexOrdering& start, const Graph& g) {
    require_undirected(g, "lexbfs");
    require_permutation(start, g.p(), "lexbfs");
    return lexbfs_lines(start, g);
}

bool is_perfect_elimination(const VertexOrdering& order, const Graph& g) {
    require_undirected(g, "is_perfect_elimination");
    require_permutation(order, g.p(), "is_perfect_elimination");
    std::vector<std::size_t> pos(static_cast<std::size_t>(g.p()));
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i] - 1)] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
        VertexSet earlier;
        for (Vertex b : g.neighbors(order[i])) {
            if (pos[static_cast<std::size_t>(b - 1)] < i) earlier.push_back(b);
        }
        for (std::size_t x = 0; x < earlier.size(); ++x) {
            for (std::size_t y = x + 1; y < earlier.size(); ++y) {
                if (!g.is_adjacent(earlier[x], earlier[y])) return false;
            }
        }
    }
    return true;
}

bool is_chordal(const Graph& g) {
    require_undirected(g, "is_chordal");
    VertexOrdering start(static_cast<std::size_t>(g.p()));
    std::iota(start.begin(), start.end(), 1);
    return is_perfect_elimination(lexbfs(start, g), g);
}

void orient_lines_by(Graph& g, const VertexOrdering& order) {
    std::vector<std::size_t> pos(static_cast<std::size_t>(g.p()), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i] - 1)] = i;
    for (Vertex a : order) {
        const VertexSet nb = g.neighbors(a);
        for (Vertex b : nb) {
            const auto pb = pos[static_cast<std::size_t>(b - 1)];
            if (pb == static_cast<std::size_t>(-1)) continue;
            if (pos[static_cast<std::size_t>(a - 1)] < pb) g.set_arrow(a, b);
        }
    }
}

Dag orient_by(const VertexOrdering& order, const Graph& g) {
    require_undirected(g, "orient_by");
    require_permutation(order, g.p(), "orient_by");
    Graph out = g;
    orient_lines_by(out, order);
    return Dag(std::move(out));
}

// ---------------------------------------------------------------------------
// Paths and cliques

std::vector<bool> reachable_from(const Graph& g, Vertex from, const VertexSet& forbidden,
                                 const Edge* skip) {
    const auto n = static_cast<std::size_t>(g.p());
    std::vector<bool> seen(n, false);
    for (Vertex f : forbidden) seen[static_cast<std::size_t>(f - 1)] = true;
    std::vector<bool> reach(n, false);
    std::deque<Vertex> queue{from};
    seen[static_cast<std::size_t>(from - 1)] = true;
    reach[static_cast<std::size_t>(from - 1)] = true;
    auto visit = [&](Vertex a, Vertex b) {
        if (skip && skip->first == a && skip->second == b) return;
        auto idx = static_cast<std::size_t>(b - 1);
        if (seen[idx]) return;
        seen[idx] = true;
        reach[idx] = true;
        queue.push_back(b);
    };
    while (!queue.empty()) {
        Vertex a = queue.front();
        queue.pop_front();
        for (Vertex b : g.children(a)) visit(a, b);
        for (Vertex b : g.neighbors(a)) visit(a, b);
    }
    return reach;
}

bool has_path(const Graph& g, Vertex from, Vertex to, const VertexSet& forbidden) {
    if (from == to) throw Error(ErrorKind::InvalidArgument, "has_path: from == to");
    if (contains(forbidden, from) || contains(forbidden, to)) {
        throw Error(ErrorKind::InvalidArgument, "has_path: endpoint is forbidden");
    }
    return reachable_from(g, from, forbidden)[static_cast<std::size_t>(to - 1)];
}

bool is_line_clique(const Graph& g, const VertexSet& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (!g.has_line(set[i], set[j])) return false;
        }
    }
    return true;
}

std::vector<VertexSet> cliques_within(const Graph& g, const VertexSet& within) {
    std::vector<VertexSet> out{VertexSet{}};
    std::vector<VertexSet> level{VertexSet{}};
    while (!level.empty()) {
        std::vector<VertexSet> next;
        for (const auto& clique : level) {
            auto it = clique.empty() ? within.begin()
                                     : std::upper_bound(within.begin(), within.end(), clique.back());
            for (; it != within.end(); ++it) {
                const Vertex c = *it;
                bool ok = true;
                for (Vertex x : clique) {
                    if (!g.has_line(x, c)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                VertexSet grown = clique;
                grown.push_back(c);
                next.push_back(std::move(grown));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

std::vector<VertexSet> cliques_in_neighborhood(const Graph& g, Vertex v, const VertexSet& within) {
    return cliques_within(g, set_intersection(within, g.neighbors(v)));
}

}  // namespace gies
