#include "gies/search.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>

namespace gies {

namespace {

constexpr std::size_t kTurnFallbackLimit = 100000;

std::string triple_name(Vertex u, Vertex v, const VertexSet& C) {
    std::string s = "(" + std::to_string(u) + "," + std::to_string(v) + ",{";
    for (std::size_t i = 0; i < C.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(C[i]);
    }
    return s + "})";
}

void check_vertices(const Graph& g, Vertex u, Vertex v) {
    if (!g.valid_vertex(u) || !g.valid_vertex(v) || u == v) {
        throw Error(ErrorKind::InvalidArgument, "bad vertex pair in move");
    }
}

bool is_sorted_set(const VertexSet& s) {
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

// C ∩ N separates C ∖ N from N ∖ C among the lines of G[nb(v)].
bool separates_in_neighborhood(const Graph& g, Vertex v, const VertexSet& C, const VertexSet& N) {
    const VertexSet sources = set_difference(C, N);
    const VertexSet sinks = set_difference(N, C);
    if (sinks.empty()) return true;
    const VertexSet allowed = set_difference(g.neighbors(v), set_intersection(C, N));
    std::vector<bool> seen(static_cast<std::size_t>(g.p()), false);
    std::vector<Vertex> stack;
    for (Vertex s : sources) {
        seen[static_cast<std::size_t>(s - 1)] = true;
        stack.push_back(s);
    }
    while (!stack.empty()) {
        Vertex a = stack.back();
        stack.pop_back();
        if (contains(sinks, a)) return false;
        for (Vertex b : g.neighbors(a)) {
            if (!seen[static_cast<std::size_t>(b - 1)] && contains(allowed, b)) {
                seen[static_cast<std::size_t>(b - 1)] = true;
                stack.push_back(b);
            }
        }
    }
    return true;
}

// C followed by x, as a LexBFS start prefix.
VertexOrdering with_tail(const VertexSet& C, Vertex x) {
    VertexOrdering out = C;
    out.push_back(x);
    return out;
}

VertexOrdering start_order(const VertexSet& head, const VertexSet& comp) {
    VertexOrdering order = head;
    for (Vertex x : comp) {
        if (std::find(head.begin(), head.end(), x) == head.end()) order.push_back(x);
    }
    return order;
}

// Orients the chain component of `anchor` by LexBFS starting with `head`.
void orient_component(Graph& g, Vertex anchor, const VertexSet& head) {
    const VertexSet comp = chain_component_of(g, anchor);
    if (comp.size() < 2) return;
    orient_lines_by(g, lexbfs_lines(start_order(head, comp), g));
}

void finish(Graph& g, const TargetFamily& family) {
    replace_unprotected_in_place(g, TargetSeparation(g.p(), family));
}

// Parents of x among the vertices of `within`.
VertexSet parents_within(const Graph& g, Vertex x, const VertexSet& within) {
    return set_intersection(g.parents(x), within);
}

}  // namespace

std::string_view to_string(MoveKind kind) noexcept {
    switch (kind) {
        case MoveKind::Insert: return "insert";
        case MoveKind::Delete: return "delete";
        case MoveKind::TurnLine: return "turn-line";
        case MoveKind::TurnArrow: return "turn-arrow";
    }
    return "unknown";
}

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
        case Phase::Forward: return "forward";
        case Phase::Backward: return "backward";
        case Phase::Turning: return "turning";
    }
    return "unknown";
}

Phase parse_phase(std::string_view name) {
    std::string s(name);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "forward" || s == "f") return Phase::Forward;
    if (s == "backward" || s == "b") return Phase::Backward;
    if (s == "turning" || s == "t") return Phase::Turning;
    throw Error(ErrorKind::InvalidArgument, "unknown phase '" + std::string(name) + "'");
}

std::vector<Phase> parse_phase_order(std::string_view text) {
    std::vector<Phase> out;
    if (text.find(',') == std::string_view::npos && text.size() <= 3) {
        for (char c : text) out.push_back(parse_phase(std::string_view(&c, 1)));
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            auto token = text.substr(start, end - start);
            while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
            while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
            if (!token.empty()) out.push_back(parse_phase(token));
            start = end + 1;
        }
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty phase order");
    return out;
}

bool key_less(const Move& a, const Move& b) {
    return std::tie(a.kind, a.v, a.u, a.C) < std::tie(b.kind, b.v, b.u, b.C);
}

bool better_move(const Move& a, const Move& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    return key_less(a, b);
}

// ---------------------------------------------------------------------------
// Validity

bool valid_insert(const Graph& g, Vertex u, Vertex v, const VertexSet& C) {
    check_vertices(g, u, v);
    if (g.is_adjacent(u, v)) {
        throw Error(ErrorKind::VerticesAdjacent, std::to_string(u) + " and " + std::to_string(v) + " are adjacent");
    }
    if (!is_sorted_set(C) || !is_subset(C, g.neighbors(v)) || !is_line_clique(g, C)) return false;
    const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
    if (!is_subset(N, C)) return false;
    return !reachable_from(g, v, C)[static_cast<std::size_t>(u - 1)];
}

bool valid_delete(const Graph& g, Vertex u, Vertex v, const VertexSet& C) {
    check_vertices(g, u, v);
    if (!g.has_edge(u, v)) {
        throw Error(ErrorKind::NotAnEdge, std::to_string(u) + "->" + std::to_string(v) + " is not an edge");
    }
    if (!is_sorted_set(C) || !is_line_clique(g, C)) return false;
    const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
    return is_subset(C, N);
}

bool valid_turn_line(const Graph& g, Vertex u, Vertex v, const VertexSet& C) {
    check_vertices(g, u, v);
    if (!g.has_line(u, v)) {
        throw Error(ErrorKind::NotALine, std::to_string(u) + "--" + std::to_string(v) + " is not a line");
    }
    if (!is_sorted_set(C) || contains(C, u) || !is_subset(C, g.neighbors(v)) || !is_line_clique(g, C)) {
        return false;
    }
    const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
    if (set_difference(C, N).empty()) return false;
    return separates_in_neighborhood(g, v, C, N);
}

bool valid_turn_arrow(const Graph& g, Vertex u, Vertex v, const VertexSet& C) {
    check_vertices(g, u, v);
    if (!g.has_arrow(v, u)) {
        throw Error(ErrorKind::NotAnArrow, std::to_string(v) + "->" + std::to_string(u) + " is not an arrow");
    }
    if (!is_sorted_set(C) || !is_subset(C, g.neighbors(v)) || !is_line_clique(g, C)) return false;
    const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
    if (!is_subset(N, C)) return false;
    const Edge skip{v, u};
    return !reachable_from(g, v, set_union(C, g.neighbors(u)), &skip)[static_cast<std::size_t>(u - 1)];
}

bool valid_move(const Graph& g, const Move& m) {
    switch (m.kind) {
        case MoveKind::Insert: return valid_insert(g, m.u, m.v, m.C);
        case MoveKind::Delete: return valid_delete(g, m.u, m.v, m.C);
        case MoveKind::TurnLine: return valid_turn_line(g, m.u, m.v, m.C);
        case MoveKind::TurnArrow: return valid_turn_arrow(g, m.u, m.v, m.C);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Application

EssentialGraph apply_insert(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C) {
    if (!valid_insert(e.graph, u, v, C)) throw Error(ErrorKind::InvalidMove, "invalid insert " + triple_name(u, v, C));
    Graph g = e.graph;
    orient_component(g, v, with_tail(C, v));
    g.set_arrow(u, v);
    finish(g, e.family);
    return {std::move(g), e.family};
}

EssentialGraph apply_delete(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C) {
    if (!valid_delete(e.graph, u, v, C)) throw Error(ErrorKind::InvalidMove, "invalid delete " + triple_name(u, v, C));
    Graph g = e.graph;
    VertexSet head = C;
    if (g.has_line(u, v)) head.push_back(u);
    head.push_back(v);
    orient_component(g, v, head);
    g.remove_adjacency(u, v);
    finish(g, e.family);
    return {std::move(g), e.family};
}

EssentialGraph apply_turn_line(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C) {
    if (!valid_turn_line(e.graph, u, v, C)) {
        throw Error(ErrorKind::InvalidMove, "invalid line turn " + triple_name(u, v, C));
    }
    const Graph& g0 = e.graph;
    const VertexSet comp = chain_component_of(g0, v);
    const VertexSet nb_v = g0.neighbors(v);
    const VertexSet N = set_intersection(nb_v, g0.adjacent(u));
    const VertexSet want_u = with(set_intersection(C, N), v);

    auto realises = [&](const Graph& h) {
        return parents_within(h, v, nb_v) == C && parents_within(h, u, comp) == want_u;
    };

    VertexSet head = C;
    head.push_back(v);
    head.push_back(u);
    Graph g = g0;
    orient_component(g, v, head);
    if (!realises(g)) {
        // Search the orientations of T(v) for one realising C at v and
        // (C ∩ N) ∪ {v} at u whose turned version stays acyclic.
        Graph lines_only(g0.p());
        for (Vertex a : comp) {
            for (Vertex b : g0.neighbors(a)) {
                if (a < b) lines_only.set_line(a, b);
            }
        }
        bool found = false;
        for (const Dag& d : enumerate_representatives(lines_only, kTurnFallbackLimit)) {
            Graph h = g0;
            for (auto [a, b] : d.arrows()) h.set_arrow(a, b);
            if (!realises(h)) continue;
            Graph turned = h;
            turned.set_arrow(u, v);
            if (!is_acyclic(turned)) continue;
            g = std::move(h);
            found = true;
            break;
        }
        if (!found) throw Error(ErrorKind::InvalidMove, "no orientation realises line turn " + triple_name(u, v, C));
    }
    g.set_arrow(u, v);
    finish(g, e.family);
    return {std::move(g), e.family};
}

EssentialGraph apply_turn_arrow(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C) {
    if (!valid_turn_arrow(e.graph, u, v, C)) {
        throw Error(ErrorKind::InvalidMove, "invalid arrow turn " + triple_name(u, v, C));
    }
    Graph g = e.graph;
    orient_component(g, u, VertexSet{u});
    orient_component(g, v, with_tail(C, v));
    g.set_arrow(u, v);
    finish(g, e.family);
    return {std::move(g), e.family};
}

EssentialGraph apply_move(const EssentialGraph& e, const Move& m) {
    switch (m.kind) {
        case MoveKind::Insert: return apply_insert(e, m.u, m.v, m.C);
        case MoveKind::Delete: return apply_delete(e, m.u, m.v, m.C);
        case MoveKind::TurnLine: return apply_turn_line(e, m.u, m.v, m.C);
        case MoveKind::TurnArrow: return apply_turn_arrow(e, m.u, m.v, m.C);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown move kind");
}

// ---------------------------------------------------------------------------
// Deltas

double insert_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache) {
    const VertexSet base = set_union(g.parents(v), C);
    return cache.local(v, with(base, u)) - cache.local(v, base);
}

double delete_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache) {
    const VertexSet base = set_union(g.parents(v), C);
    return cache.local(v, without(base, u)) - cache.local(v, with(base, u));
}

double turn_line_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache) {
    const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
    const VertexSet pa_v = set_union(g.parents(v), C);
    const VertexSet pa_u = set_union(g.parents(u), set_intersection(C, N));
    return cache.local(v, with(pa_v, u)) + cache.local(u, pa_u) - cache.local(v, pa_v) -
           cache.local(u, with(pa_u, v));
}

double turn_arrow_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache) {
    const VertexSet pa_v = set_union(g.parents(v), C);
    const VertexSet& pa_u = g.parents(u);
    return cache.local(v, with(pa_v, u)) + cache.local(u, without(pa_u, v)) - cache.local(v, pa_v) -
           cache.local(u, pa_u);
}

double move_delta(const Graph& g, const Move& m, ScoreCache& cache) {
    switch (m.kind) {
        case MoveKind::Insert: return insert_delta(g, m.u, m.v, m.C, cache);
        case MoveKind::Delete: return delete_delta(g, m.u, m.v, m.C, cache);
        case MoveKind::TurnLine: return turn_line_delta(g, m.u, m.v, m.C, cache);
        case MoveKind::TurnArrow: return turn_arrow_delta(g, m.u, m.v, m.C, cache);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown move kind");
}

// ---------------------------------------------------------------------------
// Candidate enumeration

namespace {

template <typename Visit>
void for_each_forward(const Graph& g, ScoreCache& cache, const SearchOptions& options, Visit&& visit) {
    const int p = g.p();
    auto capped = [&](Vertex x) { return options.max_degree && g.degree(x) >= *options.max_degree; };
    for (Vertex v = 1; v <= p; ++v) {
        if (capped(v)) continue;
        const VertexSet& nb_v = g.neighbors(v);
        for (const VertexSet& C : cliques_within(g, nb_v)) {
            const auto reach = reachable_from(g, v, C);
            const VertexSet base = set_union(g.parents(v), C);
            std::optional<double> base_score;
            for (Vertex u = 1; u <= p; ++u) {
                if (u == v || g.is_adjacent(u, v) || capped(u)) continue;
                if (reach[static_cast<std::size_t>(u - 1)]) continue;
                if (!is_subset(set_intersection(nb_v, g.adjacent(u)), C)) continue;
                if (!base_score) base_score = cache.local(v, base);
                const double delta = cache.local(v, with(base, u)) - *base_score;
                visit(Move{MoveKind::Insert, u, v, C, delta});
            }
        }
    }
}

template <typename Visit>
void for_each_backward(const Graph& g, ScoreCache& cache, Visit&& visit) {
    for (Vertex v = 1; v <= g.p(); ++v) {
        const VertexSet us = set_union(g.neighbors(v), g.parents(v));
        for (Vertex u : us) {
            const VertexSet N = set_intersection(g.neighbors(v), g.adjacent(u));
            for (const VertexSet& C : cliques_within(g, N)) {
                visit(Move{MoveKind::Delete, u, v, C, delete_delta(g, u, v, C, cache)});
            }
        }
    }
}

template <typename Visit>
void for_each_turning(const Graph& g, ScoreCache& cache, Visit&& visit) {
    for (Vertex v = 1; v <= g.p(); ++v) {
        const VertexSet& nb_v = g.neighbors(v);
        for (Vertex u : nb_v) {
            const VertexSet N = set_intersection(nb_v, g.adjacent(u));
            for (const VertexSet& C : cliques_within(g, without(nb_v, u))) {
                if (set_difference(C, N).empty()) continue;
                if (!separates_in_neighborhood(g, v, C, N)) continue;
                visit(Move{MoveKind::TurnLine, u, v, C, turn_line_delta(g, u, v, C, cache)});
            }
        }
        for (Vertex u : g.children(v)) {
            const VertexSet N = set_intersection(nb_v, g.adjacent(u));
            const Edge skip{v, u};
            for (const VertexSet& C : cliques_within(g, nb_v)) {
                if (!is_subset(N, C)) continue;
                if (reachable_from(g, v, set_union(C, g.neighbors(u)), &skip)[static_cast<std::size_t>(u - 1)]) {
                    continue;
                }
                visit(Move{MoveKind::TurnArrow, u, v, C, turn_arrow_delta(g, u, v, C, cache)});
            }
        }
    }
}

template <typename Visit>
void for_each_candidate(const Graph& g, Phase phase, ScoreCache& cache, const SearchOptions& options,
                        Visit&& visit) {
    switch (phase) {
        case Phase::Forward: for_each_forward(g, cache, options, visit); break;
        case Phase::Backward: for_each_backward(g, cache, visit); break;
        case Phase::Turning: for_each_turning(g, cache, visit); break;
    }
}

}  // namespace

std::vector<Move> candidate_moves(const Graph& g, Phase phase, ScoreCache& cache, const SearchOptions& options) {
    std::vector<Move> out;
    for_each_candidate(g, phase, cache, options, [&](Move m) { out.push_back(std::move(m)); });
    return out;
}

std::optional<Move> best_move(const Graph& g, Phase phase, ScoreCache& cache, const SearchOptions& options) {
    std::optional<Move> best;
    for_each_candidate(g, phase, cache, options, [&](Move m) {
        if (!(m.delta > options.min_improvement)) return;
        if (!best || better_move(m, *best)) best = std::move(m);
    });
    return best;
}

std::optional<Move> phase_step(EssentialGraph& e, Phase phase, ScoreCache& cache, const SearchOptions& options) {
    auto m = best_move(e.graph, phase, cache, options);
    if (!m) return std::nullopt;
    e = apply_move(e, *m);
    if (options.check_invariants) {
        const auto check = check_essential_graph(e.graph, e.family);
        if (!check) {
            throw Error(ErrorKind::InvalidMove, "move " + std::string(to_string(m->kind)) + " " +
                                                    triple_name(m->u, m->v, m->C) +
                                                    " broke condition " + std::to_string(check.failed_condition) +
                                                    ": " + check.detail);
        }
    }
    return m;
}

SearchOptions variant_options(std::string_view variant) {
    SearchOptions options;
    if (variant == "gies") return options;
    if (variant == "gies-nt") {
        options.phase_order = {Phase::Forward, Phase::Backward};
        options.single_cycle = true;
        return options;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown variant '" + std::string(variant) + "'");
}

SearchResult gies(ScoreCache& cache, const TargetFamily& family, const SearchOptions& options) {
    const int p = cache.score().p();
    family.validate(p);
    if (!family.conservative(p)) throw Error(ErrorKind::NonConservativeFamily, "target family is not conservative");
    validate_dataset(cache.score().data(), family);
    if (options.phase_order.empty()) throw Error(ErrorKind::InvalidArgument, "empty phase order");

    SearchResult result{EssentialGraph{Graph(p), family}, {}, 0.0};
    result.score = cache.total(Dag(p));
    result.trace.initial_score = result.score;

    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < options.phase_order.size(); ++i) {
            const Phase phase = options.phase_order[i];
            while (auto m = phase_step(result.graph, phase, cache, options)) {
                result.score += m->delta;
                result.trace.steps.push_back({phase, std::move(*m), result.score});
                if (i > 0 || options.first_phase_sets_continue) again = true;
            }
        }
        if (options.single_cycle) break;
    }
    return result;
}

SearchResult gies(const InterventionalDataset& data, const TargetFamily& family, const SearchOptions& options,
                  ScoreOptions score_options) {
    const GaussianBic score(data, score_options);
    ScoreCache cache(score);
    return gies(cache, family, options);
}

}  // namespace gies
