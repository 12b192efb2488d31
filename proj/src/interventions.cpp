#include "gies/interventions.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace gies {

namespace {

std::string arrow_name(Vertex a, Vertex b) {
    return std::to_string(a) + "->" + std::to_string(b);
}

std::string line_name(Vertex a, Vertex b) {
    return std::to_string(a) + "--" + std::to_string(b);
}

void require_conservative(const TargetFamily& family, int p) {
    family.validate(p);
    if (!family.conservative(p)) {
        throw Error(ErrorKind::NonConservativeFamily, "target family is not conservative");
    }
}

// Perfect-elimination check of the lines inside one chain component.
bool component_chordal(const Graph& g, const VertexSet& comp) {
    const VertexOrdering order = lexbfs_lines(comp, g);
    std::vector<std::size_t> pos(static_cast<std::size_t>(g.p()), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i] - 1)] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
        VertexSet earlier;
        for (Vertex b : g.neighbors(order[i])) {
            if (pos[static_cast<std::size_t>(b - 1)] < i) earlier.push_back(b);
        }
        if (!is_line_clique(g, earlier)) return false;
    }
    return true;
}

bool arrow_path(const Graph& g, Vertex from, Vertex to) {
    std::vector<bool> seen(static_cast<std::size_t>(g.p()), false);
    std::vector<Vertex> stack{from};
    seen[static_cast<std::size_t>(from - 1)] = true;
    while (!stack.empty()) {
        Vertex a = stack.back();
        stack.pop_back();
        if (a == to) return true;
        for (Vertex b : g.children(a)) {
            if (!seen[static_cast<std::size_t>(b - 1)]) {
                seen[static_cast<std::size_t>(b - 1)] = true;
                stack.push_back(b);
            }
        }
    }
    return false;
}

// Backtracking over the lines of one chain component; every complete
// assignment is acyclic and adds no v-structure.
class ComponentOrienter {
public:
    ComponentOrienter(Graph g, std::vector<Edge> lines, std::size_t limit)
        : g_(std::move(g)), lines_(std::move(lines)), limit_(limit) {}

    std::vector<std::vector<Edge>> run() {
        recurse(0);
        return std::move(found_);
    }

private:
    bool admissible(Vertex x, Vertex y) const {
        for (Vertex z : g_.parents(y)) {
            if (z != x && !g_.is_adjacent(z, x)) return false;
        }
        // x→y closes a cycle iff y already reaches x through arrows.
        return !arrow_path(g_, y, x);
    }

    void recurse(std::size_t i) {
        if (i == lines_.size()) {
            std::vector<Edge> chosen;
            chosen.reserve(lines_.size());
            for (auto [a, b] : lines_) chosen.push_back(g_.has_arrow(a, b) ? Edge{a, b} : Edge{b, a});
            found_.push_back(std::move(chosen));
            if (found_.size() > limit_) {
                throw Error(ErrorKind::TooManyRepresentatives,
                            "more than " + std::to_string(limit_) + " representatives");
            }
            return;
        }
        auto [a, b] = lines_[i];
        for (auto [x, y] : {Edge{a, b}, Edge{b, a}}) {
            if (!admissible(x, y)) continue;
            g_.set_arrow(x, y);
            recurse(i + 1);
            g_.set_line(x, y);
        }
    }

    Graph g_;
    std::vector<Edge> lines_;
    std::size_t limit_;
    std::vector<std::vector<Edge>> found_;
};

}  // namespace

// ---------------------------------------------------------------------------
// TargetFamily

TargetFamily::TargetFamily(std::vector<Target> targets) {
    targets_.reserve(targets.size());
    for (auto& t : targets) targets_.push_back(make_set(std::move(t)));
}

bool TargetFamily::contains(const Target& t) const {
    return std::find(targets_.begin(), targets_.end(), t) != targets_.end();
}

bool TargetFamily::conservative(int p) const {
    for (Vertex v = 1; v <= p; ++v) {
        bool left_out = std::any_of(targets_.begin(), targets_.end(),
                                    [v](const Target& t) { return !gies::contains(t, v); });
        if (!left_out) return false;
    }
    return true;
}

void TargetFamily::validate(int p) const {
    for (const auto& t : targets_) {
        for (Vertex v : t) {
            if (v < 1 || v > p) {
                throw Error(ErrorKind::InvalidArgument,
                            "target vertex " + std::to_string(v) + " outside 1.." + std::to_string(p));
            }
        }
    }
}

TargetFamily TargetFamily::deduplicated() const {
    std::vector<Target> out;
    for (const auto& t : targets_) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return TargetFamily(std::move(out));
}

TargetSeparation::TargetSeparation(int p, const TargetFamily& family) {
    const TargetFamily dedup = family.deduplicated();
    std::map<std::vector<bool>, std::size_t> ids;
    signature_.resize(static_cast<std::size_t>(p));
    for (Vertex v = 1; v <= p; ++v) {
        std::vector<bool> membership;
        membership.reserve(dedup.size());
        for (const auto& t : dedup) membership.push_back(contains(t, v));
        auto [it, inserted] = ids.try_emplace(std::move(membership), ids.size());
        signature_[static_cast<std::size_t>(v - 1)] = it->second;
    }
}

// ---------------------------------------------------------------------------
// Equivalence

Dag intervention_graph(const Dag& d, const Target& t) {
    for (Vertex v : t) {
        if (v < 1 || v > d.p()) throw Error(ErrorKind::InvalidArgument, "target vertex out of range");
    }
    Graph g = d.graph();
    for (Vertex b : t) {
        const VertexSet pa = g.parents(b);
        for (Vertex a : pa) g.remove_adjacency(a, b);
    }
    return Dag(std::move(g));
}

bool markov_equivalent(const Dag& d1, const Dag& d2, const TargetFamily& family) {
    if (d1.p() != d2.p()) throw Error(ErrorKind::SizeMismatch, "DAGs have different vertex counts");
    require_conservative(family, d1.p());
    if (!(skeleton(d1.graph()) == skeleton(d2.graph()))) return false;
    if (v_structures(d1.graph()) != v_structures(d2.graph())) return false;
    for (const auto& t : family.deduplicated()) {
        if (t.empty()) continue;
        if (!(skeleton(intervention_graph(d1, t).graph()) == skeleton(intervention_graph(d2, t).graph()))) {
            return false;
        }
    }
    return true;
}

bool strongly_protected(const Graph& g, const TargetSeparation& sep, Vertex a, Vertex b) {
    if (!g.valid_vertex(a) || !g.valid_vertex(b) || a == b || !g.has_arrow(a, b)) {
        throw Error(ErrorKind::NotAnArrow, arrow_name(a, b) + " is not an arrow");
    }
    if (sep.separates(a, b)) return true;
    // (a) c→a→b, c and b non-adjacent
    for (Vertex c : g.parents(a)) {
        if (!g.is_adjacent(c, b)) return true;
    }
    // (b) a→b←c, c and a non-adjacent
    for (Vertex c : g.parents(b)) {
        if (c != a && !g.is_adjacent(c, a)) return true;
    }
    // (c) a→c→b
    const auto& pa_b = g.parents(b);
    for (Vertex c : g.children(a)) {
        if (contains(pa_b, c)) return true;
    }
    // (d) c1—a—c2, c1→b←c2, c1 and c2 non-adjacent
    const VertexSet cand = set_intersection(g.neighbors(a), pa_b);
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            if (!g.is_adjacent(cand[i], cand[j])) return true;
        }
    }
    return false;
}

bool strongly_protected(const Graph& g, const TargetFamily& family, Vertex a, Vertex b) {
    return strongly_protected(g, TargetSeparation(g.p(), family), a, b);
}

void replace_unprotected_in_place(Graph& g, const TargetSeparation& sep) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : g.arrows()) {
            if (!g.has_arrow(a, b)) continue;
            if (!strongly_protected(g, sep, a, b)) {
                g.set_line(a, b);
                changed = true;
            }
        }
    }
}

EssentialGraph replace_unprotected(Graph g, const TargetFamily& family) {
    family.validate(g.p());
    replace_unprotected_in_place(g, TargetSeparation(g.p(), family));
    return EssentialGraph{std::move(g), family};
}

EssentialGraph essential_graph(const Dag& d, const TargetFamily& family) {
    require_conservative(family, d.p());
    return replace_unprotected(d.graph(), family);
}

EssentialCheck check_essential_graph(const Graph& g, const TargetFamily& family) {
    family.validate(g.p());
    auto fail = [](int cond, std::string detail) { return EssentialCheck{false, cond, std::move(detail)}; };

    ChainComponents comps;
    try {
        comps = chain_components(g);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DirectedCycle) throw;
        return fail(1, e.what());
    }
    for (const auto& comp : comps.components) {
        if (comp.size() > 3 && !component_chordal(g, comp)) {
            return fail(2, "chain component containing " + std::to_string(comp.front()) + " is not chordal");
        }
    }
    for (auto [a, b] : g.arrows()) {
        for (Vertex c : g.neighbors(b)) {
            if (!g.is_adjacent(a, c)) {
                return fail(3, "induced " + arrow_name(a, b) + "--" + std::to_string(c));
            }
        }
    }
    const TargetSeparation sep(g.p(), family);
    for (auto [a, b] : g.lines()) {
        if (sep.separates(a, b)) return fail(4, "line " + line_name(a, b) + " is separated by a target");
    }
    for (auto [a, b] : g.arrows()) {
        if (!strongly_protected(g, sep, a, b)) {
            return fail(5, "arrow " + arrow_name(a, b) + " is not strongly protected");
        }
    }
    return {};
}

bool is_essential_graph(const Graph& g, const TargetFamily& family) {
    return check_essential_graph(g, family).ok;
}

// ---------------------------------------------------------------------------
// Representatives

Dag representative(const Graph& g) {
    Graph out = g;
    for (const auto& comp : chain_components(g).components) {
        if (comp.size() < 2) continue;
        orient_lines_by(out, lexbfs_lines(comp, g));
    }
    return Dag(std::move(out));
}

std::vector<Dag> enumerate_representatives(const Graph& g, std::size_t limit) {
    const ChainComponents comps = chain_components(g);
    std::vector<std::vector<std::vector<Edge>>> per_component;
    std::size_t total = 1;
    for (const auto& comp : comps.components) {
        if (comp.size() < 2) continue;
        std::vector<Edge> lines;
        for (Vertex a : comp) {
            for (Vertex b : g.neighbors(a)) {
                if (a < b) lines.emplace_back(a, b);
            }
        }
        auto options = ComponentOrienter(g, std::move(lines), limit).run();
        if (options.empty()) {
            throw Error(ErrorKind::InvalidArgument, "chain component admits no valid orientation");
        }
        if (total > limit / options.size()) {
            throw Error(ErrorKind::TooManyRepresentatives,
                        "more than " + std::to_string(limit) + " representatives");
        }
        total *= options.size();
        per_component.push_back(std::move(options));
    }
    if (total > limit) {
        throw Error(ErrorKind::TooManyRepresentatives, "more than " + std::to_string(limit) + " representatives");
    }

    std::vector<Dag> out;
    out.reserve(total);
    std::vector<std::size_t> pick(per_component.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Graph d = g;
        for (std::size_t c = 0; c < per_component.size(); ++c) {
            for (auto [a, b] : per_component[c][pick[c]]) d.set_arrow(a, b);
        }
        out.emplace_back(std::move(d));
        for (std::size_t c = per_component.size(); c-- > 0;) {
            if (++pick[c] < per_component[c].size()) break;
            pick[c] = 0;
        }
    }
    return out;
}

}  // namespace gies
