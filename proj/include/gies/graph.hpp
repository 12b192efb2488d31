#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gies/error.hpp"

namespace gies {

/// Vertices are 1-based everywhere in the public interface.
using Vertex = int;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// A permutation of (a subset of) the vertices.
using VertexOrdering = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

// Sorted-set helpers. All inputs must be sorted and duplicate-free.
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& sub, const VertexSet& super);
bool contains(const VertexSet& set, Vertex v);
VertexSet with(VertexSet set, Vertex v);
VertexSet without(VertexSet set, Vertex v);
VertexSet make_set(std::vector<Vertex> vertices);

/// Mixed graph on 1..p stored as a set of ordered pairs. (a,b) without (b,a)
/// is the arrow a→b; both pairs make the line a—b.
class Graph {
public:
    Graph() = default;
    explicit Graph(int p);

    int p() const noexcept { return p_; }

    bool has_edge(Vertex a, Vertex b) const { return at(a, b) != 0; }
    bool has_arrow(Vertex a, Vertex b) const { return at(a, b) && !at(b, a); }
    bool has_line(Vertex a, Vertex b) const { return at(a, b) && at(b, a); }
    bool is_adjacent(Vertex a, Vertex b) const { return at(a, b) || at(b, a); }

    const VertexSet& parents(Vertex v) const { return pa_[index(v)]; }
    const VertexSet& children(Vertex v) const { return ch_[index(v)]; }
    const VertexSet& neighbors(Vertex v) const { return nb_[index(v)]; }
    const VertexSet& adjacent(Vertex v) const { return ad_[index(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adjacent(v).size()); }

    /// G + (a, b): inserts the ordered pair.
    void add_edge(Vertex a, Vertex b);
    /// G - (a, b): removes the ordered pair.
    void remove_edge(Vertex a, Vertex b);

    /// Leaves exactly the arrow a→b between a and b.
    void set_arrow(Vertex a, Vertex b);
    /// Leaves exactly the line a—b between a and b.
    void set_line(Vertex a, Vertex b);
    /// Removes every edge between a and b.
    void remove_adjacency(Vertex a, Vertex b);

    /// Arrows (a,b) in lexicographic order.
    std::vector<Edge> arrows() const;
    /// Lines as (a,b) with a < b in lexicographic order.
    std::vector<Edge> lines() const;

    std::size_t num_arrows() const noexcept { return num_arrows_; }
    std::size_t num_lines() const noexcept { return num_lines_; }
    std::size_t num_adjacencies() const noexcept { return num_arrows_ + num_lines_; }

    bool is_directed() const noexcept { return num_lines_ == 0; }
    bool is_undirected() const noexcept { return num_arrows_ == 0; }

    bool valid_vertex(Vertex v) const noexcept { return v >= 1 && v <= p_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.p_ == b.p_ && a.matrix_ == b.matrix_;
    }

private:
    std::size_t index(Vertex v) const { return static_cast<std::size_t>(v - 1); }
    std::uint8_t at(Vertex a, Vertex b) const {
        return matrix_[index(a) * static_cast<std::size_t>(p_) + index(b)];
    }
    std::uint8_t& at(Vertex a, Vertex b) {
        return matrix_[index(a) * static_cast<std::size_t>(p_) + index(b)];
    }
    void check_pair(Vertex a, Vertex b) const;
    void refresh_pair(Vertex a, Vertex b, bool had_arrow, bool had_line);

    int p_ = 0;
    std::vector<std::uint8_t> matrix_;
    std::vector<VertexSet> pa_, ch_, nb_, ad_;
    std::size_t num_arrows_ = 0;
    std::size_t num_lines_ = 0;
};

/// A graph whose edges are all arrows and which has no directed cycle.
class Dag {
public:
    Dag() = default;
    explicit Dag(int p) : graph_(p) {}
    /// Throws NotDirected or DirectedCycle.
    explicit Dag(Graph graph);

    static Dag from_arrows(int p, const std::vector<Edge>& arrows);

    const Graph& graph() const noexcept { return graph_; }
    int p() const noexcept { return graph_.p(); }
    const VertexSet& parents(Vertex v) const { return graph_.parents(v); }
    const VertexSet& children(Vertex v) const { return graph_.children(v); }
    bool has_arrow(Vertex a, Vertex b) const { return graph_.has_arrow(a, b); }
    std::vector<Edge> arrows() const { return graph_.arrows(); }
    std::size_t num_arrows() const noexcept { return graph_.num_arrows(); }

    friend bool operator==(const Dag& a, const Dag& b) { return a.graph_ == b.graph_; }

private:
    Graph graph_;
};

struct VStructure {
    Vertex a;
    Vertex b;
    Vertex c;
    friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

/// Chain components in a topological order of the induced component order.
struct ChainComponents {
    std::vector<VertexSet> components;
    /// component_of[v-1] is the index into `components`.
    std::vector<std::size_t> component_of;

    const VertexSet& of(Vertex v) const { return components[component_of[static_cast<std::size_t>(v - 1)]]; }
};

Graph skeleton(const Graph& g);

/// Induced a→b←c with a, c non-adjacent, reported once with a < c, sorted.
std::vector<VStructure> v_structures(const Graph& g);

/// Throws DirectedCycle if g is not a chain graph.
ChainComponents chain_components(const Graph& g);

/// Vertex set of the chain component containing v (lines only).
VertexSet chain_component_of(const Graph& g, Vertex v);

/// True iff g has no directed cycle (a cycle using at least one arrow). A
/// line on its own is not a directed cycle.
bool is_acyclic(const Graph& g);

/// Throws NotDirected / DirectedCycle unless g is a DAG. Ties are broken by
/// smallest vertex first.
VertexOrdering topological_order(const Graph& g);
VertexOrdering topological_order(const Dag& d);

bool is_chordal(const Graph& g);

/// LexBFS over all vertices of the undirected graph g. `start` must be a
/// permutation of 1..p.
VertexOrdering lexbfs(const VertexOrdering& start, const Graph& g);

/// LexBFS restricted to the vertices listed in `start` and the lines of g
/// among them; arrows are ignored. Used to orient single chain components.
VertexOrdering lexbfs_lines(const VertexOrdering& start, const Graph& g);

bool is_perfect_elimination(const VertexOrdering& order, const Graph& g);

/// Orients every line a—b as a→b iff a precedes b in `order`.
Dag orient_by(const VertexOrdering& order, const Graph& g);

/// In place: orients the lines of g among the vertices of `order`; other
/// edges are untouched.
void orient_lines_by(Graph& g, const VertexOrdering& order);

/// Path semantics: arrows forward, lines either way, avoiding `forbidden`.
bool has_path(const Graph& g, Vertex from, Vertex to, const VertexSet& forbidden);

/// reachable[v-1] is true iff a path from `from` to v avoids `forbidden`.
/// `skip` (optional) is an ordered pair that may not be traversed.
std::vector<bool> reachable_from(const Graph& g, Vertex from, const VertexSet& forbidden,
                                 const Edge* skip = nullptr);

/// All subsets of `within` that are cliques of g's lines, including the empty
/// set. Ordered by size, lexicographically within a size.
std::vector<VertexSet> cliques_within(const Graph& g, const VertexSet& within);
std::vector<VertexSet> cliques_in_neighborhood(const Graph& g, Vertex v, const VertexSet& within);

/// True iff every pair in `set` is joined by a line.
bool is_line_clique(const Graph& g, const VertexSet& set);

}  // namespace gies
