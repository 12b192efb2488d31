#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gies/graph.hpp"

namespace gies {

/// Set of intervened vertices; the empty target denotes observational data.
using Target = VertexSet;

/// Ordered list of targets. Duplicates are kept (rows may refer to them) but
/// are ignored by every equivalence-related computation.
class TargetFamily {
public:
    TargetFamily() = default;
    /// Each target is sorted and deduplicated.
    explicit TargetFamily(std::vector<Target> targets);

    static TargetFamily observational() { return TargetFamily({Target{}}); }

    const std::vector<Target>& targets() const noexcept { return targets_; }
    std::size_t size() const noexcept { return targets_.size(); }
    bool empty() const noexcept { return targets_.empty(); }
    const Target& operator[](std::size_t i) const { return targets_[i]; }
    auto begin() const noexcept { return targets_.begin(); }
    auto end() const noexcept { return targets_.end(); }

    bool contains(const Target& t) const;

    /// Every vertex in 1..p is left out by at least one target.
    bool conservative(int p) const;

    /// Throws InvalidArgument if a target mentions a vertex outside 1..p.
    void validate(int p) const;

    /// Distinct targets in order of first appearance.
    TargetFamily deduplicated() const;

    friend bool operator==(const TargetFamily&, const TargetFamily&) = default;

private:
    std::vector<Target> targets_;
};

/// Precomputed answers to "is there an I with |I ∩ {a,b}| = 1": vertices with
/// equal target-membership signatures are never separated.
class TargetSeparation {
public:
    TargetSeparation(int p, const TargetFamily& family);
    bool separates(Vertex a, Vertex b) const {
        return signature_[static_cast<std::size_t>(a - 1)] != signature_[static_cast<std::size_t>(b - 1)];
    }

private:
    std::vector<std::size_t> signature_;
};

struct EssentialGraph {
    Graph graph;
    TargetFamily family;

    int p() const noexcept { return graph.p(); }
    friend bool operator==(const EssentialGraph&, const EssentialGraph&) = default;
};

/// D^(I): the arrows (a,b) of d with b ∉ t.
Dag intervention_graph(const Dag& d, const Target& t);

/// Throws NonConservativeFamily, SizeMismatch.
bool markov_equivalent(const Dag& d1, const Dag& d2, const TargetFamily& family);

/// Throws NotAnArrow if a→b is not an arrow of g.
bool strongly_protected(const Graph& g, const TargetFamily& family, Vertex a, Vertex b);
bool strongly_protected(const Graph& g, const TargetSeparation& sep, Vertex a, Vertex b);

/// Converts unprotected arrows into lines until every arrow is strongly
/// protected.
EssentialGraph replace_unprotected(Graph g, const TargetFamily& family);
void replace_unprotected_in_place(Graph& g, const TargetSeparation& sep);

/// Throws NonConservativeFamily.
EssentialGraph essential_graph(const Dag& d, const TargetFamily& family);

struct EssentialCheck {
    bool ok = true;
    /// 1..5 for the first violated condition, 0 when ok.
    int failed_condition = 0;
    std::string detail;

    explicit operator bool() const noexcept { return ok; }
};

/// Conditions: (1) chain graph, (2) chordal chain components, (3) no induced
/// a→b—c, (4) no line whose endpoints a target separates, (5) every arrow
/// strongly protected.
EssentialCheck check_essential_graph(const Graph& g, const TargetFamily& family);
bool is_essential_graph(const Graph& g, const TargetFamily& family);

/// Orients every chain component by LexBFS with ascending start order.
Dag representative(const Graph& g);
inline Dag representative(const EssentialGraph& e) { return representative(e.graph); }

/// All members of the class. Throws TooManyRepresentatives when there are more
/// than `limit`.
std::vector<Dag> enumerate_representatives(const Graph& g, std::size_t limit);
inline std::vector<Dag> enumerate_representatives(const EssentialGraph& e, std::size_t limit) {
    return enumerate_representatives(e.graph, limit);
}

/// Number of lines.
inline std::size_t count_non_essential(const EssentialGraph& e) { return e.graph.num_lines(); }

}  // namespace gies
