#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gies/graph.hpp"
#include "gies/interventions.hpp"
#include "gies/scoring.hpp"

namespace gies {

enum class MoveKind { Insert, Delete, TurnLine, TurnArrow };
enum class Phase { Forward, Backward, Turning };

std::string_view to_string(MoveKind kind) noexcept;
std::string_view to_string(Phase phase) noexcept;
/// Accepts "forward"/"backward"/"turning" or their first letter.
Phase parse_phase(std::string_view name);
/// Parses e.g. "fbt" or "forward,backward".
std::vector<Phase> parse_phase_order(std::string_view text);

/// A greedy step characterised by (u, v, C). For TurnLine / TurnArrow the
/// edge between u and v ends up as u→v.
struct Move {
    MoveKind kind = MoveKind::Insert;
    Vertex u = 0;
    Vertex v = 0;
    VertexSet C;
    double delta = 0.0;
};

/// Tie-break order: (kind, v, u, C).
bool key_less(const Move& a, const Move& b);

/// True when `a` should be preferred over `b`.
bool better_move(const Move& a, const Move& b);

// Validity of (u, v, C) in the essential graph g.
bool valid_insert(const Graph& g, Vertex u, Vertex v, const VertexSet& C);
bool valid_delete(const Graph& g, Vertex u, Vertex v, const VertexSet& C);
bool valid_turn_line(const Graph& g, Vertex u, Vertex v, const VertexSet& C);
bool valid_turn_arrow(const Graph& g, Vertex u, Vertex v, const VertexSet& C);
bool valid_move(const Graph& g, const Move& m);

// Successor essential graph; all throw InvalidMove when the triple is invalid.
EssentialGraph apply_insert(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C);
EssentialGraph apply_delete(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C);
EssentialGraph apply_turn_line(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C);
EssentialGraph apply_turn_arrow(const EssentialGraph& e, Vertex u, Vertex v, const VertexSet& C);
EssentialGraph apply_move(const EssentialGraph& e, const Move& m);

// Score change of a valid move.
double insert_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache);
double delete_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache);
double turn_line_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache);
double turn_arrow_delta(const Graph& g, Vertex u, Vertex v, const VertexSet& C, ScoreCache& cache);
double move_delta(const Graph& g, const Move& m, ScoreCache& cache);

struct SearchOptions {
    std::vector<Phase> phase_order{Phase::Forward, Phase::Backward, Phase::Turning};
    /// Stop after one pass over phase_order.
    bool single_cycle = false;
    /// Skip insertions touching a vertex whose degree is already >= cap.
    std::optional<int> max_degree;
    /// Let changes in the first phase of the order trigger another cycle.
    bool first_phase_sets_continue = false;
    /// Validate the essential graph after every move.
    bool check_invariants = false;
    /// A move is taken only if its delta exceeds this; keeps rounding noise
    /// on score-neutral moves from cycling.
    double min_improvement = 1e-9;
};

/// Options for a named variant: "gies" or "gies-nt".
SearchOptions variant_options(std::string_view variant);

struct TraceStep {
    Phase phase;
    Move move;
    double score;
};

struct SearchTrace {
    double initial_score = 0.0;
    std::vector<TraceStep> steps;
};

struct SearchResult {
    EssentialGraph graph;
    SearchTrace trace;
    double score = 0.0;
};

/// Every valid move of the phase with its delta.
std::vector<Move> candidate_moves(const Graph& g, Phase phase, ScoreCache& cache,
                                  const SearchOptions& options = {});

/// Best strictly improving move of the phase, if any.
std::optional<Move> best_move(const Graph& g, Phase phase, ScoreCache& cache,
                              const SearchOptions& options = {});

/// Applies the best move of the phase to `e` and returns it.
std::optional<Move> phase_step(EssentialGraph& e, Phase phase, ScoreCache& cache,
                               const SearchOptions& options = {});

/// Greedy interventional equivalence search from the empty graph.
SearchResult gies(ScoreCache& cache, const TargetFamily& family, const SearchOptions& options = {});
SearchResult gies(const InterventionalDataset& data, const TargetFamily& family,
                  const SearchOptions& options = {}, ScoreOptions score_options = {});

}  // namespace gies
