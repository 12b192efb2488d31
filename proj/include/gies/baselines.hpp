#pragma once

#include <optional>

#include "gies/scoring.hpp"
#include "gies/search.hpp"

namespace gies {

struct GdsResult {
    Dag dag;
    SearchTrace trace;
    double score = 0.0;
};

/// Greedy hill climbing over DAGs with single-arrow insertions, deletions and
/// reversals, using the same phase shell and tie-break as gies. A reversal of
/// a→b is recorded as a TurnArrow with u = b, v = a.
GdsResult gds(ScoreCache& cache, const TargetFamily& family, const SearchOptions& options = {});
GdsResult gds(const InterventionalDataset& data, const TargetFamily& family, const SearchOptions& options = {},
              ScoreOptions score_options = {});

/// gies on a copy of the data with every target label erased.
SearchResult ges(const InterventionalDataset& data, const SearchOptions& options = {},
                 ScoreOptions score_options = {});

struct DpOptions {
    int max_p = 15;
    /// Unset: no cap for p <= 12 and 5 above.
    std::optional<int> max_parents;
    int threads = 1;
};

struct DpResult {
    Dag dag;
    double score = 0.0;
    /// Parent-set cap actually applied, if any.
    std::optional<int> max_parents;
};

/// Exact maximiser of the total score over all DAGs by dynamic programming
/// over vertex subsets. Throws TooLarge when p > max_p.
DpResult dp_exact(const InterventionalDataset& data, const TargetFamily& family, const DpOptions& options = {},
                  ScoreOptions score_options = {});

}  // namespace gies
