#pragma once

#include "gies/graph.hpp"
#include "gies/interventions.hpp"

namespace gies {

/// Structural Hamming distance split by the kind of mismatch.
struct ShdBreakdown {
    int shd = 0;
    int skeleton_fp = 0;       // adjacent only in the first graph
    int skeleton_fn = 0;       // adjacent only in the second graph
    int wrongly_oriented = 0;  // adjacent in both, different edge type

    friend bool operator==(const ShdBreakdown&, const ShdBreakdown&) = default;
};

/// Counts unordered pairs whose edge status differs. Throws SizeMismatch.
ShdBreakdown shd(const Graph& estimate, const Graph& truth);

struct EvaluationReport {
    ShdBreakdown vs_dag;
    int shd_vs_essential = 0;
    int non_essential_true = 0;
};

EvaluationReport evaluate(const Graph& estimate, const Dag& truth, const TargetFamily& family);

}  // namespace gies
