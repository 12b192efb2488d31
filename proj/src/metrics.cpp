#include "gies/metrics.hpp"

#include <string>

namespace gies {

ShdBreakdown shd(const Graph& estimate, const Graph& truth) {
    if (estimate.p() != truth.p()) {
        throw Error(ErrorKind::SizeMismatch,
                    "graphs on " + std::to_string(estimate.p()) + " and " + std::to_string(truth.p()) + " vertices");
    }
    ShdBreakdown out;
    for (Vertex a = 1; a <= estimate.p(); ++a) {
        for (Vertex b = a + 1; b <= estimate.p(); ++b) {
            const bool ea = estimate.has_edge(a, b), eb = estimate.has_edge(b, a);
            const bool ta = truth.has_edge(a, b), tb = truth.has_edge(b, a);
            if (ea == ta && eb == tb) continue;
            const bool in_estimate = ea || eb;
            const bool in_truth = ta || tb;
            if (in_estimate && in_truth) {
                ++out.wrongly_oriented;
            } else if (in_estimate) {
                ++out.skeleton_fp;
            } else {
                ++out.skeleton_fn;
            }
        }
    }
    out.shd = out.skeleton_fp + out.skeleton_fn + out.wrongly_oriented;
    return out;
}

EvaluationReport evaluate(const Graph& estimate, const Dag& truth, const TargetFamily& family) {
    const EssentialGraph e = essential_graph(truth, family);
    EvaluationReport report;
    report.vs_dag = shd(estimate, truth.graph());
    report.shd_vs_essential = shd(estimate, e.graph).shd;
    report.non_essential_true = static_cast<int>(count_non_essential(e));
    return report;
}

}  // namespace gies
