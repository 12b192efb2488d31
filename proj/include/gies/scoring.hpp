#pragma once

#include <cstddef>
#include <mutex>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "gies/graph.hpp"
#include "gies/interventions.hpp"

namespace gies {

/// n samples of p variables, each row labelled with the target it was drawn
/// under.
struct InterventionalDataset {
    Eigen::MatrixXd X;
    std::vector<Target> targets;

    int n() const noexcept { return static_cast<int>(X.rows()); }
    int p() const noexcept { return static_cast<int>(X.cols()); }
};

/// Throws SizeMismatch / InvalidArgument unless every row label is in `family`
/// and every family member labels at least one row.
void validate_dataset(const InterventionalDataset& data, const TargetFamily& family);

/// Distinct row labels in order of first appearance.
TargetFamily family_of(const InterventionalDataset& data);

/// Subtracts from every column its mean over the observational rows.
void center_observational(InterventionalDataset& data);

/// Linear Gaussian SEM: x = B x + ε, ε ~ N(0, diag(sigma2)). Row v of B holds
/// the weights of v's parents.
struct GaussianModel {
    Dag dag;
    Eigen::MatrixXd B;
    Eigen::VectorXd sigma2;
};

/// (1 - B)^{-1} diag(sigma2) (1 - B)^{-T}
Eigen::MatrixXd implied_covariance(const GaussianModel& model);

struct ScoreOptions {
    /// Penalise with log(n_v) per node instead of log(n).
    bool per_node_penalty = false;
};

struct LocalFit {
    Eigen::VectorXd coefficients;  // aligned with the parent set
    double rss = 0.0;
    int n_v = 0;
    double sigma2 = 0.0;  // rss / n_v before clamping
    bool clamped = false;
};

/// Gaussian BIC on interventional data. Vertex v is scored only on the rows
/// whose target does not contain v.
class GaussianBic {
public:
    explicit GaussianBic(const InterventionalDataset& data, ScoreOptions options = {});

    int p() const noexcept { return data_->p(); }
    int n() const noexcept { return data_->n(); }
    const InterventionalDataset& data() const noexcept { return *data_; }
    const std::vector<int>& rows(Vertex v) const { return rows_[static_cast<std::size_t>(v - 1)]; }

    /// Throws InsufficientSamples, SingularDesign, InvalidArgument.
    LocalFit fit(Vertex v, const VertexSet& parents) const;
    double local(Vertex v, const VertexSet& parents) const;
    double total(const Dag& d) const;

private:
    const InterventionalDataset* data_;
    ScoreOptions options_;
    std::vector<std::vector<int>> rows_;
};

/// Memo of local scores keyed by (v, parents); safe for concurrent use.
class ScoreCache {
public:
    explicit ScoreCache(const GaussianBic& score) : score_(&score) {}

    double local(Vertex v, const VertexSet& parents);
    double total(const Dag& d);

    const GaussianBic& score() const noexcept { return *score_; }
    std::size_t size() const;
    std::size_t hits() const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& key) const noexcept;
    };

    const GaussianBic* score_;
    mutable std::mutex mutex_;
    std::unordered_map<std::vector<int>, double, KeyHash> memo_;
    std::size_t hits_ = 0;
};

double local_score(Vertex v, const VertexSet& parents, const InterventionalDataset& data,
                   ScoreOptions options = {});
double total_score(const Dag& d, const InterventionalDataset& data, ScoreOptions options = {});

/// Per-node least squares over the rows not intervened at the node.
GaussianModel mle_params(const Dag& d, const InterventionalDataset& data);

}  // namespace gies
