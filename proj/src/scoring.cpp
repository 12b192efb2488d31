#include "gies/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gies {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kVarianceFloor = 1e-12;

}  // namespace

void validate_dataset(const InterventionalDataset& data, const TargetFamily& family) {
    if (static_cast<std::size_t>(data.n()) != data.targets.size()) {
        throw Error(ErrorKind::SizeMismatch, "row count differs from number of target labels");
    }
    family.validate(data.p());
    std::vector<bool> used(family.size(), false);
    for (const auto& t : data.targets) {
        bool found = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (family[i] == t) {
                used[i] = true;
                found = true;
            }
        }
        if (!found) throw Error(ErrorKind::InvalidArgument, "row label is not a member of the target family");
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!used[i]) throw Error(ErrorKind::InvalidArgument, "target " + std::to_string(i) + " labels no row");
    }
}

TargetFamily family_of(const InterventionalDataset& data) {
    std::vector<Target> out;
    for (const auto& t : data.targets) {
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return TargetFamily(std::move(out));
}

void center_observational(InterventionalDataset& data) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(data.p());
    int count = 0;
    for (int i = 0; i < data.n(); ++i) {
        if (!data.targets[static_cast<std::size_t>(i)].empty()) continue;
        mean += data.X.row(i).transpose();
        ++count;
    }
    if (count == 0) throw Error(ErrorKind::InsufficientSamples, "no observational rows to center on");
    mean /= count;
    data.X.rowwise() -= mean.transpose();
}

Eigen::MatrixXd implied_covariance(const GaussianModel& model) {
    const auto p = model.B.rows();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p, p) - model.B;
    const Eigen::MatrixXd inv = a.inverse();
    return inv * model.sigma2.asDiagonal() * inv.transpose();
}

// ---------------------------------------------------------------------------
// GaussianBic

GaussianBic::GaussianBic(const InterventionalDataset& data, ScoreOptions options)
    : data_(&data), options_(options) {
    if (static_cast<std::size_t>(data.n()) != data.targets.size()) {
        throw Error(ErrorKind::SizeMismatch, "row count differs from number of target labels");
    }
    rows_.resize(static_cast<std::size_t>(data.p()));
    for (int i = 0; i < data.n(); ++i) {
        const auto& t = data.targets[static_cast<std::size_t>(i)];
        for (Vertex v = 1; v <= data.p(); ++v) {
            if (!contains(t, v)) rows_[static_cast<std::size_t>(v - 1)].push_back(i);
        }
    }
}

LocalFit GaussianBic::fit(Vertex v, const VertexSet& parents) const {
    if (v < 1 || v > p()) throw Error(ErrorKind::InvalidArgument, "vertex out of range");
    if (contains(parents, v)) throw Error(ErrorKind::InvalidArgument, "vertex is its own parent");
    const auto& r = rows(v);
    const int n_v = static_cast<int>(r.size());
    const int k = static_cast<int>(parents.size());
    if (n_v <= k + 1) {
        throw Error(ErrorKind::InsufficientSamples,
                    "vertex " + std::to_string(v) + " has " + std::to_string(n_v) + " usable rows for " +
                        std::to_string(k) + " parents");
    }

    std::vector<Eigen::Index> cols;
    cols.reserve(parents.size());
    for (Vertex a : parents) cols.push_back(a - 1);

    const Eigen::VectorXd y = data_->X(r, v - 1);
    LocalFit out;
    out.n_v = n_v;
    if (k == 0) {
        out.rss = y.squaredNorm();
    } else {
        const Eigen::MatrixXd design = data_->X(r, cols);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
        qr.setThreshold(kRankThreshold);
        if (qr.rank() < k) {
            throw Error(ErrorKind::SingularDesign,
                        "parent design of vertex " + std::to_string(v) + " is rank-deficient");
        }
        out.coefficients = qr.solve(y);
        out.rss = (y - design * out.coefficients).squaredNorm();
    }
    out.sigma2 = out.rss / n_v;
    out.clamped = out.sigma2 < kVarianceFloor;
    return out;
}

double GaussianBic::local(Vertex v, const VertexSet& parents) const {
    const LocalFit f = fit(v, parents);
    const double n_v = f.n_v;
    const double var = std::max(f.sigma2, kVarianceFloor);
    const double penalty_n = options_.per_node_penalty ? n_v : static_cast<double>(n());
    return -0.5 * n_v * (std::log(var) + 1.0) -
           0.5 * (1.0 + static_cast<double>(parents.size())) * std::log(penalty_n);
}

double GaussianBic::total(const Dag& d) const {
    double sum = 0.0;
    for (Vertex v = 1; v <= d.p(); ++v) sum += local(v, d.parents(v));
    return sum;
}

// ---------------------------------------------------------------------------
// ScoreCache

std::size_t ScoreCache::KeyHash::operator()(const std::vector<int>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : key) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

double ScoreCache::local(Vertex v, const VertexSet& parents) {
    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(v);
    key.insert(key.end(), parents.begin(), parents.end());
    {
        std::lock_guard lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++hits_;
            return it->second;
        }
    }
    const double value = score_->local(v, parents);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), value);
    return value;
}

double ScoreCache::total(const Dag& d) {
    double sum = 0.0;
    for (Vertex v = 1; v <= d.p(); ++v) sum += local(v, d.parents(v));
    return sum;
}

std::size_t ScoreCache::size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
}

std::size_t ScoreCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

// ---------------------------------------------------------------------------

double local_score(Vertex v, const VertexSet& parents, const InterventionalDataset& data,
                   ScoreOptions options) {
    return GaussianBic(data, options).local(v, parents);
}

double total_score(const Dag& d, const InterventionalDataset& data, ScoreOptions options) {
    if (d.p() != data.p()) throw Error(ErrorKind::SizeMismatch, "DAG and dataset sizes differ");
    return GaussianBic(data, options).total(d);
}

GaussianModel mle_params(const Dag& d, const InterventionalDataset& data) {
    if (d.p() != data.p()) throw Error(ErrorKind::SizeMismatch, "DAG and dataset sizes differ");
    const GaussianBic score(data);
    GaussianModel model{d, Eigen::MatrixXd::Zero(d.p(), d.p()), Eigen::VectorXd::Zero(d.p())};
    for (Vertex v = 1; v <= d.p(); ++v) {
        const auto& pa = d.parents(v);
        const LocalFit f = score.fit(v, pa);
        for (std::size_t j = 0; j < pa.size(); ++j) {
            model.B(v - 1, pa[j] - 1) = f.coefficients(static_cast<Eigen::Index>(j));
        }
        model.sigma2(v - 1) = std::max(f.sigma2, kVarianceFloor);
    }
    return model;
}

}  // namespace gies
