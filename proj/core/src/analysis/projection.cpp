#include "rstparse/analysis/projection.hpp"

#include <cmath>

#include "rstparse/errors.hpp"
#include "rstparse/util/rng.hpp"

namespace rstparse::analysis {

ProjectionMethod projection_from_string(const std::string& name) {
  if (name == "pca") return ProjectionMethod::Pca;
  if (name == "tsne") return ProjectionMethod::Tsne;
  throw ConfigError("unknown projection method '" + name + "' (expected pca or tsne)");
}

namespace {

Eigen::MatrixXd pca_2d(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / std::max<double>(1.0, x.rows() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd components(d, 2);
  // Eigenvalues come in ascending order; take the top two.
  for (int c = 0; c < 2; ++c) {
    Eigen::Index idx = d - 1 - c;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    if (idx >= 0) v = solver.eigenvectors().col(idx);
    // Fix the sign so repeated runs agree: largest-magnitude entry positive.
    Eigen::Index maxi = 0;
    v.cwiseAbs().maxCoeff(&maxi);
    if (v(maxi) < 0.0) v = -v;
    components.col(c) = v;
  }
  return centered * components;
}

// Conditional distribution row with entropy matching log(perplexity),
// found by binary search over the Gaussian precision.
void fill_p_row(const Eigen::MatrixXd& d2, Eigen::MatrixXd& p, Eigen::Index i,
                double perplexity) {
  const Eigen::Index n = d2.rows();
  double lo = 1e-20, hi = 1e20, beta = 1.0;
  const double target = std::log(perplexity);
  for (int it = 0; it < 64; ++it) {
    double sum = 0.0, weighted = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      double w = std::exp(-beta * d2(i, j));
      sum += w;
      weighted += w * d2(i, j);
    }
    if (sum <= 0.0) {
      hi = beta;
      beta = (lo + hi) / 2.0;
      continue;
    }
    double entropy = std::log(sum) + beta * weighted / sum;
    if (std::abs(entropy - target) < 1e-7) break;
    if (entropy > target)
      lo = beta;
    else
      hi = beta;
    beta = (lo + hi) / 2.0;
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    p(i, j) = std::exp(-beta * d2(i, j));
    sum += p(i, j);
  }
  if (sum > 0.0)
    for (Eigen::Index j = 0; j < n; ++j) p(i, j) /= sum;
}

Eigen::MatrixXd tsne_2d(const Eigen::MatrixXd& x, std::uint64_t seed, const TsneOptions& opt) {
  const Eigen::Index n = x.rows();
  double perplexity = std::min(opt.perplexity, (static_cast<double>(n) - 1.0) / 3.0);
  perplexity = std::max(perplexity, 1.5);

  Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d2 =
      (sq.replicate(1, n) + sq.transpose().replicate(n, 1) - 2.0 * x * x.transpose())
          .cwiseMax(0.0);

  Eigen::MatrixXd p_cond = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) fill_p_row(d2, p_cond, i, perplexity);
  Eigen::MatrixXd p = (p_cond + p_cond.transpose()) / (2.0 * static_cast<double>(n));
  p = p.cwiseMax(1e-12);

  Rng rng(seed);
  Eigen::MatrixXd y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Box-Muller from the deterministic RNG.
    for (int c = 0; c < 2; ++c) {
      double u1 = std::max(rng.real(), 1e-12);
      double u2 = rng.real();
      y(i, c) = 1e-2 * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
  }

  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, 2);
  const int exaggeration_until = std::min(100, opt.iterations / 4);
  for (int iter = 0; iter < opt.iterations; ++iter) {
    double exaggeration = iter < exaggeration_until ? 12.0 : 1.0;
    double momentum = iter < 250 ? 0.5 : 0.8;

    Eigen::VectorXd ysq = y.rowwise().squaredNorm();
    Eigen::MatrixXd num =
        (1.0 + (ysq.replicate(1, n) + ysq.transpose().replicate(n, 1) - 2.0 * y * y.transpose())
                   .cwiseMax(0.0)
                   .array())
            .inverse()
            .matrix();
    num.diagonal().setZero();
    double qsum = std::max(num.sum(), 1e-12);

    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        double q = num(i, j) / qsum;
        double coef = 4.0 * (exaggeration * p(i, j) - q) * num(i, j);
        grad.row(i) += coef * (y.row(i) - y.row(j));
      }
    }
    velocity = momentum * velocity - opt.learning_rate * grad;
    y += velocity;
    y.rowwise() -= y.colwise().mean();
  }
  return y;
}

}  // namespace

std::vector<ProjectedPoint> project_2d(const TopicModel& model, ProjectionMethod method,
                                       std::uint64_t seed, const TsneOptions& tsne) {
  const Eigen::Index n = model.theta.rows();
  if (n < 3) throw AnalysisError("2-D projection needs at least 3 documents");

  Eigen::MatrixXd coords = method == ProjectionMethod::Pca
                               ? pca_2d(model.theta)
                               : tsne_2d(model.theta, seed, tsne);

  std::vector<ProjectedPoint> points;
  points.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    ProjectedPoint pt;
    pt.doc_id = model.doc_ids[static_cast<size_t>(i)];
    pt.label = model.doc_labels[static_cast<size_t>(i)];
    pt.x = coords(i, 0);
    pt.y = coords(i, 1);
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
      throw NumericalError("non-finite projection coordinate");
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace rstparse::analysis
