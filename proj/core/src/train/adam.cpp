#include "rstparse/train/adam.hpp"

#include <cmath>

namespace rstparse::train {

AdamOptimizer::AdamOptimizer(std::vector<model::Tensor*> params, double lr, double beta1,
                             double beta2, double eps)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const model::Tensor* t : params_) {
    m_.push_back(Eigen::MatrixXd::Zero(t->value.rows(), t->value.cols()));
    v_.push_back(Eigen::MatrixXd::Zero(t->value.rows(), t->value.cols()));
  }
}

double AdamOptimizer::clip_global_norm(double max_norm) {
  double sq = 0.0;
  for (const model::Tensor* t : params_) sq += t->grad.squaredNorm();
  double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    double scale = max_norm / norm;
    for (model::Tensor* t : params_) t->grad *= scale;
  }
  return norm;
}

void AdamOptimizer::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    model::Tensor* t = params_[i];
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * t->grad;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * t->grad.cwiseProduct(t->grad);
    Eigen::MatrixXd m_hat = m_[i] / bc1;
    Eigen::MatrixXd v_hat = v_[i] / bc2;
    t->value.array() -= lr_ * m_hat.array() / (v_hat.array().sqrt() + eps_);
  }
}

}  // namespace rstparse::train
