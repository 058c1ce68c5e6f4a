#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rstparse/model/tensor.hpp"

namespace rstparse::train {

// Adam with bias correction. The L2 term lives in the loss (see
// ParserModel::add_l2_regularization), so no decoupled weight decay here.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::vector<model::Tensor*> params, double lr, double beta1 = 0.9,
                         double beta2 = 0.999, double eps = 1e-8);

  void set_lr(double lr) { lr_ = lr; }

  // Rescales all gradients so their global L2 norm is at most max_norm;
  // returns the pre-clip norm.
  double clip_global_norm(double max_norm);

  void step();

 private:
  std::vector<model::Tensor*> params_;
  std::vector<Eigen::MatrixXd> m_, v_;
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
};

}  // namespace rstparse::train
