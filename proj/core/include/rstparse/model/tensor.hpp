#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "rstparse/util/rng.hpp"

namespace rstparse::model {

// Named parameter with an accumulated gradient. Vectors are stored as
// single-column matrices.
struct Tensor {
  std::string name;
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad;
  bool is_bias = false;

  Tensor(std::string n, Eigen::Index rows, Eigen::Index cols, bool bias = false)
      : name(std::move(n)),
        value(Eigen::MatrixXd::Zero(rows, cols)),
        grad(Eigen::MatrixXd::Zero(rows, cols)),
        is_bias(bias) {}

  Eigen::Index size() const { return value.size(); }
  void zero_grad() { grad.setZero(); }
};

// Registry of trainable tensors in stable creation order.
class ParameterSet {
 public:
  Tensor& add(const std::string& name, Eigen::Index rows, Eigen::Index cols, bool bias = false);
  Tensor* find(const std::string& name);

  const std::vector<std::unique_ptr<Tensor>>& tensors() const { return tensors_; }

  void zero_grad();
  double squared_norm() const;

  // Weights uniform in [-scale, scale], biases zero. Applied in creation
  // order, so a fixed seed reproduces initialization bit-exactly.
  void init_uniform(Rng& rng, double scale);

 private:
  std::vector<std::unique_ptr<Tensor>> tensors_;
};

}  // namespace rstparse::model
