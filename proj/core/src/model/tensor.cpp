#include "rstparse/model/tensor.hpp"

#include "rstparse/errors.hpp"

namespace rstparse::model {

Tensor& ParameterSet::add(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                          bool bias) {
  if (find(name)) throw ContractError("duplicate parameter tensor: " + name);
  tensors_.push_back(std::make_unique<Tensor>(name, rows, cols, bias));
  return *tensors_.back();
}

Tensor* ParameterSet::find(const std::string& name) {
  for (auto& t : tensors_)
    if (t->name == name) return t.get();
  return nullptr;
}

void ParameterSet::zero_grad() {
  for (auto& t : tensors_) t->zero_grad();
}

double ParameterSet::squared_norm() const {
  double s = 0.0;
  for (const auto& t : tensors_) s += t->value.squaredNorm();
  return s;
}

void ParameterSet::init_uniform(Rng& rng, double scale) {
  for (auto& t : tensors_) {
    if (t->is_bias) {
      t->value.setZero();
      continue;
    }
    for (Eigen::Index c = 0; c < t->value.cols(); ++c)
      for (Eigen::Index r = 0; r < t->value.rows(); ++r)
        t->value(r, c) = rng.uniform(-scale, scale);
  }
}

}  // namespace rstparse::model
