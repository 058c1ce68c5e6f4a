#include "rstparse/model/gru.hpp"

namespace rstparse::model {

namespace {

inline Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) { return 1.0 / (1.0 + (-x).exp()); }

}  // namespace

GruCell::GruCell(ParameterSet& params, const std::string& prefix, int input_dim, int hidden_dim)
    : in_(input_dim), hid_(hidden_dim) {
  w_ih_ = &params.add(prefix + ".w_ih", 3 * hidden_dim, input_dim);
  w_hh_ = &params.add(prefix + ".w_hh", 3 * hidden_dim, hidden_dim);
  b_ih_ = &params.add(prefix + ".b_ih", 3 * hidden_dim, 1, /*bias=*/true);
  b_hh_ = &params.add(prefix + ".b_hh", 3 * hidden_dim, 1, /*bias=*/true);
}

Eigen::VectorXd GruCell::forward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                                 GruStepCache* cache) const {
  Eigen::VectorXd gi = w_ih_->value * x + b_ih_->value.col(0);
  Eigen::VectorXd gh = w_hh_->value * h_prev + b_hh_->value.col(0);

  Eigen::ArrayXd r = sigmoid(gi.segment(0, hid_).array() + gh.segment(0, hid_).array());
  Eigen::ArrayXd z = sigmoid(gi.segment(hid_, hid_).array() + gh.segment(hid_, hid_).array());
  Eigen::ArrayXd gh_n = gh.segment(2 * hid_, hid_).array();
  Eigen::ArrayXd n = (gi.segment(2 * hid_, hid_).array() + r * gh_n).tanh();
  Eigen::VectorXd h = ((1.0 - z) * n + z * h_prev.array()).matrix();

  if (cache) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->r = r.matrix();
    cache->z = z.matrix();
    cache->n = n.matrix();
    cache->gh_n = gh_n.matrix();
  }
  return h;
}

void GruCell::backward(const GruStepCache& cache, const Eigen::VectorXd& dh, Eigen::VectorXd& dx,
                       Eigen::VectorXd& dh_prev) const {
  const Eigen::ArrayXd r = cache.r.array();
  const Eigen::ArrayXd z = cache.z.array();
  const Eigen::ArrayXd n = cache.n.array();
  const Eigen::ArrayXd dh_a = dh.array();

  Eigen::ArrayXd dz = dh_a * (cache.h_prev.array() - n);
  Eigen::ArrayXd dn = dh_a * (1.0 - z);
  Eigen::ArrayXd dpre_n = dn * (1.0 - n * n);
  Eigen::ArrayXd dr = dpre_n * cache.gh_n.array();
  Eigen::ArrayXd dpre_r = dr * r * (1.0 - r);
  Eigen::ArrayXd dpre_z = dz * z * (1.0 - z);

  Eigen::VectorXd dgi(3 * hid_);
  dgi.segment(0, hid_) = dpre_r.matrix();
  dgi.segment(hid_, hid_) = dpre_z.matrix();
  dgi.segment(2 * hid_, hid_) = dpre_n.matrix();

  Eigen::VectorXd dgh(3 * hid_);
  dgh.segment(0, hid_) = dpre_r.matrix();
  dgh.segment(hid_, hid_) = dpre_z.matrix();
  dgh.segment(2 * hid_, hid_) = (dpre_n * r).matrix();

  w_ih_->grad.noalias() += dgi * cache.x.transpose();
  w_hh_->grad.noalias() += dgh * cache.h_prev.transpose();
  b_ih_->grad.col(0) += dgi;
  b_hh_->grad.col(0) += dgh;

  dx.noalias() += w_ih_->value.transpose() * dgi;
  dh_prev.noalias() += w_hh_->value.transpose() * dgh;
  dh_prev.array() += dh_a * z;
}

BiGruLayer::BiGruLayer(ParameterSet& params, const std::string& prefix, int input_dim,
                       int hidden_dim)
    : fwd_(params, prefix + ".fwd", input_dim, hidden_dim),
      bwd_(params, prefix + ".bwd", input_dim, hidden_dim) {}

Eigen::MatrixXd BiGruLayer::forward(const Eigen::MatrixXd& inputs, BiGruCache& cache) const {
  const Eigen::Index m = inputs.rows();
  const int hid = fwd_.hidden_dim();
  cache.fwd.resize(static_cast<size_t>(m));
  cache.bwd.resize(static_cast<size_t>(m));
  cache.outputs.resize(m, 2 * hid);

  Eigen::VectorXd h = Eigen::VectorXd::Zero(hid);
  for (Eigen::Index t = 0; t < m; ++t) {
    h = fwd_.forward(inputs.row(t).transpose(), h, &cache.fwd[static_cast<size_t>(t)]);
    cache.outputs.row(t).segment(0, hid) = h.transpose();
  }
  h.setZero();
  for (Eigen::Index t = m - 1; t >= 0; --t) {
    h = bwd_.forward(inputs.row(t).transpose(), h, &cache.bwd[static_cast<size_t>(t)]);
    cache.outputs.row(t).segment(hid, hid) = h.transpose();
  }
  return cache.outputs;
}

Eigen::MatrixXd BiGruLayer::backward(const BiGruCache& cache,
                                     const Eigen::MatrixXd& doutputs) const {
  const Eigen::Index m = doutputs.rows();
  const int hid = fwd_.hidden_dim();
  Eigen::MatrixXd dinputs = Eigen::MatrixXd::Zero(m, fwd_.input_dim());

  Eigen::VectorXd carry = Eigen::VectorXd::Zero(hid);
  for (Eigen::Index t = m - 1; t >= 0; --t) {
    Eigen::VectorXd dh = doutputs.row(t).segment(0, hid).transpose() + carry;
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(fwd_.input_dim());
    carry.setZero();
    fwd_.backward(cache.fwd[static_cast<size_t>(t)], dh, dx, carry);
    dinputs.row(t) += dx.transpose();
  }
  carry.setZero();
  for (Eigen::Index t = 0; t < m; ++t) {
    Eigen::VectorXd dh = doutputs.row(t).segment(hid, hid).transpose() + carry;
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(bwd_.input_dim());
    carry.setZero();
    bwd_.backward(cache.bwd[static_cast<size_t>(t)], dh, dx, carry);
    dinputs.row(t) += dx.transpose();
  }
  return dinputs;
}

}  // namespace rstparse::model
