#include "rstparse/model/encoder.hpp"

#include "rstparse/errors.hpp"

namespace rstparse::model {

Encoder::Encoder(ParameterSet& params, const Hyperparams& hp) : hp_(hp) {
  int in = hp.d_emb;
  for (int l = 0; l < hp.gru_layers; ++l) {
    layers_.emplace_back(params, "encoder.gru" + std::to_string(l), in, hp.d_hidden);
    in = 2 * hp.d_hidden;
  }
  w_e_ = &params.add("encoder.w_e", hp.d_hidden, 2 * hp.d_hidden + 2 * hp.d_emb);
  b_e_ = &params.add("encoder.b_e", hp.d_hidden, 1, /*bias=*/true);
  w_h0_ = &params.add("encoder.w_h0", hp.d_hidden, 2 * hp.d_hidden);
  b_h0_ = &params.add("encoder.b_h0", hp.d_hidden, 1, /*bias=*/true);
}

EncodedDocument Encoder::encode(const Document& doc, EmbeddingBackbone& backbone, bool training,
                                Rng* dropout_rng) const {
  if (doc.edus.empty()) throw ContractError("cannot encode a document without EDUs");
  if (backbone.dim() != hp_.d_emb)
    throw ShapeError("backbone dim " + std::to_string(backbone.dim()) +
                     " does not match d_emb " + std::to_string(hp_.d_emb));
  const int m = doc.edu_count();
  const int H = hp_.d_hidden;
  const int D = hp_.d_emb;

  EncodedDocument enc;
  enc.token_vecs =
      encode_tokens_windowed(backbone, std::span<const std::string>(doc.tokens), hp_.window,
                             hp_.stride);

  enc.edu_means.resize(m, D);
  for (int i = 0; i < m; ++i) {
    const TokenSpan& span = doc.edus[static_cast<size_t>(i)].tokens;
    if (span.size() <= 0 || span.end > doc.token_count())
      throw ContractError("EDU token span out of range in document " + doc.doc_id);
    enc.edu_means.row(i) =
        enc.token_vecs.middleRows(span.begin, span.size()).colwise().mean();
  }

  enc.layer_inputs.push_back(enc.edu_means);
  enc.layer_caches.resize(layers_.size());
  Eigen::MatrixXd x = enc.edu_means;
  for (size_t l = 0; l < layers_.size(); ++l) {
    x = layers_[l].forward(x, enc.layer_caches[l]);
    if (l + 1 < layers_.size()) enc.layer_inputs.push_back(x);
  }
  enc.context = x;  // m x 2H

  enc.boundary_in.resize(m, 2 * H + 2 * D);
  for (int i = 0; i < m; ++i) {
    const TokenSpan& span = doc.edus[static_cast<size_t>(i)].tokens;
    enc.boundary_in.row(i).segment(0, 2 * H) = enc.context.row(i);
    enc.boundary_in.row(i).segment(2 * H, D) = enc.token_vecs.row(span.begin);
    enc.boundary_in.row(i).segment(2 * H + D, D) = enc.token_vecs.row(span.end - 1);
  }

  enc.edu_repr.resize(m, H);
  for (int i = 0; i < m; ++i)
    enc.edu_repr.row(i) =
        (w_e_->value * enc.boundary_in.row(i).transpose() + b_e_->value.col(0)).transpose();

  if (training && hp_.dropout > 0.0) {
    if (!dropout_rng) throw ContractError("training-mode encode needs a dropout RNG");
    const double keep = 1.0 - hp_.dropout;
    enc.dropout_mask.resize(m, H);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < H; ++j)
        enc.dropout_mask(i, j) = dropout_rng->real() < keep ? 1.0 / keep : 0.0;
    enc.edu_repr.array() *= enc.dropout_mask.array();
  }

  enc.h0_input.resize(2 * H);
  enc.h0_input.segment(0, H) = enc.context.row(m - 1).segment(0, H).transpose();
  enc.h0_input.segment(H, H) = enc.context.row(0).segment(H, H).transpose();
  enc.h0 = w_h0_->value * enc.h0_input + b_h0_->value.col(0);
  return enc;
}

void Encoder::backward(const Document& doc, EmbeddingBackbone& backbone,
                       const EncodedDocument& enc, const Eigen::MatrixXd& dE,
                       const Eigen::VectorXd& dh0) const {
  const int m = enc.edu_count();
  const int H = hp_.d_hidden;
  const int D = hp_.d_emb;

  // Decoder init projection.
  w_h0_->grad.noalias() += dh0 * enc.h0_input.transpose();
  b_h0_->grad.col(0) += dh0;
  Eigen::VectorXd dh0_in = w_h0_->value.transpose() * dh0;

  Eigen::MatrixXd dE_pre = dE;
  if (enc.dropout_mask.size() > 0) dE_pre.array() *= enc.dropout_mask.array();

  Eigen::MatrixXd dV = Eigen::MatrixXd::Zero(m, 2 * H);
  Eigen::MatrixXd dT = Eigen::MatrixXd::Zero(enc.token_vecs.rows(), D);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd de = dE_pre.row(i).transpose();
    w_e_->grad.noalias() += de * enc.boundary_in.row(i);
    b_e_->grad.col(0) += de;
    Eigen::VectorXd du = w_e_->value.transpose() * de;
    dV.row(i) += du.segment(0, 2 * H).transpose();
    const TokenSpan& span = doc.edus[static_cast<size_t>(i)].tokens;
    dT.row(span.begin) += du.segment(2 * H, D).transpose();
    dT.row(span.end - 1) += du.segment(2 * H + D, D).transpose();
  }

  dV.row(m - 1).segment(0, H) += dh0_in.segment(0, H).transpose();
  dV.row(0).segment(H, H) += dh0_in.segment(H, H).transpose();

  Eigen::MatrixXd dlayer_out = dV;
  for (size_t l = layers_.size(); l-- > 0;)
    dlayer_out = layers_[l].backward(enc.layer_caches[l], dlayer_out);

  // dC: distribute the per-EDU mean over its token positions.
  for (int i = 0; i < m; ++i) {
    const TokenSpan& span = doc.edus[static_cast<size_t>(i)].tokens;
    Eigen::RowVectorXd share = dlayer_out.row(i) / static_cast<double>(span.size());
    for (int p = span.begin; p < span.end; ++p) dT.row(p) += share;
  }

  encode_tokens_windowed_backward(backbone, std::span<const std::string>(doc.tokens), hp_.window,
                                  hp_.stride, dT);
}

}  // namespace rstparse::model
