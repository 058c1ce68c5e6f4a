#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rstparse/model/backbone.hpp"
#include "rstparse/model/gru.hpp"
#include "rstparse/model/hyperparams.hpp"
#include "rstparse/types.hpp"

namespace rstparse::model {

// Everything the encoder produces for one document, including the
// activations the backward pass needs.
struct EncodedDocument {
  Eigen::MatrixXd token_vecs;   // n x d_emb, window-merged backbone output
  Eigen::MatrixXd edu_means;    // C: m x d_emb
  Eigen::MatrixXd context;      // V: m x 2H, top recurrent layer
  Eigen::MatrixXd edu_repr;     // E: m x H, boundary-augmented projection
  Eigen::VectorXd h0;           // decoder initial state
  Eigen::VectorXd h0_input;     // [last fwd state; last bwd state]

  // caches
  std::vector<Eigen::MatrixXd> layer_inputs;
  std::vector<BiGruCache> layer_caches;
  Eigen::MatrixXd boundary_in;   // m x (2H + 2*d_emb), inputs to W_e
  Eigen::MatrixXd dropout_mask;  // empty when not training

  int edu_count() const { return static_cast<int>(edu_repr.rows()); }
};

// Hierarchical document encoder: windowed backbone embeddings -> per-EDU
// means -> Bi-GRU context layer(s) -> boundary-augmented projection E,
// plus the decoder init state from the final encoder states.
class Encoder {
 public:
  Encoder(ParameterSet& params, const Hyperparams& hp);

  EncodedDocument encode(const Document& doc, EmbeddingBackbone& backbone, bool training,
                         Rng* dropout_rng) const;

  // dE: gradient w.r.t. edu_repr; dh0: gradient w.r.t. the decoder init.
  void backward(const Document& doc, EmbeddingBackbone& backbone, const EncodedDocument& enc,
                const Eigen::MatrixXd& dE, const Eigen::VectorXd& dh0) const;

 private:
  std::vector<BiGruLayer> layers_;
  Tensor *w_e_, *b_e_, *w_h0_, *b_h0_;
  Hyperparams hp_;
};

}  // namespace rstparse::model
