#pragma once

#include "rstparse/errors.hpp"

namespace rstparse::model {

struct Hyperparams {
  int d_emb = 768;
  int d_hidden = 384;
  int window = 500;
  int stride = 200;
  double dropout = 0.5;
  double lr = 1e-4;
  double weight_decay = 5e-5;  // lambda of the L2 term
  int batch_size = 3;
  int epochs = 30;
  int finetune_last_k_layers = 4;
  int gru_layers = 1;

  void validate() const {
    if (d_emb <= 0 || d_hidden <= 0) throw ConfigError("embedding/hidden dims must be positive");
    if (!(window > stride && stride > 0)) throw ConfigError("need window > stride > 0");
    if (dropout < 0.0 || dropout >= 1.0) throw ConfigError("dropout must be in [0, 1)");
    if (batch_size <= 0) throw ConfigError("batch size must be positive");
    if (epochs < 0) throw ConfigError("epochs must be non-negative");
    if (gru_layers <= 0) throw ConfigError("need at least one recurrent layer");
  }
};

}  // namespace rstparse::model
