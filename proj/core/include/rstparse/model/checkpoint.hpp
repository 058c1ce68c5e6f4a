#pragma once

#include <memory>
#include <string>

#include "rstparse/model/parser_model.hpp"

namespace rstparse::model {

// Self-describing checkpoint container: a magic/format tag, a JSON header
// (hyperparams, joint-label vocabulary, relation inventory, backbone
// description, RNG seed, tensor directory) followed by raw little-endian
// doubles for every parameter tensor.
void save_checkpoint(ParserModel& model, const std::string& path);

std::unique_ptr<ParserModel> load_checkpoint(const std::string& path);

}  // namespace rstparse::model
