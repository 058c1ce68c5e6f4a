#include "rstparse/model/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <map>

#include <json.hpp>

#include "rstparse/errors.hpp"

namespace rstparse::model {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'R', 'S', 'T', 'C', 'K', 'P', 'T', '1'};
constexpr const char* kFormatTag = "rstparse-checkpoint-v1";

json hp_to_json(const Hyperparams& hp) {
  return {{"d_emb", hp.d_emb},
          {"d_hidden", hp.d_hidden},
          {"window", hp.window},
          {"stride", hp.stride},
          {"dropout", hp.dropout},
          {"lr", hp.lr},
          {"weight_decay", hp.weight_decay},
          {"batch_size", hp.batch_size},
          {"epochs", hp.epochs},
          {"finetune_last_k_layers", hp.finetune_last_k_layers},
          {"gru_layers", hp.gru_layers}};
}

Hyperparams hp_from_json(const json& j) {
  Hyperparams hp;
  hp.d_emb = j.at("d_emb").get<int>();
  hp.d_hidden = j.at("d_hidden").get<int>();
  hp.window = j.at("window").get<int>();
  hp.stride = j.at("stride").get<int>();
  hp.dropout = j.at("dropout").get<double>();
  hp.lr = j.at("lr").get<double>();
  hp.weight_decay = j.at("weight_decay").get<double>();
  hp.batch_size = j.at("batch_size").get<int>();
  hp.epochs = j.at("epochs").get<int>();
  hp.finetune_last_k_layers = j.at("finetune_last_k_layers").get<int>();
  hp.gru_layers = j.at("gru_layers").get<int>();
  return hp;
}

}  // namespace

void save_checkpoint(ParserModel& model, const std::string& path) {
  json meta;
  meta["format"] = kFormatTag;
  meta["hyperparams"] = hp_to_json(model.hyperparams());
  meta["joint_labels"] = model.labels().to_strings();
  meta["relation_inventory"] = model.relation_inventory();
  meta["seed"] = model.seed();

  json backbone;
  backbone["kind"] = model.backbone().kind();
  backbone["dim"] = model.backbone().dim();
  if (auto* toy = dynamic_cast<ToyBackbone*>(&model.backbone())) {
    backbone["vocab"] = toy->vocab();
  } else if (auto* ext = dynamic_cast<ExternalBackbone*>(&model.backbone())) {
    backbone["endpoint_env"] = ext->endpoint_env();
  }
  meta["backbone"] = std::move(backbone);

  json tensors = json::array();
  for (Tensor* t : model.parameters())
    tensors.push_back({{"name", t->name}, {"rows", t->value.rows()}, {"cols", t->value.cols()}});
  meta["tensors"] = std::move(tensors);

  std::string header = meta.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  std::uint64_t len = header.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (Tensor* t : model.parameters())
    out.write(reinterpret_cast<const char*>(t->value.data()),
              static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(t->value.size())));
  if (!out) throw IoError("checkpoint write failed: " + path);
}

std::unique_ptr<ParserModel> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParseError("not a checkpoint file: " + path);
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string header(len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(len));
  if (!in) throw ParseError("truncated checkpoint header: " + path);

  json meta = json::parse(header);
  if (meta.at("format").get<std::string>() != kFormatTag)
    throw ParseError("unsupported checkpoint format tag in " + path);

  Hyperparams hp = hp_from_json(meta.at("hyperparams"));
  JointLabelVocab labels =
      JointLabelVocab::from_strings(meta.at("joint_labels").get<std::vector<std::string>>());

  const json& bb = meta.at("backbone");
  std::string kind = bb.at("kind").get<std::string>();
  std::unique_ptr<EmbeddingBackbone> backbone;
  if (kind == "toy") {
    backbone = std::make_unique<ToyBackbone>(bb.at("vocab").get<std::vector<std::string>>(),
                                             bb.at("dim").get<int>());
  } else if (kind == "external") {
    backbone = std::make_unique<ExternalBackbone>(bb.at("dim").get<int>(),
                                                  bb.at("endpoint_env").get<std::string>());
  } else {
    throw ParseError("unknown backbone kind '" + kind + "' in checkpoint " + path);
  }

  auto model = std::make_unique<ParserModel>(hp, std::move(labels), std::move(backbone));
  model->relation_inventory() =
      meta.at("relation_inventory").get<std::vector<std::string>>();
  model->init_params(meta.at("seed").get<std::uint64_t>());

  // Fill tensors from the directory by name.
  std::map<std::string, Tensor*> by_name;
  for (Tensor* t : model->parameters()) by_name[t->name] = t;
  for (const auto& entry : meta.at("tensors")) {
    std::string name = entry.at("name").get<std::string>();
    auto rows = entry.at("rows").get<Eigen::Index>();
    auto cols = entry.at("cols").get<Eigen::Index>();
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw ParseError("checkpoint tensor '" + name + "' does not exist in the model");
    Tensor* t = it->second;
    if (t->value.rows() != rows || t->value.cols() != cols)
      throw ShapeError("checkpoint tensor '" + name + "' has shape " + std::to_string(rows) +
                       "x" + std::to_string(cols) + ", model expects " +
                       std::to_string(t->value.rows()) + "x" + std::to_string(t->value.cols()));
    in.read(reinterpret_cast<char*>(t->value.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(t->value.size())));
    if (!in) throw ParseError("truncated checkpoint tensor data: " + path);
  }
  return model;
}

}  // namespace rstparse::model
