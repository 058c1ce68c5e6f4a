#include "rstparse/model/backbone.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include <httplib.h>
#include <json.hpp>

#include "rstparse/errors.hpp"

namespace rstparse::model {

ExternalBackbone::ExternalBackbone(int dim, std::string endpoint_env)
    : dim_(dim), endpoint_env_(std::move(endpoint_env)) {
  if (dim <= 0) throw ConfigError("external backbone dim must be positive");
}

Eigen::MatrixXd ExternalBackbone::encode(std::span<const std::string> tokens) {
  const char* endpoint = std::getenv(endpoint_env_.c_str());
  if (!endpoint || !*endpoint)
    throw ClientError("external backbone requires " + endpoint_env_ +
                      " to point at an embedding service");
  std::string url(endpoint);
  auto slash = url.find('/', url.find("//") == std::string::npos ? 0 : url.find("//") + 2);
  std::string host = slash == std::string::npos ? url : url.substr(0, slash);
  std::string path = slash == std::string::npos ? "/embed" : url.substr(slash);

  nlohmann::json req;
  req["tokens"] = std::vector<std::string>(tokens.begin(), tokens.end());
  httplib::Client client(host);
  client.set_read_timeout(120, 0);
  auto res = client.Post(path, req.dump(), "application/json");
  if (!res || res->status != 200)
    throw ClientError("embedding service call failed" +
                      (res ? " with status " + std::to_string(res->status) : std::string()));
  nlohmann::json body = nlohmann::json::parse(res->body);
  const auto& vecs = body.at("vectors");
  if (vecs.size() != tokens.size())
    throw ShapeError("embedding service returned " + std::to_string(vecs.size()) +
                     " vectors for " + std::to_string(tokens.size()) + " tokens");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(tokens.size()), dim_);
  for (size_t i = 0; i < vecs.size(); ++i) {
    if (static_cast<int>(vecs[i].size()) != dim_)
      throw ShapeError("embedding service vector dim mismatch");
    for (int j = 0; j < dim_; ++j) out(static_cast<Eigen::Index>(i), j) = vecs[i][static_cast<size_t>(j)].get<double>();
  }
  return out;
}

ToyBackbone::ToyBackbone(std::vector<std::string> vocab, int dim)
    : vocab_(std::move(vocab)),
      dim_(dim),
      table_("backbone.table", static_cast<Eigen::Index>(vocab_.size()) + 1, dim) {
  for (size_t i = 0; i < vocab_.size(); ++i) index_[vocab_[i]] = static_cast<int>(i) + 1;
}

std::vector<std::string> ToyBackbone::build_vocab(const Corpus& corpus, size_t max_size) {
  std::map<std::string, long> freq;
  for (const auto& d : corpus)
    for (const auto& tok : d.doc.tokens) ++freq[tok];
  std::vector<std::pair<long, std::string>> ranked;
  ranked.reserve(freq.size());
  for (auto& [tok, count] : freq) ranked.push_back({-count, tok});
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> vocab;
  vocab.reserve(ranked.size());
  for (auto& [neg, tok] : ranked) vocab.push_back(tok);
  return vocab;
}

int ToyBackbone::row_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? 0 : it->second;
}

Eigen::MatrixXd ToyBackbone::encode(std::span<const std::string> tokens) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(tokens.size()), dim_);
  for (size_t i = 0; i < tokens.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = table_.value.row(row_of(tokens[i]));
  return out;
}

void ToyBackbone::backward(std::span<const std::string> tokens, const Eigen::MatrixXd& grad) {
  if (grad.rows() != static_cast<Eigen::Index>(tokens.size()) || grad.cols() != dim_)
    throw ShapeError("backbone gradient shape mismatch");
  for (size_t i = 0; i < tokens.size(); ++i)
    table_.grad.row(row_of(tokens[i])) += grad.row(static_cast<Eigen::Index>(i));
}

void ToyBackbone::init(Rng& rng) {
  for (Eigen::Index c = 0; c < table_.value.cols(); ++c)
    for (Eigen::Index r = 0; r < table_.value.rows(); ++r)
      table_.value(r, c) = rng.uniform(-0.1, 0.1);
}

WindowPlan plan_windows(int n, int window, int stride) {
  if (n <= 0) throw ContractError("cannot window an empty token sequence");
  if (window <= 0 || stride <= 0 || stride >= window)
    throw ConfigError("window/stride must satisfy window > stride > 0");
  WindowPlan plan;
  plan.coverage.assign(static_cast<size_t>(n), 0);
  if (n <= window) {
    plan.windows.push_back({0, n});
  } else {
    for (int start = 0;; start += stride) {
      int end = std::min(start + window, n);
      plan.windows.push_back({start, end});
      if (end >= n) break;
    }
  }
  for (auto [b, e] : plan.windows)
    for (int p = b; p < e; ++p) ++plan.coverage[static_cast<size_t>(p)];
  return plan;
}

Eigen::MatrixXd encode_tokens_windowed(EmbeddingBackbone& backbone,
                                       std::span<const std::string> tokens, int window,
                                       int stride) {
  const int n = static_cast<int>(tokens.size());
  WindowPlan plan = plan_windows(n, window, stride);
  if (plan.windows.size() == 1) {
    Eigen::MatrixXd out = backbone.encode(tokens);
    if (out.rows() != n || out.cols() != backbone.dim())
      throw ShapeError("backbone returned wrong shape");
    return out;
  }
  Eigen::MatrixXd merged = Eigen::MatrixXd::Zero(n, backbone.dim());
  for (auto [b, e] : plan.windows) {
    Eigen::MatrixXd part = backbone.encode(tokens.subspan(static_cast<size_t>(b),
                                                          static_cast<size_t>(e - b)));
    if (part.rows() != e - b || part.cols() != backbone.dim())
      throw ShapeError("backbone returned wrong shape for window");
    merged.middleRows(b, e - b) += part;
  }
  for (int p = 0; p < n; ++p) merged.row(p) /= static_cast<double>(plan.coverage[static_cast<size_t>(p)]);
  return merged;
}

void encode_tokens_windowed_backward(EmbeddingBackbone& backbone,
                                     std::span<const std::string> tokens, int window, int stride,
                                     const Eigen::MatrixXd& dmerged) {
  const int n = static_cast<int>(tokens.size());
  WindowPlan plan = plan_windows(n, window, stride);
  for (auto [b, e] : plan.windows) {
    Eigen::MatrixXd dpart(e - b, dmerged.cols());
    for (int p = b; p < e; ++p)
      dpart.row(p - b) = dmerged.row(p) / static_cast<double>(plan.coverage[static_cast<size_t>(p)]);
    backbone.backward(tokens.subspan(static_cast<size_t>(b), static_cast<size_t>(e - b)), dpart);
  }
}

}  // namespace rstparse::model
