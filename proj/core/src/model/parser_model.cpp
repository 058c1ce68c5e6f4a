#include "rstparse/model/parser_model.hpp"

#include <cmath>
#include <functional>

#include "rstparse/errors.hpp"

namespace rstparse::model {

int JointLabelVocab::add(const std::string& relation, Nuclearity nuc) {
  auto key = std::make_pair(relation, nuc);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(labels_.size());
  labels_.push_back(key);
  index_[key] = id;
  return id;
}

int JointLabelVocab::find(const std::string& relation, Nuclearity nuc) const {
  auto it = index_.find(std::make_pair(relation, nuc));
  return it == index_.end() ? -1 : it->second;
}

const std::pair<std::string, Nuclearity>& JointLabelVocab::at(int index) const {
  if (index < 0 || index >= size()) throw ContractError("joint label index out of range");
  return labels_[static_cast<size_t>(index)];
}

namespace {

void collect_labels(const RstTree& t, JointLabelVocab& vocab) {
  if (t.is_leaf()) return;
  vocab.add(t.relation, t.nuc);
  collect_labels(*t.left, vocab);
  collect_labels(*t.right, vocab);
}

}  // namespace

JointLabelVocab JointLabelVocab::from_corpus(const Corpus& corpus) {
  JointLabelVocab vocab;
  for (const auto& d : corpus)
    if (d.tree) collect_labels(*d.tree, vocab);
  return vocab;
}

std::vector<std::string> JointLabelVocab::to_strings() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (const auto& [rel, nuc] : labels_) out.push_back(rel + "-" + to_string(nuc));
  return out;
}

JointLabelVocab JointLabelVocab::from_strings(const std::vector<std::string>& strings) {
  JointLabelVocab vocab;
  for (const auto& s : strings) {
    size_t dash = s.rfind('-');
    if (dash == std::string::npos) throw ParseError("bad joint label string: " + s);
    vocab.add(s.substr(0, dash), nuclearity_from_string(s.substr(dash + 1)));
  }
  return vocab;
}

// ---------------------------------------------------------------------------

namespace {

inline double elu(double x) { return x > 0.0 ? x : std::exp(x) - 1.0; }
inline double elu_grad(double x) { return x > 0.0 ? 1.0 : std::exp(x); }

Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  Eigen::VectorXd shifted = scores.array() - scores.maxCoeff();
  Eigen::VectorXd exps = shifted.array().exp();
  return exps / exps.sum();
}

double log_sum_exp(const Eigen::VectorXd& scores) {
  double mx = scores.maxCoeff();
  return mx + std::log((scores.array() - mx).exp().sum());
}

Eigen::VectorXd span_mean(const Eigen::MatrixXd& edu_repr, int lo, int hi) {
  return edu_repr.middleRows(lo - 1, hi - lo + 1).colwise().mean().transpose();
}

}  // namespace

struct ParserModel::ClassifierCache {
  Eigen::VectorXd e_left, e_right;    // span means
  Eigen::VectorXd pre_left, pre_right;  // before ELU
  Eigen::VectorXd act_left, act_right;  // after ELU
};

ParserModel::ParserModel(const Hyperparams& hp, JointLabelVocab labels,
                         std::unique_ptr<EmbeddingBackbone> backbone)
    : hp_(hp), labels_(std::move(labels)), backbone_(std::move(backbone)) {
  hp_.validate();
  if (!backbone_) throw ContractError("parser model needs an embedding backbone");
  if (labels_.size() == 0) throw ContractError("joint label vocabulary is empty");

  const int H = hp_.d_hidden;
  const int R = labels_.size();
  encoder_ = std::make_unique<Encoder>(params_, hp_);
  decoder_ = std::make_unique<GruCell>(params_, "decoder.cell", H, H);
  u1_ = &params_.add("classifier.u1", H, H);
  u2_ = &params_.add("classifier.u2", H, H);
  w_l_ = &params_.add("classifier.w_l", H, R);
  w_r_ = &params_.add("classifier.w_r", H, R);
  w_lr_ = &params_.add("classifier.w_lr", H, static_cast<Eigen::Index>(H) * R);
  b_cls_ = &params_.add("classifier.b", R, 1, /*bias=*/true);
}

void ParserModel::init_params(std::uint64_t seed) {
  seed_ = seed;
  Rng rng(seed);
  params_.init_uniform(rng, 0.1);
  backbone_->init(rng);
  dropout_rng_ = Rng(seed ^ 0x9e3779b97f4a7c15ull);
}

std::vector<Tensor*> ParserModel::parameters() {
  std::vector<Tensor*> out;
  for (const auto& t : params_.tensors()) out.push_back(t.get());
  for (Tensor* t : backbone_->parameters()) out.push_back(t);
  return out;
}

void ParserModel::zero_grad() {
  for (Tensor* t : parameters()) t->zero_grad();
}

EncodedDocument ParserModel::encode(const Document& doc, bool training) {
  return encoder_->encode(doc, *backbone_, training, training ? &dropout_rng_ : nullptr);
}

Eigen::VectorXd ParserModel::pointer_distribution(const Eigen::VectorXd& h,
                                                  const Eigen::MatrixXd& edu_repr, int lo,
                                                  int hi) {
  if (hi <= lo) throw ContractError("pointer over a single-EDU span");
  if (lo < 1 || hi > edu_repr.rows()) throw ContractError("span out of range");
  // Valid splits are k in [lo, hi-1]; position hi is excluded from the
  // candidate set so the right sub-span is never empty.
  Eigen::VectorXd scores = edu_repr.middleRows(lo - 1, hi - lo) * h;
  return softmax(scores);
}

Eigen::VectorXd ParserModel::classify_forward(const Eigen::VectorXd& e_left,
                                              const Eigen::VectorXd& e_right,
                                              ClassifierCache* cache) const {
  const int H = hp_.d_hidden;
  const int R = labels_.size();
  if (e_left.size() != H || e_right.size() != H)
    throw ShapeError("classifier input dim mismatch");

  Eigen::VectorXd pre_l = u1_->value.transpose() * e_left;
  Eigen::VectorXd pre_r = u2_->value.transpose() * e_right;
  Eigen::VectorXd act_l = pre_l.unaryExpr([](double x) { return elu(x); });
  Eigen::VectorXd act_r = pre_r.unaryExpr([](double x) { return elu(x); });

  Eigen::VectorXd logits = b_cls_->value.col(0);
  logits += w_l_->value.transpose() * act_l;
  logits += w_r_->value.transpose() * act_r;
  for (int r = 0; r < R; ++r)
    logits(r) += act_l.dot(w_lr_->value.middleCols(static_cast<Eigen::Index>(r) * H, H) * act_r);

  if (cache) {
    cache->e_left = e_left;
    cache->e_right = e_right;
    cache->pre_left = pre_l;
    cache->pre_right = pre_r;
    cache->act_left = act_l;
    cache->act_right = act_r;
  }
  return logits;
}

void ParserModel::classify_backward(const ClassifierCache& cache, const Eigen::VectorXd& dlogits,
                                    Eigen::VectorXd& de_left, Eigen::VectorXd& de_right) {
  const int H = hp_.d_hidden;
  const int R = labels_.size();

  b_cls_->grad.col(0) += dlogits;
  w_l_->grad.noalias() += cache.act_left * dlogits.transpose();
  w_r_->grad.noalias() += cache.act_right * dlogits.transpose();

  Eigen::VectorXd dact_l = w_l_->value * dlogits;
  Eigen::VectorXd dact_r = w_r_->value * dlogits;
  for (int r = 0; r < R; ++r) {
    auto block = w_lr_->value.middleCols(static_cast<Eigen::Index>(r) * H, H);
    w_lr_->grad.middleCols(static_cast<Eigen::Index>(r) * H, H).noalias() +=
        dlogits(r) * cache.act_left * cache.act_right.transpose();
    dact_l.noalias() += dlogits(r) * (block * cache.act_right);
    dact_r.noalias() += dlogits(r) * (block.transpose() * cache.act_left);
  }

  Eigen::VectorXd dpre_l =
      dact_l.array() * cache.pre_left.unaryExpr([](double x) { return elu_grad(x); }).array();
  Eigen::VectorXd dpre_r =
      dact_r.array() * cache.pre_right.unaryExpr([](double x) { return elu_grad(x); }).array();

  u1_->grad.noalias() += cache.e_left * dpre_l.transpose();
  u2_->grad.noalias() += cache.e_right * dpre_r.transpose();
  de_left.noalias() += u1_->value * dpre_l;
  de_right.noalias() += u2_->value * dpre_r;
}

Eigen::VectorXd ParserModel::classify(const Eigen::VectorXd& e_left,
                                      const Eigen::VectorXd& e_right) const {
  return softmax(classify_forward(e_left, e_right, nullptr));
}

namespace {

int argmax(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  v.maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

std::unique_ptr<RstTree> ParserModel::parse(const Document& doc) {
  doc.validate();
  const int m = doc.edu_count();
  if (m == 1) return RstTree::make_leaf(1);

  EncodedDocument enc = encode(doc, /*training=*/false);
  Eigen::VectorXd h = enc.h0;

  // Pre-order recursion visits spans in exactly the decoder's stack order
  // (left sub-span next), so threading h through it reproduces the
  // sequential decode.
  std::function<std::unique_ptr<RstTree>(int, int)> parse_span = [&](int lo,
                                                                     int hi) -> std::unique_ptr<RstTree> {
    if (lo == hi) return RstTree::make_leaf(lo);
    Eigen::VectorXd input = span_mean(enc.edu_repr, lo, hi);
    h = decoder_->forward(input, h, nullptr);
    Eigen::VectorXd dist = pointer_distribution(h, enc.edu_repr, lo, hi);
    int k = lo + argmax(dist);

    Eigen::VectorXd probs =
        classify(span_mean(enc.edu_repr, lo, k), span_mean(enc.edu_repr, k + 1, hi));
    const auto& [rel, nuc] = labels_.at(argmax(probs));

    auto left = parse_span(lo, k);
    auto right = parse_span(k + 1, hi);
    return RstTree::make_node(std::move(left), std::move(right), nuc, rel);
  };
  return parse_span(1, m);
}

LossBreakdown ParserModel::compute_loss(const Document& doc, const oracle::SplitTrace& gold,
                                        const LossOptions& opts) {
  doc.validate();
  const int m = doc.edu_count();
  if (gold.step_count() != m - 1)
    throw ContractError("gold trace for " + doc.doc_id + " has " +
                        std::to_string(gold.step_count()) + " steps, expected " +
                        std::to_string(m - 1));

  EncodedDocument enc = encode(doc, opts.training && hp_.dropout > 0.0);

  struct StepState {
    int lo, hi, k, gold_label;
    GruStepCache gru;
    Eigen::VectorXd input;       // decoder input after dropout
    Eigen::VectorXd input_mask;  // empty when dropout is off
    Eigen::VectorXd h_out;       // decoder state used for the pointer scores
    Eigen::VectorXd probs;       // pointer distribution over candidates
    ClassifierCache cls;
    Eigen::VectorXd cls_probs;
  };
  std::vector<StepState> steps;
  steps.reserve(gold.steps.size());

  LossBreakdown loss;
  const bool use_dropout = opts.training && hp_.dropout > 0.0;
  const double keep = 1.0 - hp_.dropout;

  Eigen::VectorXd h = enc.h0;
  for (const auto& step : gold.steps) {
    if (step.lo < 1 || step.hi > m || step.split < step.lo || step.split >= step.hi)
      throw TraceError("gold step (" + std::to_string(step.lo) + ", " + std::to_string(step.hi) +
                       ") @ " + std::to_string(step.split) + " is inconsistent with document " +
                       doc.doc_id);
    StepState st;
    st.lo = step.lo;
    st.hi = step.hi;
    st.k = step.split;

    st.input = span_mean(enc.edu_repr, st.lo, st.hi);
    if (use_dropout) {
      st.input_mask.resize(st.input.size());
      for (Eigen::Index i = 0; i < st.input.size(); ++i)
        st.input_mask(i) = dropout_rng_.real() < keep ? 1.0 / keep : 0.0;
      st.input.array() *= st.input_mask.array();
    }
    h = decoder_->forward(st.input, h, &st.gru);
    st.h_out = h;

    Eigen::VectorXd scores = enc.edu_repr.middleRows(st.lo - 1, st.hi - st.lo) * h;
    st.probs = softmax(scores);
    loss.structure += log_sum_exp(scores) - scores(st.k - st.lo);

    st.gold_label = labels_.find(step.relation, step.nuc);
    if (st.gold_label < 0)
      throw ContractError("joint label '" + step.relation + "-" + to_string(step.nuc) +
                          "' missing from vocabulary");
    Eigen::VectorXd logits =
        classify_forward(span_mean(enc.edu_repr, st.lo, st.k),
                         span_mean(enc.edu_repr, st.k + 1, st.hi), &st.cls);
    st.cls_probs = softmax(logits);
    loss.label += log_sum_exp(logits) - logits(st.gold_label);

    steps.push_back(std::move(st));
  }

  // Backward.
  Eigen::MatrixXd dE = Eigen::MatrixXd::Zero(m, hp_.d_hidden);
  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(hp_.d_hidden);
  for (size_t t = steps.size(); t-- > 0;) {
    StepState& st = steps[t];
    Eigen::VectorXd dh = dh_next;

    // Pointer cross-entropy.
    Eigen::VectorXd dscores = st.probs;
    dscores(st.k - st.lo) -= 1.0;
    dh.noalias() += enc.edu_repr.middleRows(st.lo - 1, st.hi - st.lo).transpose() * dscores;
    dE.middleRows(st.lo - 1, st.hi - st.lo).noalias() += dscores * st.h_out.transpose();

    // Classifier cross-entropy.
    Eigen::VectorXd dlogits = st.cls_probs;
    dlogits(st.gold_label) -= 1.0;
    Eigen::VectorXd de_l = Eigen::VectorXd::Zero(hp_.d_hidden);
    Eigen::VectorXd de_r = Eigen::VectorXd::Zero(hp_.d_hidden);
    classify_backward(st.cls, dlogits, de_l, de_r);
    double left_len = st.k - st.lo + 1;
    double right_len = st.hi - st.k;
    for (int i = st.lo; i <= st.k; ++i) dE.row(i - 1) += de_l.transpose() / left_len;
    for (int i = st.k + 1; i <= st.hi; ++i) dE.row(i - 1) += de_r.transpose() / right_len;

    // Decoder cell.
    Eigen::VectorXd dinput = Eigen::VectorXd::Zero(hp_.d_hidden);
    dh_next.setZero();
    decoder_->backward(st.gru, dh, dinput, dh_next);
    if (st.input_mask.size() > 0) dinput.array() *= st.input_mask.array();
    double span_len = st.hi - st.lo + 1;
    for (int i = st.lo; i <= st.hi; ++i) dE.row(i - 1) += dinput.transpose() / span_len;
  }

  encoder_->backward(doc, *backbone_, enc, dE, dh_next);

  loss.total = loss.structure + loss.label;
  if (opts.add_regularizer && hp_.weight_decay > 0.0) {
    loss.regularizer = add_l2_regularization(hp_.weight_decay);
    loss.total += loss.regularizer;
  }
  if (!std::isfinite(loss.total))
    throw NumericalError("non-finite loss on document " + doc.doc_id + " (structure=" +
                         std::to_string(loss.structure) + ", label=" +
                         std::to_string(loss.label) + ")");
  return loss;
}

double ParserModel::add_l2_regularization(double lambda) {
  double term = 0.0;
  for (Tensor* t : parameters()) {
    term += lambda * t->value.squaredNorm();
    t->grad.noalias() += 2.0 * lambda * t->value;
  }
  return term;
}

}  // namespace rstparse::model
