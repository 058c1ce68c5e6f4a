#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rstparse/analysis/lda.hpp"

namespace rstparse::analysis {

struct ProjectedPoint {
  std::string doc_id;
  std::string label;  // treebank
  double x = 0.0;
  double y = 0.0;
};

enum class ProjectionMethod { Pca, Tsne };

ProjectionMethod projection_from_string(const std::string& name);

struct TsneOptions {
  double perplexity = 30.0;  // clamped to (n-1)/3 for small inputs
  int iterations = 1000;
  double learning_rate = 200.0;
};

// 2-D embedding of the document-topic vectors. PCA is exactly reproducible
// across runs; t-SNE is deterministic for a fixed seed. Throws
// AnalysisError for fewer than 3 documents.
std::vector<ProjectedPoint> project_2d(const TopicModel& model, ProjectionMethod method,
                                       std::uint64_t seed, const TsneOptions& tsne = {});

}  // namespace rstparse::analysis
