#pragma once

#include <string>
#include <vector>

#include "rstparse/analysis/lda.hpp"
#include "rstparse/analysis/projection.hpp"

namespace rstparse::analysis {

// Writes an SVG scatter plot of the projected documents, colored by
// treebank label, with a per-topic keyword legend. Throws IoError on an
// unwritable path and ContractError for an empty point list.
void emit_scatter(const std::vector<ProjectedPoint>& points,
                  const std::vector<std::vector<std::string>>& topic_keywords,
                  const std::string& out_path);

std::string scatter_svg(const std::vector<ProjectedPoint>& points,
                        const std::vector<std::vector<std::string>>& topic_keywords);

}  // namespace rstparse::analysis
