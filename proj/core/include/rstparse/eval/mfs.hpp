#pragma once

#include <memory>
#include <string>

#include "rstparse/types.hpp"

namespace rstparse::eval {

// Most-frequent joint label over the internal nodes of a training corpus;
// ties broken lexicographically on "<Relation>-<Nuc>".
std::pair<std::string, Nuclearity> most_frequent_joint_label(const Corpus& train);

// Structure-free baseline: fully right-branching tree over the document's
// EDUs, every node labeled with the most frequent training joint label.
std::unique_ptr<RstTree> mfs_baseline(const Corpus& train, const Document& doc);

}  // namespace rstparse::eval
