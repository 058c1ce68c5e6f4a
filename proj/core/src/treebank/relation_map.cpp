#include "rstparse/treebank/relation_map.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "rstparse/errors.hpp"

namespace rstparse::treebank {

namespace {

const char* kDefaultInventory[] = {
    "Attribution",   "Background", "Cause",        "Comparison",
    "Condition",     "Contrast",   "Elaboration",  "Enablement",
    "Evaluation",    "Explanation", "Joint",       "Manner-Means",
    "Topic-Comment", "Summary",    "Temporal",     "Topic-Change",
    "Textual-Organization", "Same-Unit"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// RST-DT raw labels carry embedded/span suffixes like "-e", "-s", "-n".
std::string strip_suffix(const std::string& s) {
  if (s.size() > 2 && s[s.size() - 2] == '-') {
    char last = s.back();
    if (last == 'e' || last == 's' || last == 'n') return s.substr(0, s.size() - 2);
  }
  return s;
}

}  // namespace

RelationMap RelationMap::default_inventory() {
  RelationMap m;
  for (const char* name : kDefaultInventory) m.inventory_.push_back(name);
  return m;
}

bool RelationMap::is_coarse(const std::string& label) const {
  return std::find(inventory_.begin(), inventory_.end(), label) != inventory_.end();
}

void RelationMap::add_mapping(const std::string& treebank, const std::string& raw,
                              const std::string& coarse) {
  map_[{treebank, lower(raw)}] = coarse;
}

const std::string* RelationMap::find(const std::string& treebank, const std::string& raw) const {
  auto it = map_.find({treebank, raw});
  if (it != map_.end()) return &it->second;
  it = map_.find({"*", raw});
  if (it != map_.end()) return &it->second;
  return nullptr;
}

std::string RelationMap::lookup(const std::string& treebank, const std::string& raw) const {
  std::string key = lower(raw);
  if (const std::string* hit = find(treebank, key)) return *hit;
  if (const std::string* hit = find(treebank, strip_suffix(key))) return *hit;
  throw MappingError("no coarse mapping for relation '" + raw + "' in treebank '" + treebank +
                     "'");
}

RelationMap RelationMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open relation map file: " + path);
  RelationMap m;
  std::vector<std::string> inventory;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> cols;
    std::string col;
    while (ss >> col) cols.push_back(col);
    if (cols.empty()) continue;
    if (cols[0] == "inventory") {
      if (cols.size() != 2)
        throw ParseError("inventory line needs one class name", lineno);
      inventory.push_back(cols[1]);
    } else if (cols.size() == 3) {
      m.map_[{cols[0], lower(cols[1])}] = cols[2];
    } else {
      throw ParseError("expected 'inventory <Class>' or '<treebank> <raw> <Class>'", lineno);
    }
  }
  m.inventory_ = inventory.empty() ? default_inventory().inventory_ : std::move(inventory);
  for (const auto& [key, coarse] : m.map_) {
    if (!m.is_coarse(coarse))
      throw ParseError("mapping target '" + coarse + "' is not in the inventory");
  }
  return m;
}

}  // namespace rstparse::treebank
