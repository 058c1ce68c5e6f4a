#pragma once

#include <map>
#include <string>
#include <vector>

namespace rstparse::treebank {

// Maps (treebank id, raw relation string) to a coarse relation class.
// The inventory and the mappings live in an editable data file; the
// built-in default covers the standard 18 coarse classes only.
class RelationMap {
 public:
  // 18-class inventory, no raw-label mappings beyond identity.
  static RelationMap default_inventory();

  // File format, tab or multi-space separated:
  //   inventory <Class>
  //   <treebank|*> <raw-label> <Class>
  // '#' starts a comment. Loading replaces the inventory when the file
  // declares one, else keeps the default.
  static RelationMap load(const std::string& path);

  const std::vector<std::string>& inventory() const { return inventory_; }
  bool is_coarse(const std::string& label) const;

  // Resolution order: exact (treebank, raw) -> ('*', raw) -> retry with a
  // lowercased label, then with one trailing -e/-s/-n suffix stripped.
  // Throws MappingError when nothing matches.
  std::string lookup(const std::string& treebank, const std::string& raw) const;

  void add_mapping(const std::string& treebank, const std::string& raw, const std::string& coarse);

 private:
  const std::string* find(const std::string& treebank, const std::string& raw) const;

  std::vector<std::string> inventory_;
  std::map<std::pair<std::string, std::string>, std::string> map_;
};

}  // namespace rstparse::treebank
