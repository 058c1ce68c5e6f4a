#pragma once

#include <map>
#include <string>
#include <vector>

namespace rstparse::treebank {

// Minimal XML element tree, sufficient for .rs3 files: elements, attributes,
// text content and the five predefined entities. No namespaces, CDATA or
// processing-instruction support.
struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::string text;  // concatenated character data directly under this element
  std::vector<XmlElement> children;
  int line = 0;

  const XmlElement* find(const std::string& child_name) const;
  std::vector<const XmlElement*> find_all(const std::string& child_name) const;
  bool has_attr(const std::string& key) const { return attrs.count(key) > 0; }
  std::string attr(const std::string& key) const;
};

XmlElement parse_xml(const std::string& input);

}  // namespace rstparse::treebank
