#include "rstparse/treebank/rs3_reader.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rstparse/errors.hpp"
#include "rstparse/treebank/xml_lite.hpp"

namespace rstparse::treebank {

namespace {

struct Unit {
  std::string id;
  bool is_segment = false;
  std::string group_type;  // "span" | "multinuc" for groups
  int position = 0;        // document order, segments only
  std::string parent;      // empty when parentless
  std::string relname;
  std::string text;
};

enum class EdgeKind { Span, Multinuc, Rst };

struct Rs3Builder {
  std::map<std::string, Unit> units;
  std::vector<std::string> order;  // all unit ids in document order
  std::map<std::string, std::vector<std::string>> children;
  std::set<std::string> rst_rels;
  std::set<std::string> multinuc_rels;

  EdgeKind classify(const Unit& child) const {
    if (child.relname == "span") return EdgeKind::Span;
    if (multinuc_rels.count(child.relname)) return EdgeKind::Multinuc;
    if (rst_rels.count(child.relname)) return EdgeKind::Rst;
    // Undeclared relation: fall back on the parent's group type.
    auto it = units.find(child.parent);
    if (it != units.end() && !it->second.is_segment && it->second.group_type == "multinuc")
      return EdgeKind::Multinuc;
    return EdgeKind::Rst;
  }

  // Leftmost leaf position of the subtree.
  static int leftmost(const RawNode& n) {
    const RawNode* cur = &n;
    while (!cur->is_leaf()) cur = &cur->children.front();
    return cur->leaf_index;
  }
  static int rightmost(const RawNode& n) {
    const RawNode* cur = &n;
    while (!cur->is_leaf()) cur = &cur->children.back();
    return cur->leaf_index;
  }

  // The unit's own content, before satellite attachment.
  RawNode content(const Unit& u) {
    if (u.is_segment) {
      RawNode leaf;
      leaf.role = RawRole::Nucleus;
      leaf.relation = u.relname;
      leaf.leaf_index = u.position;
      leaf.text = u.text;
      return leaf;
    }
    auto kids = children_of(u.id);
    if (u.group_type == "multinuc") {
      std::vector<const Unit*> nuclei;
      for (const auto& cid : kids) {
        const Unit& c = units.at(cid);
        if (classify(c) == EdgeKind::Multinuc) nuclei.push_back(&c);
      }
      if (nuclei.empty())
        throw ParseError("multinuc group '" + u.id + "' has no multinuclear children");
      std::vector<RawNode> built;
      for (const Unit* c : nuclei) {
        RawNode n = build(*c);
        n.role = RawRole::Nucleus;
        n.relation = c->relname;
        built.push_back(std::move(n));
      }
      std::sort(built.begin(), built.end(),
                [](const RawNode& a, const RawNode& b) { return leftmost(a) < leftmost(b); });
      if (built.size() == 1) return std::move(built.front());
      RawNode node;
      node.role = RawRole::Nucleus;
      node.relation = u.relname;
      node.children = std::move(built);
      return node;
    }
    // span group: exactly one child linked with relname "span"
    const Unit* span_child = nullptr;
    for (const auto& cid : kids) {
      const Unit& c = units.at(cid);
      if (classify(c) == EdgeKind::Span) {
        if (span_child)
          throw ParseError("span group '" + u.id + "' has multiple span children");
        span_child = &c;
      }
    }
    if (!span_child) throw ParseError("span group '" + u.id + "' has no span child");
    return build(*span_child);
  }

  const std::vector<std::string>& children_of(const std::string& id) {
    static const std::vector<std::string> kEmpty;
    auto it = children.find(id);
    return it == children.end() ? kEmpty : it->second;
  }

  // Content plus rst satellites, attached nearest first.
  RawNode build(const Unit& u) {
    RawNode core = content(u);
    std::vector<RawNode> sats;
    std::vector<std::string> rels;
    for (const auto& cid : children_of(u.id)) {
      const Unit& c = units.at(cid);
      if (classify(c) != EdgeKind::Rst) continue;
      RawNode s = build(c);
      s.role = RawRole::Satellite;
      s.relation = c.relname;
      rels.push_back(c.relname);
      sats.push_back(std::move(s));
    }
    while (!sats.empty()) {
      int core_lo = leftmost(core), core_hi = rightmost(core);
      size_t best = 0;
      int best_dist = 0;
      bool first = true;
      for (size_t i = 0; i < sats.size(); ++i) {
        int lo = leftmost(sats[i]);
        int dist = lo < core_lo ? core_lo - rightmost(sats[i]) : lo - core_hi;
        if (first || dist < best_dist) {
          best = i;
          best_dist = dist;
          first = false;
        }
      }
      RawNode sat = std::move(sats[best]);
      std::string rel = rels[best];
      sats.erase(sats.begin() + static_cast<long>(best));
      rels.erase(rels.begin() + static_cast<long>(best));

      RawNode joined;
      joined.role = core.role;
      joined.relation = core.relation;
      RawNode nucleus = std::move(core);
      nucleus.role = RawRole::Nucleus;
      if (leftmost(sat) < leftmost(nucleus)) {
        joined.children.push_back(std::move(sat));
        joined.children.push_back(std::move(nucleus));
      } else {
        joined.children.push_back(std::move(nucleus));
        joined.children.push_back(std::move(sat));
      }
      core = std::move(joined);
    }
    return core;
  }
};

}  // namespace

RawTree parse_rs3(const std::string& xml) {
  XmlElement doc = parse_xml(xml);
  if (doc.name != "rst") throw ParseError("expected <rst> root element", doc.line);

  Rs3Builder b;
  if (const XmlElement* header = doc.find("header")) {
    if (const XmlElement* rels = header->find("relations")) {
      for (const XmlElement* rel : rels->find_all("rel")) {
        std::string name = rel->attr("name");
        std::string type = rel->has_attr("type") ? rel->attr("type") : "rst";
        if (type == "multinuc")
          b.multinuc_rels.insert(name);
        else
          b.rst_rels.insert(name);
      }
    }
  }

  const XmlElement* body = doc.find("body");
  if (!body) throw ParseError("missing <body> element", doc.line);

  int seg_pos = 0;
  for (const auto& el : body->children) {
    if (el.name != "segment" && el.name != "group") continue;
    Unit u;
    u.id = el.attr("id");
    u.is_segment = el.name == "segment";
    if (u.is_segment) {
      u.position = ++seg_pos;
      u.text = el.text;
      // Trim surrounding whitespace of segment text.
      size_t lo = u.text.find_first_not_of(" \t\r\n");
      size_t hi = u.text.find_last_not_of(" \t\r\n");
      u.text = lo == std::string::npos ? "" : u.text.substr(lo, hi - lo + 1);
    } else {
      u.group_type = el.has_attr("type") ? el.attr("type") : "span";
    }
    if (el.has_attr("parent")) u.parent = el.attr("parent");
    if (el.has_attr("relname")) u.relname = el.attr("relname");
    if (b.units.count(u.id))
      throw ParseError("duplicate segment id '" + u.id + "'", el.line);
    b.order.push_back(u.id);
    b.units.emplace(u.id, std::move(u));
  }
  if (seg_pos == 0) throw ParseError("no segments in <body>", body->line);

  for (const auto& id : b.order) {
    const Unit& u = b.units.at(id);
    if (u.parent.empty()) continue;
    if (!b.units.count(u.parent))
      throw ParseError("dangling parent '" + u.parent + "' referenced by '" + id + "'");
    b.children[u.parent].push_back(id);
  }

  // Reachability from parentless units; anything unreached sits on a cycle.
  std::set<std::string> reached;
  std::vector<std::string> stack;
  for (const auto& id : b.order)
    if (b.units.at(id).parent.empty()) stack.push_back(id);
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!reached.insert(id).second) continue;
    for (const auto& cid : b.children_of(id)) stack.push_back(cid);
  }
  if (reached.size() != b.units.size()) throw ParseError("cycle in parent links");

  // Build each parentless component; the largest becomes the root.
  struct Component {
    RawNode node;
    int leaves;
    int pos;
  };
  std::vector<Component> comps;
  for (const auto& id : b.order) {
    const Unit& u = b.units.at(id);
    if (!u.parent.empty()) continue;
    RawNode n = b.build(u);
    int leaves = n.leaf_count();
    int pos = Rs3Builder::leftmost(n);
    comps.push_back({std::move(n), leaves, pos});
  }
  if (comps.empty()) throw ParseError("no parentless unit found");

  std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    if (a.leaves != b.leaves) return a.leaves > b.leaves;
    return a.pos < b.pos;
  });

  RawTree tree;
  bool tie = comps.size() > 1 && comps[1].leaves == comps[0].leaves;
  size_t start = 0;
  if (!tie) {
    tree.has_root = true;
    tree.root = std::move(comps[0].node);
    tree.root.role = RawRole::Root;
    start = 1;
  }
  for (size_t i = start; i < comps.size(); ++i) tree.floating.push_back(std::move(comps[i].node));
  return tree;
}

}  // namespace rstparse::treebank
