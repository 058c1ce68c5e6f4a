#include "rstparse/analysis/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rstparse/errors.hpp"

namespace rstparse::analysis {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string scatter_svg(const std::vector<ProjectedPoint>& points,
                        const std::vector<std::vector<std::string>>& topic_keywords) {
  if (points.empty()) throw ContractError("cannot plot an empty point list");

  const double width = 900, height = 620, margin = 45, legend_w = 230;
  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  double span_x = std::max(max_x - min_x, 1e-9);
  double span_y = std::max(max_y - min_y, 1e-9);
  auto sx = [&](double x) {
    return margin + (x - min_x) / span_x * (width - legend_w - 2 * margin);
  };
  auto sy = [&](double y) { return height - margin - (y - min_y) / span_y * (height - 2 * margin); };

  std::vector<std::string> labels;
  std::map<std::string, std::string> color_of;
  for (const auto& p : points) {
    if (!color_of.count(p.label)) {
      color_of[p.label] = kPalette[labels.size() % (sizeof(kPalette) / sizeof(kPalette[0]))];
      labels.push_back(p.label);
    }
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& p : points) {
    svg << "  <circle class=\"pt\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"5\" fill=\"" << color_of[p.label] << "\" fill-opacity=\"0.8\">"
        << "<title>" << escape_xml(p.doc_id) << "</title></circle>\n";
  }

  double lx = width - legend_w + 10, ly = margin;
  svg << "  <text x=\"" << lx << "\" y=\"" << ly << "\" font-size=\"14\" font-weight=\"bold\">"
      << "Treebanks</text>\n";
  ly += 8;
  for (const auto& label : labels) {
    ly += 20;
    svg << "  <g class=\"legend-entry\"><circle cx=\"" << lx + 6 << "\" cy=\"" << ly - 4
        << "\" r=\"5\" fill=\"" << color_of[label] << "\"/><text x=\"" << lx + 18 << "\" y=\""
        << ly << "\" font-size=\"13\">" << escape_xml(label) << "</text></g>\n";
  }

  ly += 30;
  svg << "  <text x=\"" << lx << "\" y=\"" << ly << "\" font-size=\"14\" font-weight=\"bold\">"
      << "Topic keywords</text>\n";
  ly += 8;
  for (size_t k = 0; k < topic_keywords.size(); ++k) {
    ly += 18;
    std::string line = "T" + std::to_string(k) + ":";
    for (const auto& w : topic_keywords[k]) line += " " + w;
    if (line.size() > 34) line = line.substr(0, 31) + "...";
    svg << "  <text class=\"topic\" x=\"" << lx << "\" y=\"" << ly << "\" font-size=\"12\">"
        << escape_xml(line) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void emit_scatter(const std::vector<ProjectedPoint>& points,
                  const std::vector<std::vector<std::string>>& topic_keywords,
                  const std::string& out_path) {
  std::string svg = scatter_svg(points, topic_keywords);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write plot file: " + out_path);
  out << svg;
  if (!out) throw IoError("plot write failed: " + out_path);
}

}  // namespace rstparse::analysis
