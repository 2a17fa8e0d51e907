#include "boldscale/svg.hpp"

#include "boldscale/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>

namespace boldscale {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const Json& need(const Json& report, const char* stage) {
  if (!report.contains(stage) || report[stage].is_null())
    throw Error(ErrorKind::MissingStage, std::string("report has no '") + stage + "' stage");
  return report[stage];
}

// Maps data coordinates into the drawing square, y pointing up.
struct Frame {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double scale() const { return (kSize - 2 * kMargin) / std::max(x1 - x0, y1 - y0); }
  double px(double x) const { return kMargin + (x - x0) * scale(); }
  double py(double y) const { return kSize - kMargin - (y - y0) * scale(); }
};

Frame fit_frame(const Json& points) {
  Frame f{1e300, -1e300, 1e300, -1e300};
  for (const auto& p : points) {
    f.x0 = std::min(f.x0, p["x"].get<double>());
    f.x1 = std::max(f.x1, p["x"].get<double>());
    f.y0 = std::min(f.y0, p["y"].get<double>());
    f.y1 = std::max(f.y1, p["y"].get<double>());
  }
  if (points.empty()) return {};
  const double pad = 0.05 * std::max({f.x1 - f.x0, f.y1 - f.y0, 1e-9});
  return {f.x0 - pad, f.x1 + pad, f.y0 - pad, f.y1 + pad};
}

std::string open(const std::string& title) {
  const std::string s = fmt(kSize);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + s + "\" height=\"" + s +
         "\" viewBox=\"0 0 " + s + " " + s + "\" font-family=\"sans-serif\" font-size=\"11\">\n" +
         "<title>" + escape(title) + "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         "<text x=\"" + fmt(kMargin) + "\" y=\"24\" font-size=\"14\">" + escape(title) + "</text>\n";
}

std::string point(double x, double y, double r, const char* fill, const std::string& label) {
  return "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) + "\" fill=\"" + fill +
         "\"/>\n<text x=\"" + fmt(x + r + 2) + "\" y=\"" + fmt(y - r - 1) + "\">" + escape(label) +
         "</text>\n";
}

std::string line(double ax, double ay, double bx, double by, const char* extra = "") {
  return "<line x1=\"" + fmt(ax) + "\" y1=\"" + fmt(ay) + "\" x2=\"" + fmt(bx) + "\" y2=\"" +
         fmt(by) + "\" stroke=\"black\" stroke-width=\"1.5\"" + extra + "/>\n";
}

std::string border(const Frame& f) {
  const double a = f.px(f.x0), b = f.px(f.x1), c = f.py(f.y1), d = f.py(f.y0);
  return "<rect x=\"" + fmt(a) + "\" y=\"" + fmt(c) + "\" width=\"" + fmt(b - a) + "\" height=\"" +
         fmt(d - c) + "\" fill=\"none\" stroke=\"#888\"/>\n";
}

std::string ssa_map(const Json& report) {
  const auto& ssa = need(report, "ssa");
  const auto& pts = ssa["points"];
  const Frame f = fit_frame(pts);
  std::string out = open("SSA map (alienation " + fmt(ssa["alienation"].get<double>()) + ")");
  out += border(f);
  for (const auto& p : pts)
    out += point(f.px(p["x"].get<double>()), f.py(p["y"].get<double>()), 3.5, "#333",
                 p["id"].get<std::string>());
  return out + "</svg>\n";
}

std::string partitioned_ssa(const Json& report, const std::string& facet) {
  const auto& ssa = need(report, "ssa");
  const auto& parts = need(report, "partitions");
  if (!parts.contains(facet))
    throw Error(ErrorKind::MissingStage, "report has no partition for facet '" + facet + "'");
  const auto& part = parts[facet];
  const auto& pts = ssa["points"];
  const Frame f = fit_frame(pts);
  std::string out = open("Partition by " + facet + " facet (SI " +
                         fmt(part["separation_index"].get<double>()) + ")");
  out += border(f);
  out += "<clipPath id=\"plot\"><rect x=\"" + fmt(f.px(f.x0)) + "\" y=\"" + fmt(f.py(f.y1)) +
         "\" width=\"" + fmt(f.px(f.x1) - f.px(f.x0)) + "\" height=\"" +
         fmt(f.py(f.y0) - f.py(f.y1)) + "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
  const double nx = part["normal"][0].get<double>(), ny = part["normal"][1].get<double>();
  const double reach = 4.0 * std::max(f.x1 - f.x0, f.y1 - f.y0);
  const double cx = 0.5 * (f.x0 + f.x1), cy = 0.5 * (f.y0 + f.y1);
  for (const auto& off : part["offsets"]) {
    const double shift = off.get<double>() - (cx * nx + cy * ny);
    const double bx = cx + shift * nx, by = cy + shift * ny;
    out += line(f.px(bx - reach * ny), f.py(by + reach * nx), f.px(bx + reach * ny),
                f.py(by - reach * nx), " stroke-dasharray=\"6 3\"");
  }
  out += "</g>\n";
  const auto& elements = part["elements"];
  for (std::size_t k = 0; k < elements.size(); ++k)
    out += "<text x=\"" + fmt(kSize - kMargin - 120) + "\" y=\"" + fmt(24 + 14.0 * k) +
           "\" fill=\"" + kPalette[k % 5] + "\">&#9679; " +
           escape(elements[k].get<std::string>()) + "</text>\n";
  std::size_t i = 0;
  for (const auto& p : pts) {
    const auto& info = part["points"][i++];
    const auto actual = info["actual"].get<std::string>();
    std::size_t e = 0;
    while (e < elements.size() && elements[e].get<std::string>() != actual) ++e;
    const double x = f.px(p["x"].get<double>()), y = f.py(p["y"].get<double>());
    out += point(x, y, 3.5, kPalette[e % 5], p["id"].get<std::string>());
    if (info["actual"] != info["predicted"])
      out += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
             "\" r=\"7\" fill=\"none\" stroke=\"black\"/>\n";
  }
  return out + "</svg>\n";
}

std::string score_label(const Json& scores) {
  std::string s;
  for (const auto& v : scores) s += std::to_string(v.get<int>());
  return s;
}

Frame rank_frame(std::size_t n) {
  return {0.5, static_cast<double>(n) + 0.5, 0.5, static_cast<double>(n) + 0.5};
}

std::string posac_points(const Json& posac, const Frame& f, const Json* high_of = nullptr,
                         std::size_t item = 0) {
  std::string out;
  std::size_t max_freq = 1;
  for (const auto& p : posac["profiles"]) max_freq = std::max(max_freq, p["frequency"].get<std::size_t>());
  for (const auto& p : posac["profiles"]) {
    const double r = 3.0 + 9.0 * std::sqrt(p["frequency"].get<double>() / static_cast<double>(max_freq));
    const char* fill = "#333";
    if (high_of) {
      int top = 0;
      for (const auto& q : *high_of) top = std::max(top, q["scores"][item].get<int>());
      fill = p["scores"][item].get<int>() == top ? kPalette[1] : kPalette[0];
    }
    out += point(f.px(p["x"].get<double>()), f.py(p["y"].get<double>()), r, fill,
                 score_label(p["scores"]) + " (" + std::to_string(p["frequency"].get<std::size_t>()) + ")");
  }
  return out;
}

std::string posac_map(const Json& report) {
  const auto& posac = need(report, "posac");
  const Frame f = rank_frame(posac["profiles"].size());
  std::string out = open("POSAC map (correp " + fmt(posac["correp"].get<double>()) + ")");
  out += border(f);
  out += posac_points(posac, f);
  return out + "</svg>\n";
}

std::string item_diagram(const Json& report, std::size_t item, int bends) {
  const auto& posac = need(report, "posac");
  const auto& dev = need(report, "deviations");
  if (item >= dev["rows"].size())
    throw Error(ErrorKind::InvalidArgument, "no item " + std::to_string(item + 1) + " in report");
  if (bends < 0 || bends > 3) throw Error(ErrorKind::InvalidArgument, "bends must be 0..3");
  const auto& row = dev["rows"][item];
  const auto& curve = row["best_by_bends"][static_cast<std::size_t>(bends)];
  const std::size_t n = posac["profiles"].size();
  const Frame f = rank_frame(n);
  std::string title = "Item " + std::to_string(item + 1) + " " + row["item"].get<std::string>() +
                      ", at most " + std::to_string(bends) + " bend" + (bends == 1 ? "" : "s");
  if (!curve.is_null()) title += " (" + curve["shape"].get<std::string>() + ")";
  std::string out = open(title);
  out += border(f);
  if (!curve.is_null()) {
    const auto& t = curve["thresholds"];
    std::string path;
    auto add = [&](double x, double y) {
      path += (path.empty() ? "M" : " L") + fmt(f.px(x)) + " " + fmt(f.py(y));
    };
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double level = t[k].get<double>() + 0.5;
      add(static_cast<double>(k) + 0.5, level);
      add(static_cast<double>(k) + 1.5, level);
    }
    out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  out += posac_points(posac, f, &posac["profiles"], item);
  return out + "</svg>\n";
}

}  // namespace

std::string Figure::name() const {
  switch (kind) {
    case Kind::SsaMap: return "ssa_map";
    case Kind::PartitionedSsa: return "partitioned_ssa_" + facet;
    case Kind::PosacMap: return "posac_map";
    case Kind::ItemDiagram:
      return "item_" + std::to_string(item + 1) + "_bends_" + std::to_string(bends);
  }
  return "figure";
}

Figure parse_figure(const std::string& spec) {
  if (spec == "ssa_map") return {};
  if (spec == "posac_map") return {Figure::Kind::PosacMap, "type", 0, 0};
  if (spec.rfind("partitioned_ssa", 0) == 0) {
    const auto colon = spec.find(':');
    const std::string facet = colon == std::string::npos ? "type" : spec.substr(colon + 1);
    if (facet != "type" && facet != "ci")
      throw Error(ErrorKind::InvalidArgument, "facet must be type or ci");
    return {Figure::Kind::PartitionedSsa, facet, 0, 0};
  }
  unsigned item = 0;
  int bends = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "item:%u:%d%c", &item, &bends, &tail) == 2 && item >= 1)
    return {Figure::Kind::ItemDiagram, "type", item - 1, bends};
  throw Error(ErrorKind::InvalidArgument, "unknown figure '" + spec + "'");
}

std::vector<Figure> all_figures(const Json& report) {
  std::vector<Figure> out{Figure{}, {Figure::Kind::PartitionedSsa, "type", 0, 0},
                          {Figure::Kind::PartitionedSsa, "ci", 0, 0},
                          {Figure::Kind::PosacMap, "type", 0, 0}};
  const auto& rows = need(report, "deviations")["rows"];
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int b = 0; b <= 3; ++b) out.push_back({Figure::Kind::ItemDiagram, "type", i, b});
  return out;
}

std::string render_svg(const Json& report, const Figure& figure) {
  switch (figure.kind) {
    case Figure::Kind::SsaMap: return ssa_map(report);
    case Figure::Kind::PartitionedSsa: return partitioned_ssa(report, figure.facet);
    case Figure::Kind::PosacMap: return posac_map(report);
    case Figure::Kind::ItemDiagram: return item_diagram(report, figure.item, figure.bends);
  }
  return {};
}

}  // namespace boldscale
