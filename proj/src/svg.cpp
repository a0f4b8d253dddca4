// Boundary tracing over pixel edges and SVG rendering of grid masks.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>

#include "schurloc/geometry.hpp"

namespace schurloc {
namespace {

struct Edge {
  long x0, y0, x1, y1;
};

int dir_index(long dx, long dy) {
  if (dx == 1) return 0;   // east
  if (dy == 1) return 1;   // south
  if (dx == -1) return 2;  // west
  return 3;                // north
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Drops vertices that lie on a straight run.
Polyline simplify(const Polyline& loop) {
  if (loop.size() < 3) return loop;
  Polyline out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PointF& p = loop[(i + n - 1) % n];
    const PointF& q = loop[i];
    const PointF& r = loop[(i + 1) % n];
    const double cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x);
    if (cross != 0.0) out.push_back(q);
  }
  return out;
}

std::string path_data(const std::vector<Polyline>& loops) {
  std::string d;
  for (const auto& loop : loops) {
    if (loop.empty()) continue;
    d += "M" + fmt(loop[0].x) + " " + fmt(loop[0].y);
    for (std::size_t i = 1; i < loop.size(); ++i) d += " L" + fmt(loop[i].x) + " " + fmt(loop[i].y);
    d += " Z ";
  }
  if (!d.empty()) d.pop_back();
  return d;
}

constexpr double kMarginLeft = 70.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginBottom = 40.0;

std::string svg_header(const Window& w) {
  const double n = static_cast<double>(w.resolution);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       fmt(n + kMarginLeft + kMarginRight) + "\" height=\"" + fmt(n + kMarginTop + kMarginBottom) +
       "\">\n";
  s += "<g transform=\"translate(" + fmt(kMarginLeft) + "," + fmt(kMarginTop) + ")\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt(n) + "\" height=\"" + fmt(n) +
       "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  // Axes through the origin when it is inside the window.
  if (w.re_min < 0.0 && w.re_max > 0.0) {
    const double x = -w.re_min / w.pitch_re();
    s += "<line x1=\"" + fmt(x) + "\" y1=\"0\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(n) +
         "\" stroke=\"#bbb\" stroke-dasharray=\"4,4\"/>\n";
  }
  if (w.im_min < 0.0 && w.im_max > 0.0) {
    const double y = w.im_max / w.pitch_im();
    s += "<line x1=\"0\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(n) + "\" y2=\"" + fmt(y) +
         "\" stroke=\"#bbb\" stroke-dasharray=\"4,4\"/>\n";
  }
  const std::string font = "font-family=\"monospace\" font-size=\"11\"";
  s += "<text x=\"0\" y=\"" + fmt(n + 16) + "\" " + font + ">" + fmt(w.re_min) + "</text>\n";
  s += "<text x=\"" + fmt(n) + "\" y=\"" + fmt(n + 16) + "\" text-anchor=\"end\" " + font + ">" +
       fmt(w.re_max) + "</text>\n";
  s += "<text x=\"" + fmt(n / 2) + "\" y=\"" + fmt(n + 32) + "\" text-anchor=\"middle\" " + font +
       ">Re</text>\n";
  s += "<text x=\"-6\" y=\"10\" text-anchor=\"end\" " + font + ">" + fmt(w.im_max) + "</text>\n";
  s += "<text x=\"-6\" y=\"" + fmt(n) + "\" text-anchor=\"end\" " + font + ">" + fmt(w.im_min) +
       "</text>\n";
  s += "<text x=\"-6\" y=\"" + fmt(n / 2) + "\" text-anchor=\"end\" " + font + ">Im</text>\n";
  return s;
}

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::vector<Polyline> boundary_loops(const GridMask& mask) {
  const long n = static_cast<long>(mask.resolution());
  auto set = [&](long r, long c) {
    return r >= 0 && c >= 0 && r < n && c < n && mask.get(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };

  // Directed edges with the set pixel on the right-hand side (y points down).
  std::vector<Edge> edges;
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      if (!set(r, c)) continue;
      if (!set(r - 1, c)) edges.push_back({c, r, c + 1, r});
      if (!set(r, c + 1)) edges.push_back({c + 1, r, c + 1, r + 1});
      if (!set(r + 1, c)) edges.push_back({c + 1, r + 1, c, r + 1});
      if (!set(r, c - 1)) edges.push_back({c, r + 1, c, r});
    }
  }

  const long stride = n + 1;
  std::unordered_map<long, std::array<long, 4>> outgoing;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    auto [it, inserted] = outgoing.try_emplace(ed.y0 * stride + ed.x0, std::array<long, 4>{-1, -1, -1, -1});
    it->second[dir_index(ed.x1 - ed.x0, ed.y1 - ed.y0)] = static_cast<long>(e);
  }

  std::vector<bool> used(edges.size(), false);
  std::vector<Polyline> loops;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    Polyline loop;
    std::size_t e = start;
    while (!used[e]) {
      used[e] = true;
      const Edge& ed = edges[e];
      loop.push_back({static_cast<double>(ed.x0), static_cast<double>(ed.y0)});
      const int d = dir_index(ed.x1 - ed.x0, ed.y1 - ed.y0);
      const auto& out = outgoing.at(ed.y1 * stride + ed.x1);
      // Prefer the right turn, then straight, then left; a right turn hugs
      // the current pixel and keeps diagonal neighbours in separate loops.
      long next = -1;
      for (int turn : {1, 0, 3}) {
        const long cand = out[static_cast<std::size_t>((d + turn) % 4)];
        if (cand >= 0 && !used[static_cast<std::size_t>(cand)]) {
          next = cand;
          break;
        }
      }
      if (next < 0) break;
      e = static_cast<std::size_t>(next);
    }
    loops.push_back(simplify(loop));
  }
  return loops;
}

std::string svg_contours(const GridMask& mask) {
  const std::pair<std::string, GridMask> layer{"region", mask};
  return svg_contours(std::span<const std::pair<std::string, GridMask>>(&layer, 1));
}

std::string svg_contours(std::span<const std::pair<std::string, GridMask>> layers) {
  const Window w = layers.empty() ? Window{} : layers.front().second.window();
  std::string s = svg_header(w);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& [name, mask] = layers[i];
    const char* colour = kPalette[i % kPalette.size()];
    const auto loops = boundary_loops(mask);
    s += "<g id=\"" + name + "\" fill=\"" + colour + "\" fill-opacity=\"0.15\" stroke=\"" + colour +
         "\" stroke-width=\"1\" fill-rule=\"evenodd\">\n";
    for (const auto& loop : loops) s += "<path d=\"" + path_data({loop}) + "\"/>\n";
    s += "</g>\n";
    s += "<text x=\"" + fmt(static_cast<double>(w.resolution) - 4) + "\" y=\"" +
         fmt(14.0 + 14.0 * static_cast<double>(i)) +
         "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\"" + colour +
         "\">" + name + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace schurloc
