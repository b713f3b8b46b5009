#include "discrarr/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace discrarr {

namespace {

struct Point {
  Rational x, y;
  bool operator<(const Point& o) const { return x != o.x ? x < o.x : y < o.y; }
};

void check_input(const Arrangement& a, const TranslationVector& t) {
  if (a.k() != 2) throw std::invalid_argument("rendering needs a line arrangement (k = 2)");
  if (t.size() != static_cast<std::size_t>(a.n()))
    throw std::invalid_argument("translation length does not match the arrangement");
}

std::optional<Point> meet(const Arrangement& a, const TranslationVector& t, int i, int j) {
  const auto& u = a.normal(i);
  const auto& v = a.normal(j);
  const Rational d = u[0] * v[1] - u[1] * v[0];
  if (sgn(d) == 0) return std::nullopt;
  const Rational& ti = t[static_cast<std::size_t>(i - 1)];
  const Rational& tj = t[static_cast<std::size_t>(j - 1)];
  return Point{(ti * v[1] - u[1] * tj) / d, (u[0] * tj - ti * v[0]) / d};
}

bool on_line(const Arrangement& a, const TranslationVector& t, int i, const Point& p) {
  const auto& u = a.normal(i);
  return u[0] * p.x + u[1] * p.y == t[static_cast<std::size_t>(i - 1)];
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

// Segment of {a x + b y = c} inside the box, or nothing if the line misses it.
std::optional<std::array<double, 4>> clip(double a, double b, double c, const Viewport& vp) {
  std::vector<std::pair<double, double>> pts;
  auto add = [&](double x, double y) {
    const double eps = 1e-9 * (1 + std::abs(x) + std::abs(y));
    if (x < vp.xmin - eps || x > vp.xmax + eps || y < vp.ymin - eps || y > vp.ymax + eps) return;
    pts.emplace_back(x, y);
  };
  if (b != 0) {
    add(vp.xmin, (c - a * vp.xmin) / b);
    add(vp.xmax, (c - a * vp.xmax) / b);
  }
  if (a != 0) {
    add((c - b * vp.ymin) / a, vp.ymin);
    add((c - b * vp.ymax) / a, vp.ymax);
  }
  if (pts.size() < 2) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  return std::array<double, 4>{pts.front().first, pts.front().second, pts.back().first, pts.back().second};
}

}  // namespace

std::vector<ConcurrentPoint> concurrent_points(const Arrangement& a, const TranslationVector& t) {
  check_input(a, t);
  std::map<Point, IndexSet> through;
  for (int i = 1; i <= a.n(); ++i)
    for (int j = i + 1; j <= a.n(); ++j) {
      const auto p = meet(a, t, i, j);
      if (!p || through.count(*p)) continue;
      IndexSet lines;
      for (int m = 1; m <= a.n(); ++m)
        if (on_line(a, t, m, *p)) lines.insert(m);
      through.emplace(*p, lines);
    }
  std::vector<ConcurrentPoint> out;
  for (const auto& [p, lines] : through)
    if (lines.size() >= 3) out.push_back({p.x, p.y, lines});
  return out;
}

std::string render_svg(const Arrangement& a, const TranslationVector& t, const RenderOptions& options) {
  check_input(a, t);
  Viewport vp{};
  if (options.viewport) {
    vp = *options.viewport;
    if (!(vp.xmin < vp.xmax && vp.ymin < vp.ymax)) throw std::invalid_argument("empty viewport");
  } else {
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= a.n(); ++i) {
      bool crossed = false;
      for (int j = 1; j <= a.n(); ++j) {
        if (i == j) continue;
        if (const auto p = meet(a, t, i, j)) {
          pts.emplace_back(p->x.get_d(), p->y.get_d());
          crossed = true;
        }
      }
      if (!crossed) {
        // Parallel to every other line: keep its point nearest the origin in view.
        const auto& u = a.normal(i);
        const Rational norm = u[0] * u[0] + u[1] * u[1];
        const Rational s = t[static_cast<std::size_t>(i - 1)] / norm;
        pts.emplace_back(Rational(s * u[0]).get_d(), Rational(s * u[1]).get_d());
      }
    }
    if (pts.empty()) pts.emplace_back(0.0, 0.0);
    vp = {pts[0].first, pts[0].first, pts[0].second, pts[0].second};
    for (const auto& [x, y] : pts) {
      vp.xmin = std::min(vp.xmin, x);
      vp.xmax = std::max(vp.xmax, x);
      vp.ymin = std::min(vp.ymin, y);
      vp.ymax = std::max(vp.ymax, y);
    }
    const double span = std::max({vp.xmax - vp.xmin, vp.ymax - vp.ymin, 1.0});
    const double cx = (vp.xmin + vp.xmax) / 2;
    const double cy = (vp.ymin + vp.ymax) / 2;
    const double half = span * 1.2 / 2;
    vp = {cx - half, cx + half, cy - half, cy + half};
  }
  const double w = options.width_px;
  const double h = w * (vp.ymax - vp.ymin) / (vp.xmax - vp.xmin);
  auto sx = [&](double x) { return (x - vp.xmin) / (vp.xmax - vp.xmin) * w; };
  auto sy = [&](double y) { return (vp.ymax - y) / (vp.ymax - vp.ymin) * h; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
                    "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int i = 1; i <= a.n(); ++i) {
    const auto& u = a.normal(i);
    const auto seg = clip(u[0].get_d(), u[1].get_d(), t[static_cast<std::size_t>(i - 1)].get_d(), vp);
    if (!seg) {
      svg += "<!-- H_" + std::to_string(i) + " misses the viewport -->\n";
      continue;
    }
    const auto& s = *seg;
    svg += "<line x1=\"" + fmt(sx(s[0])) + "\" y1=\"" + fmt(sy(s[1])) + "\" x2=\"" + fmt(sx(s[2])) + "\" y2=\"" +
           fmt(sy(s[3])) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    const double lx = std::clamp(sx(s[2]) + 4, 2.0, std::max(2.0, w - 40));
    const double ly = std::clamp(sy(s[3]) - 4, 14.0, std::max(14.0, h - 4));
    svg += "<text x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">H_" + std::to_string(i) + "</text>\n";
  }
  for (const auto& p : concurrent_points(a, t)) {
    svg += "<circle cx=\"" + fmt(sx(p.x.get_d())) + "\" cy=\"" + fmt(sy(p.y.get_d())) +
           "\" r=\"4\" fill=\"red\"><title>" + p.lines.to_string(a.n() >= 10) + "</title></circle>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace discrarr
