#pragma once

// SVG 1.1 figures: planar arrangements (n = 2) with the bounded complex
// shaded, and chamber diagrams in k* (d = 2).

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/wallcross.hpp"

namespace hypertoric {

namespace detail {

struct Point2 {
  double x = 0, y = 0;
};

class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax, double size = 480)
      : xmin_(xmin), ymin_(ymin), size_(size), scale_(size / std::max(xmax - xmin, ymax - ymin)) {}

  [[nodiscard]] Point2 map(Point2 p) const { return {(p.x - xmin_) * scale_, size_ - (p.y - ymin_) * scale_}; }

  void line(Point2 a, Point2 b, const std::string& style) {
    a = map(a);
    b = map(b);
    body_ << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(b.y)
          << "\" " << style << "/>\n";
  }

  void polygon(const std::vector<Point2>& pts, const std::string& style) {
    body_ << "  <polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point2 q = map(pts[i]);
      body_ << (i ? " " : "") << fmt(q.x) << "," << fmt(q.y);
    }
    body_ << "\" " << style << "/>\n";
  }

  void circle(Point2 c, double r, const std::string& style) {
    c = map(c);
    body_ << "  <circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\"" << fmt(r) << "\" " << style << "/>\n";
  }

  void text(Point2 p, const std::string& label) {
    p = map(p);
    body_ << "  <text x=\"" << fmt(p.x) << "\" y=\"" << fmt(p.y)
          << "\" font-family=\"serif\" font-size=\"14\" text-anchor=\"middle\">" << label << "</text>\n";
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(size_) << "\" height=\""
       << fmt(size_) << "\" viewBox=\"0 0 " << fmt(size_) << " " << fmt(size_) << "\">\n"
       << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  static std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
  }

  double xmin_, ymin_, size_, scale_;
  std::ostringstream body_;
};

// Endpoints of {p : a·p + c = 0} inside the box, if it crosses it.
inline std::optional<std::pair<Point2, Point2>> clip_line(double a0, double a1, double c, double xmin, double xmax,
                                                          double ymin, double ymax) {
  std::vector<Point2> hits;
  auto add = [&](double x, double y) {
    if (x >= xmin - 1e-9 && x <= xmax + 1e-9 && y >= ymin - 1e-9 && y <= ymax + 1e-9) hits.push_back({x, y});
  };
  if (a1 != 0) {
    add(xmin, -(c + a0 * xmin) / a1);
    add(xmax, -(c + a0 * xmax) / a1);
  }
  if (a0 != 0) {
    add(-(c + a1 * ymin) / a0, ymin);
    add(-(c + a1 * ymax) / a0, ymax);
  }
  if (hits.size() < 2) return std::nullopt;
  Point2 a = hits[0], b = hits[0];
  double best = -1;
  for (const auto& p : hits)
    for (const auto& q : hits) {
      const double dist = std::hypot(p.x - q.x, p.y - q.y);
      if (dist > best) {
        best = dist;
        a = p;
        b = q;
      }
    }
  return std::make_pair(a, b);
}

inline Point2 to_point(const RatVector& v) { return {v[0].convert_to<double>(), v[1].convert_to<double>()}; }

}  // namespace detail

inline std::string arrangement_svg(const Arrangement& arr, const std::vector<Face>& faces) {
  if (arr.dimension != 2) throw PreconditionError("figure requires d=2 or n=2");
  using detail::Point2;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& f : faces) {
    if (f.dim != 0) continue;
    const Point2 p = detail::to_point(f.witness);
    if (first) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      first = false;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double pad = std::max({1.0, (xmax - xmin) * 0.4, (ymax - ymin) * 0.4});
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  const double side = std::max(xmax - xmin, ymax - ymin);
  xmax = xmin + side;
  ymax = ymin + side;
  detail::SvgCanvas canvas(xmin, xmax, ymin, ymax);

  for (const auto& f : faces) {
    if (!f.bounded || f.dim != 2) continue;
    std::vector<Point2> pts;
    for (const auto& g : faces)
      if (g.dim == 0 && g.sign.face_of(f.sign)) pts.push_back(detail::to_point(g.witness));
    Point2 c;
    for (const auto& p : pts) {
      c.x += p.x / static_cast<double>(pts.size());
      c.y += p.y / static_cast<double>(pts.size());
    }
    std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
      return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
    });
    canvas.polygon(pts, "fill=\"#c8d8f0\" stroke=\"none\"");
  }
  for (const auto& f : faces)
    if (f.bounded && f.dim == 1) {
      std::vector<Point2> ends;
      for (const auto& g : faces)
        if (g.dim == 0 && g.sign.face_of(f.sign)) ends.push_back(detail::to_point(g.witness));
      if (ends.size() == 2) canvas.line(ends[0], ends[1], "stroke=\"#1f4e9c\" stroke-width=\"3\"");
    }
  for (const auto& H : arr.hyperplanes) {
    if (H.degenerate()) continue;
    const auto seg = detail::clip_line(H.normal[0].convert_to<double>(), H.normal[1].convert_to<double>(),
                                       H.offset.convert_to<double>(), xmin, xmax, ymin, ymax);
    if (!seg) continue;
    canvas.line(seg->first, seg->second, "stroke=\"black\" stroke-width=\"1\"");
    const Point2 at{seg->first.x + 0.08 * (seg->second.x - seg->first.x),
                    seg->first.y + 0.08 * (seg->second.y - seg->first.y)};
    canvas.text(at, "F" + std::to_string(H.index + 1));
  }
  for (const auto& f : faces)
    if (f.dim == 0) canvas.circle(detail::to_point(f.witness), 3, "fill=\"black\"");
  return canvas.str();
}

inline std::string chamber_svg(const TorusSpec& spec, const std::vector<Wall>& walls, const ChamberStructure& cs) {
  if (spec.rank() != 2) throw PreconditionError("figure requires d=2 or n=2");
  using detail::Point2;
  detail::SvgCanvas canvas(-1.2, 1.2, -1.2, 1.2);
  for (auto id : cs.active) {
    const auto& y = walls[id].normal;
    double dx = -y[1].convert_to<double>(), dy = y[0].convert_to<double>();
    const double len = std::hypot(dx, dy);
    dx /= len;
    dy /= len;
    canvas.line({-dx, -dy}, {dx, dy}, "stroke=\"black\" stroke-width=\"1.5\"");
    canvas.text({1.1 * dx, 1.1 * dy}, "W" + std::to_string(id + 1));
  }
  for (std::size_t k = 0; k < cs.chambers.size(); ++k) {
    const auto& w = cs.chambers[k].witness;
    double x = w[0].convert_to<double>(), y = w[1].convert_to<double>();
    const double len = std::hypot(x, y);
    if (len == 0) continue;
    canvas.text({0.6 * x / len, 0.6 * y / len}, cs.chambers[k].sign.str());
  }
  return canvas.str();
}

}  // namespace hypertoric
