#include "geomdet/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "geomdet/detection.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct Box {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

// Square view box around everything plotted, with a 10% margin.
Box view_box(const FigureDocument& doc) {
  Box b;
  for (const auto& p : doc.projection.points) b.add(p.coords[0], p.coords[1]);
  for (const auto& p : doc.polyline) b.add(p[0], p[1]);
  const double cx = 0.5 * (b.xmin + b.xmax);
  const double cy = 0.5 * (b.ymin + b.ymax);
  double half = 0.5 * std::max(b.xmax - b.xmin, b.ymax - b.ymin);
  if (!(half > 0.0)) half = 1.0;
  half *= 1.1;
  return {cx - half, cx + half, cy - half, cy + half};
}

// Clips the ray origin + t dir, t >= 0, to the box.
Segment clip_ray(const Box& box, double ox, double oy, double dx, double dy) {
  double t = INFINITY;
  if (dx > 0) t = std::min(t, (box.xmax - ox) / dx);
  if (dx < 0) t = std::min(t, (box.xmin - ox) / dx);
  if (dy > 0) t = std::min(t, (box.ymax - oy) / dy);
  if (dy < 0) t = std::min(t, (box.ymin - oy) / dy);
  if (!std::isfinite(t) || t < 0) t = 0;
  return {ox, oy, ox + t * dx, oy + t * dy};
}

std::string xml_escape(const std::string& text) {
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

LabeledPoint symbol_point(const Alphabet& alphabet, std::size_t i) {
  return {alphabet.label(i), PointKind::symbol, embed_symbol(alphabet, i)};
}

void check_triangle(const std::vector<LabeledPoint>& points, FigureChecks& checks) {
  std::vector<const EmbeddedPoint*> symbols;
  for (const auto& p : points)
    if (p.kind == PointKind::symbol) symbols.push_back(&p.point);
  if (symbols.size() < 2) return;
  const double edge = simplex_edge_length(symbols.front()->dimension());
  double worst = 0.0;
  double side = 0.0;
  for (std::size_t a = 0; a < symbols.size(); ++a)
    for (std::size_t b = a + 1; b < symbols.size(); ++b) {
      const double d = std::sqrt(
          squared_distance(project_point(*symbols[a]), project_point(*symbols[b])));
      side = d;
      worst = std::max(worst, std::abs(d - edge));
    }
  checks.triangle_side = side;
  checks.triangle_residual = worst;
  if (worst > tol::projection)
    checks.failures.push_back("symbol points are not equidistant");
}

}  // namespace

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::symbol:
      return "symbol";
    case PointKind::observation:
      return "observation";
    case PointKind::locus:
      return "locus";
  }
  return "?";
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::vector<double>> plane_basis(std::size_t n) {
  if (n < 2) throw std::invalid_argument("plane basis needs N >= 2");
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double scale = 1.0 / std::sqrt(kd * (kd + 1.0));
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) row[i] = scale;
    row[k] = -kd * scale;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> project_point(const EmbeddedPoint& point) {
  const auto basis = plane_basis(point.dimension());
  std::vector<double> out(basis.size(), 0.0);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t i = 0; i < point.dimension(); ++i) out[r] += basis[r][i] * point[i];
  return out;
}

EmbeddedPoint unproject(std::span<const double> plane_coords) {
  const std::size_t n = plane_coords.size() + 1;
  const auto basis = plane_basis(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) out[i] += plane_coords[r] * basis[r][i];
  return EmbeddedPoint(std::move(out));
}

PlaneProjection project(std::span<const LabeledPoint> points) {
  PlaneProjection out;
  if (points.empty()) return out;
  out.ambient_dimension = points.front().point.dimension();
  out.basis = plane_basis(out.ambient_dimension);
  for (const auto& p : points) {
    if (p.point.dimension() != out.ambient_dimension)
      throw std::invalid_argument("points of different dimensions");
    out.points.push_back({p.label, p.kind, project_point(p.point)});
  }
  return out;
}

LocusStructure analyze_locus(std::span<const double> ys,
                             std::span<const EmbeddedPoint> points) {
  if (ys.size() != points.size()) throw std::invalid_argument("one point per y");
  LocusStructure out;
  if (ys.size() < 2) return out;

  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, norm(p.coords()));

  std::vector<double> previous;
  bool previous_flat = false;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    const double dy = ys[k + 1] - ys[k];
    std::vector<double> slope(points[k].dimension());
    for (std::size_t i = 0; i < slope.size(); ++i)
      slope[i] = (points[k + 1][i] - points[k][i]) / dy;
    const double slope_norm = norm(slope);
    const bool flat = slope_norm * dy <= tol::slope * scale;
    bool same = false;
    if (!previous.empty()) {
      if (flat && previous_flat) {
        same = true;
      } else if (!flat && !previous_flat) {
        double diff = 0.0;
        for (std::size_t i = 0; i < slope.size(); ++i)
          diff = std::max(diff, std::abs(slope[i] - previous[i]));
        same = diff <= tol::slope * std::max({1.0, slope_norm, norm(previous)});
      }
    }
    if (!same) {
      ++out.pieces;
      if (flat) ++out.saturation_points;
    }
    previous = std::move(slope);
    previous_flat = flat;
  }
  return out;
}

double collinearity_residual(std::span<const std::vector<double>> plane_points) {
  if (plane_points.size() < 3) return 0.0;
  const auto& a = plane_points.front();
  const auto& b = plane_points.back();
  std::vector<double> dir(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) dir[i] = b[i] - a[i];
  const double length = norm(dir);
  if (length == 0.0) return 0.0;
  for (double& d : dir) d /= length;
  double worst = 0.0;
  for (const auto& p : plane_points) {
    std::vector<double> rel(p.size());
    double along = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      rel[i] = p[i] - a[i];
      along += rel[i] * dir[i];
    }
    for (std::size_t i = 0; i < p.size(); ++i) rel[i] -= along * dir[i];
    worst = std::max(worst, norm(rel));
  }
  return worst / std::max(1.0, length);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("empty grid");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double span = hi - lo;
  const double steps = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = lo + span * static_cast<double>(k) / steps;
  out.back() = hi;
  return out;
}

std::string FigureChecks::summary() const {
  std::ostringstream out;
  if (triangle_side)
    out << "triangle side: " << format_number(*triangle_side)
        << " (residual " << format_number(triangle_residual.value_or(0.0)) << ")\n";
  if (bisector_residual)
    out << "tie observations off bisector by at most "
        << format_number(*bisector_residual) << "\n";
  if (collinearity_residual)
    out << "collinearity residual: " << format_number(*collinearity_residual) << "\n";
  if (structure)
    out << "pieces: " << structure->pieces
        << ", saturation points: " << structure->saturation_points << "\n";
  for (const auto& f : failures) out << "FAILED: " << f << "\n";
  return out.str();
}

FigureDocument figure_discrete(const DiscreteChannel& channel, const Prior& prior) {
  const Channel wrapped = channel;
  const std::size_t n = channel.alphabet.size();
  std::vector<LabeledPoint> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back(symbol_point(channel.alphabet, i));

  FigureDocument doc;
  const auto vertices = simplex_vertices(n);
  double bisector = 0.0;
  bool any_tie = false;
  for (std::size_t k = 0; k < channel.observation_count(); ++k) {
    const EmbeddedPoint y = embed_channel_observation(wrapped, prior, Observation{k});
    const Decision d = decide_point(y);
    if (d.tie) {
      any_tie = true;
      // Signed distance to the perpendicular bisector of each tied pair.
      for (std::size_t a = 0; a < d.tied.size(); ++a)
        for (std::size_t b = a + 1; b < d.tied.size(); ++b) {
          const auto xa = vertices[d.tied[a]].coords();
          const auto xb = vertices[d.tied[b]].coords();
          double dot = 0.0, gap = 0.0, offset = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double diff = xa[i] - xb[i];
            dot += y[i] * diff;
            gap += diff * diff;
            offset += 0.5 * (xa[i] * xa[i] - xb[i] * xb[i]);
          }
          bisector = std::max(bisector, std::abs(dot - offset) / std::sqrt(gap));
        }
    }
    points.push_back({channel.observations[k], PointKind::observation, y});
  }
  doc.projection = project(points);
  check_triangle(points, doc.checks);
  if (any_tie) {
    doc.checks.bisector_residual = bisector;
    if (bisector > tol::projection)
      doc.checks.failures.push_back("a tied observation is off its bisector");
  }

  if (n == 3) {
    // The three MAP boundaries are rays from the common circumcentre (the
    // origin), each perpendicular to one edge and pointing away from the
    // opposite vertex.
    const Box box = view_box(doc);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        const std::size_t c = 3 - a - b;
        const auto& pa = doc.projection.points[a].coords;
        const auto& pb = doc.projection.points[b].coords;
        const auto& pc = doc.projection.points[c].coords;
        double dx = -(pb[1] - pa[1]);
        double dy = pb[0] - pa[0];
        if (dx * pc[0] + dy * pc[1] > 0) {
          dx = -dx;
          dy = -dy;
        }
        doc.boundaries.push_back(clip_ray(box, 0.0, 0.0, dx, dy));
      }
  }
  return doc;
}

FigureDocument figure_locus(const Channel& channel, const Prior& prior,
                            std::span<const double> y_grid) {
  if (std::holds_alternative<DiscreteChannel>(channel))
    throw std::invalid_argument("locus figures need an additive channel");
  if (y_grid.empty()) throw std::invalid_argument("empty y grid");
  for (double y : y_grid)
    if (!std::isfinite(y)) throw std::invalid_argument("non-finite y in grid");

  std::vector<double> ys(y_grid.begin(), y_grid.end());
  const auto* laplace = std::get_if<LaplaceChannel>(&channel);
  std::sort(ys.begin(), ys.end());
  const double lo = ys.front();
  const double hi = ys.back();
  if (laplace)
    for (double v : laplace->values)
      if (v > lo && v < hi) ys.push_back(v);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const Alphabet& alphabet = alphabet_of(channel);
  const std::size_t n = alphabet.size();
  std::vector<LabeledPoint> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back(symbol_point(alphabet, i));
  std::vector<EmbeddedPoint> locus;
  for (double y : ys) {
    locus.push_back(embed_channel_observation(channel, prior, Observation{y}));
    points.push_back({"y=" + format_number(y), PointKind::locus, locus.back()});
  }

  FigureDocument doc;
  doc.projection = project(points);
  for (std::size_t k = n; k < doc.projection.points.size(); ++k)
    doc.polyline.push_back(doc.projection.points[k].coords);
  if (doc.polyline.size() == 1) doc.polyline.clear();
  check_triangle(points, doc.checks);

  const LocusStructure structure = analyze_locus(ys, locus);
  doc.checks.structure = structure;
  std::vector<std::vector<double>> plane;
  for (std::size_t k = n; k < doc.projection.points.size(); ++k)
    plane.push_back(doc.projection.points[k].coords);

  if (laplace) {
    std::vector<double> values = laplace->values;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::size_t inside = 0;
    for (double v : values) inside += (v > lo && v < hi);
    const std::size_t expected_saturation =
        (lo < values.front() ? 1u : 0u) + (hi > values.back() ? 1u : 0u);
    if (ys.size() > 1 && structure.pieces != inside + 1)
      doc.checks.failures.push_back("expected " + std::to_string(inside + 1) +
                                    " linear pieces, found " +
                                    std::to_string(structure.pieces));
    if (ys.size() > 1 && structure.saturation_points != expected_saturation)
      doc.checks.failures.push_back("expected " + std::to_string(expected_saturation) +
                                    " saturation points, found " +
                                    std::to_string(structure.saturation_points));
  } else {
    const double residual = collinearity_residual(plane);
    doc.checks.collinearity_residual = residual;
    if (residual > tol::projection)
      doc.checks.failures.push_back("Gaussian locus is not a straight line");
  }
  return doc;
}

std::string FigureDocument::csv() const {
  std::ostringstream out;
  const std::size_t dims = projection.ambient_dimension - 1;
  out << "label,kind";
  if (dims == 2) {
    out << ",u,v";
  } else {
    for (std::size_t d = 0; d < dims; ++d) out << ",c" << d + 1;
  }
  out << "\n";
  for (const auto& p : projection.points) {
    out << p.label << "," << to_string(p.kind);
    for (double c : p.coords) out << "," << format_number(c);
    out << "\n";
  }
  return out.str();
}

std::string FigureDocument::svg(const std::string& comment) const {
  if (!has_svg()) throw std::logic_error("SVG output needs a three-symbol alphabet");
  const Box box = view_box(*this);
  const double size = box.xmax - box.xmin;
  const double radius = 0.01 * size;
  const double font = 0.03 * size;
  const double stroke = 0.003 * size;
  // SVG y grows downwards; plane v is flipped.
  auto X = [](double u) { return format_number(u); };
  auto Y = [](double v) { return format_number(-v); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!comment.empty()) out << "<!-- " << comment << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" "
         "height=\"600\" viewBox=\""
      << X(box.xmin) << " " << Y(box.ymax) << " " << format_number(size) << " "
      << format_number(box.ymax - box.ymin) << "\">\n";
  out << "<rect x=\"" << X(box.xmin) << "\" y=\"" << Y(box.ymax) << "\" width=\""
      << format_number(size) << "\" height=\"" << format_number(box.ymax - box.ymin)
      << "\" fill=\"white\"/>\n";
  for (const Segment& s : boundaries)
    out << "<line x1=\"" << X(s.x1) << "\" y1=\"" << Y(s.y1) << "\" x2=\"" << X(s.x2)
        << "\" y2=\"" << Y(s.y2) << "\" stroke=\"gray\" stroke-width=\""
        << format_number(stroke) << "\" stroke-dasharray=\"" << format_number(4 * stroke)
        << "\"/>\n";
  if (!polyline.empty()) {
    out << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\""
        << format_number(stroke) << "\" points=\"";
    for (std::size_t k = 0; k < polyline.size(); ++k)
      out << (k ? " " : "") << X(polyline[k][0]) << "," << Y(polyline[k][1]);
    out << "\"/>\n";
  }
  for (const auto& p : projection.points) {
    if (p.kind == PointKind::locus && !polyline.empty()) continue;
    const char* colour = p.kind == PointKind::symbol ? "black" : "red";
    out << "<circle cx=\"" << X(p.coords[0]) << "\" cy=\"" << Y(p.coords[1])
        << "\" r=\"" << format_number(radius) << "\" fill=\"" << colour << "\"/>\n";
    if (p.kind != PointKind::locus)
      out << "<text x=\"" << X(p.coords[0] + radius) << "\" y=\""
          << Y(p.coords[1] + radius) << "\" font-size=\"" << format_number(font)
          << "\" fill=\"" << colour << "\">" << xml_escape(p.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace geomdet
