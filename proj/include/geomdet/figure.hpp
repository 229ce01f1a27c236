#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomdet/channel.hpp"
#include "geomdet/embedding.hpp"

namespace geomdet {

enum class PointKind { symbol, observation, locus };
const char* to_string(PointKind kind);

struct LabeledPoint {
  std::string label;
  PointKind kind;
  EmbeddedPoint point;
};

struct PlanePoint {
  std::string label;
  PointKind kind;
  std::vector<double> coords;  // N - 1 plane coordinates
};

// Rows k = 1..N-1 are (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)): unit
// length, mutually orthogonal and orthogonal to (1, ..., 1). For N = 3 this is
// (1, -1, 0)/sqrt(2) and (1, 1, -2)/sqrt(6).
std::vector<std::vector<double>> plane_basis(std::size_t n);

std::vector<double> project_point(const EmbeddedPoint& point);
EmbeddedPoint unproject(std::span<const double> plane_coords);

struct PlaneProjection {
  std::size_t ambient_dimension = 0;
  std::vector<std::vector<double>> basis;
  std::vector<PlanePoint> points;
};

// All points must share one dimension.
PlaneProjection project(std::span<const LabeledPoint> points);

struct Segment {
  double x1, y1, x2, y2;
};

struct LocusStructure {
  std::size_t pieces = 0;             // maximal runs of constant slope in y
  std::size_t saturation_points = 0;  // pieces with zero slope
};

// ys ascending, one embedded point per y.
LocusStructure analyze_locus(std::span<const double> ys,
                             std::span<const EmbeddedPoint> points);

// Largest distance of any point from the line through the first and last
// point, divided by max(1, their separation).
double collinearity_residual(std::span<const std::vector<double>> plane_points);

struct FigureChecks {
  std::optional<double> triangle_side;
  std::optional<double> triangle_residual;
  std::optional<double> bisector_residual;
  std::optional<double> collinearity_residual;
  std::optional<LocusStructure> structure;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  std::string summary() const;
};

struct FigureDocument {
  PlaneProjection projection;
  std::vector<Segment> boundaries;  // MAP boundaries, plane coordinates
  std::vector<std::vector<double>> polyline;
  FigureChecks checks;

  bool has_svg() const { return projection.ambient_dimension == 3; }
  // SVG 1.1; comment, if given, is placed right after the XML declaration.
  std::string svg(const std::string& comment = "") const;
  std::string csv() const;
};

// Symbols, every observation and the MAP decision boundaries of a discrete
// channel.
FigureDocument figure_discrete(const DiscreteChannel& channel, const Prior& prior);

// Image of the observation line of an additive channel over y_grid. For the
// Laplace channel the symbol values inside the grid range are added to the
// grid so that every kink is sampled.
FigureDocument figure_locus(const Channel& channel, const Prior& prior,
                            std::span<const double> y_grid);

// count points evenly from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

// Fixed 9-significant-digit rendering used by every text output.
std::string format_number(double v);

}  // namespace geomdet
