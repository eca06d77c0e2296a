#ifndef SOPF_GEOMETRY_HPP
#define SOPF_GEOMETRY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sopf {

/// Closed 2D polygon, counter-clockwise vertex order.
struct Polygon {
  Eigen::MatrixXd vertices;  // V x 2

  int edge_count() const { return static_cast<int>(vertices.rows()); }
  double area() const;  // shoelace
  bool contains(double x, double y) const;  // even-odd ray crossing
  void write_csv(const std::string& path) const;  // columns x1,x2
};

/// Koch snowflake boundary after `level` refinements; base triangle is
/// equilateral, centered at (0.5, 0.5), circumradius 0.5, one vertex up.
Polygon koch_polygon(int level);

struct Domain {
  enum class Kind { box, annulus, koch };

  Kind kind;
  int dimension;
  Eigen::VectorXd lo, hi;      // box
  double inner = 0, outer = 0; // annulus radii
  int koch_level = 0;

  static Domain box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static Domain rectangle(double a, double b);  // [0,a] x [0,b]
  static Domain hypercube(int d, double lo, double hi);
  static Domain annulus(double inner, double outer);
  static Domain koch(int level);

  bool contains(const Eigen::VectorXd& point) const;
  /// Axis-aligned bounding box (lo, hi).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> bounding_box() const;

  const Polygon& polygon() const;  // koch only

private:
  mutable std::shared_ptr<Polygon> polygon_;  // lazily built for koch
};

struct BoundaryGroup {
  Eigen::MatrixXd points;                  // P x k
  std::optional<Eigen::MatrixXd> normals;  // unit outward, P x k
  std::string label;
};

/// Seeded i.i.d. uniform interior samples (rejection sampling against the
/// bounding box for koch/annulus); samples within 1e-12 of the boundary are
/// rejected and redrawn.
Eigen::MatrixXd sample_interior(const Domain& domain, int n, std::uint64_t seed);

/// Seeded samples uniform by arc length / face measure over the selected
/// boundary subset. Labels: annulus "outer"/"inner"; box faces "x<j>_min" /
/// "x<j>_max", comma-separated unions allowed; empty = whole boundary.
BoundaryGroup sample_boundary(const Domain& domain, int n, std::uint64_t seed,
                              const std::string& subset = "");

}  // namespace sopf

#endif
