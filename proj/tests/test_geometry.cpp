#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "sopf/error.hpp"
#include "sopf/geometry.hpp"

using namespace sopf;

namespace {

// Independent point-in-polygon oracle: winding number by signed angle sum.
bool winding_contains(const Polygon& poly, double x, double y) {
  double total = 0;
  const Eigen::Index n = poly.vertices.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ax = poly.vertices(i, 0) - x, ay = poly.vertices(i, 1) - y;
    const double bx = poly.vertices((i + 1) % n, 0) - x,
                 by = poly.vertices((i + 1) % n, 1) - y;
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return std::abs(total) > std::numbers::pi;
}

double koch_series_area(int level) {
  // A0 * (1 + (1/3) * sum_{i=1..level} (4/9)^(i-1)), triangle circumradius 1/2
  const double a0 = 3.0 * std::sqrt(3.0) / 16.0;
  double sum = 0;
  for (int i = 1; i <= level; ++i) sum += std::pow(4.0 / 9.0, i - 1);
  return a0 * (1 + sum / 3.0);
}

}  // namespace

TEST_CASE("koch polygon edge counts and area series") {
  for (int level = 0; level <= 4; ++level) {
    const Polygon poly = koch_polygon(level);
    CHECK(poly.edge_count() == 3 * static_cast<int>(std::pow(4, level)));
    CHECK(poly.area() == doctest::Approx(koch_series_area(level)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(koch_polygon(9), Error);
  CHECK_THROWS_AS(koch_polygon(-1), Error);
}

TEST_CASE("koch polygon is centered with a vertex up") {
  const Polygon poly = koch_polygon(0);
  REQUIRE(poly.edge_count() == 3);
  CHECK(poly.vertices.col(0).mean() == doctest::Approx(0.5));
  CHECK(poly.vertices.col(1).mean() == doctest::Approx(0.5));
  CHECK(poly.vertices.col(1).maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("contains matches the winding-number oracle") {
  const Polygon poly = koch_polygon(3);
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(-0.1, 1.1);
  int inside = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x = unit(gen), y = unit(gen);
    CHECK(poly.contains(x, y) == winding_contains(poly, x, y));
    inside += poly.contains(x, y);
  }
  CHECK(inside > 0);
}

TEST_CASE("interior samples are inside, seeded, and reproducible") {
  for (const Domain& domain :
       {Domain::koch(3), Domain::annulus(1.0, 2.0), Domain::hypercube(5, -1.0, 1.0)}) {
    const Eigen::MatrixXd a = sample_interior(domain, 200, 77);
    const Eigen::MatrixXd b = sample_interior(domain, 200, 77);
    const Eigen::MatrixXd c = sample_interior(domain, 200, 78);
    CHECK(a == b);
    CHECK(a != c);
    for (Eigen::Index i = 0; i < a.rows(); ++i) CHECK(domain.contains(a.row(i)));
  }
}

TEST_CASE("rejection sampling fails on vanishing volume fraction") {
  CHECK_THROWS_AS(sample_interior(Domain::annulus(0.99999, 1.0), 10, 1), Error);
}

TEST_CASE("box boundary faces, labels, and normals") {
  const Domain box = Domain::rectangle(2.0, 3.0);
  const BoundaryGroup all = sample_boundary(box, 100, 5);
  REQUIRE(all.normals.has_value());
  int on_face = 0;
  for (int i = 0; i < 100; ++i) {
    CHECK(all.normals->row(i).norm() == doctest::Approx(1.0));
    const double x = all.points(i, 0), y = all.points(i, 1);
    if (x == 0.0 || x == 2.0 || y == 0.0 || y == 3.0) ++on_face;
  }
  CHECK(on_face == 100);

  const BoundaryGroup left = sample_boundary(box, 10, 5, "x0_min");
  for (int i = 0; i < 10; ++i) {
    CHECK(left.points(i, 0) == 0.0);
    CHECK(left.normals->row(i)(0) == -1.0);
  }

  const BoundaryGroup three = sample_boundary(box, 30, 5, "x0_min,x0_max,x1_min");
  for (int i = 0; i < 30; ++i) {
    const double x = three.points(i, 0), y = three.points(i, 1);
    const bool ok = x == 0.0 || x == 2.0 || y == 0.0;
    CHECK(ok);
    CHECK(three.points(i, 1) < 3.0);
  }

  CHECK_THROWS_AS(sample_boundary(box, 5, 1, "x2_min"), Error);
  CHECK_THROWS_AS(sample_boundary(box, 5, 1, "bogus"), Error);
}

TEST_CASE("small budgets still cover every selected face") {
  // two samples on the 1D boundary must hit both endpoints
  const Domain interval = Domain::hypercube(1, -1.0, 1.0);
  const BoundaryGroup ends = sample_boundary(interval, 2, 9);
  std::set<double> seen = {ends.points(0, 0), ends.points(1, 0)};
  CHECK(seen == std::set<double>{-1.0, 1.0});
}

TEST_CASE("annulus boundary circles and radial normals") {
  const Domain ring = Domain::annulus(1.0, 2.0);
  const BoundaryGroup outer = sample_boundary(ring, 50, 3, "outer");
  const BoundaryGroup inner = sample_boundary(ring, 50, 3, "inner");
  for (int i = 0; i < 50; ++i) {
    CHECK(outer.points.row(i).norm() == doctest::Approx(2.0));
    CHECK(inner.points.row(i).norm() == doctest::Approx(1.0));
    // outward means radial on the outer circle, anti-radial on the inner
    CHECK(outer.normals->row(i).dot(outer.points.row(i) / 2.0) == doctest::Approx(1.0));
    CHECK(inner.normals->row(i).dot(inner.points.row(i)) == doctest::Approx(-1.0));
  }
}

TEST_CASE("koch boundary points lie on edges with outward normals") {
  const Domain domain = Domain::koch(2);
  const Polygon& poly = domain.polygon();
  const BoundaryGroup group = sample_boundary(domain, 200, 11);
  for (int i = 0; i < 200; ++i) {
    const Eigen::RowVector2d p = group.points.row(i);
    const Eigen::RowVector2d n = group.normals->row(i);
    CHECK(n.norm() == doctest::Approx(1.0));
    // stepping slightly outward leaves the polygon, inward stays inside
    const Eigen::RowVector2d out = p + 1e-7 * n;
    const Eigen::RowVector2d in = p - 1e-7 * n;
    CHECK(!poly.contains(out(0), out(1)));
    CHECK(poly.contains(in(0), in(1)));
  }
}

TEST_CASE("boundary sampling measures spread points across pieces") {
  // level-1 koch has 12 equal-length edges; 120 points -> 10 per edge
  const Domain domain = Domain::koch(1);
  const Polygon& poly = domain.polygon();
  const BoundaryGroup group = sample_boundary(domain, 120, 4);
  std::vector<int> per_edge(poly.edge_count(), 0);
  for (int i = 0; i < 120; ++i) {
    const Eigen::RowVector2d p = group.points.row(i);
    for (int e = 0; e < poly.edge_count(); ++e) {
      const Eigen::RowVector2d a = poly.vertices.row(e);
      const Eigen::RowVector2d b = poly.vertices.row((e + 1) % poly.edge_count());
      const Eigen::RowVector2d d = b - a;
      const double t = (p - a).dot(d) / d.squaredNorm();
      if (t >= -1e-12 && t <= 1 + 1e-12 && std::abs((p - a)(0) * d(1) - (p - a)(1) * d(0)) < 1e-12)
        ++per_edge[e];
    }
  }
  for (int e = 0; e < poly.edge_count(); ++e) CHECK(per_edge[e] == 10);
}
