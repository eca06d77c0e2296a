#include "sopf/geometry.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <random>

#include "sopf/error.hpp"

namespace sopf {

namespace {

constexpr double kBoundaryExclusion = 1e-12;

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double qx = ax + t * dx - px, qy = ay + t * dy - py;
  return std::hypot(qx, qy);
}

}  // namespace

double Polygon::area() const {
  double acc = 0;
  const Eigen::Index n = vertices.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    acc += vertices(i, 0) * vertices(j, 1) - vertices(j, 0) * vertices(i, 1);
  }
  return 0.5 * acc;
}

bool Polygon::contains(double x, double y) const {
  bool inside = false;
  const Eigen::Index n = vertices.rows();
  for (Eigen::Index i = 0, j = n - 1; i < n; j = i++) {
    const double xi = vertices(i, 0), yi = vertices(i, 1);
    const double xj = vertices(j, 0), yj = vertices(j, 1);
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
  }
  return inside;
}

void Polygon::write_csv(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open " + path);
  out << "x1,x2\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < vertices.rows(); ++i)
    out << vertices(i, 0) << "," << vertices(i, 1) << "\n";
}

Polygon koch_polygon(int level) {
  require(level >= 0, ErrorCode::invalid_argument, "koch level must be >= 0");
  require(level <= 8, ErrorCode::resource_limit, "koch level capped at 8");

  // Equilateral base triangle, CCW, vertex up.
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < 3; ++i) {
    const double theta = std::numbers::pi / 2 + i * 2 * std::numbers::pi / 3;
    pts.emplace_back(0.5 + 0.5 * std::cos(theta), 0.5 + 0.5 * std::sin(theta));
  }

  for (int iter = 0; iter < level; ++iter) {
    std::vector<Eigen::Vector2d> next;
    next.reserve(pts.size() * 4);
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d p = pts[i];
      const Eigen::Vector2d q = pts[(i + 1) % n];
      const Eigen::Vector2d d = (q - p) / 3.0;
      const Eigen::Vector2d a = p + d;
      const Eigen::Vector2d b = p + 2.0 * d;
      // apex of the outward equilateral bump; outward = right of a CCW edge
      const Eigen::Vector2d mid = 0.5 * (a + b);
      const Eigen::Vector2d out(d.y(), -d.x());
      const Eigen::Vector2d c = mid + (std::sqrt(3.0) / 2.0) * out;
      next.push_back(p);
      next.push_back(a);
      next.push_back(c);
      next.push_back(b);
    }
    pts = std::move(next);
  }

  Polygon poly;
  poly.vertices.resize(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) poly.vertices.row(static_cast<Eigen::Index>(i)) = pts[i];
  return poly;
}

Domain Domain::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  require(lo.size() == hi.size() && lo.size() >= 1, ErrorCode::invalid_argument,
          "box bounds must have equal positive dimension");
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    require(lo(i) < hi(i), ErrorCode::invalid_argument, "box requires lo < hi componentwise");
  Domain d;
  d.kind = Kind::box;
  d.dimension = static_cast<int>(lo.size());
  d.lo = lo;
  d.hi = hi;
  return d;
}

Domain Domain::rectangle(double a, double b) {
  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << a, b;
  return box(lo, hi);
}

Domain Domain::hypercube(int d, double lo, double hi) {
  return box(Eigen::VectorXd::Constant(d, lo), Eigen::VectorXd::Constant(d, hi));
}

Domain Domain::annulus(double inner, double outer) {
  require(0 < inner && inner < outer, ErrorCode::invalid_argument,
          "annulus requires 0 < inner < outer");
  Domain d;
  d.kind = Kind::annulus;
  d.dimension = 2;
  d.inner = inner;
  d.outer = outer;
  return d;
}

Domain Domain::koch(int level) {
  Domain d;
  d.kind = Kind::koch;
  d.dimension = 2;
  d.koch_level = level;
  d.polygon_ = std::make_shared<Polygon>(koch_polygon(level));
  return d;
}

const Polygon& Domain::polygon() const {
  require(kind == Kind::koch && polygon_ != nullptr, ErrorCode::invalid_argument,
          "polygon is defined for koch domains only");
  return *polygon_;
}

bool Domain::contains(const Eigen::VectorXd& point) const {
  require(point.size() == dimension, ErrorCode::invalid_argument,
          "point dimension mismatch");
  switch (kind) {
    case Kind::box:
      for (Eigen::Index i = 0; i < point.size(); ++i)
        if (point(i) <= lo(i) || point(i) >= hi(i)) return false;
      return true;
    case Kind::annulus: {
      const double r = point.norm();
      return inner < r && r < outer;
    }
    case Kind::koch:
      return polygon().contains(point(0), point(1));
  }
  return false;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> Domain::bounding_box() const {
  switch (kind) {
    case Kind::box: return {lo, hi};
    case Kind::annulus:
      return {Eigen::Vector2d(-outer, -outer), Eigen::Vector2d(outer, outer)};
    case Kind::koch: {
      const auto& v = polygon().vertices;
      return {v.colwise().minCoeff().transpose(), v.colwise().maxCoeff().transpose()};
    }
  }
  fail(ErrorCode::invalid_argument, "bad domain kind");
}

namespace {

double distance_to_boundary(const Domain& domain, const Eigen::VectorXd& p) {
  switch (domain.kind) {
    case Domain::Kind::box: {
      double d = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < p.size(); ++i)
        d = std::min({d, p(i) - domain.lo(i), domain.hi(i) - p(i)});
      return d;
    }
    case Domain::Kind::annulus: {
      const double r = p.norm();
      return std::min(r - domain.inner, domain.outer - r);
    }
    case Domain::Kind::koch: {
      const auto& v = domain.polygon().vertices;
      const Eigen::Index n = v.rows();
      double d = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = (i + 1) % n;
        d = std::min(d, segment_distance(p(0), p(1), v(i, 0), v(i, 1), v(j, 0), v(j, 1)));
      }
      return d;
    }
  }
  return 0;
}

}  // namespace

Eigen::MatrixXd sample_interior(const Domain& domain, int n, std::uint64_t seed) {
  require(n >= 1, ErrorCode::invalid_argument, "sample count must be >= 1");
  const auto [blo, bhi] = domain.bounding_box();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Eigen::MatrixXd points(n, domain.dimension);
  Eigen::VectorXd candidate(domain.dimension);
  long attempts = 0, accepted = 0;
  while (accepted < n) {
    for (Eigen::Index j = 0; j < candidate.size(); ++j)
      candidate(j) = blo(j) + unit(gen) * (bhi(j) - blo(j));
    ++attempts;
    if (domain.contains(candidate) &&
        distance_to_boundary(domain, candidate) > kBoundaryExclusion) {
      points.row(accepted++) = candidate;
    }
    if (attempts >= 1000 && static_cast<double>(accepted) / attempts < 1e-3)
      fail(ErrorCode::sampling_failure, "interior rejection acceptance rate below 1e-3");
  }
  return points;
}

namespace {

struct BoundaryPiece {
  double measure;
  // axis/side for boxes, circle selector for annulus, segment for koch
  std::function<void(double u, std::mt19937_64& gen, Eigen::RowVectorXd& point,
                     Eigen::RowVectorXd& normal)>
      place;
};

std::vector<std::string> split_labels(const std::string& subset) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : subset) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

BoundaryGroup sample_boundary(const Domain& domain, int n, std::uint64_t seed,
                              const std::string& subset) {
  require(n >= 1, ErrorCode::invalid_argument, "sample count must be >= 1");
  std::vector<BoundaryPiece> pieces;
  const int k = domain.dimension;

  switch (domain.kind) {
    case Domain::Kind::box: {
      const std::vector<std::string> wanted = split_labels(subset);
      std::size_t matched = 0;
      for (int axis = 0; axis < k; ++axis) {
        for (int side = 0; side < 2; ++side) {
          const std::string label =
              "x" + std::to_string(axis) + (side == 0 ? "_min" : "_max");
          if (!wanted.empty()) {
            if (std::find(wanted.begin(), wanted.end(), label) == wanted.end()) continue;
            ++matched;
          }
          double measure = 1.0;
          for (int j = 0; j < k; ++j)
            if (j != axis) measure *= domain.hi(j) - domain.lo(j);
          const Domain& d = domain;
          pieces.push_back({measure, [axis, side, &d](double, std::mt19937_64& gen,
                                                      Eigen::RowVectorXd& p,
                                                      Eigen::RowVectorXd& nrm) {
                              std::uniform_real_distribution<double> unit(0.0, 1.0);
                              for (Eigen::Index j = 0; j < p.size(); ++j)
                                p(j) = d.lo(j) + unit(gen) * (d.hi(j) - d.lo(j));
                              p(axis) = side == 0 ? d.lo(axis) : d.hi(axis);
                              nrm.setZero();
                              nrm(axis) = side == 0 ? -1.0 : 1.0;
                            }});
        }
      }
      if (!subset.empty())
        require(matched == wanted.size(), ErrorCode::invalid_argument,
                "unknown box face label in: " + subset);
      break;
    }
    case Domain::Kind::annulus: {
      const bool outer = subset.empty() || subset == "outer";
      const bool inner = subset.empty() || subset == "inner";
      require(outer || inner || subset.empty(), ErrorCode::invalid_argument,
              "unknown annulus label: " + subset);
      require(subset.empty() || subset == "outer" || subset == "inner",
              ErrorCode::invalid_argument, "unknown annulus label: " + subset);
      auto circle = [&](double radius, double sign) {
        pieces.push_back({2 * std::numbers::pi * radius,
                          [radius, sign](double u, std::mt19937_64&,
                                         Eigen::RowVectorXd& p,
                                         Eigen::RowVectorXd& nrm) {
                            const double theta = 2 * std::numbers::pi * u;
                            p(0) = radius * std::cos(theta);
                            p(1) = radius * std::sin(theta);
                            nrm(0) = sign * std::cos(theta);
                            nrm(1) = sign * std::sin(theta);
                          }});
      };
      if (outer) circle(domain.outer, 1.0);
      if (inner) circle(domain.inner, -1.0);
      break;
    }
    case Domain::Kind::koch: {
      require(subset.empty(), ErrorCode::invalid_argument,
              "koch boundary has a single component");
      const auto& v = domain.polygon().vertices;
      const Eigen::Index m = v.rows();
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Vector2d a = v.row(i), b = v.row((i + 1) % m);
        const Eigen::Vector2d d = b - a;
        const double len = d.norm();
        const Eigen::Vector2d nrm = Eigen::Vector2d(d.y(), -d.x()) / len;
        pieces.push_back({len, [a, d, nrm](double u, std::mt19937_64&,
                                           Eigen::RowVectorXd& p,
                                           Eigen::RowVectorXd& no) {
                            p = (a + u * d).transpose();
                            no = nrm.transpose();
                          }});
      }
      break;
    }
  }
  require(!pieces.empty(), ErrorCode::invalid_argument, "empty boundary subset: " + subset);

  double total = 0;
  for (const auto& piece : pieces) total += piece.measure;

  // stratified allocation: quotas proportional to measure (largest remainder),
  // so small point budgets still touch every piece
  std::vector<int> quota(pieces.size(), 0);
  {
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const double share = n * pieces[i].measure / total;
      quota[i] = static_cast<int>(share);
      assigned += quota[i];
      remainders.push_back({share - quota[i], i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int r = 0; r < n - assigned; ++r) ++quota[remainders[r % remainders.size()].second];
  }

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BoundaryGroup group;
  group.label = subset;
  group.points.resize(n, k);
  Eigen::MatrixXd normals(n, k);
  Eigen::RowVectorXd point(k), normal(k);
  int s = 0;
  for (std::size_t idx = 0; idx < pieces.size(); ++idx) {
    for (int q = 0; q < quota[idx]; ++q, ++s) {
      pieces[idx].place(unit(gen), gen, point, normal);
      group.points.row(s) = point;
      normals.row(s) = normal;
    }
  }
  group.normals = std::move(normals);
  return group;
}

}  // namespace sopf
