#include "flipforge/kernel.hpp"

#include <cctype>

#include "flipforge/error.hpp"

namespace flipforge {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num, true) || (slash != std::string_view::npos && !valid_integer(den, false))) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Rat r;
  r.get_num() = mpz_class(n, 10);
  if (slash == std::string_view::npos) {
    r.get_den() = 1;
  } else {
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
    r.get_den() = d;
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

Sign sign_of(const Rat& r) {
  int s = sgn(r);
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

Rat orient2d_det(const Point2& a, const Point2& b, const Point2& c) {
  Rat r = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return r;
}

Sign orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return sign_of(orient2d_det(a, b, c));
}

Rat orient3d_det(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  Rat bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
  Rat cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
  Rat dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
  Rat r = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
  return r;
}

Sign orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sign_of(orient3d_det(a, b, c, d));
}

std::array<Rat, 4> lifted_det_coefficients(const Point2& a, const Point2& b, const Point2& c,
                                           const Point2& d) {
  // Cofactor expansion along the height column.
  Rat bx = b.x - a.x, by = b.y - a.y;
  Rat cx = c.x - a.x, cy = c.y - a.y;
  Rat dx = d.x - a.x, dy = d.y - a.y;
  Rat kb = cx * dy - cy * dx;
  Rat kc = -(bx * dy - by * dx);
  Rat kd = bx * cy - by * cx;
  Rat ka = -(kb + kc + kd);
  return {ka, kb, kc, kd};
}

Sign orient3d_lifted(const Point2& a, const Rat& ha, const Point2& b, const Rat& hb,
                     const Point2& c, const Rat& hc, const Point2& d, const Rat& hd) {
  Sign base = orient2d(a, b, c);
  if (base == Sign::Zero) throw Error(ErrorCode::DegenerateBase, "orient3d_lifted: a, b, c collinear");
  auto k = lifted_det_coefficients(a, b, c, d);
  Rat det = k[0] * ha + k[1] * hb + k[2] * hc + k[3] * hd;
  return sign_of(det) * base;
}

Location point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  Sign base = orient2d(a, b, c);
  if (base == Sign::Zero) throw Error(ErrorCode::DegenerateBase, "point_in_triangle: degenerate triangle");
  std::array<Sign, 3> s = {orient2d(a, b, p) * base, orient2d(b, c, p) * base,
                           orient2d(c, a, p) * base};
  int zeros = 0;
  for (Sign v : s) {
    if (v == Sign::Negative) return {Location::Kind::Outside, -1};
    if (v == Sign::Zero) ++zeros;
  }
  if (zeros == 0) return {Location::Kind::Inside, -1};
  if (zeros == 1) {
    for (int i = 0; i < 3; ++i) {
      if (s[i] == Sign::Zero) return {Location::Kind::OnEdge, i};
    }
  }
  // Two zero signs: p sits on the vertex shared by those edges.
  if (s[0] != Sign::Zero) return {Location::Kind::OnVertex, 2};
  if (s[1] != Sign::Zero) return {Location::Kind::OnVertex, 0};
  return {Location::Kind::OnVertex, 1};
}

bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  Sign s1 = orient2d(a, b, c), s2 = orient2d(a, b, d);
  Sign s3 = orient2d(c, d, a), s4 = orient2d(c, d, b);
  if (s1 == Sign::Zero || s2 == Sign::Zero || s3 == Sign::Zero || s4 == Sign::Zero) return false;
  return s1 != s2 && s3 != s4;
}

Rat crossing_parameter(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  Rat oa = orient2d_det(c, d, a);
  Rat ob = orient2d_det(c, d, b);
  Rat t = oa / (oa - ob);
  return t;
}

Point2 crossing_point(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  Rat t = crossing_parameter(a, b, c, d);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

GeneralPositionReport check_general_position(std::span<const Point2> points,
                                             std::span<const Rat> heights) {
  GeneralPositionReport report;
  const Label n = static_cast<Label>(points.size());
  for (Label i = 0; i < n; ++i) {
    for (Label j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) report.coincident_pairs.push_back({i, j});
      for (Label k = j + 1; k < n; ++k) {
        if (orient2d(points[i], points[j], points[k]) == Sign::Zero) {
          report.collinear_triples.push_back({i, j, k});
        }
        for (Label l = k + 1; l < n; ++l) {
          auto co = lifted_det_coefficients(points[i], points[j], points[k], points[l]);
          Rat det = co[0] * heights[i] + co[1] * heights[j] + co[2] * heights[k] + co[3] * heights[l];
          if (sgn(det) == 0) report.coplanar_quadruples.push_back({i, j, k, l});
        }
      }
    }
  }
  return report;
}

}  // namespace flipforge
