#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace flipforge {

// Exact rational; always canonical (reduced, positive denominator).
using Rat = mpq_class;

// Vertex label, dense in 0..n-1.
using Label = std::int32_t;

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

struct Point2 {
  Rat x;
  Rat y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  Rat x;
  Rat y;
  Rat z;
  friend bool operator==(const Point3&, const Point3&) = default;
};

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

Sign sign_of(const Rat& r);
inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

// Twice the signed area of abc.
Rat orient2d_det(const Point2& a, const Point2& b, const Point2& c);
Sign orient2d(const Point2& a, const Point2& b, const Point2& c);

// Six times the signed volume of abcd; positive when d is on the side of
// plane abc that (b-a)x(c-a) points to.
Rat orient3d_det(const Point3& a, const Point3& b, const Point3& c, const Point3& d);
Sign orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// Where does d' lie relative to the plane through a', b', c'?  Positive means
// vertically above.  Throws DegenerateBase when a, b, c are collinear.
Sign orient3d_lifted(const Point2& a, const Rat& ha, const Point2& b, const Rat& hb,
                     const Point2& c, const Rat& hc, const Point2& d, const Rat& hd);

// Coefficients k such that det[(b-a, hb-ha); (c-a, hc-ha); (d-a, hd-ha)]
// equals k[0]*ha + k[1]*hb + k[2]*hc + k[3]*hd.  The determinant has the sign
// of orient3d on the lifted points.
std::array<Rat, 4> lifted_det_coefficients(const Point2& a, const Point2& b, const Point2& c,
                                           const Point2& d);

struct Location {
  enum class Kind { Inside, OnEdge, OnVertex, Outside };
  Kind kind = Kind::Outside;
  // OnVertex: 0,1,2 for a,b,c.  OnEdge: 0 for ab, 1 for bc, 2 for ca.
  int which = -1;
  friend bool operator==(const Location&, const Location&) = default;
};

Location point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c);

bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Point where segments ab and cd cross.  Only meaningful when they properly cross.
Point2 crossing_point(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

// Parameter t in (0,1) such that a + t(b-a) is the crossing of ab with cd.
Rat crossing_parameter(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

struct GeneralPositionReport {
  std::vector<std::array<Label, 3>> collinear_triples;
  std::vector<std::array<Label, 4>> coplanar_quadruples;
  std::vector<std::array<Label, 2>> coincident_pairs;

  bool generic() const {
    return collinear_triples.empty() && coplanar_quadruples.empty() && coincident_pairs.empty();
  }
};

GeneralPositionReport check_general_position(std::span<const Point2> points,
                                             std::span<const Rat> heights);

}  // namespace flipforge
