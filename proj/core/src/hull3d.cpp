#include "hull3d.hpp"

#include <map>
#include <utility>

#include "flipforge/error.hpp"

namespace flipforge::detail {

namespace {

struct Face {
  std::array<Label, 3> v;
  bool alive = true;
};

class Hull {
 public:
  explicit Hull(std::span<const Point3> pts) : pts_(pts) {}

  void run() {
    const Label n = static_cast<Label>(pts_.size());
    if (n < 4) throw Error(ErrorCode::DegenerateLift, "3D hull needs at least 4 points");
    Sign s = orient(0, 1, 2, 3);
    if (s == Sign::Zero) degenerate();
    if (s == Sign::Positive) {
      add(0, 2, 1);
      add(0, 1, 3);
      add(1, 2, 3);
      add(2, 0, 3);
    } else {
      add(0, 1, 2);
      add(0, 3, 1);
      add(1, 3, 2);
      add(2, 3, 0);
    }
    for (Label p = 4; p < n; ++p) insert(p);
  }

  std::vector<std::array<Label, 3>> facets() const {
    std::vector<std::array<Label, 3>> out;
    for (const Face& f : faces_) {
      if (f.alive) out.push_back(f.v);
    }
    return out;
  }

 private:
  [[noreturn]] static void degenerate() {
    throw Error(ErrorCode::DegenerateLift, "four lifted points are coplanar");
  }

  Sign orient(Label a, Label b, Label c, Label d) const {
    return flipforge::orient3d(pts_[a], pts_[b], pts_[c], pts_[d]);
  }

  void add(Label a, Label b, Label c) {
    int id = static_cast<int>(faces_.size());
    faces_.push_back({{a, b, c}, true});
    half_[{a, b}] = id;
    half_[{b, c}] = id;
    half_[{c, a}] = id;
  }

  void kill(int id) {
    Face& f = faces_[id];
    f.alive = false;
    for (int i = 0; i < 3; ++i) {
      auto it = half_.find({f.v[i], f.v[(i + 1) % 3]});
      if (it != half_.end() && it->second == id) half_.erase(it);
    }
  }

  void insert(Label p) {
    std::vector<char> visible(faces_.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!faces_[i].alive) continue;
      const auto& v = faces_[i].v;
      Sign s = orient(v[0], v[1], v[2], p);
      if (s == Sign::Zero) degenerate();
      if (s == Sign::Positive) {
        visible[i] = 1;
        any = true;
      }
    }
    if (!any) return;
    std::vector<std::pair<Label, Label>> horizon;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!visible[i]) continue;
      const auto& v = faces_[i].v;
      for (int k = 0; k < 3; ++k) {
        Label a = v[k], b = v[(k + 1) % 3];
        int twin = half_.at({b, a});
        if (!visible[twin]) horizon.emplace_back(a, b);
      }
    }
    for (std::size_t i = 0; i < visible.size(); ++i) {
      if (visible[i]) kill(static_cast<int>(i));
    }
    for (auto [a, b] : horizon) add(a, b, p);
  }

  std::span<const Point3> pts_;
  std::vector<Face> faces_;
  std::map<std::pair<Label, Label>, int> half_;
};

}  // namespace

std::vector<std::array<Label, 3>> convex_hull_3d(std::span<const Point3> pts) {
  Hull h(pts);
  h.run();
  return h.facets();
}

}  // namespace flipforge::detail
