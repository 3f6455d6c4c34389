#include "fanocb/cones.hpp"

#include <algorithm>
#include <numeric>

#include "fanocb/coxring.hpp"

namespace fanocb {

std::int64_t cross(DivisorClassY u, DivisorClassY v) { return u.a * v.b - u.b * v.a; }

namespace {

std::int64_t dot(DivisorClassY u, DivisorClassY v) { return u.a * v.a + u.b * v.b; }

bool on_ray(DivisorClassY c, DivisorClassY r) {
  return c.is_zero() || (cross(r, c) == 0 && dot(r, c) > 0);
}

// Membership in the cone spanned by lo..hi (counterclockwise, angle < pi).
bool in_span(DivisorClassY c, DivisorClassY lo, DivisorClassY hi) {
  if (lo == hi) return on_ray(c, lo);
  return cross(lo, c) >= 0 && cross(c, hi) >= 0;
}

}  // namespace

DivisorClassY primitive(DivisorClassY v) {
  const std::int64_t g = std::gcd(v.a, v.b);
  if (g == 0) return v;
  return {v.a / g, v.b / g};
}

Cone2D::Cone2D(DivisorClassY u, DivisorClassY v) : ray1_(primitive(u)), ray2_(primitive(v)) {
  const std::int64_t det = cross(ray1_, ray2_);
  if (ray1_.is_zero() || ray2_.is_zero() || det == 0) {
    throw InvalidArgument("cone rays " + to_string(u) + ", " + to_string(v) +
                          " do not span a strictly convex full-dimensional cone");
  }
  if (det < 0) std::swap(ray1_, ray2_);
}

bool Cone2D::contains(DivisorClassY c) const {
  return cross(ray1_, c) >= 0 && cross(c, ray2_) >= 0;
}

bool Cone2D::contains_in_interior(DivisorClassY c) const {
  return cross(ray1_, c) > 0 && cross(c, ray2_) > 0;
}

bool Cone2D::has_ray(DivisorClassY r) const {
  const DivisorClassY p = primitive(r);
  return !p.is_zero() && (p == ray1_ || p == ray2_);
}

std::pair<std::int64_t, std::int64_t> Cone2D::coordinates_times_det(DivisorClassY c) const {
  return {cross(c, ray2_), cross(ray1_, c)};
}

std::string to_string(const Cone2D& cone) {
  return "<" + to_string(cone.ray1()) + ", " + to_string(cone.ray2()) + ">";
}

std::vector<DivisorClassY> sorted_rays(const std::vector<DivisorClassY>& classes) {
  std::vector<DivisorClassY> rays;
  for (const auto& c : classes) {
    if (c.is_zero()) continue;
    const DivisorClassY p = primitive(c);
    if (std::find(rays.begin(), rays.end(), p) == rays.end()) rays.push_back(p);
  }
  if (rays.empty()) throw InvalidArgument("all classes are zero");
  // The first ray sees every other ray strictly counterclockwise.
  auto first = std::find_if(rays.begin(), rays.end(), [&](DivisorClassY u) {
    return std::all_of(rays.begin(), rays.end(), [&](DivisorClassY v) { return v == u || cross(u, v) > 0; });
  });
  if (first == rays.end()) throw InvalidArgument("classes do not span a strictly convex cone");
  std::iter_swap(rays.begin(), first);
  std::sort(rays.begin() + 1, rays.end(),
            [](DivisorClassY u, DivisorClassY v) { return cross(u, v) > 0; });
  return rays;
}

std::pair<DivisorClassY, DivisorClassY> extreme_rays(const std::vector<DivisorClassY>& classes) {
  const auto rays = sorted_rays(classes);
  return {rays.front(), rays.back()};
}

Cone2D nef_cone(const ConstructionParams&) { return Cone2D(kD, kH); }

Cone2D effective_cone(const ConstructionParams& params) {
  return Cone2D(kH, {1, -params.fiber_twist()});
}

Cone2D movable_cone(const std::vector<DivisorClassY>& generator_degrees) {
  std::vector<DivisorClassY> candidates = sorted_rays(generator_degrees);
  std::vector<DivisorClassY> movable;
  for (const auto& r : candidates) {
    bool everywhere = true;
    for (std::size_t skip = 0; skip < generator_degrees.size() && everywhere; ++skip) {
      std::vector<DivisorClassY> rest;
      for (std::size_t j = 0; j < generator_degrees.size(); ++j) {
        if (j != skip && !generator_degrees[j].is_zero()) rest.push_back(generator_degrees[j]);
      }
      if (rest.empty()) {
        everywhere = false;
        break;
      }
      const auto [lo, hi] = extreme_rays(rest);
      everywhere = in_span(r, lo, hi);
    }
    if (everywhere) movable.push_back(r);
  }
  if (movable.size() < 2) throw InvalidArgument("movable cone is not full-dimensional");
  return Cone2D(movable.front(), movable.back());
}

std::string to_string(ChamberLabel label) {
  return label == ChamberLabel::NefY ? "NEF_Y" : "FLIP_CHAMBER";
}

ChamberDecomposition chamber_decomposition(const std::vector<DivisorClassY>& generator_degrees,
                                           const ConstructionParams& params) {
  ChamberDecomposition result;
  result.walls = sorted_rays(generator_degrees);
  if (result.walls.size() < 2) {
    throw InvalidArgument("generator degrees lie on a single ray");
  }
  const Cone2D nef = nef_cone(params);
  for (std::size_t i = 0; i + 1 < result.walls.size(); ++i) {
    Cone2D chamber(result.walls[i], result.walls[i + 1]);
    result.labels.push_back(chamber == nef ? ChamberLabel::NefY : ChamberLabel::FlipChamber);
    result.chambers.push_back(chamber);
  }
  return result;
}

PositivityReport classify(DivisorClassY cls, const ConstructionParams& params) {
  const Cone2D eff = effective_cone(params);
  const Cone2D nef = nef_cone(params);
  const Cone2D mov = movable_cone(CoxGrading(params).generator_degrees());
  PositivityReport r;
  r.effective = eff.contains(cls);
  r.big = eff.contains_in_interior(cls);
  r.movable = mov.contains(cls);
  r.nef = nef.contains(cls);
  r.ample = nef.contains_in_interior(cls);
  return r;
}

}  // namespace fanocb
