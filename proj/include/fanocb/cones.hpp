// Rational polyhedral cones in N^1(Y) = R^2 (basis D, H) and the Mori
// chamber picture of Y. Everything is exact integer arithmetic.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fanocb/picard.hpp"

namespace fanocb {

std::int64_t cross(DivisorClassY u, DivisorClassY v);
/// Divides out the gcd of the coordinates; the zero class is returned as is.
DivisorClassY primitive(DivisorClassY v);

/// A full-dimensional strictly convex cone spanned by two primitive rays,
/// stored counterclockwise (cross(ray1, ray2) > 0).
class Cone2D {
public:
  /// Normalises both rays and their order; throws InvalidArgument if they
  /// are zero or parallel.
  Cone2D(DivisorClassY u, DivisorClassY v);

  DivisorClassY ray1() const { return ray1_; }
  DivisorClassY ray2() const { return ray2_; }

  bool contains(DivisorClassY c) const;
  bool contains_in_interior(DivisorClassY c) const;
  bool has_ray(DivisorClassY r) const;
  /// Nonnegative (rational) coefficients of c on the two rays, as numerators
  /// over the common denominator cross(ray1, ray2).
  std::pair<std::int64_t, std::int64_t> coordinates_times_det(DivisorClassY c) const;

  friend bool operator==(const Cone2D&, const Cone2D&) = default;

private:
  DivisorClassY ray1_;
  DivisorClassY ray2_;
};

std::string to_string(const Cone2D& cone);

/// First and last ray, counterclockwise, of the cone generated by the
/// classes. Throws InvalidArgument when the cone is not strictly convex or
/// all classes are zero. The two rays coincide when the cone is a ray.
std::pair<DivisorClassY, DivisorClassY> extreme_rays(const std::vector<DivisorClassY>& classes);

/// Distinct primitive rays of the classes, sorted counterclockwise inside
/// their (strictly convex) span.
std::vector<DivisorClassY> sorted_rays(const std::vector<DivisorClassY>& classes);

Cone2D nef_cone(const ConstructionParams& params);
Cone2D effective_cone(const ConstructionParams& params);

/// Movable cone of a toric variety from its Cox generator degrees: the
/// intersection over i of the cones spanned by all degrees except the i-th.
Cone2D movable_cone(const std::vector<DivisorClassY>& generator_degrees);

enum class ChamberLabel { NefY, FlipChamber };
std::string to_string(ChamberLabel label);

struct ChamberDecomposition {
  std::vector<DivisorClassY> walls;
  std::vector<Cone2D> chambers;
  std::vector<ChamberLabel> labels;
};

/// Walls are the distinct generator rays in counterclockwise order; chambers
/// are consecutive wall pairs. The chamber equal to Nef(Y) is labelled NefY,
/// every other chamber FlipChamber.
ChamberDecomposition chamber_decomposition(const std::vector<DivisorClassY>& generator_degrees,
                                           const ConstructionParams& params);

struct PositivityReport {
  bool effective = false;
  bool big = false;
  bool movable = false;
  bool nef = false;
  bool ample = false;
};

PositivityReport classify(DivisorClassY cls, const ConstructionParams& params);

}  // namespace fanocb
