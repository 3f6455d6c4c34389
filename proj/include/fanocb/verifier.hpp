// Explicit conic bundles X = {z^T S z = 0} in P_Y(E) for concrete m: section
// instantiation, exact fibre diagnosis, chart-level smoothness audits and
// discriminant probes along lines.
//
// The conic matrix
//
//       ( s1    s2    lam1 )
//   S = ( s2    s3    lam2 )      s_i in H^0(2D-2mH), lam_i in H^0(2D-mH),
//       ( lam1  lam2  sigma)      sigma in H^0(2D)
//
// transforms under the torus (lambda, mu) of the Cox construction as
// S(t.p) = L S(p) L with L = diag(lambda mu^-m, lambda mu^-m, lambda), so the
// rank of S(p) is well defined on Y and fibre points transform by L^-1.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fanocb/coxring.hpp"
#include "fanocb/picard.hpp"
#include "fanocb/polynomial.hpp"
#include "json.hpp"

namespace fanocb {

using Vec3 = std::array<mpq_class, 3>;
using Mat3 = std::array<Vec3, 3>;

class CoxPointY {
public:
  /// Throws InvalidArgument for points in the irrelevant loci.
  CoxPointY(std::vector<mpq_class> x, Vec3 y);

  const std::vector<mpq_class>& x() const { return x_; }
  const Vec3& y() const { return y_; }
  bool on_V() const { return y_[1] == 0 && y_[2] == 0; }
  /// x_0..x_{3m}, y_0, y_1, y_2.
  std::vector<mpq_class> coords() const;
  /// The point t.p for the torus element (lambda, mu).
  CoxPointY scaled(const mpq_class& lambda, const mpq_class& mu, std::int64_t m) const;

  nlohmann::ordered_json to_json() const;

private:
  std::vector<mpq_class> x_;
  Vec3 y_;
};

class ConicMatrix {
public:
  /// Throws InvalidArgument unless the entries have the degrees of
  /// Sym^2(E (x) O(-mH)): s_i (2,-2m), lam_i (2,-m), sigma (2,0).
  ConicMatrix(const ConstructionParams& params, BigradedPoly s1, BigradedPoly s2, BigradedPoly s3,
              BigradedPoly lam1, BigradedPoly lam2, BigradedPoly sigma,
              std::optional<BigradedPoly> sigma_prime = std::nullopt);

  const ConstructionParams& params() const { return params_; }
  const BigradedPoly& entry(int i, int j) const;
  /// The section of D used to build s1, s2, s3, when known.
  const std::optional<BigradedPoly>& sigma_prime() const { return sigma_prime_; }

  Mat3 evaluate(std::span<const mpq_class> coords) const;
  /// Entrywise partial derivative with respect to a Cox variable, evaluated.
  Mat3 evaluate_derivative(std::size_t var, std::span<const mpq_class> coords) const;

  nlohmann::ordered_json to_json() const;

private:
  ConstructionParams params_;
  // s1, s2, s3, lam1, lam2, sigma
  std::vector<BigradedPoly> entries_;
  std::optional<BigradedPoly> sigma_prime_;
  // derivatives_[k][v] = d entries_[k] / d x_v
  std::vector<std::vector<Polynomial>> derivatives_;
};

struct SectionOptions {
  std::int64_t coeff_range = 100;
  bool perturb = false;
};

/// Sections with s1 = sigma' y1, s2 = s3 = sigma' y2, sigma = sigma'^2,
/// sigma' = y0 and random lam1, lam2; with perturb, sigma' gains a random
/// part vanishing on V and s1, s2 (= s3), sigma gain random parts vanishing
/// on V (to second order for the s_i). Deterministic in seed.
ConicMatrix instantiate_sections(const ConstructionParams& params, std::uint64_t seed,
                                 const SectionOptions& options = {});

enum class FiberType { WholePlane = 0, DoubleLine = 1, LinePair = 2, SmoothConic = 3 };
std::string to_string(FiberType t);

struct FiberDiagnosis {
  int rank = 0;
  FiberType type = FiberType::WholePlane;
  /// Generator of ker S (primitive integer vector) when rank == 2.
  std::optional<Vec3> node;
};

/// Rank by fraction-free (Bareiss) elimination.
int matrix_rank(const Mat3& s);
mpq_class determinant(const Mat3& s);
FiberDiagnosis diagnose_matrix(const Mat3& s);
FiberDiagnosis fiber_at(const ConicMatrix& S, const CoxPointY& p);

/// Affine chart of Z: x_k = 1 and y_l = 1 on Y, z_i = 1 on the fibre.
struct Chart {
  std::size_t x_index = 0;
  int y_index = 0;
  int z_index = 0;
  std::string to_string() const;
};

/// Largest-magnitude coordinates (first one on ties), z taken after moving
/// the point into the chart of Y.
Chart choose_chart(const ConicMatrix& S, const CoxPointY& p, const Vec3& z);

class ChartError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Gradient of F = z^T S z in the chart coordinates (remaining Cox variables
/// in index order, then remaining z's). Throws ChartError if the chart does
/// not contain (p, z).
std::vector<mpq_class> chart_gradient(const ConicMatrix& S, const CoxPointY& p, const Vec3& z,
                                      const Chart& chart);

/// p on V, z2 = 0, z != 0.
bool check_smooth_at_V_point(const ConicMatrix& S, const CoxPointY& p, const Vec3& z);
bool check_smooth_at_node(const ConicMatrix& S, const FiberDiagnosis& diag, const CoxPointY& p);

/// dF restricted to W in the chart {x_k = 1, y_0 = 1, z_i = 1} (i = 0 or 1)
/// as polynomials, keyed by chart variable name.
std::map<std::string, Polynomial> symbolic_dF_on_W(const ConicMatrix& S, std::size_t x_index,
                                                   int z_index);
/// sigma'|_V (z0^2 dy1 + z1(2 z0 + z1) dy2) in the same chart and layout.
std::map<std::string, Polynomial> expected_dF_on_W(const ConicMatrix& S, std::size_t x_index,
                                                   int z_index);

/// Affine line t -> base + t * direction in Cox coordinates.
struct CoxLine {
  std::vector<mpq_class> base;
  std::vector<mpq_class> direction;
  std::vector<mpq_class> at(const mpq_class& t) const;
  nlohmann::ordered_json to_json() const;
};

class DegenerateLine : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LineProbe {
  bool squarefree = false;
  int degree = -1;
  UPoly restriction;
};

/// det S along the line, recovered exactly by interpolation. Throws
/// DegenerateLine if det S vanishes identically on it.
LineProbe discriminant_on_line(const ConicMatrix& S, const CoxLine& line);

struct InstanceOptions {
  std::uint64_t seed = 42;
  std::size_t n_samples = 100;
  std::size_t fiber_lines = 20;
  std::size_t v_lines = 5;
  std::int64_t point_range = 100;
  SectionOptions sections;
};

struct CheckTally {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool required = true;
};

struct SampleRecord {
  std::string check;
  std::size_t index = 0;
  bool pass = false;
  std::string diagnosis;
  nlohmann::ordered_json data;
};

struct InstanceReport {
  std::int64_t m = 0;
  InstanceOptions options;
  std::vector<CheckTally> tallies;
  std::map<std::string, std::size_t> v_fiber_types;
  std::map<std::string, std::size_t> generic_fiber_types;
  std::map<std::string, std::size_t> boundary_fiber_types;
  std::vector<SampleRecord> records;
  nlohmann::ordered_json sections;
  bool pass = false;

  const CheckTally& tally(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

InstanceReport run_instance(const ConstructionParams& params, const InstanceOptions& options);
/// Same harness on a caller-supplied matrix (no symbolic chart identity when
/// sigma' is unknown).
InstanceReport run_instance(const ConicMatrix& S, const InstanceOptions& options);

}  // namespace fanocb
