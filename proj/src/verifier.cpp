#include "fanocb/verifier.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fanocb/conicbundle.hpp"
#include "fanocb/rng.hpp"

namespace fanocb {

namespace {

// Random stream tags.
enum : std::uint64_t {
  kStreamSigmaPrime = 1,
  kStreamR1,
  kStreamR2,
  kStreamLam1,
  kStreamLam2,
  kStreamSigma,
  kStreamVPoints = 100,
  kStreamGenericPoints,
  kStreamBoundaryPoints,
  kStreamChartLines,
  kStreamFiberLines,
  kStreamVLines,
};

mpq_class power(const mpq_class& base, std::int64_t exponent) {
  mpq_class result = 1;
  const mpq_class b = exponent < 0 ? mpq_class(1 / base) : base;
  for (std::int64_t k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) result *= b;
  return result;
}

std::vector<std::string> to_strings(std::span<const mpq_class> v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

bool any_nonzero(std::span<const mpq_class> v) {
  return std::any_of(v.begin(), v.end(), [](const mpq_class& q) { return q != 0; });
}

std::size_t argmax_abs(std::span<const mpq_class> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (abs(v[i]) > abs(v[best])) best = i;
  }
  return best;
}

// Index into the entry list for (i, j).
int entry_index(int i, int j) {
  static constexpr int kIndex[3][3] = {{0, 1, 3}, {1, 2, 4}, {3, 4, 5}};
  return kIndex[i][j];
}

}  // namespace

CoxPointY::CoxPointY(std::vector<mpq_class> x, Vec3 y) : x_(std::move(x)), y_(std::move(y)) {
  if (!any_nonzero(x_)) throw InvalidArgument("Cox point has all x-coordinates zero");
  if (!any_nonzero(y_)) throw InvalidArgument("Cox point has all y-coordinates zero");
}

std::vector<mpq_class> CoxPointY::coords() const {
  std::vector<mpq_class> c = x_;
  c.insert(c.end(), y_.begin(), y_.end());
  return c;
}

CoxPointY CoxPointY::scaled(const mpq_class& lambda, const mpq_class& mu, std::int64_t m) const {
  std::vector<mpq_class> x = x_;
  for (auto& v : x) v *= mu;
  const mpq_class twist = lambda * power(mu, -2 * m);
  return CoxPointY(std::move(x), {y_[0] * lambda, y_[1] * twist, y_[2] * twist});
}

nlohmann::ordered_json CoxPointY::to_json() const {
  return {{"x", to_strings(x_)}, {"y", to_strings(y_)}};
}

ConicMatrix::ConicMatrix(const ConstructionParams& params, BigradedPoly s1, BigradedPoly s2,
                         BigradedPoly s3, BigradedPoly lam1, BigradedPoly lam2, BigradedPoly sigma,
                         std::optional<BigradedPoly> sigma_prime)
    : params_(params), sigma_prime_(std::move(sigma_prime)) {
  const std::int64_t m = params.m();
  const DivisorClassY expected[6] = {{2, -2 * m}, {2, -2 * m}, {2, -2 * m}, {2, -m}, {2, -m}, {2, 0}};
  entries_ = {std::move(s1), std::move(s2), std::move(s3), std::move(lam1), std::move(lam2), std::move(sigma)};
  for (int k = 0; k < 6; ++k) {
    if (!(entries_[k].params() == params) || entries_[k].degree() != expected[k]) {
      throw InvalidArgument("conic matrix entry " + std::to_string(k) + " has degree " +
                            to_string(entries_[k].degree()) + ", expected " + to_string(expected[k]));
    }
  }
  if (sigma_prime_ && sigma_prime_->degree() != kD) {
    throw InvalidArgument("sigma' must be a section of D");
  }
  const std::size_t nv = CoxGrading(params).num_vars();
  derivatives_.resize(6);
  for (int k = 0; k < 6; ++k) {
    for (std::size_t v = 0; v < nv; ++v) derivatives_[k].push_back(entries_[k].poly().derivative(v));
  }
}

const BigradedPoly& ConicMatrix::entry(int i, int j) const {
  return entries_[static_cast<std::size_t>(entry_index(i, j))];
}

Mat3 ConicMatrix::evaluate(std::span<const mpq_class> coords) const {
  std::array<mpq_class, 6> values;
  for (int k = 0; k < 6; ++k) values[k] = entries_[k].evaluate(coords);
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = values[entry_index(i, j)];
  }
  return out;
}

Mat3 ConicMatrix::evaluate_derivative(std::size_t var, std::span<const mpq_class> coords) const {
  std::array<mpq_class, 6> values;
  for (int k = 0; k < 6; ++k) values[k] = derivatives_[k].at(var).evaluate(coords);
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = values[entry_index(i, j)];
  }
  return out;
}

nlohmann::ordered_json ConicMatrix::to_json() const {
  nlohmann::ordered_json doc;
  const char* names[6] = {"s1", "s2", "s3", "lam1", "lam2", "sigma"};
  for (int k = 0; k < 6; ++k) doc[names[k]] = entries_[k].to_json();
  if (sigma_prime_) doc["sigma_prime"] = sigma_prime_->to_json();
  return doc;
}

ConicMatrix instantiate_sections(const ConstructionParams& params, std::uint64_t seed,
                                 const SectionOptions& options) {
  const CoxGrading grading(params);
  const std::int64_t m = params.m();
  const auto y0 = cox_variable(params, grading.y(0));
  const auto nu1 = cox_variable(params, grading.y(1));
  const auto nu2 = cox_variable(params, grading.y(2));
  auto random = [&](DivisorClassY cls, std::uint64_t stream, int min_v_order) {
    return random_section(cls, params, Rng::mix(seed, stream), options.coeff_range, min_v_order);
  };

  BigradedPoly sigma_prime = y0;
  if (options.perturb) sigma_prime = sigma_prime + random(kD, kStreamSigmaPrime, 1);
  BigradedPoly s1 = sigma_prime * nu1;
  BigradedPoly s2 = sigma_prime * nu2;
  BigradedPoly sigma = sigma_prime * sigma_prime;
  if (options.perturb) {
    s1 = s1 + random({2, -2 * m}, kStreamR1, 2);
    s2 = s2 + random({2, -2 * m}, kStreamR2, 2);
    sigma = sigma + random({2, 0}, kStreamSigma, 1);
  }
  BigradedPoly lam1 = random({2, -m}, kStreamLam1, 0);
  BigradedPoly lam2 = random({2, -m}, kStreamLam2, 0);
  BigradedPoly s3 = s2;
  return ConicMatrix(params, std::move(s1), std::move(s2), std::move(s3), std::move(lam1),
                     std::move(lam2), std::move(sigma), std::move(sigma_prime));
}

std::string to_string(FiberType t) {
  switch (t) {
    case FiberType::SmoothConic: return "SMOOTH_CONIC";
    case FiberType::LinePair: return "LINE_PAIR";
    case FiberType::DoubleLine: return "DOUBLE_LINE";
    case FiberType::WholePlane: return "WHOLE_PLANE";
  }
  return "?";
}

int matrix_rank(const Mat3& s) {
  // Clear denominators row by row, then Bareiss elimination over Z.
  std::array<std::array<mpz_class, 3>, 3> a;
  for (int i = 0; i < 3; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < 3; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s[i][j].get_den_mpz_t());
    for (int j = 0; j < 3; ++j) a[i][j] = s[i][j].get_num() * (l / s[i][j].get_den());
  }
  int rank = 0;
  mpz_class prev = 1;
  std::array<bool, 3> used_col{false, false, false};
  for (int row = 0; row < 3; ++row) {
    // Pivot: any nonzero entry in rows >= row and unused columns.
    int pr = -1, pc = -1;
    for (int i = row; i < 3 && pr < 0; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (!used_col[j] && a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr < 0) break;
    std::swap(a[row], a[pr]);
    used_col[pc] = true;
    ++rank;
    for (int i = row + 1; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (j == pc) continue;
        a[i][j] = (a[row][pc] * a[i][j] - a[i][pc] * a[row][j]) / prev;
      }
      a[i][pc] = 0;
    }
    prev = a[row][pc];
  }
  return rank;
}

mpq_class determinant(const Mat3& s) {
  return s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
         s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
         s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
}

FiberDiagnosis diagnose_matrix(const Mat3& s) {
  FiberDiagnosis d;
  d.rank = matrix_rank(s);
  d.type = static_cast<FiberType>(d.rank);
  if (d.rank == 2) {
    // Columns of the adjugate span ker S when rank S = 2.
    auto minor = [&](int r0, int r1, int c0, int c1) -> mpq_class {
      return s[r0][c0] * s[r1][c1] - s[r0][c1] * s[r1][c0];
    };
    const Vec3 cols[3] = {
        {minor(1, 2, 1, 2), -minor(1, 2, 0, 2), minor(1, 2, 0, 1)},
        {-minor(0, 2, 1, 2), minor(0, 2, 0, 2), -minor(0, 2, 0, 1)},
        {minor(0, 1, 1, 2), -minor(0, 1, 0, 2), minor(0, 1, 0, 1)},
    };
    for (const auto& c : cols) {
      if (!any_nonzero(c)) continue;
      mpz_class l = 1, g = 0;
      for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      Vec3 v;
      for (int i = 0; i < 3; ++i) v[i] = c[i] * l;
      for (const auto& q : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
      for (auto& q : v) q /= g;
      d.node = v;
      break;
    }
  }
  return d;
}

FiberDiagnosis fiber_at(const ConicMatrix& S, const CoxPointY& p) {
  if (p.x().size() != CoxGrading(S.params()).num_x()) {
    throw InvalidArgument("Cox point does not belong to this m");
  }
  return diagnose_matrix(S.evaluate(p.coords()));
}

std::string Chart::to_string() const {
  return "x" + std::to_string(x_index) + "=1,y" + std::to_string(y_index) + "=1,z" +
         std::to_string(z_index) + "=1";
}

namespace {

struct ChartPoint {
  CoxPointY point;
  Vec3 z;  // normalised so that z[chart.z_index] == 1
};

// Moves (p, z) into the chart of Y given by (x_k, y_l), fibre coordinates
// transformed by L^-1; z is not yet normalised.
std::pair<CoxPointY, Vec3> move_to_chart(const ConicMatrix& S, const CoxPointY& p, const Vec3& z,
                                         std::size_t x_index, int y_index) {
  const std::int64_t m = S.params().m();
  if (p.x().at(x_index) == 0 || p.y().at(static_cast<std::size_t>(y_index)) == 0) {
    throw ChartError("point is not in the chart x" + std::to_string(x_index) + "!=0, y" +
                     std::to_string(y_index) + "!=0");
  }
  const mpq_class mu = 1 / p.x()[x_index];
  const std::int64_t h = y_index == 0 ? 0 : -2 * m;
  const mpq_class lambda = 1 / (p.y()[static_cast<std::size_t>(y_index)] * power(mu, h));
  const CoxPointY moved = p.scaled(lambda, mu, m);
  const mpq_class l_fibre = lambda * power(mu, -m);
  Vec3 z_moved = {z[0] / l_fibre, z[1] / l_fibre, z[2] / lambda};
  return {moved, z_moved};
}

ChartPoint to_chart(const ConicMatrix& S, const CoxPointY& p, const Vec3& z, const Chart& chart) {
  auto [moved, zm] = move_to_chart(S, p, z, chart.x_index, chart.y_index);
  const mpq_class pivot = zm.at(static_cast<std::size_t>(chart.z_index));
  if (pivot == 0) throw ChartError("fibre point is not in the chart z" + std::to_string(chart.z_index) + "!=0");
  for (auto& q : zm) q /= pivot;
  return {moved, zm};
}

}  // namespace

Chart choose_chart(const ConicMatrix& S, const CoxPointY& p, const Vec3& z) {
  Chart chart;
  chart.x_index = argmax_abs(p.x());
  chart.y_index = static_cast<int>(argmax_abs(p.y()));
  const auto moved = move_to_chart(S, p, z, chart.x_index, chart.y_index);
  chart.z_index = static_cast<int>(argmax_abs(moved.second));
  return chart;
}

std::vector<mpq_class> chart_gradient(const ConicMatrix& S, const CoxPointY& p, const Vec3& z,
                                      const Chart& chart) {
  const CoxGrading grading(S.params());
  const ChartPoint cp = to_chart(S, p, z, chart);
  const auto coords = cp.point.coords();
  std::vector<mpq_class> grad;
  const std::size_t fixed_y = grading.y(static_cast<std::size_t>(chart.y_index));
  for (std::size_t v = 0; v < grading.num_vars(); ++v) {
    if (v == chart.x_index || v == fixed_y) continue;
    const Mat3 dS = S.evaluate_derivative(v, coords);
    mpq_class total = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) total += dS[i][j] * cp.z[i] * cp.z[j];
    }
    grad.push_back(total);
  }
  const Mat3 s = S.evaluate(coords);
  for (int a = 0; a < 3; ++a) {
    if (a == chart.z_index) continue;
    mpq_class total = 0;
    for (int j = 0; j < 3; ++j) total += s[a][j] * cp.z[j];
    grad.push_back(2 * total);
  }
  return grad;
}

bool check_smooth_at_V_point(const ConicMatrix& S, const CoxPointY& p, const Vec3& z) {
  if (!p.on_V()) throw InvalidArgument("point is not on V");
  if (z[2] != 0 || !any_nonzero(z)) throw InvalidArgument("fibre point must satisfy z2 = 0, z != 0");
  return any_nonzero(chart_gradient(S, p, z, choose_chart(S, p, z)));
}

bool check_smooth_at_node(const ConicMatrix& S, const FiberDiagnosis& diag, const CoxPointY& p) {
  if (diag.rank != 2 || !diag.node) throw InvalidArgument("node check needs a rank-2 fibre");
  const Vec3& z = *diag.node;
  return any_nonzero(chart_gradient(S, p, z, choose_chart(S, p, z)));
}

namespace {

struct ZRing {
  std::size_t cox_vars;
  std::size_t total() const { return cox_vars + 3; }
  std::size_t z(int i) const { return cox_vars + static_cast<std::size_t>(i); }
};

std::vector<std::string> extended_names(const CoxGrading& grading) {
  auto names = grading.variable_names();
  for (int i = 0; i < 3; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

void check_W_chart(const ConicMatrix& S, std::size_t x_index, int z_index) {
  if (x_index >= CoxGrading(S.params()).num_x()) throw InvalidArgument("x chart index out of range");
  if (z_index != 0 && z_index != 1) {
    throw ChartError("W lies in z2 = 0, so only the charts z0 = 1 and z1 = 1 meet it");
  }
}

}  // namespace

std::map<std::string, Polynomial> symbolic_dF_on_W(const ConicMatrix& S, std::size_t x_index,
                                                   int z_index) {
  check_W_chart(S, x_index, z_index);
  const CoxGrading grading(S.params());
  const ZRing ring{grading.num_vars()};
  const auto names = extended_names(grading);

  Polynomial F(ring.total());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Exponents zz(ring.total(), 0);
      zz[ring.z(i)] += 1;
      zz[ring.z(j)] += 1;
      F += S.entry(i, j).poly().extended(ring.total()) * Polynomial::monomial(zz);
    }
  }
  const std::size_t fixed_y = grading.y(0);
  const std::size_t fixed_z = ring.z(z_index);
  F = F.substitute(x_index, 1).substitute(fixed_y, 1).substitute(fixed_z, 1);

  std::map<std::string, Polynomial> out;
  for (std::size_t v = 0; v < ring.total(); ++v) {
    if (v == x_index || v == fixed_y || v == fixed_z) continue;
    Polynomial d = F.derivative(v);
    d = d.substitute(grading.y(1), 0).substitute(grading.y(2), 0).substitute(ring.z(2), 0);
    out.emplace(names[v], std::move(d));
  }
  return out;
}

std::map<std::string, Polynomial> expected_dF_on_W(const ConicMatrix& S, std::size_t x_index,
                                                   int z_index) {
  check_W_chart(S, x_index, z_index);
  if (!S.sigma_prime()) throw InvalidArgument("conic matrix carries no sigma'");
  const CoxGrading grading(S.params());
  const ZRing ring{grading.num_vars()};
  const auto names = extended_names(grading);
  const std::size_t fixed_y = grading.y(0);
  const std::size_t fixed_z = ring.z(z_index);

  const Polynomial sigma_prime_V = S.sigma_prime()
                                       ->poly()
                                       .extended(ring.total())
                                       .substitute(grading.y(1), 0)
                                       .substitute(grading.y(2), 0)
                                       .substitute(x_index, 1)
                                       .substitute(fixed_y, 1);
  const Polynomial z0 = Polynomial::variable(ring.total(), ring.z(0));
  const Polynomial z1 = Polynomial::variable(ring.total(), ring.z(1));
  const Polynomial two = Polynomial::constant(ring.total(), 2);
  const Polynomial coeff_dnu1 = (sigma_prime_V * z0 * z0).substitute(fixed_z, 1);
  const Polynomial coeff_dnu2 = (sigma_prime_V * z1 * (two * z0 + z1)).substitute(fixed_z, 1);

  std::map<std::string, Polynomial> out;
  for (std::size_t v = 0; v < ring.total(); ++v) {
    if (v == x_index || v == fixed_y || v == fixed_z) continue;
    if (v == grading.y(1)) {
      out.emplace(names[v], coeff_dnu1);
    } else if (v == grading.y(2)) {
      out.emplace(names[v], coeff_dnu2);
    } else {
      out.emplace(names[v], Polynomial(ring.total()));
    }
  }
  return out;
}

std::vector<mpq_class> CoxLine::at(const mpq_class& t) const {
  std::vector<mpq_class> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * direction[i];
  return out;
}

nlohmann::ordered_json CoxLine::to_json() const {
  return {{"base", to_strings(base)}, {"direction", to_strings(direction)}};
}

LineProbe discriminant_on_line(const ConicMatrix& S, const CoxLine& line) {
  const std::size_t nv = CoxGrading(S.params()).num_vars();
  if (line.base.size() != nv || line.direction.size() != nv) {
    throw InvalidArgument("line does not live in the Cox space of this m");
  }
  int bound = 0;
  for (int i = 0; i < 3; ++i) {
    int row = 0;
    for (int j = 0; j < 3; ++j) row = std::max(row, S.entry(i, j).poly().total_degree());
    bound += row;
  }
  std::vector<mpq_class> ts, values;
  for (int k = 0; k <= bound; ++k) {
    ts.emplace_back(k);
    values.push_back(determinant(S.evaluate(line.at(ts.back()))));
  }
  LineProbe probe;
  probe.restriction = UPoly::interpolate(ts, values);
  if (probe.restriction.is_zero()) throw DegenerateLine("det S vanishes identically on the line");
  probe.degree = probe.restriction.degree();
  probe.squarefree = probe.restriction.is_squarefree();
  return probe;
}

const CheckTally& InstanceReport::tally(const std::string& name) const {
  for (const auto& t : tallies) {
    if (t.name == name) return t;
  }
  throw InvalidArgument("no check named " + name);
}

namespace {

constexpr const char* kCheckVFibers = "V_fibers_double_line";
constexpr const char* kCheckVGradient = "V_gradient_on_W";
constexpr const char* kCheckGeneric = "generic_fibers_smooth_conic";
constexpr const char* kCheckBoundary = "boundary_fibers_y0_zero";
constexpr const char* kCheckNodes = "node_smoothness";
constexpr const char* kCheckIdentity = "chart_identity_dF_on_W";
constexpr const char* kCheckChartLines = "chart_lines_squarefree";
constexpr const char* kCheckFiberLines = "fiber_lines_degree";
constexpr const char* kCheckVLines = "V_lines_double_root";

class Harness {
public:
  Harness(const ConicMatrix& S, const InstanceOptions& options)
      : S_(S), options_(options), grading_(S.params()) {
    report_.m = S.params().m();
    report_.options = options;
    for (const char* name : {kCheckVFibers, kCheckVGradient, kCheckGeneric, kCheckBoundary, kCheckNodes,
                             kCheckIdentity, kCheckChartLines, kCheckFiberLines, kCheckVLines}) {
      report_.tallies.push_back({name, 0, 0, true});
    }
    tally(kCheckNodes).required = false;
    tally(kCheckIdentity).required = S.sigma_prime().has_value();
  }

  InstanceReport run() {
    v_points();
    generic_points(kCheckGeneric, kStreamGenericPoints, false, report_.generic_fiber_types);
    generic_points(kCheckBoundary, kStreamBoundaryPoints, true, report_.boundary_fiber_types);
    chart_identity();
    chart_lines();
    fiber_lines();
    v_lines();
    report_.pass = std::all_of(report_.tallies.begin(), report_.tallies.end(), [](const CheckTally& t) {
      return t.failures == 0 && (!t.required || t.samples > 0);
    });
    return std::move(report_);
  }

private:
  CheckTally& tally(const std::string& name) {
    for (auto& t : report_.tallies) {
      if (t.name == name) return t;
    }
    throw std::logic_error("unknown tally " + name);
  }

  void record(const std::string& check, std::size_t index, bool pass, std::string diagnosis,
              nlohmann::ordered_json data) {
    auto& t = tally(check);
    ++t.samples;
    if (!pass) ++t.failures;
    report_.records.push_back({check, index, pass, std::move(diagnosis), std::move(data)});
  }

  mpq_class coord(Rng& rng, bool nonzero) const {
    return nonzero ? mpq_class(static_cast<long>(rng.nonzero(options_.point_range)))
                   : mpq_class(static_cast<long>(rng.uniform(-options_.point_range, options_.point_range)));
  }

  std::vector<mpq_class> random_x(Rng& rng, bool nonzero) const {
    std::vector<mpq_class> x;
    do {
      x.clear();
      for (std::size_t i = 0; i < grading_.num_x(); ++i) x.push_back(coord(rng, nonzero));
    } while (!any_nonzero(x));
    return x;
  }

  void v_points() {
    static const Vec3 z_grid[5] = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, -1, 0}, {1, -2, 0}};
    for (std::size_t i = 0; i < options_.n_samples; ++i) {
      Rng rng = Rng::derive(options_.seed, kStreamVPoints, i);
      std::vector<mpq_class> x = random_x(rng, false);
      const CoxPointY p(std::move(x), {coord(rng, true), 0, 0});
      const Mat3 s = S_.evaluate(p.coords());
      const FiberDiagnosis diag = diagnose_matrix(s);
      const mpq_class det = determinant(s);
      const bool pass = diag.type == FiberType::DoubleLine && s[2][2] != 0 && det == 0;
      ++report_.v_fiber_types[to_string(diag.type)];
      record(kCheckVFibers, i, pass, to_string(diag.type),
             {{"point", p.to_json()}, {"rank", diag.rank}, {"sigma", s[2][2].get_str()}, {"det", det.get_str()}});
      for (std::size_t g = 0; g < 5; ++g) {
        const Chart chart = choose_chart(S_, p, z_grid[g]);
        const auto grad = chart_gradient(S_, p, z_grid[g], chart);
        const bool smooth = any_nonzero(grad);
        record(kCheckVGradient, i * 5 + g, smooth, smooth ? "gradient nonzero" : "gradient zero",
               {{"point", p.to_json()}, {"z", to_strings(z_grid[g])}, {"chart", chart.to_string()},
                {"gradient", to_strings(grad)}});
      }
    }
  }

  // Generic points have every Cox coordinate nonzero; boundary points have
  // y0 = 0 and every other coordinate nonzero.
  void generic_points(const char* check, std::uint64_t stream, bool boundary,
                      std::map<std::string, std::size_t>& types) {
    for (std::size_t i = 0; i < options_.n_samples; ++i) {
      Rng rng = Rng::derive(options_.seed, stream, i);
      std::vector<mpq_class> x = random_x(rng, true);
      const mpq_class y0 = boundary ? mpq_class(0) : coord(rng, true);
      const mpq_class y1 = coord(rng, true);
      const mpq_class y2 = coord(rng, true);
      const CoxPointY p(std::move(x), {y0, y1, y2});
      const FiberDiagnosis diag = fiber_at(S_, p);
      ++types[to_string(diag.type)];
      nlohmann::ordered_json data = {{"point", p.to_json()}, {"rank", diag.rank}};
      bool pass = diag.rank == 3;
      if (diag.rank == 2) {
        const bool smooth = check_smooth_at_node(S_, diag, p);
        record(kCheckNodes, report_.records.size(), smooth, smooth ? "node smooth" : "node singular",
               {{"point", p.to_json()}, {"node", to_strings(*diag.node)}});
        pass = smooth;
        data["node"] = to_strings(*diag.node);
      }
      record(check, i, pass, to_string(diag.type), std::move(data));
    }
  }

  void chart_identity() {
    if (!S_.sigma_prime()) return;
    for (std::size_t k = 0; k < grading_.num_x(); ++k) {
      for (int zi = 0; zi < 2; ++zi) {
        const bool holds = symbolic_dF_on_W(S_, k, zi) == expected_dF_on_W(S_, k, zi);
        const std::string chart = "x" + std::to_string(k) + "=1,y0=1,z" + std::to_string(zi) + "=1";
        record(kCheckIdentity, k * 2 + static_cast<std::size_t>(zi), holds, holds ? "identity holds" : "mismatch",
               {{"chart", chart}});
      }
    }
  }

  // Probes det S on a line, resampling lines on which it vanishes identically.
  template <class MakeLine, class Judge>
  void probe_lines(const char* check, std::uint64_t stream, std::size_t count, MakeLine make_line,
                   Judge judge) {
    constexpr int kMaxAttempts = 8;
    for (std::size_t i = 0; i < count; ++i) {
      bool done = false;
      for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
        Rng rng = Rng::derive(options_.seed, stream, i * kMaxAttempts + static_cast<std::size_t>(attempt));
        const CoxLine line = make_line(rng);
        try {
          const LineProbe probe = discriminant_on_line(S_, line);
          const bool pass = judge(probe);
          record(check, i, pass,
                 std::string(probe.squarefree ? "squarefree" : "repeated root") + ", degree " +
                     std::to_string(probe.degree),
                 {{"line", line.to_json()}, {"degree", probe.degree}, {"squarefree", probe.squarefree},
                  {"attempt", attempt}});
          done = true;
        } catch (const DegenerateLine&) {
        }
      }
      if (!done) record(check, i, false, "det S vanished on every resampled line", nlohmann::ordered_json::object());
    }
  }

  CoxLine chart_line(Rng& rng, bool through_V) const {
    const std::size_t nv = grading_.num_vars();
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(grading_.num_x()) - 1));
    CoxLine line{std::vector<mpq_class>(nv), std::vector<mpq_class>(nv)};
    for (std::size_t v = 0; v < nv; ++v) {
      if (v == k || v == grading_.y(0)) {
        line.base[v] = 1;
        line.direction[v] = 0;
        continue;
      }
      const bool on_V_coord = through_V && (v == grading_.y(1) || v == grading_.y(2));
      line.base[v] = on_V_coord ? mpq_class(0) : coord(rng, false);
      line.direction[v] = coord(rng, true);
    }
    return line;
  }

  void chart_lines() {
    probe_lines(kCheckChartLines, kStreamChartLines, options_.n_samples,
                [&](Rng& rng) { return chart_line(rng, false); },
                [](const LineProbe& p) { return p.squarefree; });
  }

  void v_lines() {
    probe_lines(kCheckVLines, kStreamVLines, options_.v_lines, [&](Rng& rng) { return chart_line(rng, true); },
                [](const LineProbe& p) { return !p.squarefree; });
  }

  void fiber_lines() {
    const auto E = SplitBundleOnY::conic_bundle_E(S_.params());
    const DivisorClassY M{0, -2 * S_.params().m()};
    const std::int64_t expected = pair(discriminant_class(E, M), kEllFiber);
    probe_lines(kCheckFiberLines, kStreamFiberLines, options_.fiber_lines,
                [&](Rng& rng) {
                  const std::size_t nv = grading_.num_vars();
                  CoxLine line{std::vector<mpq_class>(nv), std::vector<mpq_class>(nv)};
                  const auto x = random_x(rng, true);
                  for (std::size_t i = 0; i < grading_.num_x(); ++i) line.base[i] = x[i];
                  for (int j = 0; j < 3; ++j) {
                    line.base[grading_.y(j)] = coord(rng, true);
                    line.direction[grading_.y(j)] = coord(rng, true);
                  }
                  return line;
                },
                [expected](const LineProbe& p) { return p.degree == expected; });
  }

  const ConicMatrix& S_;
  const InstanceOptions& options_;
  CoxGrading grading_;
  InstanceReport report_;
};

}  // namespace

InstanceReport run_instance(const ConicMatrix& S, const InstanceOptions& options) {
  if (options.n_samples < 1) throw InvalidArgument("n_samples must be at least 1");
  if (options.point_range < 1) throw InvalidArgument("point range must be positive");
  return Harness(S, options).run();
}

InstanceReport run_instance(const ConstructionParams& params, const InstanceOptions& options) {
  const ConicMatrix S = instantiate_sections(params, options.seed, options.sections);
  InstanceReport report = run_instance(S, options);
  report.sections = S.to_json();
  return report;
}

nlohmann::ordered_json InstanceReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["m"] = m;
  doc["seed"] = options.seed;
  doc["n_samples"] = options.n_samples;
  doc["fiber_lines"] = options.fiber_lines;
  doc["v_lines"] = options.v_lines;
  doc["point_range"] = options.point_range;
  doc["coeff_range"] = options.sections.coeff_range;
  doc["perturb"] = options.sections.perturb;
  doc["pass"] = pass;
  auto tallies_json = nlohmann::ordered_json::array();
  for (const auto& t : tallies) {
    tallies_json.push_back({{"name", t.name}, {"samples", t.samples}, {"failures", t.failures}, {"required", t.required}});
  }
  doc["checks"] = tallies_json;
  doc["fiber_types"] = {{"V", v_fiber_types}, {"generic", generic_fiber_types}, {"boundary", boundary_fiber_types}};
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    recs.push_back({{"check", r.check}, {"index", r.index}, {"pass", r.pass}, {"diagnosis", r.diagnosis}, {"data", r.data}});
  }
  doc["records"] = recs;
  if (!sections.is_null()) doc["sections"] = sections;
  return doc;
}

std::string InstanceReport::to_text() const {
  std::ostringstream out;
  out << "Conic bundle instance audit, m = " << m << ", seed = " << options.seed
      << ", samples = " << options.n_samples << ", perturb = " << (options.sections.perturb ? "yes" : "no")
      << ", coeff range = " << options.sections.coeff_range << ", point range = " << options.point_range << "\n";
  out << "checks (samples / failures):\n";
  for (const auto& t : tallies) {
    out << "  " << t.name << ": " << t.samples << " / " << t.failures << (t.required ? "" : " (optional)") << "\n";
  }
  auto types = [&](const char* label, const std::map<std::string, std::size_t>& counts) {
    out << "  " << label << ":";
    for (const auto& [name, n] : counts) out << " " << name << "=" << n;
    out << "\n";
  };
  out << "fibre types:\n";
  types("over V", v_fiber_types);
  types("generic", generic_fiber_types);
  types("on y0=0", boundary_fiber_types);
  std::size_t shown = 0;
  for (const auto& r : records) {
    if (r.pass) continue;
    if (shown++ == 0) out << "failures:\n";
    out << "  " << r.check << " #" << r.index << ": " << r.diagnosis << " " << r.data.dump() << "\n";
  }
  out << "no singular point of X found at the sampled at-risk points: " << (pass ? "yes" : "no") << "\n";
  out << "instance " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace fanocb
