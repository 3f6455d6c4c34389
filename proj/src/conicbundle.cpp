#include "fanocb/conicbundle.hpp"

#include <algorithm>
#include <sstream>

namespace fanocb {

SplitBundleOnY::SplitBundleOnY(std::vector<DivisorClassY> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw InvalidArgument("split bundle must have at least one summand");
}

SplitBundleOnY SplitBundleOnY::conic_bundle_E(const ConstructionParams& params) {
  return SplitBundleOnY({kD, kD, {1, params.m()}});
}

DivisorClassY SplitBundleOnY::det() const {
  DivisorClassY d;
  for (const auto& s : summands_) d += s;
  return d;
}

SplitBundleOnY SplitBundleOnY::twisted(DivisorClassY by) const {
  std::vector<DivisorClassY> out;
  for (const auto& s : summands_) out.push_back(s + by);
  return SplitBundleOnY(std::move(out));
}

std::string to_string(DivisorClassZ c) {
  std::string out = std::to_string(c.xi) + "xi";
  out += (c.a < 0 ? "-" : "+") + std::to_string(c.a < 0 ? -c.a : c.a) + "D";
  out += (c.b < 0 ? "-" : "+") + std::to_string(c.b < 0 ? -c.b : c.b) + "H";
  return out;
}

TotalSpaceClass<ClassOnP> projbundle_antiK(const SplitBundleOnP& bundle) {
  const ClassOnP base_antiK{bundle.base_dim() + 1};
  return projbundle_antiK(base_antiK, ClassOnP{bundle.det()}, bundle.rank());
}

DivisorClassZ projbundle_antiK(DivisorClassY base_antiK, const SplitBundleOnY& bundle) {
  const auto c = projbundle_antiK(base_antiK, bundle.det(), bundle.rank());
  return {c.xi, c.base.a, c.base.b};
}

DivisorClassY adjunction_solve_G(const ConstructionParams& params) {
  // Both Y and G are projectivised split bundles over P^{3m}; their
  // tautological classes are D and D|_G, and Pic(Y) -> Pic(G) is an
  // isomorphism, so classes on G are written in the (D, H) basis.
  const auto y = projbundle_antiK(SplitBundleOnP::defining_Y(params));
  const auto g = projbundle_antiK(SplitBundleOnP::defining_G(params));
  const DivisorClassY antiK_Y_class{y.xi, y.base.h};
  const DivisorClassY antiK_G_class{g.xi, g.base.h};
  // K_G = K_Y + G  =>  G = K_G - K_Y = antiK_Y - antiK_G.
  const DivisorClassY G = antiK_Y_class - antiK_G_class;
  if (G.a != 1) {
    throw std::logic_error("adjunction produced a class of fibre degree " + std::to_string(G.a));
  }
  return G;
}

std::vector<DivisorClassY> sym2_decomposition(const SplitBundleOnY& bundle, DivisorClassY twist) {
  const auto t = bundle.twisted(twist).summands();
  std::vector<DivisorClassY> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i; j < t.size(); ++j) out.push_back(t[i] + t[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ampleness_via_summands(const SplitBundleOnY& bundle, const ConstructionParams& params) {
  return std::all_of(bundle.summands().begin(), bundle.summands().end(),
                     [&](DivisorClassY s) { return classify(s, params).ample; });
}

DivisorClassY anticanonical_twist(const SplitBundleOnY& bundle, const ConstructionParams& params) {
  return antiK_Y(params) - bundle.det();
}

DivisorClassY discriminant_class(const SplitBundleOnY& bundle, DivisorClassY M) {
  return 2 * bundle.det() + 3 * M;
}

bool ExampleCertificate::valid() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.pass; });
}

std::vector<std::string> ExampleCertificate::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

namespace {

class CheckList {
public:
  void add(std::string name, std::string expected, std::string computed) {
    const bool pass = expected == computed;
    checks.push_back({std::move(name), std::move(expected), std::move(computed), pass});
  }
  void add(std::string name, DivisorClassY expected, DivisorClassY computed) {
    add(std::move(name), to_string(expected), to_string(computed));
  }
  void add(std::string name, DivisorClassZ expected, DivisorClassZ computed) {
    add(std::move(name), to_string(expected), to_string(computed));
  }
  void add(std::string name, std::int64_t expected, std::int64_t computed) {
    add(std::move(name), std::to_string(expected), std::to_string(computed));
  }
  void add_bool(std::string name, bool expected, bool computed) {
    add(std::move(name), expected ? "true" : "false", computed ? "true" : "false");
  }

  std::vector<CertificateCheck> checks;
};

std::string join_classes(const std::vector<DivisorClassY>& classes) {
  std::string out = "{";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += ", ";
    out += to_string(classes[i]);
  }
  return out + "}";
}

std::string positivity_string(const PositivityReport& r) {
  std::string out;
  auto flag = [&](const char* name, bool v) {
    if (!out.empty()) out += ",";
    out += (v ? "" : "!");
    out += name;
  };
  flag("effective", r.effective);
  flag("big", r.big);
  flag("movable", r.movable);
  flag("nef", r.nef);
  flag("ample", r.ample);
  return out;
}

std::string strata_string(const BaseLocusResult& r) {
  std::string out;
  for (auto s : r.strata) {
    if (!out.empty()) out += ",";
    out += to_string(s);
  }
  return out;
}

}  // namespace

ExampleCertificate build_certificate(const ConstructionParams& params) {
  const std::int64_t m = params.m();
  ExampleCertificate cert;
  cert.m = m;
  CheckList checks;

  const auto classes = standard_classes(params);
  for (const char* name : {"D", "H", "antiK_Y", "G", "M", "Delta"}) {
    cert.standard_classes.emplace_back(name, classes.at(name));
  }

  // -K_Y, twice: from the projective-bundle formula and the closed form.
  const DivisorClassY antiK = antiK_Y(params);
  const auto y_bundle = projbundle_antiK(SplitBundleOnP::defining_Y(params));
  checks.add("antiK_Y", DivisorClassY{3, 1 - m}, antiK);
  checks.add("antiK_Y_projective_bundle_formula", antiK, DivisorClassY{y_bundle.xi, y_bundle.base.h});
  checks.add("antiK_Y_dot_ell_f", 3, pair(antiK, kEllFiber));
  checks.add("antiK_Y_dot_ell_V", 1 - m, pair(antiK, kEllV));
  const PositivityReport antiK_pos = classify(antiK, params);
  checks.add_bool("antiK_Y_not_nef", false, antiK_pos.nef);
  checks.add_bool("antiK_Y_big", true, antiK_pos.big);

  // G_i ~ D - 2mH by adjunction; V = G_1 . G_2.
  const DivisorClassY G = adjunction_solve_G(params);
  const auto g_bundle = projbundle_antiK(SplitBundleOnP::defining_G(params));
  checks.add("antiK_G", DivisorClassY{2, m + 1}, DivisorClassY{g_bundle.xi, g_bundle.base.h});
  checks.add("G_by_adjunction", DivisorClassY{1, -2 * m}, G);
  checks.add("G_minus_D_plus_2mH", DivisorClassY{0, 0}, G - kD + 2 * m * kH);
  checks.add("G_dot_ell_V", -2 * m, pair(G, kEllV));
  {
    const auto ring = SplitBundleOnP::defining_Y(params);
    const ChowElement V = ChowElement::divisor(ring, G).pow(2);
    const ChowElement h_power = ChowElement::H(ring).pow(static_cast<int>(params.n_base()) - 1);
    const mpz_class d_on_line = degree(ChowElement::D(ring) * V * h_power);
    const mpz_class h_on_line = degree(ChowElement::H(ring) * V * h_power);
    checks.add("V_complete_intersection_D_dot_line", "0", d_on_line.get_str());
    checks.add("V_complete_intersection_H_dot_line", "1", h_on_line.get_str());
  }

  // Base loci.
  const std::vector<std::pair<std::string, DivisorClassY>> v_classes = {
      {"2D-2mH", {2, -2 * m}}, {"D-mH", {1, -m}}, {"2D-mH", {2, -m}}, {"D-2mH", {1, -2 * m}}};
  for (const auto& [label, cls] : v_classes) {
    checks.add("base_locus(" + label + ")", "V", strata_string(base_locus(cls, params)));
  }
  {
    const auto bs_delta = base_locus({6, -4 * m}, params);
    const auto bs_half = base_locus({3, -2 * m}, params);
    const auto bs_g = base_locus({1, -2 * m}, params);
    checks.add_bool("Bs(2(3D-2mH)) in Bs(3D-2mH)", true, bs_delta.is_subset_of(bs_half));
    checks.add_bool("Bs(3D-2mH) in Bs(D-2mH)", true, bs_half.is_subset_of(bs_g));
    checks.add("Bs(D-2mH)", "V", strata_string(bs_g));
  }

  // Cones and chambers.
  const Cone2D nef = nef_cone(params);
  const Cone2D eff = effective_cone(params);
  const CoxGrading grading(params);
  const Cone2D mov = movable_cone(grading.generator_degrees());
  checks.add("Nef(Y)", to_string(Cone2D(kD, kH)), to_string(nef));
  checks.add("Eff(Y)", to_string(Cone2D(kH, G)), to_string(eff));
  checks.add("Mov(Y)=Eff(Y)", to_string(eff), to_string(mov));
  {
    const auto chambers = chamber_decomposition(grading.generator_degrees(), params);
    std::string computed;
    for (std::size_t i = 0; i < chambers.chambers.size(); ++i) {
      if (i) computed += " ";
      computed += to_string(chambers.labels[i]) + to_string(chambers.chambers[i]);
    }
    const std::string expected = to_string(ChamberLabel::FlipChamber) + to_string(Cone2D(G, kD)) +
                                 " " + to_string(ChamberLabel::NefY) + to_string(Cone2D(kD, kH));
    checks.add("chamber_decomposition", expected, computed);
    const bool union_is_eff = chambers.chambers.size() == 2 &&
                              chambers.chambers.front().ray1() == eff.ray1() &&
                              chambers.chambers.back().ray2() == eff.ray2();
    checks.add_bool("chambers_cover_Eff", true, union_is_eff);
  }
  checks.add("classify(D)", "effective,big,movable,nef,!ample", positivity_string(classify(kD, params)));
  checks.add("classify(H)", "effective,!big,movable,nef,!ample", positivity_string(classify(kH, params)));

  // The ambient Z = P_Y(E) and the conic bundle X in |2 xi - 2m H|.
  const SplitBundleOnY E = SplitBundleOnY::conic_bundle_E(params);
  cert.antiK_Z = projbundle_antiK(antiK, E);
  cert.X_class = {2, 0, -2 * m};
  cert.antiK_Z_minus_X = cert.antiK_Z - cert.X_class;
  checks.add("antiK_Z", DivisorClassZ{3, 0, 1 - 2 * m}, cert.antiK_Z);
  checks.add("antiK_Z_minus_X", DivisorClassZ{1, 0, 1}, cert.antiK_Z_minus_X);
  checks.add("X_plus_(antiK_Z_minus_X)=antiK_Z", cert.antiK_Z, cert.X_class + cert.antiK_Z_minus_X);
  {
    // xi + p*H is the tautological class of P(E (x) O(H)).
    const SplitBundleOnY E_H = E.twisted(kH);
    checks.add_bool("antiK_Z_minus_X_tautological_of_E(H)", true,
                    cert.antiK_Z_minus_X.xi == 1 && cert.antiK_Z_minus_X.pullback_part() == kH);
    checks.add("E(H)_summands", join_classes({{1, 1}, {1, 1}, {1, m + 1}}), join_classes(E_H.summands()));
    checks.add_bool("E(H)_sum_of_ample", true, ampleness_via_summands(E_H, params));
    checks.add_bool("E_sum_of_ample", false, ampleness_via_summands(E, params));
  }

  cert.sym2_summands = sym2_decomposition(E, {0, -m});
  {
    std::vector<DivisorClassY> expected = {{2, -2 * m}, {2, -2 * m}, {2, -2 * m}, {2, -m}, {2, -m}, {2, 0}};
    std::sort(expected.begin(), expected.end());
    checks.add("Sym2(E(-mH))", join_classes(expected), join_classes(cert.sym2_summands));
    DivisorClassY total;
    for (const auto& s : cert.sym2_summands) total += s;
    checks.add("Sym2_det_identity", (E.rank() + 1) * E.twisted({0, -m}).det(), total);
  }

  // Discriminant. X = 2 xi + p*M with M read off from the class of X.
  cert.conic_twist_M = cert.X_class.pullback_part();
  checks.add("M", DivisorClassY{0, -2 * m}, cert.conic_twist_M);
  checks.add("det_E", DivisorClassY{3, m}, E.det());
  {
    // Renormalised so that -K_X is the tautological class: E(H), M - 2H.
    const SplitBundleOnY E_H = E.twisted(kH);
    checks.add("M_of_E(H)=-det-K_Y", cert.conic_twist_M - 2 * kH, anticanonical_twist(E_H, params));
    checks.add("Delta_twist_invariant", discriminant_class(E, cert.conic_twist_M),
               discriminant_class(E_H, anticanonical_twist(E_H, params)));
  }
  cert.discriminant = discriminant_class(E, cert.conic_twist_M);
  checks.add("Delta_f", DivisorClassY{6, -4 * m}, cert.discriminant);
  checks.add("Delta_f_dot_ell_V", -4 * m, pair(cert.discriminant, kEllV));
  checks.add("Delta_f_dot_ell_f", 6, pair(cert.discriminant, kEllFiber));
  checks.add_bool("Delta_f_effective", true, classify(cert.discriminant, params).effective);

  // Dimensions and Picard numbers.
  cert.dim_Y = params.dim_Y();
  cert.dim_Z = cert.dim_Y + E.rank() - 1;
  cert.dim_X = cert.dim_Z - 1;
  checks.add("dim_Y", 3 * m + 2, cert.dim_Y);
  checks.add("dim_X", 3 * (m + 1), cert.dim_X);
  cert.rho_Y = 2;
  cert.rho_X = 3;
  cert.rho_difference = cert.rho_X - cert.rho_Y;
  checks.add("rho_X-rho_Y", 1, cert.rho_difference);

  cert.Y_is_fano = antiK_pos.ample;
  cert.requires_nonreduced_fibers = !cert.Y_is_fano;
  checks.add_bool("Y_not_Fano", false, cert.Y_is_fano);

  // Diagnostic only: c_top of the bundle whose sections are the conic matrices.
  {
    const auto ring = SplitBundleOnP::defining_Y(params);
    ChowElement top = ChowElement::constant(ring, 1);
    for (const auto& s : cert.sym2_summands) top = top * ChowElement::divisor(ring, s);
    const int rest = static_cast<int>(params.dim_Y()) - static_cast<int>(cert.sym2_summands.size());
    for (int j = 0; j <= 2; ++j) {
      if (rest - j < 0) continue;
      const ChowElement probe = ChowElement::H(ring).pow(rest - j) * ChowElement::D(ring).pow(j);
      cert.conic_matrix_top_chern.push_back(degree(top * probe));
    }
  }

  cert.checks = std::move(checks.checks);
  cert.prose_claims = {
      "structure theorem for elementary conic bundles: Y is smooth and X sits in a P^2-bundle P(E) over Y as a divisor of relative degree 2 "
      "(taken as input, not recomputed)",
      "Fano conic bundles over a non-Fano target with rho_Y <= 2 are elementary, so "
      "rho_X - rho_Y = 1 (taken as input)",
      "a Fano conic bundle without non-reduced fibres has a Fano target; Y is not "
      "Fano, so non-reduced fibres must occur (checked at sample points by the instance verifier)",
      "E may be taken as f_*O_X(-K_X): true after twisting to E(H), whose tautological class "
      "restricts to -K_X; the pushforward itself is not computed",
      "the transform of G_1 on the flip contracts onto P^1: not chamber-level data, unverified",
      "Exc(phi) = V for the small contraction defined by D: recorded, not verified geometrically",
      "X is smooth: audited at sampled at-risk points only (rank <= 2 fibres and W)",
  };
  const bool top_chern_nonzero = std::any_of(cert.conic_matrix_top_chern.begin(), cert.conic_matrix_top_chern.end(),
                                             [](const mpz_class& c) { return c != 0; });
  if (top_chern_nonzero) {
    cert.prose_claims.push_back(
        "all fibres of f are conics: contradicted, c_6(Sym2(E(-mH))) is nonzero, so every conic matrix "
        "vanishes somewhere on Y and X contains a whole fibre P^2 there");
  }
  return cert;
}

nlohmann::ordered_json ExampleCertificate::to_json() const {
  nlohmann::ordered_json doc;
  doc["m"] = m;
  doc["valid"] = valid();
  nlohmann::ordered_json cls;
  for (const auto& [name, c] : standard_classes) cls[name] = to_string(c);
  doc["classes_Y"] = cls;
  doc["classes_Z"] = {{"antiK_Z", to_string(antiK_Z)},
                      {"X", to_string(X_class)},
                      {"antiK_Z_minus_X", to_string(antiK_Z_minus_X)}};
  auto sym2 = nlohmann::ordered_json::array();
  for (const auto& s : sym2_summands) sym2.push_back(to_string(s));
  doc["sym2_summands"] = sym2;
  doc["conic_twist_M"] = to_string(conic_twist_M);
  doc["discriminant"] = to_string(discriminant);
  doc["dims"] = {{"dim_Y", dim_Y}, {"dim_Z", dim_Z}, {"dim_X", dim_X}};
  doc["picard"] = {{"rho_Y", rho_Y}, {"rho_X", rho_X}, {"delta", rho_difference}};
  doc["Y_is_fano"] = Y_is_fano;
  doc["requires_nonreduced_fibers"] = requires_nonreduced_fibers;
  auto chern = nlohmann::ordered_json::array();
  for (const auto& c : conic_matrix_top_chern) chern.push_back(c.get_str());
  doc["conic_matrix_top_chern_degrees"] = chern;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  }
  doc["checks"] = arr;
  doc["prose_claims"] = prose_claims;
  return doc;
}

std::string ExampleCertificate::to_text() const {
  std::ostringstream out;
  out << "Fano conic bundle certificate, m = " << m << "\n";
  out << "  Y = P(O + O(" << 2 * m << ") + O(" << 2 * m << ")) over P^" << 3 * m << "\n";
  for (const auto& [name, c] : standard_classes) out << "  " << name << " = " << to_string(c) << "\n";
  out << "  -K_Z = " << to_string(antiK_Z) << "\n";
  out << "  X ~ " << to_string(X_class) << "\n";
  out << "  -K_Z - X = " << to_string(antiK_Z_minus_X) << "\n";
  out << "  Sym2(E(-mH)) = " << join_classes(sym2_summands) << "\n";
  out << "  Delta_f = " << to_string(discriminant) << "\n";
  out << "  dim_Y = " << dim_Y << ", dim_Z = " << dim_Z << ", dim_X = " << dim_X << "\n";
  out << "  rho_Y = " << rho_Y << ", rho_X = " << rho_X << ", delta = " << rho_difference << "\n";
  out << "  Y Fano: " << (Y_is_fano ? "yes" : "no")
      << "; non-reduced fibres required: " << (requires_nonreduced_fibers ? "yes" : "no") << "\n";
  out << "  top Chern class of Sym2(E(-mH)) against H^(k-j)D^j:";
  for (const auto& c : conic_matrix_top_chern) out << " " << c.get_str();
  out << "\n";
  out << "checks:\n";
  for (const auto& c : checks) {
    out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": expected " << c.expected
        << ", computed " << c.computed << "\n";
  }
  out << "unverified inputs:\n";
  for (const auto& p : prose_claims) out << "  - " << p << "\n";
  out << "certificate " << (valid() ? "VALID" : "INVALID") << "\n";
  return out.str();
}

}  // namespace fanocb
