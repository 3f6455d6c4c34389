#include "fanocb/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "fanocb/cones.hpp"
#include "fanocb/conicbundle.hpp"
#include "fanocb/coxring.hpp"
#include "fanocb/picard.hpp"
#include "fanocb/verifier.hpp"
#include "json.hpp"

namespace fanocb {

namespace {

enum class Format { Text, Json };

struct RunConfig {
  std::string command;
  std::int64_t m = 2;
  std::uint64_t seed = 42;
  std::size_t n_samples = 100;
  std::int64_t coeff_range = 100;
  Format format = Format::Text;
  bool perturb = false;
  std::string cls;
};

using ordered_json = nlohmann::ordered_json;

void emit(std::ostream& out, Format format, const ordered_json& doc, const std::string& text) {
  if (format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_certificate(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  const ExampleCertificate cert = build_certificate(params);
  emit(out, cfg.format, cert.to_json(), cert.to_text());
  return cert.valid() ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  if (cfg.n_samples < 1) throw InvalidArgument("--samples must be at least 1");
  if (cfg.coeff_range < 1) throw InvalidArgument("--coeff-range must be positive");
  InstanceOptions options;
  options.seed = cfg.seed;
  options.n_samples = cfg.n_samples;
  options.sections.coeff_range = cfg.coeff_range;
  options.sections.perturb = cfg.perturb;
  const InstanceReport report = run_instance(params, options);
  emit(out, cfg.format, report.to_json(), report.to_text());
  return report.pass ? kExitOk : kExitCheckFailed;
}

std::string prime_string(const std::vector<std::size_t>& prime, const std::vector<std::string>& names) {
  std::string s = "<";
  for (std::size_t i = 0; i < prime.size(); ++i) s += (i ? "," : "") + names[prime[i]];
  return s + ">";
}

int cmd_baselocus(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  const DivisorClassY cls = parse_divisor_class(cfg.cls);
  const BaseLocusResult bs = base_locus(cls, params);
  const auto names = CoxGrading(params).variable_names();

  ordered_json doc;
  doc["m"] = cfg.m;
  doc["class"] = to_string(cls);
  doc["effective"] = is_effective(cls, params);
  auto strata = ordered_json::array();
  std::string strata_text;
  for (Stratum s : bs.strata) {
    strata.push_back(to_string(s));
    strata_text += (strata_text.empty() ? "" : " u ") + to_string(s);
  }
  doc["base_locus"] = strata;
  auto primes = ordered_json::array();
  std::string primes_text;
  for (const auto& p : bs.raw_primes) {
    auto vars = ordered_json::array();
    for (std::size_t v : p) vars.push_back(names[v]);
    primes.push_back(vars);
    primes_text += " " + prime_string(p, names);
  }
  doc["minimal_primes"] = primes;

  std::ostringstream text;
  text << strata_text << "\n";
  text << "Bs|" << to_string(cls) << "| on Y (m = " << cfg.m << "), minimal primes:" << primes_text << "\n";
  emit(out, cfg.format, doc, text.str());
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  const DivisorClassY cls = parse_divisor_class(cfg.cls);
  const PositivityReport r = classify(cls, params);
  ordered_json doc;
  doc["m"] = cfg.m;
  doc["class"] = to_string(cls);
  doc["pairing_ell_f"] = pair(cls, kEllFiber);
  doc["pairing_ell_V"] = pair(cls, kEllV);
  doc["effective"] = r.effective;
  doc["big"] = r.big;
  doc["movable"] = r.movable;
  doc["nef"] = r.nef;
  doc["ample"] = r.ample;
  std::ostringstream text;
  text << to_string(cls) << " (m = " << cfg.m << "): " << (r.big ? "big" : "not big") << ", "
       << (r.nef ? "nef" : "not nef") << "\n";
  text << "  .ell_f = " << pair(cls, kEllFiber) << ", .ell_V = " << pair(cls, kEllV) << "\n";
  text << "  effective " << yes_no(r.effective) << ", big " << yes_no(r.big) << ", movable "
       << yes_no(r.movable) << ", nef " << yes_no(r.nef) << ", ample " << yes_no(r.ample) << "\n";
  emit(out, cfg.format, doc, text.str());
  return kExitOk;
}

int cmd_h0(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  const DivisorClassY cls = parse_divisor_class(cfg.cls);
  const mpz_class n = count_sections(cls, params);
  ordered_json doc;
  doc["m"] = cfg.m;
  doc["class"] = to_string(cls);
  doc["h0"] = n.get_str();
  emit(out, cfg.format, doc, "h0(Y, " + to_string(cls) + ") = " + n.get_str() + "\n");
  return kExitOk;
}

int cmd_cones(const RunConfig& cfg, std::ostream& out) {
  const ConstructionParams params(cfg.m);
  const auto degrees = CoxGrading(params).generator_degrees();
  const ChamberDecomposition dec = chamber_decomposition(degrees, params);
  const Cone2D nef = nef_cone(params);
  const Cone2D eff = effective_cone(params);
  const Cone2D mov = movable_cone(degrees);

  ordered_json doc;
  doc["m"] = cfg.m;
  doc["nef"] = to_string(nef);
  doc["effective"] = to_string(eff);
  doc["movable"] = to_string(mov);
  auto walls = ordered_json::array();
  for (const auto& w : dec.walls) walls.push_back(to_string(w));
  doc["rays"] = walls;
  auto interior_walls = ordered_json::array();
  for (std::size_t i = 1; i + 1 < dec.walls.size(); ++i) interior_walls.push_back(to_string(dec.walls[i]));
  doc["walls"] = interior_walls;
  auto chambers = ordered_json::array();
  for (std::size_t i = 0; i < dec.chambers.size(); ++i) {
    chambers.push_back({{"label", to_string(dec.labels[i])}, {"cone", to_string(dec.chambers[i])}});
  }
  doc["chambers"] = chambers;

  std::ostringstream text;
  text << "Divisor cones of Y (m = " << cfg.m << ")\n";
  text << "  Nef = " << to_string(nef) << "\n";
  text << "  Eff = " << to_string(eff) << "\n";
  text << "  Mov = " << to_string(mov) << "\n";
  text << "  walls:";
  for (const auto& w : interior_walls) text << " " << w.get<std::string>();
  text << "\n";
  text << "  chambers:\n";
  for (std::size_t i = 0; i < dec.chambers.size(); ++i) {
    text << "    " << to_string(dec.labels[i]) << " " << to_string(dec.chambers[i]) << "\n";
  }
  emit(out, cfg.format, doc, text.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fano conic bundle over a non-weak-Fano projective bundle: certificates and audits", "fanocb"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "construction parameter, m >= 2")->capture_default_str();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };
  auto add_class = [&](CLI::App* sub) { sub->add_option("--class", cfg.cls, "divisor class such as 2D-4H")->required(); };

  CLI::App* certificate = app.add_subcommand("certificate", "class-level certificate for Y, Z and X");
  add_common(certificate);
  CLI::App* verify = app.add_subcommand("verify", "seeded instance audit of an explicit X");
  add_common(verify);
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--samples", cfg.n_samples, "sample points per family and chart lines")->capture_default_str();
  verify->add_option("--coeff-range", cfg.coeff_range, "random coefficients lie in [-r, r] minus 0")->capture_default_str();
  verify->add_flag("--perturb", cfg.perturb, "add random terms vanishing on V to the special sections");
  CLI::App* baselocus = app.add_subcommand("baselocus", "base locus of a complete linear system on Y");
  CLI::App* classify_cmd = app.add_subcommand("classify", "positivity of a divisor class on Y");
  CLI::App* h0 = app.add_subcommand("h0", "dimension of the space of sections");
  for (CLI::App* sub : {baselocus, classify_cmd, h0}) {
    add_common(sub);
    add_class(sub);
  }
  CLI::App* cones = app.add_subcommand("cones", "nef, effective and movable cones with the chamber structure");
  add_common(cones);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;

  try {
    if (certificate->parsed()) return cmd_certificate(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (baselocus->parsed()) return cmd_baselocus(cfg, out);
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (h0->parsed()) return cmd_h0(cfg, out);
    if (cones->parsed()) return cmd_cones(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fanocb
