#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rootsign/rootsign.hpp"

using namespace rootsign;
using io::json;

namespace {

struct Output {
  json data;
  std::string text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse_error, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline JSON or a path to a JSON file
json json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::parse_text(arg);
  return io::parse_text(read_file(arg));
}

std::map<std::int64_t, fiber::FiberDescription> load_fibers(const json& j) {
  std::map<std::int64_t, fiber::FiberDescription> out;
  auto add = [&](const json& x, const std::string& where) {
    auto fd = fiber::fiber_from_json(x, where);
    if (!out.emplace(fd.p, fd).second) io::parse_fail(where, "second fiber for p = " + std::to_string(fd.p));
  };
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) add(j[i], "/" + std::to_string(i));
  } else {
    add(j, "");
  }
  return out;
}

int parse_sign(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  fail(ErrorKind::parse_error, "eps-infinity must be +1 or -1, got '" + s + "'");
}

std::string signed_str(int s) { return s > 0 ? "+1" : "-1"; }

// sqrt(n), -sqrt(n), i sqrt(n), ... when the value is one of those
std::string algebraic_text(const exact::CycloValue& v) {
  const auto sq = (v * v).as_integer();
  if (sq && *sq != 0) {
    const auto n = *sq < 0 ? -*sq : *sq;
    const auto z = v.numeric();
    if (*sq > 0) return std::string(z.real() < 0 ? "-" : "") + "√" + std::to_string(n);
    return std::string(z.imag() < 0 ? "-" : "") + "i√" + std::to_string(n);
  }
  return v.to_string();
}

Output cmd_analyze(const eps::Job& job, bool full) {
  eps::Job j = job;
  eps::EpsilonReport r;
  if (full) {
    // same pipeline, every fiber evaluated from its data
    r = eps::global_sign(j);
    for (auto& pr : r.places) pr.ratio = eps::fibral_ratio(pr.fiber, j.rep, {false, j.max_group});
    int sign = r.eps_infinity;
    exact::NormalizedValue value(exact::CycloValue::integer(r.eps_infinity));
    for (const auto& pr : r.places) sign *= pr.ratio.sign, value = value * pr.ratio.value;
    r.W = sign;
    r.epsilon = value;
    r.assumptions.erase(std::remove_if(r.assumptions.begin(), r.assumptions.end(),
                                       [](const std::string& a) { return a.rfind("det(V^I) is trivial", 0) == 0; }),
                        r.assumptions.end());
  } else {
    r = eps::global_sign(j);
  }
  std::ostringstream t;
  t << "curve " << r.curve << " (minimal " << r.minimal_curve << "), disc " << r.disc_x << "\n";
  t << "torsion";
  for (const auto& p : r.torsion) t << " " << p;
  t << "\nV = " << r.rep << ": " << r.validation.describe() << "\n";
  t << "tameness: " << r.tame.describe() << "\n";
  t << "quotient " << r.quotient << ", disc " << r.disc_y << "\n";
  for (const auto& s : r.subgroups) t << "det(V^I) for I = " << s.subgroup << ": " << (s.det_trivial ? "trivial" : "nontrivial") << "\n";
  for (const auto& pr : r.places) {
    t << "p=" << pr.p << ": X " << pr.x_type << " (" << pr.x_class << "), Y " << pr.y_type << " (" << pr.y_class << "), fiber "
      << pr.fiber.components.size() << " components / " << pr.fiber.crossings.size() << " crossings, ratio " << signed_str(pr.ratio.sign)
      << " (" << pr.ratio.path << ")\n";
  }
  t << "eps_infinity " << signed_str(r.eps_infinity) << "\n";
  t << "W = " << signed_str(r.W) << "\n";
  t << "epsilon = " << r.epsilon.describe() << "\n";
  for (const auto& a : r.assumptions) t << "assumption: " << a << "\n";
  return {eps::to_json(r), t.str()};
}

Output cmd_tate(const std::string& curve, std::int64_t p) {
  if (!exact::is_prime(p)) fail(ErrorKind::parse_error, std::to_string(p) + " is not prime");
  const auto k = ell::tate_algorithm(ell::parse_model(curve), ell::Int(p));
  json j = {{"p", p},
            {"type", k.type.symbol()},
            {"class", k.reduction_class()},
            {"vdisc", k.vdisc},
            {"conductor_exponent", k.conductor_exponent},
            {"tamagawa", k.tamagawa},
            {"components", k.ncomponents},
            {"minimal_model", k.minimal_model.to_string()},
            {"summary", k.summary()}};
  if (k.split) j["split"] = *k.split;
  return {j, k.summary() + "\n"};
}

Output cmd_velu(const std::string& curve, const std::string& points) {
  const auto w = ell::parse_model(curve);
  const auto full = ell::velu_quotient_full(w, ell::generated_subgroup(w, ell::parse_points(points)));
  json j = {{"quotient", full.model.to_string()}, {"raw", full.raw.to_string()}, {"disc", ell::str(ell::discriminant(full.model))}};
  return {j, full.model.to_string() + "\n"};
}

Output cmd_torsion(const std::string& curve) {
  const auto t = ell::torsion_subgroup(ell::parse_model(curve));
  json pts = json::array();
  std::string text = t.structure_string() + ":";
  for (const auto& P : t.points) {
    pts.push_back(P.to_string());
    text += " " + P.to_string();
  }
  return {{{"structure", t.structure}, {"order", t.order()}, {"points", pts}}, text + "\n"};
}

Output cmd_tameness(const std::string& curve, const std::string& points) {
  const auto r = tame::tameness_check(ell::parse_model(curve), ell::parse_points(points));
  std::string text = r.describe() + "\n";
  for (const auto& v : r.primes) {
    text += "p=" + std::to_string(v.p) + " " + v.reduction_class + ", " + std::to_string(v.sylow.size()) + " Sylow points ->";
    for (const auto& s : v.reductions) text += " " + s;
    text += "\n";
  }
  return {tame::to_json(r), text};
}

Output cmd_gauss(std::int64_t p, int degree, const std::string& name) {
  if (!exact::is_prime(p)) fail(ErrorKind::parse_error, std::to_string(p) + " is not prime");
  const auto F = exact::FiniteField::get(p, degree);
  exact::MultCharacter chi;
  if (name == "quadratic") {
    chi = exact::MultCharacter::quadratic(F);
  } else if (name == "trivial") {
    chi = exact::MultCharacter::trivial(F);
  } else {
    const auto colon = name.find(':');
    if (colon == std::string::npos) fail(ErrorKind::parse_error, "character must be 'quadratic', 'trivial' or ORDER:EXP");
    try {
      chi = exact::MultCharacter(F, std::stoll(name.substr(0, colon)), std::stoll(name.substr(colon + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorKind::parse_error, "bad character '" + name + "'");
    }
  }
  const auto norm = exact::gauss_sum(chi);
  const auto alg = exact::gauss_sum_algebraic(chi);
  json j = {{"field", F->name()},
            {"character", {{"order", chi.order()}, {"exp", chi.exponent()}}},
            {"normalized", eps::value_to_json(norm)},
            {"algebraic", algebraic_text(alg)}};
  return {j, norm.describe() + " (normalized); " + algebraic_text(alg) + " (algebraic)\n"};
}

Output cmd_fiber_eval(const std::string& fiber_arg, const std::string& rep_arg, bool full, std::int64_t max_group) {
  const auto fd = fiber::fiber_from_json(json_arg(fiber_arg));
  const auto v = group::rep_from_json(json_arg(rep_arg));
  const auto report = fiber::validate_fiber(fd);
  if (!v.validate().ok()) fail(ErrorKind::not_valid_rep, "V = " + v.to_string() + ": " + v.validate().describe());
  const auto lf = eps::fibral_ratio(fd, v, {!full, max_group});
  std::string text = "fiber at p=" + std::to_string(fd.p) + ": " + report.describe() + "\n";
  for (const auto& f : lf.breakdown) text += "  " + f.name + ": " + f.value.describe() + "\n";
  text += "ratio " + signed_str(lf.sign) + " (" + lf.path + ")\n";
  json j = eps::to_json(lf);
  j["validation"] = {{"valid", report.valid()}, {"errors", report.errors}, {"missing", report.missing}};
  return {j, text};
}

Output cmd_chi_check(const std::string& line_arg, const std::string& chi_arg, int samples, std::uint64_t seed) {
  const auto X = p1::marked_line_from_json(json_arg(line_arg));
  const auto chi = p1::chi_data_from_json(json_arg(chi_arg));
  if (chi.p != X.p) fail(ErrorKind::invalid_field, "character data over F_" + std::to_string(chi.p) + " for a line over F_" + std::to_string(X.p));
  const auto r = p1::check_character_consistency(chi, X, samples, seed);
  const auto c = p1::relative_canonical_cycle(X);
  json j = {{"consistent", r.ok}, {"checked", r.checked}, {"detail", r.detail}, {"canonical_cycle", p1::to_json(c, X.p)},
            {"canonical_degree", c.degree()}};
  std::string text = std::string(r.ok ? "consistent" : "inconsistent") + " after " + std::to_string(r.checked) + " functions";
  if (r.witness) {
    j["witness"] = r.witness->to_string();
    text += "; " + r.detail;
  }
  text += "\ncanonical cycle degree " + std::to_string(c.degree()) + "\n";
  if (r.ok) {
    const auto val = p1::eval_character_on_class(chi, c);
    j["value_on_canonical_cycle"] = eps::value_to_json(exact::NormalizedValue(val));
    text += "chi(c_X,U) = " + exact::NormalizedValue(val).describe() + "\n";
  }
  return {j, text};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signs of global epsilon constants for tame abelian covers of elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "text";
  std::uint64_t seed = 1;
  std::int64_t max_group = 10000;
  app.add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--max-group", max_group, "largest |G| for subgroup enumeration");

  std::string curve, kernel, rep, fibers, eps_inf, job_file;
  bool full = false;
  auto* analyze = app.add_subcommand("analyze", "root number W for a curve, kernel and representation");
  analyze->add_option("job", job_file, "job JSON with curve, kernel, rep and optional fibers, eps_infinity");
  analyze->add_option("--curve", curve, "Weierstrass coefficients [a1,a2,a3,a4,a6]");
  analyze->add_option("--kernel", kernel, "kernel generators, e.g. \"(0,0)\"");
  analyze->add_option("--rep", rep, "representation JSON (inline or file)");
  analyze->add_option("--fibers", fibers, "fiber descriptions JSON (one object or an array)");
  analyze->add_option("--eps-infinity", eps_inf, "archimedean sign +1 or -1");
  analyze->add_flag("--full", full, "evaluate every fiber from its data, without the determinant shortcut");

  std::int64_t prime = 0;
  std::string points, character = "quadratic";
  int degree = 1, samples = 200;
  std::string fiber_file, line_file, chi_file;

  auto* tate = app.add_subcommand("tate", "Kodaira type at a prime");
  tate->add_option("curve", curve)->required();
  tate->add_option("p", prime)->required();
  auto* velu = app.add_subcommand("velu", "quotient by a finite subgroup");
  velu->add_option("curve", curve)->required();
  velu->add_option("points", points)->required();
  auto* torsion = app.add_subcommand("torsion", "rational torsion subgroup");
  torsion->add_option("curve", curve)->required();
  auto* tameness = app.add_subcommand("tameness", "tameness criteria for a subgroup");
  tameness->add_option("curve", curve)->required();
  tameness->add_option("points", points)->required();
  auto* gauss = app.add_subcommand("gauss", "Gauss sum of a character of F_q^*");
  gauss->add_option("p", prime)->required();
  gauss->add_option("character", character, "quadratic, trivial or ORDER:EXP");
  gauss->add_option("--degree", degree, "extension degree f, q = p^f");
  auto* fiber_eval = app.add_subcommand("fiber-eval", "fibral ratio of one fiber");
  fiber_eval->add_option("fiber", fiber_file)->required();
  fiber_eval->add_option("--rep", rep)->required();
  fiber_eval->add_flag("--full", full, "skip the determinant shortcut");
  auto* chi_check = app.add_subcommand("chi-check", "consistency of local character data on a marked line");
  chi_check->add_option("line", line_file)->required();
  chi_check->add_option("chi", chi_file)->required();
  chi_check->add_option("--samples", samples, "random functions to test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out;
    if (*analyze) {
      eps::Job job;
      job.max_group = max_group;
      if (!job_file.empty()) {
        const auto j = json_arg(job_file);
        io::Fields f(j, "");
        job.curve = ell::parse_model(io::as_string(f.required("curve"), f.at("curve")));
        job.kernel = ell::parse_points(io::as_string(f.required("kernel"), f.at("kernel")));
        job.rep = group::rep_from_json(f.required("rep"), f.at("rep"));
        if (const json* x = f.optional("fibers")) job.fibers = load_fibers(*x);
        if (const json* x = f.optional("eps_infinity")) job.eps_infinity = parse_sign(io::as_string(*x, f.at("eps_infinity")));
        f.finish();
      }
      if (!curve.empty()) job.curve = ell::parse_model(curve);
      if (!kernel.empty()) job.kernel = ell::parse_points(kernel);
      if (!rep.empty()) job.rep = group::rep_from_json(json_arg(rep));
      if (!fibers.empty()) job.fibers = load_fibers(json_arg(fibers));
      if (!eps_inf.empty()) job.eps_infinity = parse_sign(eps_inf);
      if (job_file.empty() && (curve.empty() || rep.empty())) fail(ErrorKind::parse_error, "analyze needs a job file or --curve and --rep");
      out = cmd_analyze(job, full);
    } else if (*tate) {
      out = cmd_tate(curve, prime);
    } else if (*velu) {
      out = cmd_velu(curve, points);
    } else if (*torsion) {
      out = cmd_torsion(curve);
    } else if (*tameness) {
      out = cmd_tameness(curve, points);
    } else if (*gauss) {
      out = cmd_gauss(prime, degree, character);
    } else if (*fiber_eval) {
      out = cmd_fiber_eval(fiber_file, rep, full, max_group);
    } else if (*chi_check) {
      out = cmd_chi_check(line_file, chi_file, samples, seed);
    }
    if (output == "json") std::cout << out.data.dump(2) << "\n";
    else std::cout << out.text;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (output == "json") std::cout << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump(2) << "\n";
    return exit_code(e.kind());
  }
}
