#include "singvol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>

#include "singvol/endo.hpp"
#include "singvol/json_io.hpp"
#include "singvol/oracle.hpp"
#include "singvol/surface.hpp"
#include "singvol/toric.hpp"

namespace singvol::cli {

namespace {

using io::Json;

void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "table") {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      out << std::left << std::setw(static_cast<int>(width) + 2) << k
          << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return;
  }
  out << j.dump(2) << "\n";
}

Json report_json(const endo::Report& r) {
  Json j;
  j["passed"] = r.passed();
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return j;
}

// Options shared by the leaf commands; only the ones a command registers are read.
struct Options {
  std::string format = "json";
  std::string graph, divisor, cone, ideal, matrix, at, v, w, family, type, cycle, kase, file;
  std::vector<std::string> ideals;
  long long g = 0, d = 1, e = 1, m = 1;
  unsigned kmax = 20;
  bool oracle = false;
};

std::function<Json()> surface_cmd(const std::string& which, const Options& o) {
  return [which, &o]() -> Json {
    auto g = io::graph_from_json(io::read_json_file(o.graph));
    Json j;
    if (which == "volume") {
      auto cls = surface::classify(g);
      auto z = surface::zariski_decompose(g, cls.log_discrepancy);
      j["volume"] = to_string(surface::volume(g));
      j["class"] = surface::to_string(cls.kind);
      j["log_discrepancy"] = io::to_json(cls.log_discrepancy.coeffs);
      j["nef_part"] = io::to_json(z.nef_part.coeffs);
      j["neg_part"] = io::to_json(z.neg_part.coeffs);
    } else if (which == "classify") {
      auto cls = surface::classify(g);
      j["class"] = surface::to_string(cls.kind);
      j["log_discrepancy"] = io::to_json(cls.log_discrepancy.coeffs);
    } else if (which == "pullback") {
      QVector rhs = o.divisor.empty() ? surface::canonical_intersections(g)
                                      : io::coeffs_from_json(io::read_json_file(o.divisor));
      j["rhs"] = io::to_json(rhs);
      j["pullback"] = io::to_json(surface::numerical_pullback(g, rhs).coeffs);
    } else {
      surface::ExcDivisor d = o.divisor.empty() ? surface::log_discrepancy_divisor(g)
                                                : surface::ExcDivisor{io::coeffs_from_json(io::read_json_file(o.divisor))};
      auto z = surface::zariski_decompose(g, d);
      j["nef_part"] = io::to_json(z.nef_part.coeffs);
      j["neg_part"] = io::to_json(z.neg_part.coeffs);
      j["local_volume"] = to_string(-surface::intersect(g, z.nef_part, z.nef_part));
    }
    return j;
  };
}

Json surface_standard(const Options& o) {
  if (o.family == "cone") return io::to_json(surface::cone_graph(o.g, o.d));
  if (o.family == "elliptic") return io::to_json(surface::simple_elliptic(o.d));
  if (o.family == "duval") return io::to_json(surface::duval(o.type));
  if (o.family == "cusp") return io::to_json(surface::cusp_cycle(io::parse_int_vector(o.cycle)));
  throw InputError("unknown family \"" + o.family + "\"; expected cone, elliptic, duval or cusp");
}

toric::ToricDivisor load_divisor(const std::string& path) {
  return {io::coeffs_from_json(io::read_json_file(path))};
}

Json toric_env(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  auto ev = toric::EnvelopeFunction(cone, load_divisor(o.divisor)).evaluate(io::parse_int_vector(o.at));
  Json j;
  j["value"] = to_string(ev.value);
  j["optimal_m"] = io::to_json(ev.optimal_m);
  return j;
}

Json toric_numcartier(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  auto r = toric::is_numerically_cartier(cone, load_divisor(o.divisor));
  Json j;
  j["numerically_cartier"] = r.cartier;
  if (r.linear_form) j["linear_form"] = io::to_json(*r.linear_form);
  if (r.witness) {
    j["witness"] = io::to_json(*r.witness);
    j["gap"] = to_string(r.gap);
  }
  return j;
}

Json toric_mult(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  auto a = io::ideal_from_json(cone, io::read_json_file(o.ideal));
  Json j;
  j["multiplicity"] = to_string(toric::samuel_multiplicity(cone, a));
  j["generators"] = io::to_json(a)["gens"];
  if (o.oracle) {
    auto rep = oracle::multiplicity_estimate(cone, a, o.kmax);
    j["oracle"] = {{"kmax", o.kmax},
                   {"colength", rep.colengths.back()},
                   {"fitted", to_string(rep.final_fitted())},
                   {"finite_difference", to_string(rep.finite_difference)},
                   {"error_constant", to_string(rep.error_constant)}};
  }
  return j;
}

Json toric_mixed(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  std::vector<toric::MonomialIdeal> ideals;
  for (const auto& p : o.ideals) ideals.push_back(io::ideal_from_json(cone, io::read_json_file(p)));
  Rational e = toric::mixed_multiplicity(cone, ideals);
  Json j;
  j["mixed_multiplicity"] = to_string(e);
  j["intersection_number"] = to_string(-e);
  return j;
}

Json toric_defect(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  auto a = toric::defect_ideal(cone, load_divisor(o.divisor), o.m);
  Json j;
  j["generators"] = io::to_json(a)["gens"];
  if (!o.at.empty()) {
    Rational z = toric::z_value(cone, a, io::parse_int_vector(o.at));
    j["z_value"] = to_string(z);
    j["normalized"] = to_string(z / static_cast<long>(o.m));
  }
  return j;
}

Json toric_izumi(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  Json j;
  j["c"] = to_string(toric::izumi_constant(cone, io::parse_int_vector(o.v), io::parse_int_vector(o.w)));
  return j;
}

Json toric_logdisc(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  auto ld = toric::log_discrepancy_value(cone, io::parse_int_vector(o.at));
  Json j;
  j["value"] = to_string(ld.value);
  j["optimal_m"] = io::to_json(ld.optimal_m);
  j["certificate_m"] = io::to_json(ld.nonnegativity_certificate);
  return j;
}

// Returns the report and whether it passed.
std::pair<Json, bool> endo_check(const Options& o) {
  auto cone = io::cone_from_json(io::read_json_file(o.cone));
  endo::ToricEndo e(io::matrix_from_json(io::read_json_file(o.matrix)), cone);
  endo::Report all;
  if (!o.divisor.empty()) {
    auto r = endo::check_push_pull(e, toric::sample_points(cone), load_divisor(o.divisor));
    all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
  }
  if (!o.ideals.empty()) {
    std::vector<toric::MonomialIdeal> ideals;
    for (const auto& p : o.ideals) ideals.push_back(io::ideal_from_json(cone, io::read_json_file(p)));
    if (ideals.size() == 1) ideals.assign(cone.dim(), ideals.front());
    auto r = endo::check_intersection_scaling(e, ideals);
    all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
  }
  Json j;
  j["degree"] = endo::degree(e);
  Json rep = report_json(all);
  j["passed"] = rep["passed"];
  j["checks"] = rep["checks"];
  return {j, all.passed()};
}

std::pair<Json, bool> endo_monotonic(const Options& o) {
  endo::Report r;
  if (o.kase == "surface_cover") {
    r = endo::volume_monotonicity(endo::SurfaceCover{o.g, o.d, o.e});
  } else if (o.kase == "toric") {
    auto cone = io::cone_from_json(io::read_json_file(o.cone));
    r = endo::volume_monotonicity(endo::ToricEndo(io::matrix_from_json(io::read_json_file(o.matrix)), cone));
  } else {
    throw InputError("unknown case \"" + o.kase + "\"; expected surface_cover or toric");
  }
  Json j = report_json(r);
  return {j, r.passed()};
}

Json validate(const std::string& path) {
  Json in = io::read_json_file(path);
  Json j;
  if (in.contains("vertices")) {
    auto g = io::graph_from_json(in);
    j["kind"] = "graph";
    j["vertices"] = g.size();
  } else if (in.contains("rays")) {
    auto c = io::cone_from_json(in);
    j["kind"] = "cone";
    j["facet_normals"] = Json::array();
    for (const auto& f : c.facet_normals()) j["facet_normals"].push_back(io::to_json(f));
    j["isolated"] = c.isolated_checked() ? "checked" : "user-asserted";
  } else if (in.contains("gens")) {
    for (const auto& u : in.at("gens"))
      if (!u.is_array()) throw InputError("\"gens\" must be an array of integer arrays");
    j["kind"] = "ideal";
  } else if (in.contains("coeffs")) {
    io::coeffs_from_json(in);
    j["kind"] = "divisor";
  } else if (in.contains("matrix")) {
    auto m = io::matrix_from_json(in);
    for (const auto& r : m)
      if (r.size() != m.size()) throw InputError("matrix must be square");
    j["kind"] = "endo";
  } else {
    throw InputError("unrecognised document: expected a graph, cone, ideal, divisor or endo");
  }
  j["ok"] = true;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact volumes and b-divisor calculus for isolated singularities", "singvol"};
  app.require_subcommand(1);
  Options o;
  std::function<std::pair<Json, bool>()> action;
  auto plain = [&](std::function<Json()> f) {
    return [&action, f]() { action = [f]() { return std::pair<Json, bool>{f(), true}; }; };
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  };

  auto* surface = app.add_subcommand("surface", "Surface singularities from resolution graphs");
  surface->require_subcommand(1);
  for (const std::string which : {"volume", "classify", "pullback", "zariski"}) {
    auto* c = surface->add_subcommand(which);
    c->add_option("--graph", o.graph)->required();
    if (which == "pullback" || which == "zariski") c->add_option("--divisor", o.divisor);
    add_format(c);
    c->callback(plain(surface_cmd(which, o)));
  }
  {
    auto* c = surface->add_subcommand("standard", "Emit a standard resolution graph");
    c->add_option("--family", o.family)->required();
    c->add_option("--g", o.g);
    c->add_option("--d", o.d);
    c->add_option("--type", o.type);
    c->add_option("--cycle", o.cycle);
    add_format(c);
    c->callback(plain([&o] { return surface_standard(o); }));
  }

  auto* toric = app.add_subcommand("toric", "Affine toric singularities");
  toric->require_subcommand(1);
  auto toric_leaf = [&](const std::string& name, std::function<Json()> f) {
    auto* c = toric->add_subcommand(name);
    c->add_option("--cone", o.cone)->required();
    add_format(c);
    c->add_flag("--oracle", o.oracle, "Cross-check with the lattice-counting oracle")->group("");
    c->callback(plain(std::move(f)));
    return c;
  };
  {
    auto* c = toric_leaf("env", [&o] { return toric_env(o); });
    c->add_option("--divisor", o.divisor)->required();
    c->add_option("--at", o.at)->required();
  }
  toric_leaf("numcartier", [&o] { return toric_numcartier(o); })->add_option("--divisor", o.divisor)->required();
  {
    auto* c = toric_leaf("mult", [&o] { return toric_mult(o); });
    c->add_option("--ideal", o.ideal)->required();
    c->add_option("--kmax", o.kmax)->group("");
  }
  toric_leaf("mixed", [&o] { return toric_mixed(o); })->add_option("--ideals", o.ideals)->required();
  {
    auto* c = toric_leaf("defect", [&o] { return toric_defect(o); });
    c->add_option("--divisor", o.divisor)->required();
    c->add_option("--m", o.m);
    c->add_option("--at", o.at);
  }
  {
    auto* c = toric_leaf("izumi", [&o] { return toric_izumi(o); });
    c->add_option("--v", o.v)->required();
    c->add_option("--w", o.w)->required();
  }
  toric_leaf("logdisc", [&o] { return toric_logdisc(o); })->add_option("--at", o.at)->required();

  auto* endo = app.add_subcommand("endo", "Finite toric endomorphisms");
  endo->require_subcommand(1);
  {
    auto* c = endo->add_subcommand("check");
    c->add_option("--cone", o.cone)->required();
    c->add_option("--matrix", o.matrix)->required();
    c->add_option("--divisor", o.divisor);
    c->add_option("--ideal,--ideals", o.ideals);
    add_format(c);
    c->callback([&] { action = [&o] { return endo_check(o); }; });
  }
  {
    auto* c = endo->add_subcommand("monotonic");
    c->add_option("--case", o.kase)->required();
    c->add_option("--g", o.g);
    c->add_option("--d", o.d);
    c->add_option("--e", o.e);
    c->add_option("--cone", o.cone);
    c->add_option("--matrix", o.matrix);
    add_format(c);
    c->callback([&] { action = [&o] { return endo_monotonic(o); }; });
  }

  auto* val = app.add_subcommand("validate", "Check an input file");
  val->add_option("file", o.file)->required();
  add_format(val);
  val->callback(plain([&o] { return validate(o.file); }));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << "error: " << msg << "\n";
    Json j;
    j["ok"] = false;
    j["error"] = kind;
    j["message"] = msg;
    emit(j, o.format, out);
    return code;
  };
  try {
    auto [j, passed] = action();
    emit(j, o.format, out);
    return passed ? kExitOk : kExitDomain;
  } catch (const InputError& e) {
    return fail(kExitMalformed, "malformed_input", e.what());
  } catch (const DomainError& e) {
    return fail(kExitDomain, "domain_error", e.what());
  } catch (const UnsupportedError& e) {
    return fail(kExitUnsupported, "unsupported", e.what());
  }
}

}  // namespace singvol::cli
