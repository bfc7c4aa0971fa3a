#include "singvol/json_io.hpp"

#include <fstream>
#include <sstream>

namespace singvol::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

IVector int_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of integers");
  IVector v;
  for (const auto& x : j) v.push_back(as_int(x, what));
  return v;
}

std::vector<IVector> int_rows(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of integer arrays");
  std::vector<IVector> rows;
  for (const auto& r : j) rows.push_back(int_vector(r, what));
  return rows;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  throw InputError("rational must be a \"p/q\" string or an integer");
}

Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json to_json(const IVector& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

surface::ResolutionGraph graph_from_json(const Json& j) {
  std::vector<surface::Vertex> vs;
  const auto& verts = field(j, "vertices");
  if (!verts.is_array()) throw InputError("\"vertices\" must be an array");
  for (const auto& v : verts) vs.push_back({as_int(field(v, "self"), "self"), as_int(field(v, "genus"), "genus")});
  std::vector<surface::Edge> es;
  if (j.contains("edges")) {
    for (const auto& e : int_rows(j.at("edges"), "edges")) {
      if (e.size() != 3 && e.size() != 2) throw InputError("edge must be [i, j] or [i, j, mult]");
      if (e[0] < 0 || e[1] < 0) throw InputError("edge endpoint must be non-negative");
      es.push_back({static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]), e.size() == 3 ? e[2] : 1});
    }
  }
  return surface::ResolutionGraph(std::move(vs), std::move(es));
}

Json to_json(const surface::ResolutionGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back({{"self", v.self_int}, {"genus", v.genus}});
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.i, e.j, e.mult});
  return j;
}

QVector coeffs_from_json(const Json& j) {
  const auto& c = field(j, "coeffs");
  if (!c.is_array()) throw InputError("\"coeffs\" must be an array");
  QVector v;
  for (const auto& x : c) v.push_back(rational_from_json(x));
  return v;
}

Json coeffs_to_json(const QVector& c) {
  Json j;
  j["coeffs"] = to_json(c);
  return j;
}

toric::ToricCone cone_from_json(const Json& j) {
  long long dim = as_int(field(j, "dim"), "dim");
  if (dim <= 0) throw InputError("\"dim\" must be positive");
  return toric::ToricCone(static_cast<std::size_t>(dim), int_rows(field(j, "rays"), "rays"));
}

Json to_json(const toric::ToricCone& c) {
  Json j;
  j["dim"] = c.dim();
  j["rays"] = Json::array();
  for (const auto& r : c.rays()) j["rays"].push_back(to_json(r));
  return j;
}

toric::MonomialIdeal ideal_from_json(const toric::ToricCone& cone, const Json& j) {
  return toric::MonomialIdeal(cone, int_rows(field(j, "gens"), "gens"));
}

Json to_json(const toric::MonomialIdeal& a) {
  Json j;
  j["gens"] = Json::array();
  for (const auto& u : a.gens()) j["gens"].push_back(to_json(u));
  return j;
}

endo::Matrix matrix_from_json(const Json& j) { return int_rows(field(j, "matrix"), "matrix"); }

IVector parse_int_vector(const std::string& text) {
  IVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long x = std::stoll(item, &used);
      if (used != item.size()) throw InputError("");
      v.push_back(x);
    } catch (const std::exception&) {
      throw InputError("not an integer vector: \"" + text + "\"");
    }
  }
  if (v.empty()) throw InputError("empty vector");
  return v;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace singvol::io
