#include "cubecover/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace cubecover {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!Rat::is_fraction_token(s))
      throw std::runtime_error("not a rational token: '" + s + "'");
    return Rat::parse(s);
  }
  throw std::runtime_error("not a rational token: " + j.dump());
}

Rat param_rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_number_float()) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), j.get<double>());  // exact: doubles are dyadic
    return Rat(q);
  }
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw std::runtime_error("not a rational parameter: " + j.dump());
}

Cover cover_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("planes"))
    throw std::runtime_error("cover: expected object with 'n' and 'planes'");
  Cover c;
  if (!j["n"].is_number_integer()) throw std::runtime_error("cover: 'n' must be an integer");
  c.n = j["n"].get<int>();
  if (!j["planes"].is_array()) throw std::runtime_error("cover: 'planes' must be an array");
  for (const json& pj : j["planes"]) {
    if (!pj.is_object() || !pj.contains("normal") || !pj.contains("offset"))
      throw std::runtime_error("cover: plane needs 'normal' and 'offset'");
    Hyperplane h;
    for (const json& t : pj["normal"]) h.normal.push_back(rat_from_json(t));
    h.offset = rat_from_json(pj["offset"]);
    c.planes.push_back(std::move(h));
  }
  c.validate();
  return c;
}

json cover_to_json(const Cover& c) {
  json planes = json::array();
  for (const Hyperplane& h : c.planes) {
    json normal = json::array();
    for (const Rat& v : h.normal) normal.push_back(rat_to_json(v));
    planes.push_back({{"normal", normal}, {"offset", rat_to_json(h.offset)}});
  }
  return {{"n", c.n}, {"planes", planes}};
}

Cover load_cover(const std::string& path) { return cover_from_json(read_json_file(path)); }

ParamSet params_from_json(const json& j) {
  ParamSet p;
  if (!j.is_object()) throw std::runtime_error("params: expected an object");
  auto grab = [&](const char* key, Rat& slot) {
    if (j.contains(key)) slot = param_rat_from_json(j[key]);
  };
  grab("alpha", p.alpha);
  grab("divisor", p.divisor);
  grab("sparsity_exp", p.sparsity_exp);
  grab("col_mass_exp", p.col_mass_exp);
  grab("col_mass_exp_pre", p.col_mass_exp_pre);
  grab("cond1_exp", p.cond1_exp);
  grab("cond2_factor", p.cond2_factor);
  grab("theta_exp", p.theta_exp);
  grab("m2_exp", p.m2_exp);
  grab("variance_cut_exp", p.variance_cut_exp);
  grab("scale_count_exp", p.scale_count_exp);
  grab("c0", p.c0);
  if (j.contains("scale_count_override")) {
    if (j["scale_count_override"].is_null())
      p.scale_count_override.reset();
    else
      p.scale_count_override = j["scale_count_override"].get<int>();
  }
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("max_tries")) p.max_tries = j["max_tries"].get<int>();

  static const char* known[] = {"alpha", "divisor", "sparsity_exp", "col_mass_exp",
                                "col_mass_exp_pre", "cond1_exp", "cond2_factor", "theta_exp",
                                "m2_exp", "variance_cut_exp", "scale_count_exp",
                                "scale_count_override", "c0", "seed", "max_tries"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw std::runtime_error("params: unknown key '" + it.key() + "'");
  }
  p.validate();
  return p;
}

ParamSet load_params(const std::string& path) { return params_from_json(read_json_file(path)); }

json params_to_json(const ParamSet& p) {
  json j{{"alpha", rat_to_json(p.alpha)},
         {"divisor", rat_to_json(p.divisor)},
         {"sparsity_exp", rat_to_json(p.sparsity_exp)},
         {"col_mass_exp", rat_to_json(p.col_mass_exp)},
         {"col_mass_exp_pre", rat_to_json(p.col_mass_exp_pre)},
         {"cond1_exp", rat_to_json(p.cond1_exp)},
         {"cond2_factor", rat_to_json(p.cond2_factor)},
         {"theta_exp", rat_to_json(p.theta_exp)},
         {"m2_exp", rat_to_json(p.m2_exp)},
         {"variance_cut_exp", rat_to_json(p.variance_cut_exp)},
         {"scale_count_exp", rat_to_json(p.scale_count_exp)},
         {"c0", rat_to_json(p.c0)},
         {"seed", p.seed},
         {"max_tries", p.max_tries}};
  if (p.scale_count_override) j["scale_count_override"] = *p.scale_count_override;
  return j;
}

json vertex_to_json(const Vertex& v) {
  json a = json::array();
  for (std::int8_t s : v.signs) a.push_back(static_cast<int>(s));
  return a;
}

Vertex vertex_from_json(const json& j) {
  Vertex v;
  if (!j.is_array()) throw std::runtime_error("vertex: expected an array of +1/-1");
  for (const json& e : j) {
    int s = e.get<int>();
    if (s != 1 && s != -1) throw std::runtime_error("vertex: entries must be +1 or -1");
    v.signs.push_back(static_cast<std::int8_t>(s));
  }
  v.n = static_cast<int>(v.signs.size());
  return v;
}

}  // namespace cubecover
