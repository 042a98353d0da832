#include "normpack/bodies/body_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace normpack::bodies {

using nlohmann::json;

ConvexBody make_body(const BodySpec& spec) {
  if (spec.kind == "lp") return ConvexBody::lp_ball(spec.d, spec.p, spec.scale);
  if (spec.kind == "hpoly") return ConvexBody::hpolytope(spec.facets, spec.d, spec.scale);
  if (spec.kind == "simplex_diff") return ConvexBody::simplex_difference(spec.d, spec.scale);
  throw std::invalid_argument("unknown body kind '" + spec.kind + "'");
}

BodySpec parse_body_spec(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("body spec must be a JSON object");
  BodySpec s;
  try {
    s.kind = j.at("kind").get<std::string>();
    s.d = j.at("d").get<int>();
    s.scale = j.value("scale", 1.0);
    if (s.kind == "lp") {
      const json& p = j.at("p");
      if (p.is_string()) {
        if (p.get<std::string>() != "inf") throw std::invalid_argument("p must be a number or \"inf\"");
        s.p = ConvexBody::kInfinity;
      } else {
        s.p = p.get<double>();
      }
    }
    if (s.kind == "hpoly") {
      for (const json& f : j.at("facets")) {
        s.facets.normals.push_back(f.at("normal").get<std::vector<double>>());
        s.facets.offsets.push_back(f.at("offset").get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed body spec: ") + e.what());
  }
  if (s.kind != "lp" && s.kind != "hpoly" && s.kind != "simplex_diff")
    throw std::invalid_argument("unknown body kind '" + s.kind + "'");
  if (s.kind == "hpoly") validate_symmetric(s.facets, s.d);
  return s;
}

json to_json(const BodySpec& s) {
  json j;
  j["kind"] = s.kind;
  j["d"] = s.d;
  if (s.kind == "lp") {
    if (std::isinf(s.p))
      j["p"] = "inf";
    else
      j["p"] = s.p;
  }
  j["scale"] = s.scale;
  if (s.kind == "hpoly") {
    json facets = json::array();
    for (std::size_t i = 0; i < s.facets.normals.size(); ++i)
      facets.push_back({{"normal", s.facets.normals[i]}, {"offset", s.facets.offsets[i]}});
    j["facets"] = facets;
  }
  return j;
}

BodySpec load_body_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open body file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("body file " + path + " is not valid JSON: " + e.what());
  }
  return parse_body_spec(j);
}

HPolytopeSpec random_symmetric_polytope(int dim, int pairs, std::uint64_t seed) {
  if (dim < 1 || pairs < dim) throw std::invalid_argument("need at least dim facet pairs");
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = make_rng(derive_seed(seed, attempt));
    HPolytopeSpec spec;
    for (int k = 0; k < pairs; ++k) {
      Vec a(dim);
      random_direction(rng, a);
      const double b = uniform(rng, 0.8, 1.2);
      spec.normals.push_back(a);
      spec.offsets.push_back(b);
      spec.normals.push_back(scaled(a, -1.0));
      spec.offsets.push_back(b);
    }
    try {
      validate_symmetric(spec, dim);
      return spec;
    } catch (const std::invalid_argument&) {
      if (attempt > 100) throw;
    }
  }
}

}  // namespace normpack::bodies
