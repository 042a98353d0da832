#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "normpack/bodies/convex_body.hpp"

namespace normpack::bodies {

/// User-facing body description, e.g.
///   {"kind": "lp", "d": 3, "p": "inf", "scale": 0.5}
///   {"kind": "hpoly", "d": 2, "scale": 1, "facets": [{"normal": [1, 0], "offset": 1}, ...]}
///   {"kind": "simplex_diff", "d": 3, "scale": 1}
struct BodySpec {
  std::string kind = "lp";
  int d = 2;
  double p = 2.0;  // infinity encodes "inf"
  double scale = 1.0;
  HPolytopeSpec facets;
};

ConvexBody make_body(const BodySpec& spec);

/// Throws std::invalid_argument on malformed input or asymmetric facets.
BodySpec parse_body_spec(const nlohmann::json& j);
nlohmann::json to_json(const BodySpec& spec);

BodySpec load_body_spec(const std::string& path);

/// Symmetric polytope with `pairs` random facet pairs (+-a, b), unit normals
/// uniform on the sphere and offsets uniform in [0.8, 1.2]. Requires
/// pairs >= dim; redraws until the facets bound a body.
HPolytopeSpec random_symmetric_polytope(int dim, int pairs, std::uint64_t seed);

}  // namespace normpack::bodies
