#include "normpack/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "normpack/common/rng.hpp"
#include "normpack/indset/independent_set.hpp"

namespace normpack::harness {

using nlohmann::json;

ExperimentConfig desk_defaults(int d) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  ExperimentConfig c;
  c.d = d;
  c.body.kind = "lp";
  c.body.d = d;
  c.body.p = 2.0;
  c.Delta = 6.0 * std::ldexp(1.0, d);
  return c;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("config: " + what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: field '") + key + "' has the wrong type");
  }
}

}  // namespace

void validate(const ExperimentConfig& c) {
  require(c.d >= 1, "d must be positive");
  require(c.body.d == c.d, "body dimension differs from d");
  require(c.L == 0.0 || finite_positive(c.L), "L must be positive or \"auto\"");
  require(finite_positive(c.target_points), "target_points must be positive");
  require(finite_positive(c.Delta), "Delta must be positive");
  require(finite_positive(c.ik_delta), "ik_delta must be positive");
  require(finite_positive(c.codegree_coeff), "codegree_coeff must be positive");
  require(c.mc_samples >= 1000, "mc_samples must be at least 1000");
  require(c.ik_samples > 0, "ik_samples must be positive");
  require(c.classifier_samples > 0, "classifier_samples must be positive");
  require(c.classifier_escalations >= 0, "classifier_escalations must be non-negative");
  require(finite_positive(c.max_expected_points), "max_expected_points must be positive");
  indset::parse_order_policy(c.order_policy);
  if (c.L > 0.0 && c.body.kind != "hpoly") {
    const bodies::ConvexBody unit = bodies::normalize_to_unit_volume(bodies::make_body(c.body));
    require(c.L > 8.0 * unit.circumradius(),
            "L must exceed 4 * circumradius(2K) = " + std::to_string(8.0 * unit.circumradius()));
  } else {
    bodies::make_body(c.body);
  }
}

ExperimentConfig parse_config(const json& j) {
  require(j.is_object(), "must be a JSON object");
  require(j.contains("seed"), "seed is mandatory");
  require(j.contains("d") || (j.contains("body") && j["body"].contains("d")), "d is mandatory");
  const int d = j.contains("d") ? j["d"].get<int>() : j["body"]["d"].get<int>();
  ExperimentConfig c = desk_defaults(d);
  if (j.contains("body")) {
    json body = j["body"];
    require(body.is_object(), "body must be an object");
    if (!body.contains("d")) body["d"] = d;
    c.body = bodies::parse_body_spec(body);
  }
  if (j.contains("L")) {
    const json& l = j["L"];
    if (l.is_string()) {
      require(l.get<std::string>() == "auto", "L must be a number or \"auto\"");
      c.L = 0.0;
    } else {
      read(j, "L", c.L);
      require(c.L > 0.0, "L must be positive or \"auto\"");
    }
  }
  read(j, "target_points", c.target_points);
  read(j, "Delta", c.Delta);
  read(j, "ik_delta", c.ik_delta);
  read(j, "codegree_coeff", c.codegree_coeff);
  read(j, "mc_samples", c.mc_samples);
  read(j, "ik_samples", c.ik_samples);
  read(j, "classifier_samples", c.classifier_samples);
  read(j, "classifier_escalations", c.classifier_escalations);
  read(j, "order_policy", c.order_policy);
  read(j, "ls_budget", c.ls_budget);
  read(j, "max_expected_points", c.max_expected_points);
  read(j, "seed", c.seed);
  read(j, "workers", c.workers);
  read(j, "output", c.output);
  static const char* known[] = {"body",       "d",          "L",          "target_points",
                                "Delta",      "ik_delta",   "codegree_coeff", "mc_samples",
                                "ik_samples", "classifier_samples", "classifier_escalations",
                                "order_policy", "ls_budget", "max_expected_points", "seed",
                                "workers",    "output"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    require(ok, "unknown field '" + item.key() + "'");
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

json canonical_json(const ExperimentConfig& c) {
  json j;
  j["body"] = bodies::to_json(c.body);
  j["d"] = c.d;
  if (c.L > 0.0)
    j["L"] = c.L;
  else
    j["L"] = "auto";
  j["target_points"] = c.target_points;
  j["Delta"] = c.Delta;
  j["ik_delta"] = c.ik_delta;
  j["codegree_coeff"] = c.codegree_coeff;
  j["mc_samples"] = c.mc_samples;
  j["ik_samples"] = c.ik_samples;
  j["classifier_samples"] = c.classifier_samples;
  j["classifier_escalations"] = c.classifier_escalations;
  j["order_policy"] = c.order_policy;
  j["ls_budget"] = c.ls_budget;
  j["max_expected_points"] = c.max_expected_points;
  j["seed"] = c.seed;
  return j;
}

json to_json(const ExperimentConfig& c) {
  json j = canonical_json(c);
  j["workers"] = c.workers;
  j["output"] = c.output;
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_json(c).dump())));
  return buf;
}

}  // namespace normpack::harness
