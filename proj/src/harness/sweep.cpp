#include "normpack/harness/sweep.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "normpack/harness/pipeline.hpp"
#include "normpack/volumetrics/report.hpp"

namespace normpack::harness {

namespace {

const char* kKeys[] = {"Delta", "d", "L", "seed", "ik_delta", "codegree_coeff", "target_points"};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("grid: '" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  for (const std::string& part : split(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid: expected key=values in '" + part + "'");
    GridAxis axis;
    axis.key = part.substr(0, eq);
    bool known = false;
    for (const char* k : kKeys) known = known || axis.key == k;
    if (!known) throw std::invalid_argument("grid: unknown key '" + axis.key + "'");
    for (const auto& a : axes)
      if (a.key == axis.key) throw std::invalid_argument("grid: key '" + axis.key + "' repeated");
    const std::string values = part.substr(eq + 1);
    if (values.find(':') != std::string::npos) {
      const auto r = split(values, ':');
      if (r.size() < 2 || r.size() > 3) throw std::invalid_argument("grid: range must be a:b or a:b:step");
      const double lo = parse_number(r[0]), hi = parse_number(r[1]);
      const double step = r.size() == 3 ? parse_number(r[2]) : 1.0;
      if (!(step > 0.0) || hi < lo) throw std::invalid_argument("grid: empty or invalid range '" + values + "'");
      const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::size_t k = 0; k < count; ++k) axis.values.push_back(lo + step * static_cast<double>(k));
    } else {
      for (const std::string& v : split(values, ',')) axis.values.push_back(parse_number(v));
    }
    if (axis.values.empty()) throw std::invalid_argument("grid: axis '" + axis.key + "' has no values");
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw std::invalid_argument("grid: no axes");
  return axes;
}

ExperimentConfig apply_point(const ExperimentConfig& base, const std::vector<GridAxis>& axes,
                             const std::vector<std::size_t>& index) {
  ExperimentConfig c = base;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const double v = axes[a].values[index[a]];
    const std::string& k = axes[a].key;
    if (k == "Delta") {
      c.Delta = v;
    } else if (k == "d") {
      if (v != std::floor(v) || v < 1) throw std::invalid_argument("grid: d must be a positive integer");
      c.d = static_cast<int>(v);
      if (c.body.kind == "hpoly") throw std::invalid_argument("grid: cannot vary d for an explicit polytope");
      c.body.d = c.d;
    } else if (k == "L") {
      c.L = v;
    } else if (k == "seed") {
      c.seed = static_cast<std::uint64_t>(v);
    } else if (k == "ik_delta") {
      c.ik_delta = v;
    } else if (k == "codegree_coeff") {
      c.codegree_coeff = v;
    } else if (k == "target_points") {
      c.target_points = v;
    }
  }
  return c;
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<GridAxis>& axes) {
  if (axes.empty()) throw std::invalid_argument("grid: no axes");
  SweepResult res;
  std::vector<std::size_t> index(axes.size(), 0);
  for (;;) {
    SweepRow row;
    nlohmann::json record;
    try {
      ExperimentConfig cfg = apply_point(base, axes, index);
      row.d = cfg.d;
      row.Delta = cfg.Delta;
      row.L = cfg.L;
      row.seed = cfg.seed;
      const RunOutcome out = run_pipeline(cfg);
      record = out.record;
      row.L = out.domain.L;
      row.points = record["poisson"]["points"].get<std::size_t>();
      row.retained = record["prune"]["retained"].get<std::size_t>();
      row.independent = record["packing"]["count"].get<std::size_t>();
      row.density = record["packing"]["density"].get<double>();
      row.trivial_bound = record["packing"]["trivial_density"].get<double>();
      row.log_ratio = std::log(cfg.Delta) / cfg.Delta;
      row.reference_density = record["packing"]["reference_density"].get<double>();
    } catch (const std::exception& e) {
      row.status = "failed";
      row.error = e.what();
      record = {{"status", "failed"}, {"error", row.error}, {"d", row.d}, {"Delta", row.Delta}, {"seed", row.seed}};
    }
    res.rows.push_back(row);
    res.records.push_back(std::move(record));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++index[a] < axes[a].values.size()) break;
      index[a] = 0;
      if (a == 0) return res;
    }
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  using volumetrics::format_double;
  out << "d,Delta,L,seed,points,retained,independent,density,trivial_bound,log_ratio,reference_density,status,error\n";
  for (const SweepRow& r : rows) {
    std::string err = r.error;
    for (char& ch : err)
      if (ch == '"') ch = '\'';
    out << r.d << ',' << format_double(r.Delta) << ',' << format_double(r.L) << ',' << r.seed << ',' << r.points
        << ',' << r.retained << ',' << r.independent << ',' << format_double(r.density) << ','
        << format_double(r.trivial_bound) << ',' << format_double(r.log_ratio) << ','
        << format_double(r.reference_density) << ',' << r.status << ",\"" << err << "\"\n";
  }
}

}  // namespace normpack::harness
