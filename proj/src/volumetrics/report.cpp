#include "normpack/volumetrics/report.hpp"

#include <charconv>
#include <cmath>

namespace normpack::volumetrics {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const CheckRecord& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return format_double(v);
  };
  return {{"check", r.check},         {"body", r.body},         {"d", r.d},
          {"params", r.params},       {"value", num(r.value)},  {"std_error", num(r.std_error)},
          {"bound", num(r.bound)},    {"violations", r.violations}, {"trials", r.trials},
          {"seed", r.seed},           {"status", r.status}};
}

void write_jsonl(std::ostream& out, std::span<const CheckRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void write_csv(std::ostream& out, std::span<const CheckRecord> records) {
  out << "check,body,d,params,value,std_error,bound,violations,trials,seed,status\n";
  for (const auto& r : records) {
    out << csv_field(r.check) << ',' << csv_field(r.body) << ',' << r.d << ',' << csv_field(r.params.dump()) << ','
        << format_double(r.value) << ',' << format_double(r.std_error) << ',' << format_double(r.bound) << ','
        << r.violations << ',' << r.trials << ',' << r.seed << ',' << r.status << '\n';
  }
}

}  // namespace normpack::volumetrics
