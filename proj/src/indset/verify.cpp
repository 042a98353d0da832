#include "normpack/indset/verify.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "normpack/packing/spatial_hash.hpp"

namespace normpack::indset {

namespace {

std::string overlap_message(std::size_t i, std::size_t j, double gauge) {
  std::ostringstream os;
  os.precision(17);
  os << "translates " << i << " and " << j << " overlap: ||c_" << i << " - c_" << j << "||_K = " << gauge << " < 2";
  return os.str();
}

}  // namespace

OverlapError::OverlapError(std::size_t i, std::size_t j, double gauge)
    : std::runtime_error(overlap_message(i, j, gauge)), i_(i), j_(j), gauge_(gauge) {}

PackingSummary verify_packing(const packing::PointSet& centers, const bodies::ConvexBody& body,
                              const packing::TorusDomain& domain, double tol) {
  domain.validate_for(body);
  if (centers.d != domain.d) throw std::invalid_argument("center and torus dimensions differ");
  PackingSummary s;
  s.count = centers.size();
  s.density = static_cast<double>(s.count) * body.volume() / domain.volume();
  s.reference_density = std::ldexp(1.0, -domain.d);
  s.min_pair_gauge = std::numeric_limits<double>::infinity();
  if (s.count < 2) return s;
  const double reach = 2.0 * body.circumradius();
  const packing::SpatialHash hash(centers, domain, reach * (1.0 + 1e-9));
  std::vector<double> z(domain.d);
  for (std::size_t i = 0; i < s.count; ++i) {
    const auto ci = centers.point(i);
    hash.for_each_candidate(ci, reach, [&](std::uint32_t j) {
      if (j <= i) return;
      domain.minimal_image(centers.point(j), ci, z);
      const double g = body.gauge(z);
      if (g < s.min_pair_gauge) s.min_pair_gauge = g;
      if (g < 2.0 * (1.0 - tol)) throw OverlapError(i, j, g);
    });
  }
  return s;
}

void write_packing(std::ostream& out, const bodies::BodySpec& spec, const packing::TorusDomain& domain,
                   const packing::PointSet& centers) {
  out << "# body " << bodies::to_json(spec).dump() << '\n';
  out.precision(17);
  out << "# L " << domain.L << '\n';
  out << "# d " << domain.d << '\n';
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const auto c = centers.point(i);
    for (int k = 0; k < centers.d; ++k) out << (k ? " " : "") << c[k];
    out << '\n';
  }
}

PackingFile read_packing(std::istream& in) {
  PackingFile f;
  bool have_body = false, have_l = false, have_d = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# body ", 0) == 0) {
      f.body = bodies::parse_body_spec(nlohmann::json::parse(line.substr(7)));
      have_body = true;
    } else if (line.rfind("# L ", 0) == 0) {
      f.domain.L = std::stod(line.substr(4));
      have_l = true;
    } else if (line.rfind("# d ", 0) == 0) {
      f.domain.d = std::stoi(line.substr(4));
      have_d = true;
    } else if (line[0] == '#') {
      continue;
    } else {
      if (!have_d) throw std::invalid_argument("packing file: coordinates before '# d' header");
      std::istringstream row(line);
      double v;
      int k = 0;
      while (row >> v) {
        f.centers.coords.push_back(v);
        ++k;
      }
      if (k != f.domain.d || !row.eof())
        throw std::invalid_argument("packing file: line " + std::to_string(lineno) + " does not hold " +
                                    std::to_string(f.domain.d) + " coordinates");
    }
  }
  if (!have_body || !have_l || !have_d) throw std::invalid_argument("packing file: missing header");
  if (f.body.d != f.domain.d) throw std::invalid_argument("packing file: body and torus dimensions differ");
  f.centers.d = f.domain.d;
  return f;
}

}  // namespace normpack::indset
