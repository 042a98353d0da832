#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "normpack/bodies/body_io.hpp"
#include "normpack/packing/poisson.hpp"
#include "normpack/packing/torus.hpp"

namespace normpack::indset {

/// Two translates of K overlap in their interiors.
class OverlapError : public std::runtime_error {
 public:
  OverlapError(std::size_t i, std::size_t j, double gauge);
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }
  double gauge() const { return gauge_; }

 private:
  std::size_t i_, j_;
  double gauge_;
};

struct PackingSummary {
  std::size_t count = 0;
  double density = 0.0;            // count vol(K) / L^d
  double reference_density = 0.0;  // 2^-d
  double min_pair_gauge = 0.0;     // min over pairs of ||c_i - c_j||_K (inf if < 2 points)
};

/// Exhaustive check (spatial hash, all pairs within 2 circumradius) that the
/// translates c_i + K are interior-disjoint on the torus: ||c_i - c_j||_K >=
/// 2 (1 - tol). Throws OverlapError naming the first offending pair.
PackingSummary verify_packing(const packing::PointSet& centers, const bodies::ConvexBody& body,
                              const packing::TorusDomain& domain, double tol = 1e-12);

/// Text format: header lines `# body <json>`, `# L <side>`, `# d <dim>`,
/// then one whitespace-separated coordinate row per center.
void write_packing(std::ostream& out, const bodies::BodySpec& spec, const packing::TorusDomain& domain,
                   const packing::PointSet& centers);

struct PackingFile {
  bodies::BodySpec body;
  packing::TorusDomain domain;
  packing::PointSet centers;
};

PackingFile read_packing(std::istream& in);

}  // namespace normpack::indset
