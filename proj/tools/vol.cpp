#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "normpack/volumetrics/ik.hpp"
#include "normpack/volumetrics/projection.hpp"
#include "normpack/volumetrics/report.hpp"

using namespace normpack;
using volumetrics::format_double;

namespace {

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> v;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    v.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad vector component '" + item + "'");
  }
  return v;
}

void emit(const nlohmann::json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << '\n';
    return;
  }
  for (const auto& item : j.items()) std::cout << item.key() << ": " << item.value().dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumetric quantities of convex bodies"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string info_body;
  std::uint64_t seed = 1, samples = 200000;
  unsigned workers = 1;
  double ik_delta = 0.0;
  auto* info = app.add_subcommand("body-info", "Volume, radii and projection data of a body");
  info->add_option("body", info_body, "Body spec (file or inline JSON)")->required();
  info->add_option("--seed", seed, "Master seed");
  info->add_option("--samples", samples, "Monte Carlo samples");
  info->add_option("--workers", workers, "Worker threads");
  info->add_option("--ik-delta", ik_delta, "Also estimate vol I_K at this threshold (unit-volume body)");

  std::string inter_body, x_text;
  auto* inter = app.add_subcommand("intersection", "vol(K cap (K + x)) by Monte Carlo");
  inter->add_option("body", inter_body, "Body spec (file or inline JSON)")->required();
  inter->add_option("--x", x_text, "Translation, comma separated")->required();
  inter->add_option("--seed", seed, "Master seed");
  inter->add_option("--samples", samples, "Monte Carlo samples");
  inter->add_option("--workers", workers, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  return cli::guarded([&]() -> int {
    nlohmann::json j;
    if (*info) {
      const auto spec = cli::body_argument(info_body);
      const auto body = bodies::make_body(spec);
      const volumetrics::McOptions mc{samples, derive_seed(seed, "body-info"), workers};
      j["body"] = body.describe();
      if (body.has_closed_form_volume()) {
        j["volume"] = body.closed_form_volume();
        j["volume_exact"] = true;
      } else {
        const auto v = volumetrics::mc_volume(body, mc);
        j["volume"] = v.value;
        j["volume_std_error"] = v.std_error;
        j["volume_exact"] = false;
      }
      j["circumradius"] = body.circumradius();
      j["box_half_widths"] = std::vector<double>(body.box_half_widths().begin(), body.box_half_widths().end());
      const auto unit = volumetrics::normalize_with_mc(body, mc);
      j["unit_volume_scale"] = unit.scale();
      std::vector<double> e1(body.dim(), 0.0);
      e1[0] = 1.0;
      const auto h = volumetrics::proj_body_support(unit, e1, mc);
      j["unit_projection_support_e1"] = h.value;
      if (auto v = volumetrics::analytic_polar_projection_volume(unit)) j["unit_polar_projection_volume"] = *v;
      j["ball_polar_projection_volume"] = volumetrics::polar_proj_ball_volume(body.dim()).value;
      if (ik_delta > 0.0) {
        volumetrics::IkOptions o;
        o.seed = derive_seed(seed, "ik");
        o.workers = workers;
        const auto ik = volumetrics::estimate_ik(unit, ik_delta, o);
        j["ik_volume"] = ik.volume.value;
        j["ik_std_error"] = ik.volume.std_error;
        j["Delta_K"] = format_double(ik.delta_k);
        j["ik_flag"] = ik.flag;
      }
    } else {
      const auto body = bodies::make_body(cli::body_argument(inter_body));
      const auto x = parse_vector(x_text);
      const auto est = volumetrics::intersection_volume(body, x, {samples, derive_seed(seed, "intersection"), workers});
      j = {{"body", body.describe()},
           {"x", x},
           {"value", est.value},
           {"std_error", est.std_error},
           {"samples", est.samples},
           {"seed", est.seed}};
    }
    emit(j, format);
    return 0;
  });
}
