#include "maps.hpp"

#include "report.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace hyharm::cli {

std::vector<std::string> known_map_names() {
  return {"identity", "inversion", "flat-radial", "direction", "profile"};
}

std::string profile_to_csv(const radial::RadialProfile& profile) {
  std::string out = "t,y,dy\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += format_double(profile.t[i]);
    out += ',';
    out += format_double(profile.y[i]);
    out += ',';
    out += format_double(profile.dy[i]);
    out += '\n';
  }
  return out;
}

radial::RadialProfile read_profile_csv(const std::string& path, int n) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open profile file: " + path);
  radial::RadialProfile profile;
  profile.n = n;
  std::string line;
  bool header = true;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != "t,y,dy") throw std::invalid_argument("profile CSV must start with header t,y,dy");
      header = false;
      continue;
    }
    std::istringstream row(line);
    double t = 0.0, y = 0.0, dy = 0.0;
    char comma1 = 0, comma2 = 0;
    if (!(row >> t >> comma1 >> y >> comma2 >> dy) || comma1 != ',' || comma2 != ',') {
      throw std::invalid_argument("malformed profile row: " + line);
    }
    profile.t.push_back(t);
    profile.y.push_back(y);
    profile.dy.push_back(dy);
    profile.ddy.push_back(radial::ode_rhs(t, y, dy, n));
  }
  if (profile.size() < 2) throw std::invalid_argument("profile CSV needs at least two rows");
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (!(profile.t[i] > profile.t[i - 1])) {
      throw std::invalid_argument("profile abscissae must be strictly increasing");
    }
  }
  return profile;
}

BuiltMap build_map(const MapSpec& spec) {
  BuiltMap built;
  if (spec.name == "identity") {
    built.field = tension::identity_map();
    built.sample_lo = 0.25;
    built.sample_hi = 0.8;
  } else if (spec.name == "inversion") {
    built.field = tension::inversion_map();
    built.sample_lo = 1.2;
    built.sample_hi = 1.8;
  } else if (spec.name == "flat-radial") {
    if (!(spec.flat_a > 0.0 && spec.flat_a < 1.0)) {
      throw std::invalid_argument("flat-radial needs 0 < a < 1");
    }
    auto f = radial::euclidean_radial_map(spec.flat_a, spec.flat_alpha, 3);
    built.field.eval = [f](const Eigen::Vector3d& x) -> Eigen::Vector3d {
      return Eigen::Vector3d(f(x));
    };
    built.sample_lo = spec.flat_a + 0.05 * (1.0 - spec.flat_a);
    built.sample_hi = 1.0 - 0.05 * (1.0 - spec.flat_a);
    built.euclidean = true;
  } else if (spec.name == "direction") {
    // Axis away from the coordinate poles so the angular tension components
    // stay evaluable (they are zero for a constant direction anyway).
    built.field = tension::constant_direction_map(spec.dir_c0, spec.dir_c1,
                                                  Eigen::Vector3d(0.6, 0.0, 0.8));
    built.sample_lo = 0.25;
    built.sample_hi = 0.8;
  } else if (spec.name == "profile") {
    if (spec.profile_file.empty()) {
      throw std::invalid_argument("map 'profile' needs --profile-file");
    }
    auto profile = std::make_shared<radial::RadialProfile>(read_profile_csv(spec.profile_file));
    built.field = tension::radial_sampler_map(
        {[profile](double t) { return profile->sample_y(t); }});
    // Keep finite-difference stencils inside the stored abscissa range.
    const double span = profile->t_back() - profile->t_front();
    built.sample_lo = std::exp(profile->t_front() + 0.05 * span);
    built.sample_hi = std::exp(profile->t_back() - 0.05 * span);
  } else {
    throw std::invalid_argument("unknown map: " + spec.name);
  }
  return built;
}

}  // namespace hyharm::cli
