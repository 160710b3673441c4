#pragma once

#include <hyharm/radial.hpp>
#include <hyharm/tension.hpp>

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hyharm::cli {

// Map selection for the tension subcommand.
//
//   identity     u(x) = x                         (harmonic, |x| < 1)
//   inversion    u(x) = x/|x|^2                   (harmonic, |x| > 1)
//   flat-radial  Euclidean-harmonic radial map    (flat Laplacian check)
//   direction    u(x) = (c0 + c1 |x|) e           (non-harmonic control)
//   profile      radial map from a solved y(t) profile CSV
struct MapSpec {
  std::string name = "identity";
  double flat_a = 0.3;       // flat-radial: inner domain radius
  double flat_alpha = 0.4;   // flat-radial: inner image radius
  double dir_c0 = 0.3;       // direction: constant term
  double dir_c1 = 0.2;       // direction: linear term
  std::string profile_file;  // profile: CSV with columns t,y,dy
};

struct BuiltMap {
  tension::MapField field;
  double sample_lo = 0.0;  // default sampling annulus radii
  double sample_hi = 0.0;
  // Flat-radial maps are harmonic for the flat metric, not the hyperbolic
  // one, so their residual is the componentwise flat Laplacian.
  bool euclidean = false;
};

BuiltMap build_map(const MapSpec& spec);

std::vector<std::string> known_map_names();

// Profile CSV round-trip (columns t,y,dy; the second derivative is
// reconstructed from the differential equation when reading).
std::string profile_to_csv(const radial::RadialProfile& profile);
radial::RadialProfile read_profile_csv(const std::string& path, int n = 3);

}  // namespace hyharm::cli
