#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsqg/eulerian.hpp"

namespace gsqg {

// Parsed run configuration. Sectioned key=value text; see docs/config.md for
// the grammar. Unset keys take the defaults below.
struct RunConfig {
  // [domain]
  int n = 128;
  double length = two_pi;
  // [physics]
  double beta = 0.0;
  double s = 2.5;
  double alpha = 0.6;
  // [solver]
  double cfl = 0.5;
  double T = 1.0;
  std::vector<double> outputs;  // defaults to {T}
  Formulation formulation = Formulation::Transport;
  // [experiment]
  std::string kind = "simulate";  // simulate | nonuniform | holder | dichotomy | inequalities
  std::string initial = "taylor_green";  // taylor_green | random_smooth | bump
  int max_mode = 4;
  double amplitude = 1.0;
  // nonuniform / dichotomy knobs
  double R = 0.4;
  std::vector<int> n_list{2, 4, 8, 16};
  double target_displacement = 4.0;
  double base_amplitude = 0.05;
  // holder knobs
  double cutoff_radius = 0.5;
  double h0 = 0.2;
  double T0 = 0.4;
  int n_boosts = 5;
  // [output]
  std::string out_dir = "out";
  std::uint64_t seed = 1;

  bool operator==(const RunConfig&) const = default;
};

// Throws Error(ParseError) with the line number on bad syntax and
// Error(ValidationError) naming the key and constraint on bad values.
RunConfig parse_config(const std::string& text);

std::string serialize(const RunConfig& cfg);

}  // namespace gsqg
