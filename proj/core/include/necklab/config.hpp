#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "necklab/verify.hpp"

namespace necklab {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_path(field) {}
  std::string field_path;
};

// Sectioned key = value experiment description:
//   [grid]       central_n_r, central_n_theta, patch_nodes_per_decade,
//                patch_n_theta
//   [sequence]   k_min, k_max (required), body (3 reals), r, delta,
//                inject_neck
//   [bubble]     repeatable: p, q (complex coefficient lists, "(re,im)" or
//                bare reals, ascending), cx, cy, t0, rate
//   [thresholds] eps, theta, tol_ei
//   [output]     dir, seed
struct ExperimentConfig {
  SequenceSetup setup;
  std::string out_dir = "out";
  unsigned long seed = 1;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace necklab
