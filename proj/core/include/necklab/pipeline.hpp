#pragma once

#include <string>
#include <vector>

#include "necklab/config.hpp"

namespace necklab {

struct PipelineResult {
  std::vector<std::string> failures;  // named failed contracts
  bool ok() const { return failures.empty(); }
};

// name in {lorentz, hopf, harm, wente, synth, tree, verify, all}; writes
// CSV/JSON reports under out_dir. Deterministic for a fixed (config, seed).
PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const std::string& name,
                            const std::string& out_dir, unsigned long seed);

}  // namespace necklab
