#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recon/farey.hpp"

namespace recon {

struct Violation {
  std::string location;
  std::string relation;  // "triangle", "flip", "range" or "helling"
  double residual = 0.0;
  std::vector<Slope> key;  // sort key; empty for word checks
};

struct VerificationReport {
  std::size_t checked_triangles = 0;
  std::size_t checked_flips = 0;
  std::size_t checked_pairs = 0;  // helling_check only
  std::vector<Violation> violations;
  double max_residual = 0.0;

  bool ok() const { return violations.empty(); }

  // Records a residual that passed; keeps max_residual honest.
  void observe(double residual);
  void fail(Violation v);
  // Sorts violations by (key, relation, location) so output is independent of
  // evaluation order.
  void finalize();
};

}  // namespace recon
