#include "recon/report.hpp"

#include <algorithm>
#include <tuple>

namespace recon {

void VerificationReport::observe(double residual) { max_residual = std::max(max_residual, residual); }

void VerificationReport::fail(Violation v) {
  observe(v.residual);
  violations.push_back(std::move(v));
}

void VerificationReport::finalize() {
  std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.key, a.relation, a.location) < std::tie(b.key, b.relation, b.location);
  });
}

}  // namespace recon
