// SPDX-License-Identifier: Apache-2.0
#include "xmd/flow/trajectory_io.hpp"

#include <fmt/format.h>

#include "xmd/core/duality.hpp"

namespace xmd {

void write_trajectory_csv(std::ostream& os, const Generator& gen, const Objective& obj,
                          const std::vector<FlowState>& trajectory, const std::optional<Vector>& theta_star) {
  const Index d = gen.dim();
  std::string header = "t,tau";
  for (Index i = 1; i <= d; ++i) header += fmt::format(",theta_{}", i);
  for (Index i = 1; i <= d; ++i) header += fmt::format(",eta_{}", i);
  header += ",f,E\n";
  os << header;
  for (const FlowState& s : trajectory) {
    std::string row = fmt::format("{:.17g},{:.17g}", s.t, s.tau);
    for (Index i = 0; i < d; ++i) row += fmt::format(",{:.17g}", s.theta[i]);
    for (Index i = 0; i < d; ++i) row += fmt::format(",{:.17g}", s.eta[i]);
    row += fmt::format(",{:.17g},", obj.value(s.theta));
    if (theta_star) {
      // Points where the divergence to the target is undefined keep an empty E.
      try {
        row += fmt::format("{:.17g}", log_div(gen, *theta_star, s.theta));
      } catch (const DomainError&) {
      }
    }
    row += '\n';
    os << row;
  }
}

}  // namespace xmd
