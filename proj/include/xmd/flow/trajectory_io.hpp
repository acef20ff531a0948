// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "xmd/flow/flow.hpp"

namespace xmd {

/// Columns: t, tau, theta_1..d, eta_1..d, f, E. E = L[theta* : theta] when a target is given,
/// otherwise, or where
/// the divergence is undefined, left empty.
void write_trajectory_csv(std::ostream& os, const Generator& gen, const Objective& obj,
                          const std::vector<FlowState>& trajectory,
                          const std::optional<Vector>& theta_star = std::nullopt);

}  // namespace xmd
