// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "xmd/core/types.hpp"

namespace xmd {

struct OnlineTraceRow {
  long k = 0;
  double delta = 0.0;
  Vector eta;
  Vector theta;
  double dist = 0.0;
};

/// Columns: k, delta, eta_1..eta_d, theta_1..theta_d, dist.
void write_online_trace_csv(std::ostream& os, const std::vector<OnlineTraceRow>& rows);

/// One observation per row, comma separated; an optional non-numeric header row is skipped.
std::vector<Vector> read_observations_csv(std::istream& is);
void write_observations_csv(std::ostream& os, const std::vector<Vector>& obs);

}  // namespace xmd
