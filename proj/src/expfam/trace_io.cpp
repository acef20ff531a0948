// SPDX-License-Identifier: Apache-2.0
#include "xmd/expfam/trace_io.hpp"

#include <fmt/format.h>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace xmd {

void write_online_trace_csv(std::ostream& os, const std::vector<OnlineTraceRow>& rows) {
  const Index d = rows.empty() ? 0 : rows.front().eta.size();
  os << "k,delta";
  for (Index i = 0; i < d; ++i) os << ",eta_" << (i + 1);
  for (Index i = 0; i < d; ++i) os << ",theta_" << (i + 1);
  os << ",dist\n";
  for (const auto& r : rows) {
    if (r.eta.size() != d || r.theta.size() != d) throw InvalidArgument("write_online_trace_csv: ragged rows");
    os << r.k << ',' << fmt::format("{:.17g}", r.delta);
    for (Index i = 0; i < d; ++i) os << ',' << fmt::format("{:.17g}", r.eta[i]);
    for (Index i = 0; i < d; ++i) os << ',' << fmt::format("{:.17g}", r.theta[i]);
    os << ',' << fmt::format("{:.17g}", r.dist) << '\n';
  }
}

std::vector<Vector> read_observations_csv(std::istream& is) {
  std::vector<Vector> out;
  std::string line;
  bool first = true;
  Index width = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw InvalidArgument("read_observations_csv: non-numeric row '" + line + "'");
    }
    first = false;
    if (width < 0) width = static_cast<Index>(vals.size());
    if (static_cast<Index>(vals.size()) != width) throw InvalidArgument("read_observations_csv: ragged rows");
    out.push_back(Eigen::Map<const Vector>(vals.data(), width));
  }
  return out;
}

void write_observations_csv(std::ostream& os, const std::vector<Vector>& obs) {
  for (const auto& x : obs) {
    for (Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << fmt::format("{:.17g}", x[i]);
    os << '\n';
  }
}

}  // namespace xmd
