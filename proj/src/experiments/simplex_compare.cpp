// SPDX-License-Identifier: Apache-2.0
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "xmd/expfam/online.hpp"
#include "xmd/experiments/experiments.hpp"
#include "xmd/random/distributions.hpp"
#include "xmd/simplex/portfolio.hpp"
#include "xmd/simplex/simplex_flow.hpp"

namespace xmd {

namespace {

constexpr std::uint64_t kTargetStreamBase = 1000;
constexpr std::uint64_t kInitStreamBase = 2000;

struct Method {
  std::string label;  ///< column name
  enum Kind { Conformal, Multiplicative, Entropic } kind;
  double alpha = 0.0;
};

std::string file_label(const std::string& target) {
  std::string s;
  for (char c : target) {
    if (c == '(') s += '_';
    else if (c != ')') s += c;
  }
  return s;
}

/// Mean cost curve over k = 0..n_steps; a run that fails numerically contributes +inf from then on.
std::vector<double> descend(const Method& m, const SimplexPoint& p0, const SimplexPoint& target, long n_steps,
                            const DeltaSchedule& delta) {
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(n_steps) + 1);
  SimplexPoint p = p0;
  f.push_back(dirichlet_cost(p, target));
  const PortfolioGenerator gen = PortfolioGenerator::diversity(m.alpha);
  SimplexPoint q = transport_map(gen, p);
  try {
    for (long k = 1; k <= n_steps; ++k) {
      const Vector grad = dirichlet_cost_gradient(p, target);
      const double dk = delta(k);
      switch (m.kind) {
        case Method::Conformal: {
          TransportStep st = step_transport_flow(gen, p, q, directional_derivs(grad, p), dk);
          p = st.p;
          q = st.q;
          break;
        }
        case Method::Multiplicative:
          p = step_multiplicative(p, directional_derivs(grad, p), dk);
          break;
        case Method::Entropic:
          p = step_entropic(p, grad, dk);
          break;
      }
      const double c = dirichlet_cost(p, target);
      if (!std::isfinite(c)) throw DomainError("non-finite cost");
      f.push_back(c);
    }
  } catch (const Error&) {
    f.resize(static_cast<std::size_t>(n_steps) + 1, std::numeric_limits<double>::infinity());
  }
  return f;
}

}  // namespace

RunSummary run_simplex_compare(const ExperimentConfig& cfg, OutputSet& out) {
  const Index n = cfg.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  const DeltaSchedule delta = cfg.delta_schedule == "auto" ? power_schedule(inv_n, 0.5) : parse_schedule(cfg.delta_schedule);

  std::vector<Method> methods;
  for (double a : cfg.alphas) methods.push_back({fmt::format("alpha_{}", a), Method::Conformal, a});
  methods.push_back({"multiplicative", Method::Multiplicative, 0.0});
  methods.push_back({"entropic", Method::Entropic, 0.0});

  const std::size_t n_targets = cfg.targets.size(), n_methods = methods.size();
  const auto n_inits = static_cast<std::size_t>(cfg.n_inits);
  std::vector<SimplexPoint> targets;
  std::vector<std::vector<SimplexPoint>> inits(n_targets);
  for (std::size_t t = 0; t < n_targets; ++t) {
    const std::string& spec = cfg.targets[t];
    CounterRng trng(cfg.seed, kTargetStreamBase + t);
    if (spec == "barycenter") {
      targets.push_back(SimplexPoint::barycenter(n));
    } else {
      const double a = std::stod(spec.substr(10, spec.size() - 11));
      targets.emplace_back(symmetric_dirichlet_sample(n, a, trng));
    }
    CounterRng irng(cfg.seed, kInitStreamBase + t);
    for (std::size_t j = 0; j < n_inits; ++j)
      inits[t].emplace_back(cfg.init_at_target ? targets.back()
                                               : SimplexPoint(symmetric_dirichlet_sample(n, cfg.init_concentration, irng)));
  }

  // One task per (target, method, init).
  std::vector<std::vector<double>> curves(n_targets * n_methods * n_inits);
  parallel_for(curves.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t t = idx / (n_methods * n_inits), m = (idx / n_inits) % n_methods, j = idx % n_inits;
    curves[idx] = descend(methods[m], inits[t][j], targets[t], cfg.n_steps, delta);
  });
  // The alpha = 0 flow runs n times faster than the printed multiplicative update, so the limit
  // comparison uses the multiplicative update at step n delta_k.
  const auto zero = std::find_if(methods.begin(), methods.end(),
                                 [](const Method& m) { return m.kind == Method::Conformal && m.alpha == 0.0; });
  std::vector<std::vector<double>> reference;
  if (zero != methods.end()) {
    const DeltaSchedule scaled = [&](long k) { return static_cast<double>(n) * delta(k); };
    reference.resize(n_targets * n_inits);
    parallel_for(reference.size(), cfg.threads, [&](std::size_t idx) {
      reference[idx] = descend({"", Method::Multiplicative, 0.0}, inits[idx / n_inits][idx % n_inits],
                               targets[idx / n_inits], cfg.n_steps, scaled);
    });
  }

  RunSummary sum;
  std::string finals = "target,method,init,final_cost\n";
  const double alpha_max = *std::max_element(cfg.alphas.begin(), cfg.alphas.end());
  for (std::size_t t = 0; t < n_targets; ++t) {
    const std::string& spec = cfg.targets[t];
    std::vector<std::vector<double>> mean(n_methods, std::vector<double>(static_cast<std::size_t>(cfg.n_steps) + 1, 0.0));
    std::vector<double> final_mean(n_methods, 0.0);
    for (std::size_t m = 0; m < n_methods; ++m)
      for (std::size_t j = 0; j < n_inits; ++j) {
        const auto& c = curves[(t * n_methods + m) * n_inits + j];
        for (std::size_t k = 0; k < c.size(); ++k) mean[m][k] += c[k] / static_cast<double>(n_inits);
        finals += fmt::format("{},{},{},{:.17g}\n", spec, methods[m].label, j, c.back());
        final_mean[m] += c.back() / static_cast<double>(n_inits);
      }
    std::string csv = "k";
    for (const auto& m : methods) csv += "," + m.label;
    csv += "\n";
    for (std::size_t k = 0; k <= static_cast<std::size_t>(cfg.n_steps); ++k) {
      csv += std::to_string(k);
      for (std::size_t m = 0; m < n_methods; ++m) csv += fmt::format(",{:.17g}", mean[m][k]);
      csv += "\n";
    }
    out.add("simplex_" + file_label(spec) + ".csv", std::move(csv));

    std::vector<std::size_t> order(n_methods);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return final_mean[a] < final_mean[b]; });
    std::string ranking;
    for (std::size_t r = 0; r < n_methods; ++r) ranking += (r ? " < " : "") + methods[order[r]].label;
    sum.notes["ranking." + spec] = ranking;
    for (std::size_t m = 0; m < n_methods; ++m) sum.metrics["mean_final_cost." + spec + "." + methods[m].label] = final_mean[m];

    // alpha = 0 against the rescaled multiplicative update, relative to the initial cost.
    double limit_gap = 0.0;
    if (zero != methods.end()) {
      const std::size_t z = static_cast<std::size_t>(zero - methods.begin());
      for (std::size_t j = 0; j < n_inits; ++j) {
        const auto& cz = curves[(t * n_methods + z) * n_inits + j];
        const auto& cm = reference[t * n_inits + j];
        for (std::size_t k = 0; k < cz.size(); ++k) {
          const double diff = cz[k] == cm[k] ? 0.0 : std::abs(cz[k] - cm[k]);
          limit_gap = std::max(limit_gap, diff / std::max(cm.front(), 1e-300));
        }
      }
      sum.metrics["alpha0_vs_multiplicative_max_gap." + spec] = limit_gap;
    }
    if (cfg.check) {
      const auto best = std::find_if(methods.begin(), methods.end(),
                                     [&](const Method& m) { return m.kind == Method::Conformal && m.alpha == alpha_max; });
      const double fa = final_mean[static_cast<std::size_t>(best - methods.begin())];
      const double fe = final_mean[n_methods - 1];
      sum.check(fmt::format("{}: mean final cost alpha={} < entropic", spec, alpha_max), fa < fe, fa - fe, "< 0");
      if (zero != methods.end())
        sum.check(spec + ": alpha=0 matches the multiplicative update at step n delta", limit_gap < 1e-8, limit_gap,
                  "< 1e-08");
    }
  }
  out.add("simplex_final.csv", std::move(finals));
  return sum;
}

}  // namespace xmd
