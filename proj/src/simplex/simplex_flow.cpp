// SPDX-License-Identifier: Apache-2.0
#include "xmd/simplex/simplex_flow.hpp"

#include <cmath>

namespace xmd {

Vector simplex_flow_rhs(const PortfolioGenerator& gen, const Vector& dir_grads, const SimplexPoint& p,
                        const SimplexPoint& q) {
  const Index n = p.size();
  if (dir_grads.size() != n || q.size() != n) throw InvalidArgument("simplex_flow_rhs: dimension mismatch");
  const SimplexPoint pi = portfolio_map(gen, inverse(p));
  // Expanded so that no (p_j / p_i)^2 is formed: the bracketed sum times p_i
  // becomes (q_i / p_i) sum_j p_j^2 D_j.
  double s = 0.0;
  for (Index j = 0; j < n; ++j) s += p[j] * p[j] * dir_grads[j];
  Vector out(n);
  for (Index i = 0; i < n; ++i) out[i] = -(p[i] / pi[i]) * dir_grads[i] + (q[i] / (pi[i] * p[i])) * s;
  return out;
}

SimplexPoint step_multiplicative(const SimplexPoint& p, const Vector& dir_grads, double delta) {
  if (dir_grads.size() != p.size()) throw InvalidArgument("step_multiplicative: dimension mismatch");
  // A stationary point is returned as is; renormalizing would inject rounding noise.
  if (delta == 0.0 || dir_grads.isZero(0.0)) return p;
  return SimplexPoint::from_log(p.log_weights() - delta * p.weights().cwiseProduct(dir_grads));
}

SimplexPoint step_entropic(const SimplexPoint& p, const Vector& euclidean_grads, double delta) {
  if (euclidean_grads.size() != p.size()) throw InvalidArgument("step_entropic: dimension mismatch");
  if (delta == 0.0 || euclidean_grads.isZero(0.0)) return p;
  return SimplexPoint::from_log(p.log_weights() - delta * euclidean_grads);
}

TransportStep step_transport_flow(const PortfolioGenerator& gen, const SimplexPoint& p, const SimplexPoint& q,
                                  const Vector& dir_grads, double delta) {
  if (delta == 0.0 || dir_grads.isZero(0.0)) return {p, q};
  Vector rhs = simplex_flow_rhs(gen, dir_grads, p, q);
  SimplexPoint q_next = SimplexPoint::from_log(q.log_weights() + delta * rhs);
  SimplexPoint p_next = transport_inverse(gen, q_next);
  return {p_next, q_next};
}

}  // namespace xmd
