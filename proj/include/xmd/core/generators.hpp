// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "xmd/core/generator.hpp"

namespace xmd {

/// phi = -0.5 log(theta) on (0, inf), regular for lambda > -2.
Generator neg_half_log_generator(double lambda);

/// phi = theta on (-inf, 1/lambda), regular for lambda > 0.
Generator linear_generator(double lambda);

/// phi = 0.5 theta^2 on |theta| < 1/sqrt(|lambda|).
Generator half_square_generator(double lambda);

/// phi = 0.5 theta^T A theta on |lambda| theta^T A theta < 1, A symmetric PD.
Generator quadratic_generator(const Matrix& a, double lambda);

/// The three one-dimensional closed-form examples at a common lambda
/// (rows that are not regular at this lambda are skipped).
std::vector<Generator> closed_form_examples(double lambda);

}  // namespace xmd
