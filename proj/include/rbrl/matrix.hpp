#pragma once

#include <Eigen/Core>

namespace rbrl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Sign convention used everywhere: strictly positive scores map to +1,
// everything else (including 0) to -1.
inline int sign_of(double x) { return x > 0.0 ? 1 : -1; }

} // namespace rbrl
