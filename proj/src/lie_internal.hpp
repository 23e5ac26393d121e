#pragma once

#include "spinctrl/lie.hpp"

namespace spinctrl::detail {

LieClosureResult closure_float(const std::vector<Eigen::MatrixXd>& generators, double tolerance);
LieClosureResult closure_exact(const std::vector<Eigen::MatrixXd>& generators);

}  // namespace spinctrl::detail
