#pragma once

#include <Eigen/Dense>

#include "json.hpp"
#include "spinctrl/network.hpp"

namespace spinctrl {

using json = nlohmann::json;

json network_to_json(const NetworkSpec& spec);
NetworkSpec network_from_json(const json& doc);

json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& doc);

}  // namespace spinctrl
