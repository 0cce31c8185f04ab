#pragma once

#include <Eigen/Dense>

namespace rsdfo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;  // column-major; columns are contiguous
using Index = Eigen::Index;

}  // namespace rsdfo
