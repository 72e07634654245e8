#pragma once

#include <Eigen/SparseCore>

namespace lfsr {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

}  // namespace lfsr
