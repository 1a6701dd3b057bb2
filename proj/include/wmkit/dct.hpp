#pragma once

#include <Eigen/Dense>

namespace wmkit {

using Block8 = Eigen::Matrix<double, 8, 8>;

// Orthonormal 2-D DCT-II on 8x8 blocks: a constant block of value v maps
// to DC == 8v with all AC coefficients zero, and inverse(forward(x)) == x.
Block8 dct8_forward(const Block8& block);
Block8 dct8_inverse(const Block8& coeffs);

}  // namespace wmkit
