#pragma once

#include <Eigen/Dense>

#include "wmkit/media.hpp"

namespace wmkit {

// Full-range BT.601 split. Chroma is kept as unquantized difference
// planes so that from_luma(to_luma(x)) reconstructs x within +/-1 per
// sample; grayscale passes through exactly.
struct LumaPlanes {
    Eigen::ArrayXXd y;   // (height, width)
    Eigen::ArrayXXd cb;  // empty for grayscale
    Eigen::ArrayXXd cr;
    int channels = 1;
};

LumaPlanes to_luma(const ImageBuffer& img);
ImageBuffer from_luma(const LumaPlanes& planes);

}  // namespace wmkit
