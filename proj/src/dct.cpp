#include "wmkit/dct.hpp"

#include <cmath>
#include <numbers>

namespace wmkit {

namespace {

Block8 make_basis() {
    Block8 m;
    for (int k = 0; k < 8; ++k) {
        double scale = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
        for (int n = 0; n < 8; ++n)
            m(k, n) = scale * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
    }
    return m;
}

const Block8& basis() {
    static const Block8 m = make_basis();
    return m;
}

}  // namespace

Block8 dct8_forward(const Block8& block) {
    const Block8& c = basis();
    return c * block * c.transpose();
}

Block8 dct8_inverse(const Block8& coeffs) {
    const Block8& c = basis();
    return c.transpose() * coeffs * c;
}

}  // namespace wmkit
