#include "wmkit/color.hpp"

#include <cmath>

namespace wmkit {

namespace {
constexpr double kWr = 0.299, kWg = 0.587, kWb = 0.114;
constexpr double kCbScale = 0.564, kCrScale = 0.713;

std::uint8_t quantize(double v) {
    long r = std::lround(v);
    return static_cast<std::uint8_t>(std::clamp(r, 0l, 255l));
}
}  // namespace

LumaPlanes to_luma(const ImageBuffer& img) {
    if (!img.valid()) throw BadParams("invalid image buffer");
    LumaPlanes p;
    p.channels = img.channels;
    p.y.resize(img.height, img.width);
    if (img.channels == 1) {
        for (int r = 0; r < img.height; ++r)
            for (int c = 0; c < img.width; ++c) p.y(r, c) = img.at(c, r, 0);
        return p;
    }
    p.cb.resize(img.height, img.width);
    p.cr.resize(img.height, img.width);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            double red = img.at(c, r, 0), green = img.at(c, r, 1), blue = img.at(c, r, 2);
            double y = kWr * red + kWg * green + kWb * blue;
            p.y(r, c) = y;
            p.cb(r, c) = kCbScale * (blue - y);
            p.cr(r, c) = kCrScale * (red - y);
        }
    }
    return p;
}

ImageBuffer from_luma(const LumaPlanes& p) {
    ImageBuffer img;
    img.height = static_cast<int>(p.y.rows());
    img.width = static_cast<int>(p.y.cols());
    img.channels = p.channels;
    img.samples.resize(static_cast<std::size_t>(img.width) * img.height * img.channels);
    if (p.channels == 1) {
        for (int r = 0; r < img.height; ++r)
            for (int c = 0; c < img.width; ++c) img.at(c, r, 0) = quantize(p.y(r, c));
        return img;
    }
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            double y = p.y(r, c);
            double red = y + p.cr(r, c) / kCrScale;
            double blue = y + p.cb(r, c) / kCbScale;
            double green = (y - kWr * red - kWb * blue) / kWg;
            img.at(c, r, 0) = quantize(red);
            img.at(c, r, 1) = quantize(green);
            img.at(c, r, 2) = quantize(blue);
        }
    }
    return img;
}

}  // namespace wmkit
