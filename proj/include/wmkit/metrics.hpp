#pragma once

#include <cstdint>
#include <vector>

#include "wmkit/media.hpp"

namespace wmkit::metrics {

// +infinity sentinel for PSNR/SNR on identical inputs.
constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

struct QualityScores {
    double psnr_db = kInfiniteDb;
    double ssim = 1.0;
    double snr_db = kInfiniteDb;  // audio only
};

struct RobustnessScores {
    double bit_accuracy = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    std::int64_t n_positive = 0;
    std::int64_t n_negative = 0;
};

// 10*log10(255^2 / MSE) over all samples; identical inputs -> +inf.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

// Mean local SSIM on luma: 11x11 Gaussian window (sigma 1.5), K1=0.01,
// K2=0.03, dynamic range 255, valid-region aggregation.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

// Per-frame PSNR/SSIM means; infinite frames are excluded from the PSNR
// mean (all-infinite -> infinity).
QualityScores video_quality(const VideoClip& a, const VideoClip& b);

// 10*log10(sum x^2 / sum (x - x')^2); identical -> +inf.
double snr_db(const AudioClip& reference, const AudioClip& test);

double bit_accuracy(const std::vector<std::uint8_t>& truth,
                    const std::vector<std::uint8_t>& got);

std::pair<double, double> tpr_fpr(const std::vector<bool>& positives,
                                  const std::vector<bool>& negatives);

}  // namespace wmkit::metrics
