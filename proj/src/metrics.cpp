#include "wmkit/metrics.hpp"

#include <cmath>

#include "wmkit/color.hpp"

namespace wmkit::metrics {

namespace {

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DimensionMismatch("image dimensions differ");
}

// Separable 'valid' convolution with a symmetric 1-D kernel.
Eigen::ArrayXXd filter_valid(const Eigen::ArrayXXd& img, const Eigen::ArrayXd& kernel) {
    const Eigen::Index k = kernel.size();
    Eigen::ArrayXXd horiz(img.rows(), img.cols() - k + 1);
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < horiz.cols(); ++c) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) acc += kernel[i] * img(r, c + i);
            horiz(r, c) = acc;
        }
    Eigen::ArrayXXd out(img.rows() - k + 1, horiz.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) acc += kernel[i] * horiz(r + i, c);
            out(r, c) = acc;
        }
    return out;
}

}  // namespace

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a, b);
    double se = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        double d = static_cast<double>(a.samples[i]) - b.samples[i];
        se += d * d;
    }
    if (se == 0.0) return kInfiniteDb;
    double mse = se / static_cast<double>(a.samples.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a, b);
    if (std::min(a.width, a.height) < 11)
        throw TooSmall("SSIM needs min(w,h) >= 11");

    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    Eigen::ArrayXd kernel(11);
    for (int i = 0; i < 11; ++i) {
        double d = i - 5.0;
        kernel[i] = std::exp(-0.5 * d * d / (1.5 * 1.5));
    }
    kernel /= kernel.sum();

    Eigen::ArrayXXd x = to_luma(a).y, y = to_luma(b).y;
    Eigen::ArrayXXd mu_x = filter_valid(x, kernel);
    Eigen::ArrayXXd mu_y = filter_valid(y, kernel);
    Eigen::ArrayXXd var_x = filter_valid(x * x, kernel) - mu_x * mu_x;
    Eigen::ArrayXXd var_y = filter_valid(y * y, kernel) - mu_y * mu_y;
    Eigen::ArrayXXd cov = filter_valid(x * y, kernel) - mu_x * mu_y;

    Eigen::ArrayXXd num = (2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2);
    Eigen::ArrayXXd den = (mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2);
    return (num / den).mean();
}

QualityScores video_quality(const VideoClip& a, const VideoClip& b) {
    if (a.frames.size() != b.frames.size())
        throw DimensionMismatch("frame counts differ");
    QualityScores q;
    double psnr_sum = 0.0, ssim_sum = 0.0;
    std::size_t psnr_count = 0;
    for (std::size_t i = 0; i < a.frames.size(); ++i) {
        double p = psnr(a.frames[i], b.frames[i]);
        if (std::isfinite(p)) {
            psnr_sum += p;
            ++psnr_count;
        }
        ssim_sum += ssim(a.frames[i], b.frames[i]);
    }
    q.psnr_db = psnr_count > 0 ? psnr_sum / static_cast<double>(psnr_count) : kInfiniteDb;
    q.ssim = ssim_sum / static_cast<double>(a.frames.size());
    q.snr_db = kInfiniteDb;
    return q;
}

double snr_db(const AudioClip& reference, const AudioClip& test) {
    if (reference.channels.size() != test.channels.size() ||
        reference.length() != test.length())
        throw LengthMismatch("audio length/channel mismatch");
    double signal = 0.0, noise = 0.0;
    for (std::size_t c = 0; c < reference.channels.size(); ++c) {
        signal += reference.channels[c].square().sum();
        noise += (reference.channels[c] - test.channels[c]).square().sum();
    }
    if (noise == 0.0) return kInfiniteDb;
    return 10.0 * std::log10(signal / noise);
}

double bit_accuracy(const std::vector<std::uint8_t>& truth,
                    const std::vector<std::uint8_t>& got) {
    if (truth.size() != got.size()) throw LengthMismatch("bit vector lengths differ");
    if (truth.empty()) throw LengthMismatch("empty bit vectors");
    std::size_t match = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if ((truth[i] != 0) == (got[i] != 0)) ++match;
    return static_cast<double>(match) / static_cast<double>(truth.size());
}

std::pair<double, double> tpr_fpr(const std::vector<bool>& positives,
                                  const std::vector<bool>& negatives) {
    if (positives.empty()) throw EmptyPositives("no positive samples");
    double tp = 0.0;
    for (bool d : positives) tp += d ? 1.0 : 0.0;
    double tpr = tp / static_cast<double>(positives.size());
    double fpr = 0.0;
    if (!negatives.empty()) {
        double fp = 0.0;
        for (bool d : negatives) fp += d ? 1.0 : 0.0;
        fpr = fp / static_cast<double>(negatives.size());
    }
    return {tpr, fpr};
}

}  // namespace wmkit::metrics
