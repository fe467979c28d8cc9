#include "game/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace game {

Frame make_frame(std::size_t width, std::size_t height, float fill) {
    if (width == 0 || height == 0) throw std::invalid_argument("frame dimensions must be positive");
    return Frame{width, height, std::vector<float>(width * height, fill)};
}

std::vector<std::size_t> subsample_indices(std::size_t length, std::size_t f) {
    if (f == 0) throw std::invalid_argument("subsample: f must be positive");
    if (length < f) throw std::invalid_argument("subsample: video shorter than f");
    std::vector<std::size_t> idx(f);
    if (f == 1) {
        idx[0] = length - 1;
        return idx;
    }
    for (std::size_t j = 0; j < f; ++j) {
        const double pos = static_cast<double>(j) * static_cast<double>(length - 1) /
                           static_cast<double>(f - 1);
        idx[j] = static_cast<std::size_t>(std::llround(pos));
    }
    return idx;
}

std::vector<Frame> subsample_frames(const std::vector<Frame>& video, std::size_t f) {
    const auto idx = subsample_indices(video.size(), f);
    std::vector<Frame> out;
    out.reserve(f);
    for (std::size_t i : idx) out.push_back(video[i]);
    return out;
}

std::vector<double> pool_embed(const Frame& frame, std::size_t d) {
    if (d == 0) throw std::invalid_argument("pool_embed: d must be positive");
    if (d > frame.width || d > frame.height)
        throw std::invalid_argument("pool_embed: d exceeds frame dimensions");

    std::vector<double> out(d * d, 0.0);
    for (std::size_t by = 0; by < d; ++by) {
        const std::size_t y0 = by * frame.height / d;
        const std::size_t y1 = (by + 1) * frame.height / d;
        for (std::size_t bx = 0; bx < d; ++bx) {
            const std::size_t x0 = bx * frame.width / d;
            const std::size_t x1 = (bx + 1) * frame.width / d;
            double sum = 0.0;
            for (std::size_t y = y0; y < y1; ++y)
                for (std::size_t x = x0; x < x1; ++x) sum += frame.at(x, y);
            out[by * d + bx] = sum / static_cast<double>((y1 - y0) * (x1 - x0));
        }
    }

    double sq = 0.0;
    for (double v : out) sq += v * v;
    if (sq == 0.0) {
        out.assign(d * d, 0.0);
        out[0] = 1.0;
        return out;
    }
    const double norm = std::sqrt(sq);
    for (double& v : out) v /= norm;
    return out;
}

} // namespace game
