#ifndef GAME_FRAME_HPP
#define GAME_FRAME_HPP

#include <cstddef>
#include <vector>

namespace game {

// Grayscale frame, row-major, intensities in [0,1].
struct Frame {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<float> pixels;

    float at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    float& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
};

Frame make_frame(std::size_t width, std::size_t height, float fill = 0.0f);

// Indices round(j*(L-1)/(f-1)) for j = 0..f-1 with half-away-from-zero
// rounding; f = 1 selects the last frame. First and last frame are always
// included for f >= 2. Throws if the video is shorter than f.
std::vector<std::size_t> subsample_indices(std::size_t length, std::size_t f);
std::vector<Frame> subsample_frames(const std::vector<Frame>& video, std::size_t f);

// Averages intensity over a d x d grid of near-equal rectangles, flattens
// row-major and L2-normalizes. An all-zero frame maps to the unit vector
// along the first axis so cosine distances stay defined.
std::vector<double> pool_embed(const Frame& frame, std::size_t d);

} // namespace game

#endif
