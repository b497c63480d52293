#pragma once

#include "fsbi/rng.hpp"
#include "fsbi/types.hpp"

#include <utility>
#include <vector>

namespace fsbi {

struct Landmarks {
    // Ordered (x, y) pixel coordinates, at least 3 points.
    std::vector<std::pair<double, double>> points;
};

// Source-target generator settings. Each transform fires independently with
// probability p_each; at least one is forced unless force_at_least_one is off.
struct StgConfig {
    double rgb_shift_max = 20.0 / 255.0;
    double hsv_shift_max_h = 0.05;
    double hsv_shift_max_s = 0.10;
    double hsv_shift_max_v = 0.10;
    double brightness_delta_max = 0.10;
    double contrast_min = 0.85;
    double contrast_max = 1.15;
    std::vector<int> downsample_factors = {2, 4};
    double translate_max_frac = 0.03;
    double p_each = 0.5;
    bool force_at_least_one = true;
};

struct MaskConfig {
    double elastic_alpha = 50.0;
    double elastic_sigma = 7.0;
    double blur1_sigma = 5.0;
    double blur2_sigma = 3.0;
    int erode_radius = 4;
    std::vector<double> blend_ratio_choices = {0.25, 0.5, 0.75, 1.0};
};

// Pseudo source/target pair: the target is the input untouched, the source
// carries the randomized color and spatial transforms.
std::pair<Image, Image> source_target_generate(const Image& image, Rng& rng,
                                               const StgConfig& cfg);

// Binary convex-hull mask, 1 inside or on the hull.
Mask hull_mask(const Landmarks& landmarks, Index h, Index w);

// Random smoothed displacement field applied with bilinear sampling.
Mask elastic_deform(const Mask& mask, Rng& rng, double alpha, double sigma);

// blur -> erode -> blur -> scale by a blend ratio drawn from the choices.
Mask smooth_mask(const Mask& mask, Rng& rng, const MaskConfig& cfg);

// I_s * M + I_t * (1 - M), per pixel and channel.
Image blend(const Image& source, const Image& target, const Mask& mask);

Image make_sbi(const Image& image, const Landmarks& landmarks, Rng& rng,
               const StgConfig& stg, const MaskConfig& mcfg);

// Test fixture generator: 17 points on a jittered ellipse.
Landmarks synthetic_landmarks(Index h, Index w, Rng& rng);

}  // namespace fsbi
