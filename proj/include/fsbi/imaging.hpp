#pragma once

#include "fsbi/types.hpp"

#include <string>

namespace fsbi {

// 8-bit grayscale or RGB PNG; samples mapped to [0,1] by v / 255.
Image load_png(const std::string& path);

// Clips to [0,1] and quantizes by round(v * 255).
void save_png(const Image& image, const std::string& path);

// Bilinear resize with the align-corners convention.
Plane resize_bilinear(const Plane& plane, Index out_h, Index out_w);
Image resize_bilinear(const Image& image, Index out_h, Index out_w);

// Hexcone conversions; H, S, V all scaled into [0,1]. Achromatic hue is 0.
Image rgb_to_hsv(const Image& image);
Image hsv_to_rgb(const Image& image);

// Separable Gaussian, kernel radius ceil(3*sigma), reflect boundary.
Plane gaussian_blur(const Plane& plane, double sigma);

// Grayscale erosion: min over the (2r+1)^2 neighborhood, reflect boundary.
Mask erode(const Mask& mask, int radius);

// Integer-pixel shift, vacated region filled by edge replication.
Image translate(const Image& image, Index dx, Index dy);

Plane clip01(const Plane& plane);
Image clip01(const Image& image);

}  // namespace fsbi
