#pragma once

#include "fsbi/types.hpp"
#include "fsbi/wavelet.hpp"

namespace fsbi {

struct FfgConfig {
    WaveletSpec wavelet{WaveletFamily::Symlet, 4, ExtensionMode::Reflect};
    // Divide LL by sum(dec_lo)^2 before resizing, so constants are fixed
    // points; the raw-coefficient path stays available behind the flag.
    bool normalize_dc = true;
};

// Single-level LL of the plane, optionally DC-normalized, resized back to the
// plane's shape. No clipping here.
Plane channel_frequency_map(const Plane& plane, const FfgConfig& cfg);

// (plane + freq_map) / 2, clipped to [0,1].
Plane fuse_channel(const Plane& plane, const Plane& freq_map);

// Per-channel frequency map + fusion, channels stacked in R,G,B order.
Image make_fsbi(const Image& image, const FfgConfig& cfg);

}  // namespace fsbi
