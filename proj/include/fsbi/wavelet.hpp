#pragma once

#include "fsbi/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fsbi {

enum class WaveletFamily { Haar, Daubechies, Symlet, Biorthogonal, Coiflet };

// Boundary rule applied before filtering a finite signal. Periodic is the
// wrap-around (periodized) transform and yields ceil(n/2) coefficients per
// band; every other mode yields floor((n + L - 1) / 2).
enum class ExtensionMode { Symmetric, Reflect, Antireflect, Periodic, Zero };

struct WaveletSpec {
    WaveletFamily family = WaveletFamily::Symlet;
    // Biorthogonal orders are encoded as N*10 + M, e.g. 13 for bior1.3.
    int order = 4;
    ExtensionMode mode = ExtensionMode::Reflect;

    // Canonical short name, e.g. "sym4", "bior1.3". Haar ignores the order.
    std::string name() const;
};

// Parses "haar", "db4", "sym4", "coif2", "bior1.3".
std::pair<WaveletFamily, int> parse_wavelet_name(const std::string& name);
ExtensionMode parse_extension_mode(const std::string& name);
std::string extension_mode_name(ExtensionMode mode);

struct FilterBank {
    Eigen::VectorXd dec_lo, dec_hi, rec_lo, rec_hi;
    Index filter_length() const { return dec_lo.size(); }
};

// Looks up (family, order) in the built-in coefficient tables.
// Throws UnknownWavelet for unsupported combinations.
FilterBank filter_bank(const WaveletSpec& spec);

// All supported wavelet specs (mode left at default), for sweep-style tests.
std::vector<WaveletSpec> supported_wavelets();
bool is_orthogonal(WaveletFamily family);

// Pads `signal` by `pad` samples on each side. Reflect/Antireflect need at
// least two samples; Periodic and Zero accept any nonempty signal.
Eigen::VectorXd extend(const Eigen::VectorXd& signal, Index pad, ExtensionMode mode);

// Single-level analysis: extend, convolve with dec_lo / dec_hi, downsample by 2.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
dwt1d(const Eigen::VectorXd& signal, const FilterBank& bank, ExtensionMode mode);

// Naive oracle: materializes the extended signal and the full convolution,
// then takes every second sample. Same contract as dwt1d.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
dwt1d_reference(const Eigen::VectorXd& signal, const FilterBank& bank, ExtensionMode mode);

// Exact inverse of dwt1d; truncates to orig_len.
Eigen::VectorXd idwt1d(const Eigen::VectorXd& approx, const Eigen::VectorXd& detail,
                       const FilterBank& bank, ExtensionMode mode, Index orig_len);

struct Subbands {
    Plane ll, lh, hl, hh;
    Index orig_h = 0, orig_w = 0;
};

// Separable transform: rows first (along width), then columns.
// lh/hl/hh carry detail along columns / rows / both.
Subbands dwt2d(const Plane& plane, const FilterBank& bank, ExtensionMode mode);

Plane idwt2d(const Subbands& sb, const FilterBank& bank, ExtensionMode mode);

}  // namespace fsbi
