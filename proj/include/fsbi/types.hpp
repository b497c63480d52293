#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace fsbi {

// Row-major semantics: a Plane has `rows() == height` and `cols() == width`.
using Plane = Eigen::ArrayXXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownWavelet : Error { using Error::Error; };
struct DegenerateSignal : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct UnsupportedPngFormat : Error { using Error::Error; };
struct EmptyPlane : Error { using Error::Error; };
struct ChannelMismatch : Error { using Error::Error; };
struct InvalidSigma : Error { using Error::Error; };
struct InvalidRadius : Error { using Error::Error; };
struct ShiftTooLarge : Error { using Error::Error; };
struct DegenerateHull : Error { using Error::Error; };
struct ImageTooSmall : Error { using Error::Error; };
struct EmptyBatch : Error { using Error::Error; };
struct SingleClassData : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

// Pixel raster in [0,1], one Plane per channel (1 = grayscale, 3 = RGB).
struct Image {
    std::vector<Plane> ch;

    Image() = default;
    Image(Index height, Index width, int channels, double fill = 0.0)
        : ch(static_cast<std::size_t>(channels), Plane::Constant(height, width, fill)) {}

    Index height() const { return ch.empty() ? 0 : ch[0].rows(); }
    Index width() const { return ch.empty() ? 0 : ch[0].cols(); }
    int channels() const { return static_cast<int>(ch.size()); }
};

// Single-channel soft mask in [0,1].
using Mask = Plane;

}  // namespace fsbi
