#include "fsbi/imaging.hpp"

#include <algorithm>
#include <cmath>

namespace fsbi {

namespace {

// Whole-sample reflection, tolerant of pad larger than the plane.
Index reflect_index(Index i, Index n) {
    if (n == 1) return 0;
    Index p = 2 * n - 2;
    Index m = ((i % p) + p) % p;
    return m < n ? m : p - m;
}

}  // namespace

Plane resize_bilinear(const Plane& plane, Index out_h, Index out_w) {
    if (plane.size() == 0) throw EmptyPlane("resize of empty plane");
    if (out_h < 1 || out_w < 1) throw EmptyPlane("non-positive output shape");
    const Index in_h = plane.rows(), in_w = plane.cols();
    Plane out(out_h, out_w);
    for (Index i = 0; i < out_h; ++i) {
        double sy = out_h > 1 ? double(i) * double(in_h - 1) / double(out_h - 1)
                              : double(in_h - 1) / 2.0;
        Index y0 = std::min<Index>(Index(std::floor(sy)), in_h - 1);
        Index y1 = std::min<Index>(y0 + 1, in_h - 1);
        double ty = sy - double(y0);
        for (Index j = 0; j < out_w; ++j) {
            double sx = out_w > 1 ? double(j) * double(in_w - 1) / double(out_w - 1)
                                  : double(in_w - 1) / 2.0;
            Index x0 = std::min<Index>(Index(std::floor(sx)), in_w - 1);
            Index x1 = std::min<Index>(x0 + 1, in_w - 1);
            double tx = sx - double(x0);
            double p00 = plane(y0, x0), p01 = plane(y0, x1);
            double p10 = plane(y1, x0), p11 = plane(y1, x1);
            double r0 = p00 + tx * (p01 - p00);
            double r1 = p10 + tx * (p11 - p10);
            double v = r0 + ty * (r1 - r0);
            // Keep inside the local sample envelope.
            double lo = std::min(std::min(p00, p01), std::min(p10, p11));
            double hi = std::max(std::max(p00, p01), std::max(p10, p11));
            out(i, j) = std::clamp(v, lo, hi);
        }
    }
    return out;
}

Image resize_bilinear(const Image& image, Index out_h, Index out_w) {
    Image out;
    for (const Plane& p : image.ch) out.ch.push_back(resize_bilinear(p, out_h, out_w));
    return out;
}

Image rgb_to_hsv(const Image& image) {
    if (image.channels() != 3) throw ChannelMismatch("rgb_to_hsv needs 3 channels");
    const Index h = image.height(), w = image.width();
    Image out(h, w, 3);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double r = image.ch[0](i, j), g = image.ch[1](i, j), b = image.ch[2](i, j);
            double mx = std::max({r, g, b}), mn = std::min({r, g, b});
            double d = mx - mn;
            double hue = 0.0;
            if (d > 0.0) {
                if (mx == r)
                    hue = std::fmod((g - b) / d, 6.0);
                else if (mx == g)
                    hue = (b - r) / d + 2.0;
                else
                    hue = (r - g) / d + 4.0;
                hue /= 6.0;
                if (hue < 0.0) hue += 1.0;
            }
            out.ch[0](i, j) = hue;
            out.ch[1](i, j) = mx > 0.0 ? d / mx : 0.0;
            out.ch[2](i, j) = mx;
        }
    return out;
}

Image hsv_to_rgb(const Image& image) {
    if (image.channels() != 3) throw ChannelMismatch("hsv_to_rgb needs 3 channels");
    const Index h = image.height(), w = image.width();
    Image out(h, w, 3);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double hue = image.ch[0](i, j) * 6.0, s = image.ch[1](i, j), v = image.ch[2](i, j);
            int sector = int(std::floor(hue)) % 6;
            if (sector < 0) sector += 6;
            double f = hue - std::floor(hue);
            double p = v * (1.0 - s);
            double q = v * (1.0 - s * f);
            double t = v * (1.0 - s * (1.0 - f));
            double r, g, b;
            switch (sector) {
                case 0: r = v; g = t; b = p; break;
                case 1: r = q; g = v; b = p; break;
                case 2: r = p; g = v; b = t; break;
                case 3: r = p; g = q; b = v; break;
                case 4: r = t; g = p; b = v; break;
                default: r = v; g = p; b = q; break;
            }
            out.ch[0](i, j) = r;
            out.ch[1](i, j) = g;
            out.ch[2](i, j) = b;
        }
    return out;
}

Plane gaussian_blur(const Plane& plane, double sigma) {
    if (!(sigma > 0.0)) throw InvalidSigma("sigma must be positive");
    if (plane.size() == 0) throw EmptyPlane("blur of empty plane");
    const Index radius = Index(std::ceil(3.0 * sigma));
    Eigen::VectorXd kernel(2 * radius + 1);
    for (Index k = -radius; k <= radius; ++k)
        kernel[k + radius] = std::exp(-0.5 * double(k * k) / (sigma * sigma));
    kernel /= kernel.sum();

    const Index h = plane.rows(), w = plane.cols();
    Plane tmp(h, w), out(h, w);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double acc = 0.0;
            for (Index k = -radius; k <= radius; ++k)
                acc += kernel[k + radius] * plane(i, reflect_index(j + k, w));
            tmp(i, j) = acc;
        }
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double acc = 0.0;
            for (Index k = -radius; k <= radius; ++k)
                acc += kernel[k + radius] * tmp(reflect_index(i + k, h), j);
            out(i, j) = acc;
        }
    return out;
}

Mask erode(const Mask& mask, int radius) {
    if (radius < 1) throw InvalidRadius("erosion radius must be >= 1");
    if (mask.size() == 0) throw EmptyPlane("erode of empty mask");
    const Index h = mask.rows(), w = mask.cols();
    Mask out(h, w);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double m = mask(i, j);
            for (Index dy = -radius; dy <= radius; ++dy)
                for (Index dx = -radius; dx <= radius; ++dx)
                    m = std::min(m, mask(reflect_index(i + dy, h), reflect_index(j + dx, w)));
            out(i, j) = m;
        }
    return out;
}

Image translate(const Image& image, Index dx, Index dy) {
    const Index h = image.height(), w = image.width();
    if (std::abs(dx) >= w || std::abs(dy) >= h)
        throw ShiftTooLarge("translation exceeds image size");
    Image out;
    for (const Plane& p : image.ch) {
        Plane q(h, w);
        for (Index i = 0; i < h; ++i)
            for (Index j = 0; j < w; ++j) {
                Index si = std::clamp<Index>(i - dy, 0, h - 1);
                Index sj = std::clamp<Index>(j - dx, 0, w - 1);
                q(i, j) = p(si, sj);
            }
        out.ch.push_back(std::move(q));
    }
    return out;
}

Plane clip01(const Plane& plane) { return plane.min(1.0).max(0.0); }

Image clip01(const Image& image) {
    Image out;
    for (const Plane& p : image.ch) out.ch.push_back(clip01(p));
    return out;
}

}  // namespace fsbi
