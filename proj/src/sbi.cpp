#include "fsbi/sbi.hpp"

#include "fsbi/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fsbi {

namespace {

void check_landmarks(const Landmarks& lm, Index h, Index w) {
    if (lm.points.size() < 3) throw DegenerateHull("need at least 3 landmarks");
    for (auto [x, y] : lm.points)
        if (x < 0 || y < 0 || x > double(w - 1) || y > double(h - 1))
            throw DegenerateHull("landmark outside image bounds");
}

// Andrew monotone chain; returns CCW hull without the repeated endpoint.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    if (pts.size() < 3) throw DegenerateHull("hull has no area");
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateHull("hull has no area");
    return hull;
}

}  // namespace

std::pair<Image, Image> source_target_generate(const Image& image, Rng& rng,
                                               const StgConfig& cfg) {
    if (image.channels() != 3) throw ChannelMismatch("source_target_generate needs RGB");
    const Index h = image.height(), w = image.width();

    enum { kRgb, kHsv, kBrightness, kContrast, kDownsample, kTranslate, kCount };
    bool fire[kCount];
    bool any = false;
    for (int t = 0; t < kCount; ++t) {
        fire[t] = rng.bernoulli(cfg.p_each);
        any = any || fire[t];
    }
    if (!any && cfg.force_at_least_one)
        fire[rng.uniform_int(0, kCount - 1)] = true;

    Image src = image;
    if (fire[kRgb]) {
        for (int c = 0; c < 3; ++c)
            src.ch[c] += rng.uniform(-cfg.rgb_shift_max, cfg.rgb_shift_max);
        src = clip01(src);
    }
    if (fire[kHsv]) {
        double dh = rng.uniform(-cfg.hsv_shift_max_h, cfg.hsv_shift_max_h);
        double ds = rng.uniform(-cfg.hsv_shift_max_s, cfg.hsv_shift_max_s);
        double dv = rng.uniform(-cfg.hsv_shift_max_v, cfg.hsv_shift_max_v);
        Image hsv = rgb_to_hsv(src);
        hsv.ch[0] = hsv.ch[0].unaryExpr([dh](double v) {
            double x = std::fmod(v + dh, 1.0);
            return x < 0.0 ? x + 1.0 : x;
        });
        hsv.ch[1] = clip01(Plane(hsv.ch[1] + ds));
        hsv.ch[2] = clip01(Plane(hsv.ch[2] + dv));
        src = hsv_to_rgb(hsv);
    }
    if (fire[kBrightness]) {
        double delta = rng.uniform(-cfg.brightness_delta_max, cfg.brightness_delta_max);
        for (Plane& p : src.ch) p += delta;
        src = clip01(src);
    }
    if (fire[kContrast]) {
        double f = rng.uniform(cfg.contrast_min, cfg.contrast_max);
        for (Plane& p : src.ch) p = (p - 0.5) * f + 0.5;
        src = clip01(src);
    }
    if (fire[kDownsample] && !cfg.downsample_factors.empty()) {
        int factor = cfg.downsample_factors[std::size_t(
            rng.uniform_int(0, std::int64_t(cfg.downsample_factors.size()) - 1))];
        Index dh2 = std::max<Index>(1, h / factor);
        Index dw2 = std::max<Index>(1, w / factor);
        src = resize_bilinear(resize_bilinear(src, dh2, dw2), h, w);
    }
    if (fire[kTranslate]) {
        Index mx = Index(cfg.translate_max_frac * double(w));
        Index my = Index(cfg.translate_max_frac * double(h));
        Index dx = rng.uniform_int(-mx, mx);
        Index dy = rng.uniform_int(-my, my);
        src = translate(src, dx, dy);
    }
    return {clip01(src), image};
}

Mask hull_mask(const Landmarks& landmarks, Index h, Index w) {
    check_landmarks(landmarks, h, w);
    auto hull = convex_hull(landmarks.points);
    const std::size_t n = hull.size();
    Mask mask = Mask::Zero(h, w);
    // Pixel-center inclusion: inside or on every CCW edge.
    for (Index y = 0; y < h; ++y)
        for (Index x = 0; x < w; ++x) {
            bool inside = true;
            for (std::size_t e = 0; e < n && inside; ++e) {
                const auto& a = hull[e];
                const auto& b = hull[(e + 1) % n];
                double c = (b.first - a.first) * (double(y) - a.second) -
                           (b.second - a.second) * (double(x) - a.first);
                inside = c >= -1e-9;
            }
            if (inside) mask(y, x) = 1.0;
        }
    return mask;
}

Mask elastic_deform(const Mask& mask, Rng& rng, double alpha, double sigma) {
    if (!(sigma > 0.0)) throw InvalidSigma("elastic sigma must be positive");
    if (alpha < 0.0) throw InvalidSigma("elastic alpha must be nonnegative");
    const Index h = mask.rows(), w = mask.cols();
    Plane fx(h, w), fy(h, w);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            fx(i, j) = rng.uniform(-1.0, 1.0);
            fy(i, j) = rng.uniform(-1.0, 1.0);
        }
    if (alpha == 0.0) return mask;
    fx = gaussian_blur(fx, sigma) * alpha;
    fy = gaussian_blur(fy, sigma) * alpha;

    Mask out(h, w);
    for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
            double sx = std::clamp(double(j) + fx(i, j), 0.0, double(w - 1));
            double sy = std::clamp(double(i) + fy(i, j), 0.0, double(h - 1));
            Index x0 = Index(std::floor(sx)), y0 = Index(std::floor(sy));
            Index x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
            double tx = sx - double(x0), ty = sy - double(y0);
            double r0 = mask(y0, x0) + tx * (mask(y0, x1) - mask(y0, x0));
            double r1 = mask(y1, x0) + tx * (mask(y1, x1) - mask(y1, x0));
            out(i, j) = r0 + ty * (r1 - r0);
        }
    return clip01(out);
}

Mask smooth_mask(const Mask& mask, Rng& rng, const MaskConfig& cfg) {
    Mask m = gaussian_blur(mask, cfg.blur1_sigma);
    m = erode(m, cfg.erode_radius);
    m = gaussian_blur(m, cfg.blur2_sigma);
    double ratio = 1.0;
    if (!cfg.blend_ratio_choices.empty())
        ratio = cfg.blend_ratio_choices[std::size_t(
            rng.uniform_int(0, std::int64_t(cfg.blend_ratio_choices.size()) - 1))];
    return clip01(Mask(m * ratio));
}

Image blend(const Image& source, const Image& target, const Mask& mask) {
    if (source.channels() != target.channels() || source.height() != target.height() ||
        source.width() != target.width() || mask.rows() != source.height() ||
        mask.cols() != source.width())
        throw ShapeMismatch("blend inputs disagree in shape");
    Image out;
    for (int c = 0; c < source.channels(); ++c) {
        // target + M*(source - target) rather than s*M + t*(1-M): identical
        // inputs then blend to themselves bit-exactly for any mask. The
        // select pins M == 1 to the source exactly as well.
        Plane mixed = target.ch[c] + mask * (source.ch[c] - target.ch[c]);
        out.ch.push_back((mask == 1.0).select(source.ch[c], mixed));
    }
    return out;
}

Image make_sbi(const Image& image, const Landmarks& landmarks, Rng& rng,
               const StgConfig& stg, const MaskConfig& mcfg) {
    auto [src, tgt] = source_target_generate(image, rng, stg);
    Mask mask = hull_mask(landmarks, image.height(), image.width());
    mask = elastic_deform(mask, rng, mcfg.elastic_alpha, mcfg.elastic_sigma);
    mask = smooth_mask(mask, rng, mcfg);
    return blend(src, tgt, mask);
}

Landmarks synthetic_landmarks(Index h, Index w, Rng& rng) {
    if (h < 32 || w < 32) throw ImageTooSmall("synthetic landmarks need >= 32x32");
    const double cx = double(w) / 2.0, cy = double(h) / 2.0;
    const double ax = 0.3 * double(w), ay = 0.4 * double(h);
    Landmarks lm;
    for (int i = 0; i < 17; ++i) {
        double theta = 2.0 * std::numbers::pi * double(i) / 17.0;
        double jx = rng.uniform(-0.05, 0.05) * ax;
        double jy = rng.uniform(-0.05, 0.05) * ay;
        double x = std::clamp(cx + ax * std::cos(theta) + jx, 0.0, double(w - 1));
        double y = std::clamp(cy + ay * std::sin(theta) + jy, 0.0, double(h - 1));
        lm.points.emplace_back(x, y);
    }
    return lm;
}

}  // namespace fsbi
