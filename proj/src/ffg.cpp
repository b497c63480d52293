#include "fsbi/ffg.hpp"

#include "fsbi/imaging.hpp"

namespace fsbi {

Plane channel_frequency_map(const Plane& plane, const FfgConfig& cfg) {
    FilterBank bank = filter_bank(cfg.wavelet);
    if (cfg.normalize_dc) {
        // Folding the 1/sum(dec_lo) gain into the analysis filter divides LL
        // by sum(dec_lo)^2 overall and keeps constant planes exact for Haar.
        bank.dec_lo /= bank.dec_lo.sum();
    }
    Subbands sb = dwt2d(plane, bank, cfg.wavelet.mode);
    return resize_bilinear(sb.ll, plane.rows(), plane.cols());
}

Plane fuse_channel(const Plane& plane, const Plane& freq_map) {
    if (plane.rows() != freq_map.rows() || plane.cols() != freq_map.cols())
        throw ShapeMismatch("fuse_channel shape mismatch");
    return clip01(Plane((plane + freq_map) / 2.0));
}

Image make_fsbi(const Image& image, const FfgConfig& cfg) {
    if (image.channels() != 3) throw ChannelMismatch("make_fsbi needs RGB");
    Image out;
    for (const Plane& p : image.ch)
        out.ch.push_back(fuse_channel(p, channel_frequency_map(p, cfg)));
    return out;
}

}  // namespace fsbi
