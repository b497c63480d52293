#include "fsbi/ffg.hpp"

#include "fsbi/imaging.hpp"
#include "fsbi/rng.hpp"

#include <doctest.h>

using namespace fsbi;

namespace {

Image random_rgb(Rng& rng, Index h, Index w) {
    Image img;
    for (int c = 0; c < 3; ++c) {
        Plane p(h, w);
        for (Index i = 0; i < h; ++i)
            for (Index j = 0; j < w; ++j) p(i, j) = rng.uniform();
        img.ch.push_back(p);
    }
    return img;
}

}  // namespace

TEST_CASE("constant planes under haar") {
    FfgConfig cfg;
    cfg.wavelet = {WaveletFamily::Haar, 1, ExtensionMode::Reflect};
    Plane c = Plane::Constant(10, 10, 0.37);

    cfg.normalize_dc = true;
    CHECK((channel_frequency_map(c, cfg) - c).cwiseAbs().maxCoeff() == 0.0);

    cfg.normalize_dc = false;
    CHECK((channel_frequency_map(c, cfg) - 2.0 * c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frequency map equals the reference chain") {
    Rng rng(13);
    Plane p(16, 16);
    for (Index i = 0; i < 16; ++i)
        for (Index j = 0; j < 16; ++j) p(i, j) = rng.uniform();
    FfgConfig cfg;  // sym4 / reflect
    cfg.normalize_dc = false;

    FilterBank bank = filter_bank(cfg.wavelet);
    const ExtensionMode mode = cfg.wavelet.mode;
    Index nw = dwt1d_reference(p.row(0).transpose(), bank, mode).first.size();
    Plane rows(16, nw);
    for (Index r = 0; r < 16; ++r)
        rows.row(r) = dwt1d_reference(p.row(r).transpose(), bank, mode).first.transpose();
    Index nh = dwt1d_reference(rows.col(0), bank, mode).first.size();
    Plane ll(nh, nw);
    for (Index c = 0; c < nw; ++c)
        ll.col(c) = dwt1d_reference(rows.col(c), bank, mode).first.array();
    Plane expected = resize_bilinear(ll, 16, 16);

    CHECK((channel_frequency_map(p, cfg) - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fuse_channel arithmetic") {
    Plane p = Plane::Constant(4, 4, 0.3);
    CHECK((fuse_channel(p, p) - p).cwiseAbs().maxCoeff() == 0.0);
    CHECK((fuse_channel(Plane::Zero(4, 4), Plane::Constant(4, 4, 1.0)) - 0.5)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((fuse_channel(Plane::Constant(4, 4, 1.0), Plane::Constant(4, 4, 3.0)) - 1.0)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK_THROWS_AS(fuse_channel(p, Plane::Zero(2, 2)), ShapeMismatch);
}

TEST_CASE("make_fsbi constant fixed point and channel independence") {
    FfgConfig cfg;
    Image c;
    for (double v : {0.1, 0.6, 0.95}) c.ch.push_back(Plane::Constant(12, 12, v));
    Image out = make_fsbi(c, cfg);
    for (int i = 0; i < 3; ++i)
        CHECK((out.ch[i] - c.ch[i]).cwiseAbs().maxCoeff() == 0.0);

    Rng rng(4);
    Image img = random_rgb(rng, 20, 20);
    Image perm;
    perm.ch = {img.ch[2], img.ch[0], img.ch[1]};
    Image a = make_fsbi(img, cfg), b = make_fsbi(perm, cfg);
    CHECK((a.ch[2] - b.ch[0]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.ch[0] - b.ch[1]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.ch[1] - b.ch[2]).cwiseAbs().maxCoeff() == 0.0);

    Image mono;
    mono.ch = {Plane::Constant(8, 8, 0.5)};
    CHECK_THROWS_AS(make_fsbi(mono, cfg), ChannelMismatch);
}

TEST_CASE("make_fsbi is deterministic and in range") {
    Rng rng(91);
    Image img = random_rgb(rng, 24, 24);
    FfgConfig cfg;
    Image a = make_fsbi(img, cfg), b = make_fsbi(img, cfg);
    for (int c = 0; c < 3; ++c) {
        CHECK((a.ch[c] - b.ch[c]).cwiseAbs().maxCoeff() == 0.0);
        CHECK(a.ch[c].minCoeff() >= 0.0);
        CHECK(a.ch[c].maxCoeff() <= 1.0);
    }
}

TEST_CASE("checkerboards move more than constants under fusion") {
    FfgConfig cfg;
    Plane checker(16, 16);
    for (Index i = 0; i < 16; ++i)
        for (Index j = 0; j < 16; ++j) checker(i, j) = double((i + j) % 2);
    Plane flat = Plane::Constant(16, 16, 0.5);
    double moved_checker =
        (fuse_channel(checker, channel_frequency_map(checker, cfg)) - checker)
            .cwiseAbs()
            .mean();
    double moved_flat =
        (fuse_channel(flat, channel_frequency_map(flat, cfg)) - flat).cwiseAbs().mean();
    CHECK(moved_checker > moved_flat);
    CHECK(moved_checker > 0.0);
}
