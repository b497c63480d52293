#include "fsbi/imaging.hpp"

#include "fsbi/rng.hpp"

#include <doctest.h>
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

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

Image quantize(const Image& img) {
    Image out = img;
    for (Plane& p : out.ch)
        p = (p.min(1.0).max(0.0) * 255.0).round() / 255.0;
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("fsbi_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("png round-trip is byte identical on 8-bit data") {
    TempDir dir;
    Rng rng(11);
    Image img = quantize(random_rgb(rng, 13, 9));
    std::string p1 = (dir.path / "a.png").string();
    std::string p2 = (dir.path / "b.png").string();
    save_png(img, p1);
    Image back = load_png(p1);
    REQUIRE(back.ch.size() == 3);
    for (int c = 0; c < 3; ++c)
        CHECK((img.ch[c] - back.ch[c]).cwiseAbs().maxCoeff() < 1e-12);
    save_png(back, p2);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    std::string b1((std::istreambuf_iterator<char>(f1)), {});
    std::string b2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(b1 == b2);
}

TEST_CASE("png grayscale load and value mapping") {
    TempDir dir;
    Image img;
    Plane p = Plane::Constant(4, 4, 128.0 / 255.0);
    img.ch.push_back(p);
    std::string path = (dir.path / "g.png").string();
    save_png(img, path);
    Image back = load_png(path);
    REQUIRE(back.ch.size() == 1);
    CHECK(back.ch[0](0, 0) == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("png load errors") {
    TempDir dir;
    CHECK_THROWS_AS(load_png((dir.path / "missing.png").string()), IoError);
    std::string bogus = (dir.path / "bogus.png").string();
    std::ofstream(bogus, std::ios::binary) << "not a png at all";
    CHECK_THROWS_AS(load_png(bogus), UnsupportedPngFormat);
}

TEST_CASE("16-bit png is rejected") {
    TempDir dir;
    std::string path = (dir.path / "deep.png").string();
    FILE* fp = std::fopen(path.c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, 2, 2, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_byte row[4] = {0, 1, 2, 3};
    for (int r = 0; r < 2; ++r) png_write_row(png, row);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    CHECK_THROWS_AS(load_png(path), UnsupportedPngFormat);
}

TEST_CASE("resize_bilinear ramp and constants") {
    Plane row(1, 2);
    row << 0, 1;
    Plane up = resize_bilinear(row, 1, 3);
    CHECK(up(0, 0) == doctest::Approx(0.0));
    CHECK(up(0, 1) == doctest::Approx(0.5));
    CHECK(up(0, 2) == doctest::Approx(1.0));

    Plane c = Plane::Constant(5, 7, 0.7);
    Plane cr = resize_bilinear(c, 3, 11);
    CHECK((cr - 0.7).cwiseAbs().maxCoeff() == 0.0);

    Plane ramp(4, 4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) ramp(i, j) = double(i * 4 + j);
    Plane down = resize_bilinear(ramp, 2, 2);
    CHECK(down(0, 0) == doctest::Approx(ramp(0, 0)));
    CHECK(down(0, 1) == doctest::Approx(ramp(0, 3)));
    CHECK(down(1, 0) == doctest::Approx(ramp(3, 0)));
    CHECK(down(1, 1) == doctest::Approx(ramp(3, 3)));
}

TEST_CASE("resize_bilinear identity and bounds") {
    Rng rng(3);
    Plane p(6, 5);
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 5; ++j) p(i, j) = rng.uniform();
    CHECK((resize_bilinear(p, 6, 5) - p).cwiseAbs().maxCoeff() < 1e-12);
    Plane q = resize_bilinear(p, 17, 3);
    CHECK(q.minCoeff() >= p.minCoeff() - 1e-12);
    CHECK(q.maxCoeff() <= p.maxCoeff() + 1e-12);
    CHECK_THROWS_AS(resize_bilinear(Plane(), 4, 4), EmptyPlane);
}

TEST_CASE("rgb/hsv known values and round trip") {
    Image red;
    red.ch = {Plane::Constant(1, 1, 1.0), Plane::Constant(1, 1, 0.0),
              Plane::Constant(1, 1, 0.0)};
    Image hsv = rgb_to_hsv(red);
    CHECK(hsv.ch[0](0, 0) == doctest::Approx(0.0));
    CHECK(hsv.ch[1](0, 0) == doctest::Approx(1.0));
    CHECK(hsv.ch[2](0, 0) == doctest::Approx(1.0));

    Image gray;
    gray.ch = {Plane::Constant(1, 1, 0.3), Plane::Constant(1, 1, 0.3),
               Plane::Constant(1, 1, 0.3)};
    Image ghsv = rgb_to_hsv(gray);
    CHECK(ghsv.ch[0](0, 0) == doctest::Approx(0.0));
    CHECK(ghsv.ch[1](0, 0) == doctest::Approx(0.0));
    CHECK(ghsv.ch[2](0, 0) == doctest::Approx(0.3));

    Rng rng(17);
    Image img = random_rgb(rng, 8, 8);
    Image back = hsv_to_rgb(rgb_to_hsv(img));
    for (int c = 0; c < 3; ++c)
        CHECK((img.ch[c] - back.ch[c]).cwiseAbs().maxCoeff() < 1e-6);

    Image mono;
    mono.ch = {Plane::Constant(2, 2, 0.5)};
    CHECK_THROWS_AS(rgb_to_hsv(mono), ChannelMismatch);
    CHECK_THROWS_AS(hsv_to_rgb(mono), ChannelMismatch);
}

TEST_CASE("gaussian_blur kernel properties") {
    Plane c = Plane::Constant(9, 9, 0.42);
    CHECK((gaussian_blur(c, 2.0) - c).cwiseAbs().maxCoeff() < 1e-12);

    Plane impulse = Plane::Zero(21, 21);
    impulse(10, 10) = 1.0;
    Plane blurred = gaussian_blur(impulse, 1.5);
    CHECK(std::abs(blurred.sum() - 1.0) < 1e-10);
    CHECK(blurred.minCoeff() >= 0.0);
    CHECK(blurred.maxCoeff() <= 1.0);

    CHECK_THROWS_AS(gaussian_blur(c, 0.0), InvalidSigma);
    CHECK_THROWS_AS(gaussian_blur(c, -1.0), InvalidSigma);
}

TEST_CASE("erode definitions and monotonicity") {
    Mask ones = Mask::Constant(5, 5, 1.0);
    CHECK((erode(ones, 1) - 1.0).cwiseAbs().maxCoeff() == 0.0);

    Mask spot = Mask::Zero(5, 5);
    spot(2, 2) = 1.0;
    CHECK(erode(spot, 1).maxCoeff() == 0.0);

    CHECK_THROWS_AS(erode(ones, 0), InvalidRadius);

    Rng rng(8);
    Mask a(8, 8), b(8, 8);
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j) {
            a(i, j) = rng.uniform();
            b(i, j) = std::min(1.0, a(i, j) + rng.uniform() * 0.3);
        }
    Mask ea = erode(a, 2), eb = erode(b, 2);
    CHECK((eb - ea).minCoeff() >= -1e-15);
}

TEST_CASE("translate semantics") {
    Rng rng(4);
    Image img = random_rgb(rng, 4, 6);
    Image same = translate(img, 0, 0);
    for (int c = 0; c < 3; ++c)
        CHECK((img.ch[c] - same.ch[c]).cwiseAbs().maxCoeff() == 0.0);

    Image right = translate(img, 1, 0);
    for (int c = 0; c < 3; ++c) {
        CHECK((right.ch[c].rightCols(5) - img.ch[c].leftCols(5)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((right.ch[c].col(0) - img.ch[c].col(0)).cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK_THROWS_AS(translate(img, 6, 0), ShiftTooLarge);
    CHECK_THROWS_AS(translate(img, 0, -4), ShiftTooLarge);
}

TEST_CASE("clip01") {
    Plane p(1, 3);
    p << 1.2, -0.1, 0.5;
    Plane q = clip01(p);
    CHECK(q(0, 0) == 1.0);
    CHECK(q(0, 1) == 0.0);
    CHECK(q(0, 2) == 0.5);
}
