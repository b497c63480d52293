#include "fsbi/imaging.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace fsbi {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open '" + path + "' for reading");

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw UnsupportedPngFormat("'" + path + "' is not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }
    std::vector<std::vector<png_byte>> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng failed to decode '" + path + "'");
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (depth != 8 || (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedPngFormat("'" + path + "' is not 8-bit grayscale or RGB");
    }
    const int channels = color == PNG_COLOR_TYPE_RGB ? 3 : 1;

    rows.assign(h, std::vector<png_byte>(size_t(w) * channels));
    std::vector<png_bytep> row_ptrs(h);
    for (png_uint_32 i = 0; i < h; ++i) row_ptrs[i] = rows[i].data();
    png_read_image(png, row_ptrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(Index(h), Index(w), channels);
    for (png_uint_32 i = 0; i < h; ++i)
        for (png_uint_32 j = 0; j < w; ++j)
            for (int c = 0; c < channels; ++c)
                img.ch[c](Index(i), Index(j)) = rows[i][size_t(j) * channels + c] / 255.0;
    return img;
}

void save_png(const Image& image, const std::string& path) {
    const int channels = image.channels();
    if (channels != 1 && channels != 3)
        throw ChannelMismatch("save_png supports 1 or 3 channels");
    const Index h = image.height(), w = image.width();
    if (h == 0 || w == 0) throw EmptyPlane("cannot save empty image");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open '" + path + "' for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng failed to encode '" + path + "'");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, png_uint_32(w), png_uint_32(h), 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(size_t(w) * channels);
    for (Index i = 0; i < h; ++i) {
        for (Index j = 0; j < w; ++j)
            for (int c = 0; c < channels; ++c) {
                double v = std::clamp(image.ch[c](i, j), 0.0, 1.0);
                row[size_t(j) * channels + c] = png_byte(std::lround(v * 255.0));
            }
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

}  // namespace fsbi
