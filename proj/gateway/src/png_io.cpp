#include "alchemy/gateway/png_io.hpp"

#include <png.h>

#include <cstring>
#include <memory>
#include <vector>

#include "alchemy/gateway/errors.hpp"

namespace alchemy::gateway {

namespace {

struct ImageGuard {
    png_image image{};
    ImageGuard() {
        std::memset(&image, 0, sizeof(image));
        image.version = PNG_IMAGE_VERSION;
    }
    ~ImageGuard() { png_image_free(&image); }
    ImageGuard(const ImageGuard&) = delete;
    ImageGuard& operator=(const ImageGuard&) = delete;
};

[[noreturn]] void fail(const std::filesystem::path& path, const png_image& image, const char* what) {
    throw ImageError(std::string(what) + " " + path.string() + ": " + image.message);
}

}  // namespace

std::pair<int, int> png_dimensions(const std::filesystem::path& path) {
    ImageGuard g;
    if (!png_image_begin_read_from_file(&g.image, path.c_str())) fail(path, g.image, "cannot read");
    return {static_cast<int>(g.image.width), static_cast<int>(g.image.height)};
}

ArgbMatrix read_png(const std::filesystem::path& path) {
    ImageGuard g;
    if (!png_image_begin_read_from_file(&g.image, path.c_str())) fail(path, g.image, "cannot read");
    g.image.format = PNG_FORMAT_RGBA;
    const int w = static_cast<int>(g.image.width);
    const int h = static_cast<int>(g.image.height);
    std::vector<png_byte> rgba(PNG_IMAGE_SIZE(g.image));
    if (!png_image_finish_read(&g.image, nullptr, rgba.data(), 0, nullptr)) fail(path, g.image, "cannot decode");

    ArgbMatrix m(w, h);
    std::size_t i = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x, i += 4) {
            m.set_cell(x, y, Cell{rgba[i + 3], rgba[i], rgba[i + 1], rgba[i + 2]});
        }
    }
    return m;
}

void write_png(const std::filesystem::path& path, const ArgbMatrix& m) {
    std::vector<png_byte> rgba(m.cell_count() * 4);
    std::size_t i = 0;
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x, i += 4) {
            const Cell c = m.cell(x, y);
            rgba[i] = c.r;
            rgba[i + 1] = c.g;
            rgba[i + 2] = c.b;
            rgba[i + 3] = c.a;
        }
    }
    ImageGuard g;
    g.image.width = static_cast<png_uint_32>(m.width());
    g.image.height = static_cast<png_uint_32>(m.height());
    g.image.format = PNG_FORMAT_RGBA;
    if (!png_image_write_to_file(&g.image, path.c_str(), 0, rgba.data(), 0, nullptr)) {
        fail(path, g.image, "cannot write");
    }
}

}  // namespace alchemy::gateway
