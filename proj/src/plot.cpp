#include "arz/plot.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace arz {

Image::Image(std::size_t w, std::size_t h, std::uint8_t r, std::uint8_t g, std::uint8_t b)
    : width(w), height(h), rgb(w * h * 3) {
    for (std::size_t i = 0; i < w * h; ++i) {
        rgb[3 * i] = r;
        rgb[3 * i + 1] = g;
        rgb[3 * i + 2] = b;
    }
}

void Image::set(std::size_t x, std::size_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (x >= width || y >= height) return;
    const std::size_t i = 3 * (y * width + x);
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
}

void Image::line(double x0, double y0, double x1, double y1, std::uint8_t r, std::uint8_t g,
                 std::uint8_t b) {
    const double len = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
    const int steps = std::max(1, static_cast<int>(std::ceil(len)));
    for (int s = 0; s <= steps; ++s) {
        const double w = static_cast<double>(s) / steps;
        const auto x = static_cast<std::ptrdiff_t>(std::lround(x0 + w * (x1 - x0)));
        const auto y = static_cast<std::ptrdiff_t>(std::lround(y0 + w * (y1 - y0)));
        if (x >= 0 && y >= 0) set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), r, g, b);
    }
}

void Image::frame(std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1,
                  std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    for (std::size_t x = x0; x <= x1; ++x) {
        set(x, y0, r, g, b);
        set(x, y1, r, g, b);
    }
    for (std::size_t y = y0; y <= y1; ++y) {
        set(x0, y, r, g, b);
        set(x1, y, r, g, b);
    }
}

namespace {

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const auto crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
    put_be32(out, static_cast<std::uint32_t>(crc));
}

struct Rgb {
    std::uint8_t r, g, b;
};

// magma-like anchors for the density colormap
Rgb colormap(double t) {
    static constexpr double anchor_r[] = {12, 87, 187, 249, 252};
    static constexpr double anchor_g[] = {8, 21, 55, 142, 253};
    static constexpr double anchor_b[] = {64, 126, 84, 8, 191};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double w = t - i;
    auto mix = [&](const double* a) {
        return static_cast<std::uint8_t>(std::lround((1.0 - w) * a[i] + w * a[i + 1]));
    };
    return {mix(anchor_r), mix(anchor_g), mix(anchor_b)};
}

}  // namespace

bool write_png(const Image& img, const std::filesystem::path& path) {
    if (img.width == 0 || img.height == 0) return false;

    // filter byte 0 in front of every scanline
    std::vector<std::uint8_t> raw;
    raw.reserve(img.height * (1 + 3 * img.width));
    for (std::size_t y = 0; y < img.height; ++y) {
        raw.push_back(0);
        const auto* row = img.rgb.data() + 3 * y * img.width;
        raw.insert(raw.end(), row, row + 3 * img.width);
    }

    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) !=
        Z_OK)
        return false;
    compressed.resize(bound);

    std::vector<std::uint8_t> png;
    static constexpr std::uint8_t signature[] = {137, 80, 78, 71, 13, 10, 26, 10};
    png.insert(png.end(), signature, signature + 8);

    std::vector<std::uint8_t> ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(img.width));
    put_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    put_chunk(png, "IHDR", ihdr);
    put_chunk(png, "IDAT", compressed);
    put_chunk(png, "IEND", {});

    std::ofstream file(path, std::ios::binary);
    if (!file) return false;
    file.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
    return static_cast<bool>(file);
}

bool save_density_heatmap(const SimulationRecord& record, const std::filesystem::path& path) {
    const std::size_t nx = record.grid.n_cells;
    const std::size_t nt = record.snapshots.size();
    if (nx == 0 || nt == 0) return false;

    const auto sx = std::clamp<std::size_t>(720 / nx, 1, 24);
    const auto sy = std::clamp<std::size_t>(480 / nt, 1, 24);
    Image img(nx * sx, nt * sy);
    const double k_max = record.params.k_jam;

    for (std::size_t ti = 0; ti < nt; ++ti) {
        const auto& snap = record.snapshots[ti];
        for (std::size_t xi = 0; xi < nx; ++xi) {
            const Rgb c = colormap(snap.k[xi] / k_max);
            for (std::size_t py = 0; py < sy; ++py)
                for (std::size_t px = 0; px < sx; ++px)
                    img.set(xi * sx + px, ti * sy + py, c.r, c.g, c.b);
        }
    }
    return write_png(img, path);
}

bool save_cross_sections(const std::vector<CrossSeries>& series, const Grid& grid, double k_max,
                         const std::filesystem::path& path) {
    if (series.empty() || grid.n_cells < 2 || !(k_max > 0.0)) return false;

    const std::size_t cols = series.size() > 1 ? 2 : 1;
    const std::size_t rows = (series.size() + cols - 1) / cols;
    const std::size_t panel_w = 440, panel_h = 260, margin = 28;
    Image img(cols * (panel_w + margin) + margin, rows * (panel_h + margin) + margin);

    for (std::size_t si = 0; si < series.size(); ++si) {
        const std::size_t px0 = margin + (si % cols) * (panel_w + margin);
        const std::size_t py0 = margin + (si / cols) * (panel_h + margin);
        img.frame(px0, py0, px0 + panel_w, py0 + panel_h, 60, 60, 60);
        // quarter gridlines
        for (int q = 1; q < 4; ++q) {
            const auto gy = py0 + q * panel_h / 4;
            for (std::size_t x = px0 + 1; x < px0 + panel_w; x += 3) img.set(x, gy, 210, 210, 210);
            const auto gx = px0 + q * panel_w / 4;
            for (std::size_t y = py0 + 1; y < py0 + panel_h; y += 3) img.set(gx, y, 210, 210, 210);
        }

        const auto& k = series[si].k;
        if (k.size() != grid.n_cells) continue;
        const double x_span = grid.length();
        double prev_px = 0, prev_py = 0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            const double fx = grid.cell_center(i) / x_span;
            const double fy = std::clamp(k[i] / k_max, 0.0, 1.0);
            const double cur_px = px0 + fx * panel_w;
            const double cur_py = py0 + (1.0 - fy) * panel_h;
            if (i > 0) img.line(prev_px, prev_py, cur_px, cur_py, 178, 34, 34);
            prev_px = cur_px;
            prev_py = cur_py;
        }
    }
    return write_png(img, path);
}

}  // namespace arz
