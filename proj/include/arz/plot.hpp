#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "arz/record.hpp"

namespace arz {

/// Minimal RGB raster for the decoration plots. Quantitative output lives in
/// the CSV files; these renderers are best-effort and never throw.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

    Image(std::size_t w, std::size_t h, std::uint8_t r = 255, std::uint8_t g = 255,
          std::uint8_t b = 255);
    void set(std::size_t x, std::size_t y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
    void line(double x0, double y0, double x1, double y1, std::uint8_t r, std::uint8_t g,
              std::uint8_t b);
    void frame(std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1,
               std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

/// Encode as 8-bit RGB PNG. Returns false (no throw) on any failure.
bool write_png(const Image& img, const std::filesystem::path& path);

/// Density heatmap over (t down, x right), scaled to [0, k_jam].
bool save_density_heatmap(const SimulationRecord& record, const std::filesystem::path& path);

/// One panel per labelled density profile, shared axes up to k_jam.
struct CrossSeries {
    std::string label;
    std::vector<double> k;
};

bool save_cross_sections(const std::vector<CrossSeries>& series, const Grid& grid, double k_max,
                         const std::filesystem::path& path);

}  // namespace arz
