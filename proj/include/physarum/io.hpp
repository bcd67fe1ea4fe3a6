#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "physarum/field.hpp"
#include "physarum/geometry.hpp"
#include "physarum/mask.hpp"

namespace physarum {

struct PgmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

/// Binary (P5) 8-bit PGM.
void write_pgm(const std::filesystem::path& path, const PgmImage& image);
PgmImage read_pgm(const std::filesystem::path& path);

/// Field rendered to 8 bits as round(value * scale) with scale = 255 / max
/// (0 when the field is empty). Returns the scale used.
double field_to_pgm(const Field& field, PgmImage& out);

/// Occupancy mask rendered as 0/255.
PgmImage mask_to_pgm(int width, int height, const CellMask& mask);

/// CSV rows of doubles. Parsing accepts RFC-4180-style quoting and reports
/// malformed rows by number; every row must have the same column count.
std::vector<std::vector<double>> read_csv_numeric(const std::filesystem::path& path);

std::string csv_escape(const std::string& raw);

/// Fixed formatting for doubles so identical values serialize to identical
/// bytes ("%.12g"; integral values print without an exponent).
std::string format_double(double v);

}  // namespace physarum
