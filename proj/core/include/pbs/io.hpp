#pragma once

// Output formatting shared by the scenario pipelines: fixed scientific
// notation with 9 significant digits, and 16-bit binary PGM images.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pbs {

/// "%.8e", e.g. 7.97000000e+02. Negative zero prints as zero.
std::string format_number(double v);

/// Comma-joined format_number values.
std::string format_row(const std::vector<double>& values);

/// Writes text atomically enough for our purposes: to path.tmp, then renames.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Binary PGM (P5), maxval 65535, big-endian samples, row-major with the
/// first row at the top of the image.
std::string encode_pgm16(std::size_t width, std::size_t height, const std::vector<std::uint16_t>& pixels);

/// Linear map of values from [lo, hi] to [0, 65535], clamped. NaN maps to 0.
std::vector<std::uint16_t> quantize(const std::vector<double>& values, double lo, double hi);

}  // namespace pbs
