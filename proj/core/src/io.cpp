#include "pbs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "pbs/error.hpp"

namespace pbs {

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string format_row(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_number(values[i]);
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string encode_pgm16(std::size_t width, std::size_t height, const std::vector<std::uint16_t>& pixels) {
    if (pixels.size() != width * height) throw DomainError("PGM: pixel count does not match the image size");
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    out.reserve(out.size() + 2 * pixels.size());
    for (std::uint16_t p : pixels) {
        out.push_back(static_cast<char>(p >> 8));
        out.push_back(static_cast<char>(p & 0xff));
    }
    return out;
}

std::vector<std::uint16_t> quantize(const std::vector<double>& values, double lo, double hi) {
    if (!(hi > lo)) throw DomainError("quantize: empty value range");
    std::vector<std::uint16_t> out;
    out.reserve(values.size());
    for (double v : values) {
        if (std::isnan(v)) {
            out.push_back(0);
            continue;
        }
        const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        out.push_back(static_cast<std::uint16_t>(std::lround(t * 65535.0)));
    }
    return out;
}

}  // namespace pbs
