#include "physarum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace physarum {

void write_pgm(const std::filesystem::path& path, const PgmImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

int next_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            int value = 0;
            do {
                if (!std::isdigit(c)) throw std::runtime_error("malformed PGM header");
                value = value * 10 + (c - '0');
                c = in.get();
            } while (c != EOF && !std::isspace(c));
            return value;
        }
    }
    throw std::runtime_error("truncated PGM header");
}

}  // namespace

PgmImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    const bool binary = m0 == 'P' && m1 == '5';
    const bool ascii = m0 == 'P' && m1 == '2';
    if (!binary && !ascii) throw std::runtime_error(path.string() + ": not a P2/P5 PGM file");

    PgmImage img;
    img.width = next_pnm_token(in);
    img.height = next_pnm_token(in);
    const int maxval = next_pnm_token(in);
    if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 255)
        throw std::runtime_error(path.string() + ": unsupported PGM geometry");
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    if (binary) {
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw std::runtime_error(path.string() + ": truncated PGM data");
    } else {
        for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<std::uint8_t>(next_pnm_token(in));
    }
    return img;
}

double field_to_pgm(const Field& field, PgmImage& out) {
    out.width = field.width();
    out.height = field.height();
    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height);
    const double maxv = field.max_value();
    const double scale = maxv > 0.0 ? 255.0 / maxv : 0.0;
    const auto values = field.values();
    for (std::size_t i = 0; i < values.size(); ++i)
        out.pixels[i] = static_cast<std::uint8_t>(std::lround(values[i] * scale));
    return scale;
}

PgmImage mask_to_pgm(int width, int height, const CellMask& mask) {
    PgmImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * height, 0);
    for (Cell c : mask) {
        if (c.x < 0 || c.x >= width || c.y < 0 || c.y >= height) continue;
        img.pixels[static_cast<std::size_t>(c.y) * width + c.x] = 255;
    }
    return img;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line, int row, const std::string& file) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw std::runtime_error(file + ": row " + std::to_string(row) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::vector<std::vector<double>> read_csv_numeric(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    int row = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (row == 1 && !line.empty() && (std::isalpha(static_cast<unsigned char>(line[0])) || line[0] == '"')) {
            continue;  // header row
        }
        std::vector<double> values;
        for (const std::string& f : split_csv_row(line, row, path.string())) {
            try {
                std::size_t used = 0;
                const double v = std::stod(f, &used);
                while (used < f.size() && std::isspace(static_cast<unsigned char>(f[used]))) ++used;
                if (used != f.size()) throw std::invalid_argument(f);
                values.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                                         ": not a number: '" + f + "'");
            }
        }
        if (width == 0) width = values.size();
        if (values.size() != width)
            throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                                     ": expected " + std::to_string(width) + " columns, got " +
                                     std::to_string(values.size()));
        rows.push_back(std::move(values));
    }
    return rows;
}

std::string csv_escape(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace physarum
