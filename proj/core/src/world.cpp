#include "nhplan/world.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace nhplan {

GridBuilder::GridBuilder(int width_cells, int height_cells, double cell_size)
    : width_(width_cells), height_(height_cells), cell_size_(cell_size) {
  if (width_ <= 0 || height_ <= 0) throw ConfigError("GridBuilder: dimensions must be positive");
  if (!(cell_size_ > 0.0)) throw ConfigError("GridBuilder: cell_size must be positive");
}

GridBuilder& GridBuilder::rect(int x0, int y0, int x1, int y1) {
  return add(RectShape{x0, y0, x1, y1});
}

GridBuilder& GridBuilder::circle(double cx, double cy, double radius) {
  return add(CircleShape{cx, cy, radius});
}

GridBuilder& GridBuilder::border(int thickness) { return add(BorderShape{thickness}); }

GridBuilder& GridBuilder::add(const Shape& shape) {
  shapes_.push_back(shape);
  return *this;
}

OccupancyGrid GridBuilder::build() const {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(width_) * height_, 0);
  auto mark = [&](int x, int y) -> bool {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
    cells[static_cast<std::size_t>(y) * width_ + x] = 1;
    return true;
  };

  for (const Shape& shape : shapes_) {
    bool touched = false;
    if (const auto* r = std::get_if<RectShape>(&shape)) {
      for (int y = std::max(r->y0, 0); y < std::min(r->y1, height_); ++y) {
        for (int x = std::max(r->x0, 0); x < std::min(r->x1, width_); ++x) {
          touched |= mark(x, y);
        }
      }
    } else if (const auto* c = std::get_if<CircleShape>(&shape)) {
      const int x0 = static_cast<int>(std::floor(c->cx - c->radius));
      const int x1 = static_cast<int>(std::ceil(c->cx + c->radius));
      const int y0 = static_cast<int>(std::floor(c->cy - c->radius));
      const int y1 = static_cast<int>(std::ceil(c->cy + c->radius));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          if (std::hypot(x + 0.5 - c->cx, y + 0.5 - c->cy) <= c->radius) touched |= mark(x, y);
        }
      }
    } else {
      const int t = std::get<BorderShape>(shape).thickness;
      if (t <= 0) throw ConfigError("GridBuilder: border thickness must be positive");
      for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
          if (x < t || y < t || x >= width_ - t || y >= height_ - t) touched |= mark(x, y);
        }
      }
    }
    if (!touched) throw ConfigError("GridBuilder: shape lies entirely outside the grid");
  }
  return OccupancyGrid(width_, height_, cell_size_, std::move(cells));
}

// ---------------------------------------------------------------------------

void RasterImportConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("RasterImportConfig: threshold must lie in [0, 1]");
  }
  if (!(cell_size > 0.0)) throw ConfigError("RasterImportConfig: cell_size must be positive");
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads an unsigned decimal.
  long header_number(const char* field) {
    skip_space_and_comments();
    return number(PgmErrorKind::MalformedHeader, field);
  }

  long plain_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) {
      throw PgmError(PgmErrorKind::TruncatedPayload, "pgm: raster ends early");
    }
    return number(PgmErrorKind::BadPixel, "pixel");
  }

  // Exactly one whitespace byte separates maxval from a binary raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw PgmError(PgmErrorKind::MalformedHeader, "pgm: missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t next() { return bytes_[pos_++]; }
  std::size_t pos() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  long number(PgmErrorKind kind, const char* field) {
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw PgmError(kind, std::string("pgm: expected a number for ") + field);
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw PgmError(kind, std::string("pgm: ") + field + " too large");
      ++pos_;
    }
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

PgmImage parse_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw PgmError(PgmErrorKind::UnsupportedMagic, "pgm: missing magic number");
  }
  const bool plain = bytes[1] == '2';
  if (!plain && bytes[1] != '5') {
    throw PgmError(PgmErrorKind::UnsupportedMagic,
                   std::string("pgm: unsupported magic P") + static_cast<char>(bytes[1]));
  }
  PgmReader in(bytes.subspan(2));

  PgmImage img;
  const long width = in.header_number("width");
  const long height = in.header_number("height");
  const long maxval = in.header_number("maxval");
  if (width <= 0 || height <= 0) throw PgmError(PgmErrorKind::MalformedHeader, "pgm: empty image");
  if (maxval <= 0 || maxval > 65535) {
    throw PgmError(PgmErrorKind::MalformedHeader, "pgm: maxval must lie in [1, 65535]");
  }
  if (width * height > 100'000'000L) throw PgmError(PgmErrorKind::MalformedHeader, "pgm: image too large");
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.maxval = static_cast<int>(maxval);

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  img.pixels.resize(count);
  if (plain) {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = in.plain_number();
      if (v > maxval) throw PgmError(PgmErrorKind::BadPixel, "pgm: pixel exceeds maxval");
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    in.single_whitespace();
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (in.remaining() < count * bpp) {
      throw PgmError(PgmErrorKind::TruncatedPayload, "pgm: raster ends early");
    }
    for (std::size_t i = 0; i < count; ++i) {
      unsigned v = in.next();
      if (bpp == 2) v = (v << 8) | in.next();  // most significant byte first
      if (v > static_cast<unsigned>(maxval)) {
        throw PgmError(PgmErrorKind::BadPixel, "pgm: pixel exceeds maxval");
      }
      img.pixels[i] = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

PgmImage parse_pgm(std::string_view bytes) { return parse_pgm(as_bytes(bytes)); }

OccupancyGrid load_raster(std::span<const std::uint8_t> bytes, const RasterImportConfig& cfg) {
  cfg.validate();
  const PgmImage img = parse_pgm(bytes);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(img.width) * img.height, 0);
  for (int row = 0; row < img.height; ++row) {
    const int y = img.height - 1 - row;
    for (int x = 0; x < img.width; ++x) {
      const double lum =
          static_cast<double>(img.pixels[static_cast<std::size_t>(row) * img.width + x]) /
          img.maxval;
      const bool dark = lum < cfg.threshold;
      cells[static_cast<std::size_t>(y) * img.width + x] = (dark != cfg.invert) ? 1 : 0;
    }
  }
  return OccupancyGrid(img.width, img.height, cfg.cell_size, std::move(cells));
}

OccupancyGrid load_raster(std::string_view bytes, const RasterImportConfig& cfg) {
  return load_raster(as_bytes(bytes), cfg);
}

OccupancyGrid load_raster_file(const std::string& path, const RasterImportConfig& cfg) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open map file '" + path + "'");
  const std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_raster(std::string_view(data), cfg);
}

std::string write_pgm(const OccupancyGrid& grid, bool plain) {
  std::ostringstream out;
  out << (plain ? "P2\n" : "P5\n") << grid.width() << ' ' << grid.height() << "\n255\n";
  for (int y = grid.height() - 1; y >= 0; --y) {
    for (int x = 0; x < grid.width(); ++x) {
      const bool occ = grid.occupied(x, y);
      if (plain) {
        out << (occ ? "0" : "255") << (x + 1 == grid.width() ? '\n' : ' ');
      } else {
        out.put(static_cast<char>(occ ? 0 : 255));
      }
    }
  }
  return out.str();
}

}  // namespace nhplan
