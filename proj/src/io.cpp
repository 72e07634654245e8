#include "io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <set>

#include "errors.hpp"

namespace lfsr {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

Raster read_png(const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError(path.string() + " is not a PNG file");

  std::string error;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int depth = 0, channels = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("cannot decode " + path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  depth = png_get_bit_depth(png, info);
  channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  buffer.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) rows[r] = buffer.data() + r * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (channels != 1 && channels != 3)
    throw IoError(path.string() + ": unsupported channel layout");
  Raster out;
  out.bit_depth = depth;
  const double maxval = depth == 16 ? 65535.0 : 255.0;
  for (int c = 0; c < channels; ++c)
    out.planes.emplace_back(static_cast<int>(height), static_cast<int>(width));
  for (png_uint_32 r = 0; r < height; ++r) {
    const png_byte* row = rows[r];
    for (png_uint_32 col = 0; col < width; ++col) {
      for (int c = 0; c < channels; ++c) {
        const std::size_t i = static_cast<std::size_t>(col) * channels + c;
        const unsigned raw = depth == 16 ? (row[2 * i] << 8) | row[2 * i + 1] : row[i];
        out.planes[c](static_cast<int>(r), static_cast<int>(col)) = raw / maxval;
      }
    }
  }
  return out;
}

std::uint32_t quantize(double value, int bit_depth) {
  const double maxval = bit_depth == 16 ? 65535.0 : 255.0;
  const double v = std::clamp(value, 0.0, 1.0) * maxval;
  // Halves round up even when averaging left them a few ulps short.
  constexpr double kSlack = 1e-9;
  return static_cast<std::uint32_t>(std::min(std::floor(v + 0.5 + kSlack), maxval));
}

void write_png(const fs::path& path, const std::vector<Image>& planes, int bit_depth) {
  if (planes.size() != 1 && planes.size() != 3)
    throw IoError("PNG output needs 1 or 3 channels");
  if (bit_depth != 8 && bit_depth != 16) throw IoError("PNG output must be 8 or 16 bit");
  const int height = planes[0].rows(), width = planes[0].cols();
  for (const auto& p : planes)
    if (p.rows() != height || p.cols() != width) throw IoError("PNG planes differ in size");
  const int channels = static_cast<int>(planes.size());
  const int bytes = bit_depth / 8;
  const std::size_t stride = static_cast<std::size_t>(width) * channels * bytes;
  std::vector<png_byte> buffer(stride * height);
  for (int r = 0; r < height; ++r) {
    for (int col = 0; col < width; ++col) {
      for (int c = 0; c < channels; ++c) {
        const auto q = quantize(planes[c](r, col), bit_depth);
        png_byte* dst = buffer.data() + r * stride +
                        (static_cast<std::size_t>(col) * channels + c) * bytes;
        if (bytes == 2) {
          dst[0] = static_cast<png_byte>(q >> 8);
          dst[1] = static_cast<png_byte>(q & 0xff);
        } else {
          dst[0] = static_cast<png_byte>(q);
        }
      }
    }
  }

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot create " + path.string());
  std::string error;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_error_fn, png_warning_fn);
  if (!png) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(height);
  for (int r = 0; r < height; ++r) rows[r] = buffer.data() + r * stride;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("cannot encode " + path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, bit_depth,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw IoError("cannot write " + path.string());
}

ColorLightField Dataset::color() const {
  if (channels.size() == 3) return {{channels[0], channels[1], channels[2]}};
  return {{channels[0], channels[0], channels[0]}};
}

LightField Dataset::luma() const {
  if (channels.size() == 1) return channels[0];
  return rgb_to_luma_chroma(color()).luma;
}

std::string view_filename(int s, int t) {
  char name[32];
  std::snprintf(name, sizeof name, "view_%02d_%02d.png", s, t);
  return name;
}

namespace {

int read_angular_size(const fs::path& cfg) {
  std::ifstream in(cfg);
  if (!in) throw IoError("cannot read " + cfg.string());
  std::string line;
  int M = 0;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "angular_size") {
      try {
        M = std::stoi(value);
      } catch (const std::exception&) {
        throw IoError(cfg.string() + ": invalid angular_size '" + value + "'");
      }
    }
  }
  return M;
}

}  // namespace

Dataset load_lightfield(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("light field directory " + dir.string() + " not found");
  int M = 0;
  const fs::path cfg = dir / "lightfield.cfg";
  if (fs::exists(cfg)) M = read_angular_size(cfg);
  if (M <= 0) {
    static const std::regex pattern(R"(view_(\d{2})_(\d{2})\.png)");
    for (const auto& entry : fs::directory_iterator(dir)) {
      std::smatch m;
      const std::string name = entry.path().filename().string();
      if (std::regex_match(name, m, pattern))
        M = std::max({M, std::stoi(m[1].str()), std::stoi(m[2].str())});
    }
  }
  if (M <= 0) throw IoError("no view_SS_TT.png files in " + dir.string());

  std::vector<Raster> rasters(static_cast<std::size_t>(M) * M);
  for (int t = 1; t <= M; ++t) {
    for (int s = 1; s <= M; ++s) {
      const fs::path file = dir / view_filename(s, t);
      if (!fs::exists(file)) throw IoError("missing view file " + file.string());
      rasters[linear_index({s, t}, M) - 1] = read_png(file);
    }
  }
  const auto& first = rasters.front().planes.front();
  std::size_t channels = 1;
  int depth = 8;
  for (int k = 1; k <= M * M; ++k) {
    const auto& r = rasters[k - 1];
    const auto& p = r.planes.front();
    if (p.rows() != first.rows() || p.cols() != first.cols()) {
      const auto c = view_coord(k, M);
      throw IoError("view file " + view_filename(c.s, c.t) + " has size " +
                    std::to_string(p.cols()) + "x" + std::to_string(p.rows()) + ", expected " +
                    std::to_string(first.cols()) + "x" + std::to_string(first.rows()));
    }
    channels = std::max(channels, r.planes.size());
    depth = std::max(depth, r.bit_depth);
  }
  Dataset data;
  data.bit_depth = depth;
  for (std::size_t c = 0; c < channels; ++c) {
    LightField lf({M, first.rows(), first.cols()});
    for (int k = 0; k < M * M; ++k) {
      const auto& planes = rasters[k].planes;
      lf.set_view(k, planes[std::min(c, planes.size() - 1)]);
    }
    data.channels.push_back(std::move(lf));
  }
  return data;
}

void save_lightfield(const Dataset& data, const fs::path& dir) {
  if (data.channels.size() != 1 && data.channels.size() != 3)
    throw IoError("a light field needs 1 or 3 channels");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  const int M = data.shape().M;
  for (int t = 1; t <= M; ++t) {
    for (int s = 1; s <= M; ++s) {
      const int k = linear_index({s, t}, M) - 1;
      std::vector<Image> planes;
      for (const auto& ch : data.channels) planes.push_back(ch.view(k));
      write_png(dir / view_filename(s, t), planes, data.bit_depth);
    }
  }
  std::ofstream cfg(dir / "lightfield.cfg");
  cfg << "# light field layout\nangular_size = " << M << '\n';
  if (!cfg) throw IoError("cannot write " + (dir / "lightfield.cfg").string());
}

}  // namespace lfsr
