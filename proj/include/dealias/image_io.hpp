#pragma once

// 8-bit file I/O: binary PGM (P5), binary PPM (P6) and PNG through libpng.
// Samples are scaled by 1/255 on load and quantized with round-half-away-
// from-zero on save.

#include <png.h>

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "dealias/image.hpp"

namespace dealias {

inline std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

namespace detail {

inline std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path,
                       const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size())
      throw Error(ErrorKind::kTruncatedFile, "truncated PNM header");
    if (!std::isdigit(bytes_[pos_]))
      throw Error(ErrorKind::kUnsupportedFormat, "malformed PNM header");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000'000)
        throw Error(ErrorKind::kUnsupportedFormat, "PNM dimension too large");
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size())
      throw Error(ErrorKind::kTruncatedFile, "truncated PNM header");
    if (!std::isspace(bytes_[pos_]))
      throw Error(ErrorKind::kUnsupportedFormat, "malformed PNM header");
    return pos_ + 1;
  }

  std::size_t pos_ = 2;

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
};

inline Image decode_pnm(const std::vector<unsigned char>& bytes) {
  const int bands = bytes[1] == '5' ? 1 : 3;
  PnmHeaderReader header(bytes);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width == 0 || height == 0)
    throw Error(ErrorKind::kZeroDimensions, "zero dimensions");
  if (maxval != 255)
    throw Error(ErrorKind::kUnsupportedFormat,
                "only maxval 255 is supported, got " + std::to_string(maxval));
  const std::size_t offset = header.raster_offset();
  const std::size_t needed = static_cast<std::size_t>(width) *
                             static_cast<std::size_t>(height) * bands;
  if (bytes.size() < offset + needed)
    throw Error(ErrorKind::kTruncatedFile, "truncated PNM raster");

  std::vector<Plane> planes(bands, Plane(static_cast<int>(width), static_cast<int>(height)));
  const unsigned char* p = bytes.data() + offset;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int b = 0; b < bands; ++b) planes[b](x, y) = *p++ / 255.0;
  return Image(std::move(planes));
}

inline std::vector<unsigned char> encode_pnm(const Image& image) {
  if (image.bands() != 1 && image.bands() != 3)
    throw Error(ErrorKind::kUnsupportedFormat, "PNM needs 1 or 3 bands");
  const std::string header = std::string(image.bands() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(image.width()) * image.height() *
                               image.bands());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      for (int b = 0; b < image.bands(); ++b) out.push_back(quantize(image.at(b, x, y)));
  return out;
}

inline Image decode_png(const std::vector<unsigned char>& bytes) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw Error(ErrorKind::kUnsupportedFormat, "PNG: " + msg);
  }
  const png_uint_32 format = png.format;
  if (png.width == 0 || png.height == 0) {
    png_image_free(&png);
    throw Error(ErrorKind::kZeroDimensions, "zero dimensions");
  }
  if (format & (PNG_FORMAT_FLAG_ALPHA | PNG_FORMAT_FLAG_LINEAR | PNG_FORMAT_FLAG_COLORMAP)) {
    png_image_free(&png);
    throw Error(ErrorKind::kUnsupportedFormat,
                "PNG must be 8-bit gray or RGB without alpha or palette");
  }
  const int bands = (format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  png.format = bands == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<unsigned char> raster(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, raster.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw Error(ErrorKind::kTruncatedFile, "PNG: " + msg);
  }
  const int width = static_cast<int>(png.width);
  const int height = static_cast<int>(png.height);
  std::vector<Plane> planes(bands, Plane(width, height));
  const unsigned char* p = raster.data();
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int b = 0; b < bands; ++b) planes[b](x, y) = *p++ / 255.0;
  return Image(std::move(planes));
}

inline std::vector<unsigned char> encode_png(const Image& image) {
  if (image.bands() != 1 && image.bands() != 3)
    throw Error(ErrorKind::kUnsupportedFormat, "PNG output needs 1 or 3 bands");
  std::vector<unsigned char> raster;
  raster.reserve(static_cast<std::size_t>(image.width()) * image.height() * image.bands());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      for (int b = 0; b < image.bands(); ++b) raster.push_back(quantize(image.at(b, x, y)));

  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.bands() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, raster.data(), 0, nullptr))
    throw Error(ErrorKind::kIo, std::string("PNG encode: ") + png.message);
  std::vector<unsigned char> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, raster.data(), 0, nullptr))
    throw Error(ErrorKind::kIo, std::string("PNG encode: ") + png.message);
  out.resize(size);
  return out;
}

inline bool has_png_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

}  // namespace detail

// Format is chosen by content (magic bytes), not by file extension.
inline Image load_image(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = detail::read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
    return detail::decode_pnm(bytes);
  static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, bytes.begin()))
    return detail::decode_png(bytes);
  if (bytes.size() < 2) throw Error(ErrorKind::kTruncatedFile, "file too short: " + path.string());
  throw Error(ErrorKind::kUnsupportedFormat, "unsupported image format: " + path.string());
}

// PNG when the extension is .png, PGM/PPM otherwise.
inline void save_image(const Image& image, const std::filesystem::path& path) {
  detail::write_file(path, detail::has_png_extension(path) ? detail::encode_png(image)
                                                           : detail::encode_pnm(image));
}

// 0 = background, 255 = edge.
inline void save_mask(const Grid<std::uint8_t>& mask, const std::filesystem::path& path) {
  Plane plane(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) plane(x, y) = mask(x, y) ? 1.0 : 0.0;
  save_image(Image(std::vector<Plane>{std::move(plane)}), path);
}

}  // namespace dealias
