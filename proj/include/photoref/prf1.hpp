#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "photoref/field.hpp"

// PRF1 field container: little-endian binary, layout
//   "PRF1" | u32 dim | u32 points per axis | f64 length per axis |
//   u8 kind (0 real, 1 complex) | row-major f64 samples (re,im interleaved
//   for complex fields).

namespace photoref {

static_assert(std::endian::native == std::endian::little,
              "PRF1 I/O assumes a little-endian host");

namespace detail {

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("prf1: truncated file");
  return v;
}

inline void write_header(std::ofstream& os, const GridSpec& g,
                         std::uint8_t kind) {
  os.write("PRF1", 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim));
  for (int ax = 0; ax < g.dim; ++ax)
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points[ax]));
  for (int ax = 0; ax < g.dim; ++ax) put<double>(os, g.lengths[ax]);
  put<std::uint8_t>(os, kind);
}

}  // namespace detail

inline void write_prf1(const std::string& path, const RealField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("prf1: cannot open " + path);
  detail::write_header(os, f.grid, 0);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!os) throw std::runtime_error("prf1: write failed for " + path);
}

inline void write_prf1(const std::string& path, const ComplexField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("prf1: cannot open " + path);
  detail::write_header(os, f.grid, 1);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * 2 * sizeof(double)));
  if (!os) throw std::runtime_error("prf1: write failed for " + path);
}

using AnyField = std::variant<RealField, ComplexField>;

inline AnyField read_prf1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("prf1: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "PRF1", 4) != 0)
    throw std::runtime_error("prf1: bad magic in " + path);
  auto dim = detail::get<std::uint32_t>(is);
  if (dim < 1 || dim > 2)
    throw std::runtime_error("prf1: unsupported dim " + std::to_string(dim));
  std::vector<std::size_t> pts(dim);
  std::vector<double> len(dim);
  for (auto& p : pts) p = detail::get<std::uint32_t>(is);
  for (auto& l : len) l = detail::get<double>(is);
  auto kind = detail::get<std::uint8_t>(is);
  GridSpec g = make_grid(static_cast<int>(dim), pts, len);
  std::size_t n = g.size();
  if (kind == 0) {
    RealField f(g);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw std::runtime_error("prf1: truncated samples in " + path);
    return f;
  }
  if (kind == 1) {
    ComplexField f(g);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(n * 2 * sizeof(double)));
    if (!is) throw std::runtime_error("prf1: truncated samples in " + path);
    return f;
  }
  throw std::runtime_error("prf1: unknown sample kind " + std::to_string(kind));
}

inline ComplexField read_prf1_complex(const std::string& path) {
  AnyField f = read_prf1(path);
  if (auto* c = std::get_if<ComplexField>(&f)) return std::move(*c);
  return complexify(std::get<RealField>(f));
}

}  // namespace photoref
