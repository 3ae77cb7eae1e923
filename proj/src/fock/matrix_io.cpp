#include "ltbx/fock/matrix_io.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "ltbx/error.hpp"
#include "ltbx/format.hpp"

namespace ltbx::fock {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le(std::istream& is, int bytes) {
  unsigned char b[8] = {};
  if (!is.read(reinterpret_cast<char*>(b), bytes)) throw ConfigError("LTBX: truncated input");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_matrix_csv(std::ostream& os, const CMatrix& M) {
  os << "row,col,re,im\n";
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j)
      os << i << ',' << j << ',' << fmt17(M(i, j).real()) << ',' << fmt17(M(i, j).imag()) << '\n';
}

void write_matrix_ltbx(std::ostream& os, const CMatrix& M) {
  write_matrix_ltbx(os, M, M.is_real() ? MatrixKind::Real : MatrixKind::Complex);
}

void write_matrix_ltbx(std::ostream& os, const CMatrix& M, MatrixKind kind) {
  os.write("LTBX", 4);
  put_u32(os, static_cast<std::uint32_t>(M.size()));
  put_u32(os, static_cast<std::uint32_t>(kind));
  put_u32(os, 0);  // reserved, pads the header to 16 bytes
  for (const auto& x : M.data()) {
    put_f64(os, x.real());
    if (kind == MatrixKind::Complex) put_f64(os, x.imag());
  }
}

CMatrix read_matrix_ltbx(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "LTBX", 4) != 0) throw ConfigError("LTBX: bad magic");
  const auto n = static_cast<std::size_t>(get_le(is, 4));
  const auto kind = get_le(is, 4);
  get_le(is, 4);
  if (kind > 1) throw ConfigError("LTBX: unknown kind " + std::to_string(kind));
  CMatrix M(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = std::bit_cast<double>(get_le(is, 8));
      const double im = kind == 1 ? std::bit_cast<double>(get_le(is, 8)) : 0.0;
      M(i, j) = {re, im};
    }
  return M;
}

}  // namespace ltbx::fock
