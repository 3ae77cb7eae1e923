#pragma once

#include <cstdint>
#include <iosfwd>

#include "ltbx/matrix.hpp"

namespace ltbx::fock {

// LTBX dense binary: "LTBX", u32 N, u32 kind, u32 reserved (0), then N*N little-endian doubles
// (kind 0, real part only) or N*N (re, im) pairs (kind 1), row-major.
enum class MatrixKind : std::uint32_t { Real = 0, Complex = 1 };

/// rows "row,col,re,im", 17 significant digits, full matrix.
void write_matrix_csv(std::ostream& os, const CMatrix& M);
/// kind Real when every imaginary part is exactly zero.
void write_matrix_ltbx(std::ostream& os, const CMatrix& M);
void write_matrix_ltbx(std::ostream& os, const CMatrix& M, MatrixKind kind);
CMatrix read_matrix_ltbx(std::istream& is);

}  // namespace ltbx::fock
