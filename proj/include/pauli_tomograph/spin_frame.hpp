#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pauli_tomograph/grid.hpp"

namespace pt {

using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Vec4 = std::array<double, 4>;

// Spin dequantizer projectors U_1..U_4 (index 0..3) and the dual quantizer vectors D_jk.
struct SpinFrame {
  static const std::array<Mat2, 4>& projectors();
  static const std::array<std::array<cplx, 4>, 4>& quantizer();  // row 2*j + k holds D_jk
};

Vec4 spin_dequantize(const Mat2& rho);
Mat2 spin_quantize(const Vec4& p);
double min_eigenvalue(const Mat2& rho);

// Pointwise dequantization of a 2x2 matrix-valued field given by its three independent entries.
Vec4 dequantize_entries(double r11, double r22, cplx r12);

struct FrameReport {
  double max_deviation = 0.0;
  std::size_t checked = 0;
  bool ok = true;
};

// Duality in both directions on {I, sx, sy, sz}, plus `random_samples` random Hermitian matrices.
FrameReport frame_selfcheck(std::size_t random_samples = 1000, std::uint64_t seed = 12345);
FrameReport frame_check_basis(int which);  // 0: I, 1: sx, 2: sy, 3: sz

}  // namespace pt
