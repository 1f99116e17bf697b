#include "pauli_tomograph/spin_frame.hpp"

#include <cmath>
#include <random>

#include "pauli_tomograph/errors.hpp"

namespace pt {
namespace {

constexpr cplx I{0.0, 1.0};

Mat2 pauli(int which) {
  switch (which) {
    case 0: return Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
    case 1: return Mat2{{{0.0, 1.0}, {1.0, 0.0}}};
    case 2: return Mat2{{{0.0, -I}, {I, 0.0}}};
    default: return Mat2{{{1.0, 0.0}, {0.0, -1.0}}};
  }
}

double deviation(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) d = std::max(d, std::abs(a[j][k] - b[j][k]));
  return d;
}

void check_one(const Mat2& rho, FrameReport& r) {
  const Mat2 back = spin_quantize(spin_dequantize(rho));
  const Vec4 p = spin_dequantize(rho);
  const Vec4 p2 = spin_dequantize(spin_quantize(p));
  double d = deviation(rho, back);
  for (int l = 0; l < 4; ++l) d = std::max(d, std::abs(p[l] - p2[l]));
  r.max_deviation = std::max(r.max_deviation, d);
  ++r.checked;
}

}  // namespace

const std::array<Mat2, 4>& SpinFrame::projectors() {
  static const std::array<Mat2, 4> u = {
      Mat2{{{0.5, 0.5}, {0.5, 0.5}}},
      Mat2{{{0.5, -0.5 * I}, {0.5 * I, 0.5}}},
      Mat2{{{1.0, 0.0}, {0.0, 0.0}}},
      Mat2{{{0.0, 0.0}, {0.0, 1.0}}},
  };
  return u;
}

const std::array<std::array<cplx, 4>, 4>& SpinFrame::quantizer() {
  static const std::array<std::array<cplx, 4>, 4> d = {{
      {0.0, 0.0, 1.0, 0.0},
      {1.0, -I, cplx(-0.5, 0.5), cplx(-0.5, 0.5)},
      {1.0, I, cplx(-0.5, -0.5), cplx(-0.5, -0.5)},
      {0.0, 0.0, 0.0, 1.0},
  }};
  return d;
}

Vec4 spin_dequantize(const Mat2& rho) {
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (!std::isfinite(rho[j][k].real()) || !std::isfinite(rho[j][k].imag()))
        fail(ErrorKind::Contract, "non-finite spin matrix");
  const double herm = std::max({std::abs(rho[0][1] - std::conj(rho[1][0])), std::abs(rho[0][0].imag()),
                                std::abs(rho[1][1].imag())});
  require(herm <= 1e-12, ErrorKind::Contract, "spin matrix is not Hermitian");
  const auto& u = SpinFrame::projectors();
  Vec4 p{};
  for (int l = 0; l < 4; ++l) {
    cplx t = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) t += rho[a][b] * u[l][b][a];
    p[l] = t.real();
  }
  return p;
}

Mat2 spin_quantize(const Vec4& p) {
  for (double x : p) require(std::isfinite(x), ErrorKind::Contract, "non-finite probability vector");
  const auto& d = SpinFrame::quantizer();
  Mat2 rho{};
  for (int jk = 0; jk < 4; ++jk) {
    cplx s = 0.0;
    for (int l = 0; l < 4; ++l) s += d[jk][l] * p[l];
    rho[jk / 2][jk % 2] = s;
  }
  return rho;
}

Vec4 dequantize_entries(double r11, double r22, cplx r12) {
  const double half = 0.5 * (r11 + r22);
  return Vec4{half + r12.real(), half - r12.imag(), r11, r22};
}

double min_eigenvalue(const Mat2& rho) {
  const double a = rho[0][0].real(), d = rho[1][1].real();
  const double m = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho[0][1]));
  return m - r;
}

FrameReport frame_check_basis(int which) {
  FrameReport r;
  check_one(pauli(which), r);
  r.ok = r.max_deviation < 1e-14;
  return r;
}

FrameReport frame_selfcheck(std::size_t random_samples, std::uint64_t seed) {
  FrameReport r;
  for (int b = 0; b < 4; ++b) check_one(pauli(b), r);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t s = 0; s < random_samples; ++s) {
    const cplx off(g(rng), g(rng));
    Mat2 rho{{{g(rng), off}, {std::conj(off), g(rng)}}};
    check_one(rho, r);
  }
  r.ok = r.max_deviation < 1e-14;
  return r;
}

}  // namespace pt
