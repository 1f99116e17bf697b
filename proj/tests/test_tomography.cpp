#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/quasidist.hpp"
#include "pauli_tomograph/tomography.hpp"

using namespace pt;

namespace {

const Axis kAxis{-8.0, 8.0, 256};

SpinDensity up_state(const std::vector<cplx>& fock_coeffs) {
  ComplexField f(Grid::line(kAxis));
  for (std::size_t n = 0; n < fock_coeffs.size(); ++n) {
    const auto e = oscillator_eigenstate(static_cast<int>(n), Grid::line(kAxis));
    for (std::size_t i = 0; i < kAxis.count; ++i) f.values[i] += fock_coeffs[n] * e.values[i];
  }
  return SpinDensity::pure(spin_up(f));
}

double slice_diff(const TomogramField4& w, int j, std::size_t s, const std::function<double(double)>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < kAxis.count; ++i) m = std::max(m, std::abs(w.at(j, s, i) - f(kAxis.at(i))));
  return m;
}

double max_diff(const TomogramField4& a, const TomogramField4& b) {
  double m = 0.0;
  for (int j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < a.comp[j].size(); ++i) m = std::max(m, std::abs(a.comp[j][i] - b.comp[j][i]));
  return m;
}

// Fock-basis matrix element <m| rho_up,up |n> of a reconstructed kernel.
cplx fock_element(const DensityKernel& k, int m, int n) {
  const double h = kAxis.spacing();
  cplx s = 0.0;
  for (std::size_t a = 0; a < kAxis.count; ++a)
    for (std::size_t b = 0; b < kAxis.count; ++b)
      s += oracle::fock(m, kAxis.at(a)) * k.at(0, 0, a, b) * oracle::fock(n, kAxis.at(b));
  return s * h * h;
}

}  // namespace

TEST_CASE("tomograms of Fock states against closed forms") {
  const auto th = uniform_angles(8);
  const auto w0 = optical_tomogram_vector(up_state({1.0}), th);
  const auto w1 = optical_tomogram_vector(up_state({0.0, 1.0}), th);
  for (std::size_t s = 0; s < th.size(); ++s) {
    CHECK(slice_diff(w0, 2, s, [](double x) { return std::exp(-x * x) / std::sqrt(oracle::pi); }) < 1e-12);
    CHECK(slice_diff(w1, 2, s, [](double x) { return 2.0 * x * x * std::exp(-x * x) / std::sqrt(oracle::pi); }) < 1e-12);
    CHECK(slice_diff(w0, 3, s, [](double) { return 0.0; }) < 1e-15);
  }
  const auto n = normalization_check(w1);
  CHECK(n.ok);
  CHECK(n.max_deviation < 1e-8);
}

TEST_CASE("angle zero is the position density") {
  const auto st = up_state({0.6, cplx(0.0, 0.8)});
  const auto w = optical_tomogram_vector(st, std::vector<double>{0.0});
  const auto& up = st.members[0].up.values;
  double worst = 0.0;
  for (std::size_t i = 0; i < kAxis.count; ++i) worst = std::max(worst, std::abs(w.at(2, 0, i) + w.at(3, 0, i) - std::norm(up[i])));
  CHECK(worst < 1e-10);
}

TEST_CASE("mixed spin normalization") {
  SpinDensity mix;
  mix.weights = {0.5, 0.5};
  const auto f0 = oscillator_eigenstate(0, Grid::line(kAxis));
  mix.members = {spin_up(f0), spin_down(f0)};
  const auto r = normalization_check(optical_tomogram_vector(mix, uniform_angles(4)));
  for (const auto& v : r.integrals) CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("symmetry, positivity and pure-state bound") {
  SpinorField s{ComplexField(Grid::line(kAxis)), ComplexField(Grid::line(kAxis))};
  const auto c = coherent_state(cplx(0.7, -0.4), Grid::line(kAxis));
  const auto f2 = oscillator_eigenstate(2, Grid::line(kAxis));
  for (std::size_t i = 0; i < kAxis.count; ++i) {
    s.up.values[i] = 0.6 * c.values[i];
    s.down.values[i] = 0.8 * f2.values[i];
  }
  const auto st = SpinDensity::pure(s);
  const std::vector<double> th{0.4, 0.4 + oracle::pi};
  const auto w = optical_tomogram_vector(st, th);
  double sym = 0.0, bound = 0.0;
  for (int j = 0; j < 4; ++j)
    for (std::size_t i = 1; i < kAxis.count; ++i) sym = std::max(sym, std::abs(w.at(j, 1, kAxis.count - i) - w.at(j, 0, i)));
  CHECK(sym < 1e-9);
  CHECK(w.min_value() >= -1e-10);
  for (std::size_t i = 0; i < kAxis.count; ++i) {
    const double w1 = w.at(0, 0, i), w2 = w.at(1, 0, i), w3 = w.at(2, 0, i), w4 = w.at(3, 0, i);
    bound = std::max(bound, std::abs(2 * w1 - w3 - w4) - 2 * std::sqrt(w3 * w4));
    bound = std::max(bound, std::abs(2 * w2 - w3 - w4) - 2 * std::sqrt(w3 * w4));
  }
  CHECK(bound <= 1e-8);
}

TEST_CASE("Radon transform of the Wigner function") {
  const auto th = uniform_angles(16);
  for (int n = 0; n <= 4; ++n) {
    std::vector<cplx> c(n + 1, 0.0);
    c[n] = 1.0;
    const auto st = up_state(c);
    CHECK(max_diff(tomogram_from_wigner(wigner_vector(st), th), optical_tomogram_vector(st, th)) < 1e-8);
  }
  const auto w = tomogram_from_wigner(wigner_vector(up_state({1.0})), std::vector<double>{oracle::pi / 2});
  CHECK(slice_diff(w, 2, 0, [](double x) { return std::exp(-x * x) / std::sqrt(oracle::pi); }) < 1e-8);
  const auto zero = tomogram_from_wigner(zero_phase_field(kAxis, kAxis, PhaseKind::Wigner), th);
  CHECK(zero.min_value() == 0.0);
}

TEST_CASE("symplectic tomograms") {
  const auto w = optical_tomogram_vector(up_state({1.0}), uniform_angles(64));
  const auto s = symplectic_from_optical(w, 0.7, {2.0}, {0.0});
  CHECK(s.value[2] == doctest::Approx(0.5 * std::exp(-0.49 / 4.0) / std::sqrt(oracle::pi)).epsilon(1e-10));

  const auto st = up_state({0.6, cplx(0.0, 0.8)});
  const auto ws = optical_tomogram_vector(st, uniform_angles(64));
  const double th = 3.0 * oracle::pi / 64.0;
  const auto exact = symplectic_from_optical(ws, 0.3, {std::cos(th)}, {std::sin(th)});
  for (int j = 0; j < 4; ++j) {
    BandLimited slice(ws.comp[j].data() + 3 * kAxis.count, kAxis);
    CHECK(std::abs(exact.value[j] - slice(0.3).real()) < 1e-14);
  }

  // (0, 1) is the momentum quadrature at theta = pi/2 (a grid angle).
  const auto mom = symplectic_from_optical(ws, -0.5, {0.0}, {1.0});
  const auto direct = optical_tomogram_vector(st, std::vector<double>{oracle::pi / 2});
  BandLimited f(direct.comp[2].data(), kAxis);
  CHECK(mom.value[2] == doctest::Approx(f(-0.5).real()).epsilon(1e-10));

  // Homogeneity M(X, l mu, l nu) = M(X / l, mu, nu) / l at an off-grid direction.
  const auto a = symplectic_from_optical(ws, 0.8, {2.0 * 0.3}, {2.0 * 0.7});
  const auto b = symplectic_from_optical(ws, 0.4, {0.3}, {0.7});
  for (int j = 0; j < 4; ++j) CHECK(std::abs(a.value[j] - 0.5 * b.value[j]) < 1e-10);

  bool thrown = false;
  try {
    symplectic_from_optical(ws, 0.0, {0.0}, {0.0});
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::Domain;
  }
  CHECK(thrown);
}

TEST_CASE("reconstruction from the optical tomogram") {
  const auto vac = up_state({1.0});
  const auto k0 = rho_from_optical_tomogram(optical_tomogram_vector(vac, uniform_angles(64)));
  CHECK(std::abs(fock_element(k0, 0, 0) - 1.0) < 1e-6);
  double off = 0.0;
  for (int blk = 1; blk < 4; ++blk)
    for (const auto& v : k0.block[blk]) off = std::max(off, std::abs(v));
  CHECK(off < 1e-6);

  const double r = 1.0 / std::sqrt(2.0);
  const auto k01 = rho_from_optical_tomogram(optical_tomogram_vector(up_state({r, r}), uniform_angles(64)));
  CHECK(std::abs(fock_element(k01, 0, 1).real() - 0.5) < 1e-6);

  bool thrown = false;
  try {
    rho_from_optical_tomogram(optical_tomogram_vector(vac, std::vector<double>{0.0}));
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::Reconstruction;
  }
  CHECK(thrown);
}

TEST_CASE("normalization check rejects NaN") {
  auto w = optical_tomogram_vector(up_state({1.0}), uniform_angles(2));
  w.comp[0][5] = std::nan("");
  bool thrown = false;
  try {
    normalization_check(w);
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::Contract;
  }
  CHECK(thrown);
}

TEST_CASE("two-dimensional product tomogram") {
  const Axis a{-8.0, 8.0, 64};
  const Grid g = Grid::plane(a, a);
  ComplexField f(g);
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) f.values[i * 64 + j] = oracle::fock(0, a.at(i)) * oracle::fock(1, a.at(j));
  const auto w = optical_tomogram_vector(SpinDensity::pure(spin_up(f)), std::vector<std::vector<double>>{{0.3, 1.2}});
  double worst = 0.0;
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 64; ++j) {
      const double x = a.at(i), y = a.at(j);
      const double e = std::exp(-x * x) / std::sqrt(oracle::pi) * 2.0 * y * y * std::exp(-y * y) / std::sqrt(oracle::pi);
      worst = std::max(worst, std::abs(w.at(2, 0, i * 64 + j) - e));
    }
  CHECK(worst < 1e-10);
}
