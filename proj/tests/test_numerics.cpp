#include <doctest.h>

#include <functional>

#include <random>

#include "oracles.hpp"
#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/fft.hpp"
#include "pauli_tomograph/numerics.hpp"

using namespace pt;

namespace {

Grid line(double lo = -8.0, double hi = 8.0, std::size_t n = 256) { return Grid::line(Axis{lo, hi, n}); }

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Contract;
}

}  // namespace

TEST_CASE("axis spacing excludes the right endpoint") {
  Axis a{-8.0, 8.0, 256};
  CHECK(a.spacing() == doctest::Approx(16.0 / 256.0));
  CHECK(a.at(0) == -8.0);
  CHECK(a.at(255) == doctest::Approx(8.0 - 16.0 / 256.0));
  CHECK(a.spectral());
  CHECK_FALSE(Axis{0.0, 1.0, 100}.spectral());
}

TEST_CASE("oscillator eigenstates match closed forms and are orthonormal") {
  const Grid g = line();
  CHECK(std::abs(oscillator_eigenstate(0, g).values[128] - std::pow(oracle::pi, -0.25)) < 1e-15);
  CHECK(std::abs(oscillator_eigenstate(1, g).values[128]) < 1e-15);
  for (int n = 0; n <= 4; ++n) {
    const auto f = oscillator_eigenstate(n, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::abs(f.values[i] - oracle::fock(n, g.axes[0].at(i))));
    CHECK(worst < 1e-13);
  }
  std::vector<ComplexField> fs;
  for (int n = 0; n <= 7; ++n) fs.push_back(oscillator_eigenstate(n, g));
  double worst = 0.0;
  for (int n = 0; n <= 7; ++n)
    for (int m = 0; m <= 7; ++m) worst = std::max(worst, std::abs(inner(fs[n], fs[m]) - (n == m ? 1.0 : 0.0)));
  CHECK(worst < 1e-10);
}

TEST_CASE("eigenstate errors") {
  CHECK(kind_of([] { oscillator_eigenstate(61, line()); }) == ErrorKind::Capability);
  CHECK(kind_of([] { oscillator_eigenstate(0, line(-2.0, 2.0, 64)); }) == ErrorKind::Domain);
  CHECK(kind_of([] { oscillator_eigenstate(-1, line()); }) == ErrorKind::Contract);
}

TEST_CASE("coherent states") {
  const Grid g = line();
  const auto vac = coherent_state(0.0, g);
  const auto f0 = oscillator_eigenstate(0, g);
  CHECK(max_diff(vac.values, f0.values) < 1e-12);
  const cplx a(0.5, 0.0), b(-0.3, 0.2);
  const auto ca = coherent_state(a, g), cb = coherent_state(b, g);
  CHECK(ca.norm2() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::norm(inner(cb, ca)) == doctest::Approx(std::exp(-std::norm(a - b))).epsilon(1e-8));
  double worst = 0.0;
  for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::abs(cb.values[i] - oracle::coherent(b, g.axes[0].at(i))));
  CHECK(worst < 1e-13);
  CHECK(kind_of([&] { coherent_state(cplx(5.5, 0.0), g); }) == ErrorKind::Domain);
}

TEST_CASE("fractional Fourier transform") {
  const Grid g = line();
  const auto psi = coherent_state(cplx(0.4, -0.3), g);

  SUBCASE("zero angle is the identity") { CHECK(max_diff(fractional_fourier(psi, 0.0).values, psi.values) < 1e-12); }

  SUBCASE("quarter turn equals the unitary Fourier transform") {
    std::vector<double> ks;
    for (std::size_t i = 0; i < 256; ++i) ks.push_back(g.axes[0].at(i));
    const auto direct = oracle::direct_fourier(psi.values, -8.0, g.axes[0].spacing(), ks);
    CHECK(max_diff(fractional_fourier(psi, oracle::pi / 2).values, direct) < 1e-9);
  }

  SUBCASE("eigenfunctions pick up e^{-i n theta}") {
    // Oracle: direct kernel integration on a 128-point grid is replaced by the eigen relation of
    // the closed-form Hermite function.
    const Grid g128 = line(-8.0, 8.0, 128);
    ComplexField p2(g128);
    for (std::size_t i = 0; i < 128; ++i) p2.values[i] = oracle::fock(2, g128.axes[0].at(i));
    const auto out = fractional_fourier(p2, 0.7);
    std::vector<cplx> expect(128);
    for (std::size_t i = 0; i < 128; ++i) expect[i] = std::polar(1.0, -1.4) * p2.values[i];
    CHECK(max_diff(out.values, expect) < 1e-9);
  }

  SUBCASE("composition and unitarity") {
    const auto ab = fractional_fourier(fractional_fourier(psi, 0.9), 1.7);
    CHECK(max_diff(ab.values, fractional_fourier(psi, 2.6).values) < 1e-9);
    CHECK(fractional_fourier(psi, 2.3).norm2() == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("non power of two axis") {
    ComplexField f(Grid::line(Axis{-8.0, 8.0, 200}));
    CHECK(kind_of([&] { fractional_fourier(f, 0.3); }) == ErrorKind::Capability);
  }

  SUBCASE("2D product state") {
    const Grid g2 = Grid::plane(Axis{-8, 8, 64}, Axis{-8, 8, 64});
    ComplexField f(g2);
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j) f.values[i * 64 + j] = oracle::fock(1, g2.axes[0].at(i)) * oracle::fock(2, g2.axes[1].at(j));
    const auto out = fractional_fourier(f, std::vector<double>{0.3, -1.1});
    const cplx ph = std::polar(1.0, -0.3 - 2.0 * -1.1);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) worst = std::max(worst, std::abs(out.values[i] - ph * f.values[i]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("oscillator propagation phases") {
  const Grid g = line();
  auto f = oscillator_eigenstate(3, g);
  auto v = f.values;
  oscillator_propagate_axis(v, g, 0, 1.3);
  std::vector<cplx> expect(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) expect[i] = std::polar(1.0, -3.5 * 1.3) * f.values[i];
  CHECK(max_diff(v, expect) < 1e-9);
}

TEST_CASE("spectral derivative and antiderivative") {
  const Axis a{-8.0, 8.0, 256};
  const Grid g = Grid::line(a);
  const double k = 2.0 * oracle::pi / a.length();

  SUBCASE("exact Fourier mode") {
    ComplexField s(g);
    for (std::size_t i = 0; i < 256; ++i) s.values[i] = std::sin(k * a.at(i));
    const auto anti = spectral_antiderivative(s, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::abs(anti.values[i] + std::cos(k * a.at(i)) / k));
    CHECK(worst < 1e-10);
  }

  SUBCASE("constant input is ill posed") {
    ComplexField c(g);
    for (auto& v : c.values) v = 1.0;
    bool thrown = false;
    try {
      spectral_antiderivative(c, 0);
    } catch (const IllPosedOperator& e) {
      thrown = true;
      CHECK(e.zero_mode() > 0.5);
      CHECK(e.kind() == ErrorKind::IllPosed);
    }
    CHECK(thrown);
  }

  SUBCASE("Gaussian derivative") {
    ComplexField f(g);
    for (std::size_t i = 0; i < 256; ++i) f.values[i] = std::exp(-0.5 * a.at(i) * a.at(i));
    const auto d = spectral_derivative(f, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::abs(d.values[i] + a.at(i) * f.values[i]));
    CHECK(worst < 1e-10);
  }

  SUBCASE("round trip on a random zero-mean band-limited field") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    ComplexField f(g);
    for (int m = 1; m <= 20; ++m) {
      const double c = nd(rng), s = nd(rng);
      for (std::size_t i = 0; i < 256; ++i) f.values[i] += c * std::cos(m * k * a.at(i)) + s * std::sin(m * k * a.at(i));
    }
    const auto back = spectral_derivative(spectral_antiderivative(f, 0), 0);
    CHECK(max_diff(back.values, f.values) < 1e-10);
  }

  SUBCASE("second-order convergence of central differences") {
    auto err_at = [&](std::size_t n) {
      const Axis b{-8.0, 8.0, n};
      ComplexField f(Grid::line(b));
      for (std::size_t i = 0; i < n; ++i) f.values[i] = std::exp(-b.at(i) * b.at(i));
      const auto d = spectral_derivative(f, 0);
      double worst = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fd = (f.values[i + 1].real() - f.values[i - 1].real()) / (2.0 * b.spacing());
        worst = std::max(worst, std::abs(fd - d.values[i].real()));
      }
      return worst;
    };
    const double ratio = err_at(128) / err_at(256);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("Parseval for the unnormalized FFT pair") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(128);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  double before = 0.0;
  for (auto& x : v) before += std::norm(x);
  auto w = v;
  fft(w.data(), w.size(), -1);
  double after = 0.0;
  for (auto& x : w) after += std::norm(x);
  CHECK(after / 128.0 == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("band-limited interpolation and pullback") {
  const Axis a{-8.0, 8.0, 128};
  std::vector<double> g(128);
  for (std::size_t i = 0; i < 128; ++i) g[i] = std::exp(-a.at(i) * a.at(i));
  BandLimited f(g.data(), a);
  for (double x : {-1.234, 0.0117, 2.5})
    CHECK(std::abs(f(x).real() - std::exp(-x * x)) < 1e-10);

  // F(q, p) = gaussian centred at (1, -0.5); rotate by 0.8 and compare with the closed form.
  std::vector<double> plane(128 * 128);
  auto gauss = [](double q, double p) { return std::exp(-(q - 1.0) * (q - 1.0) - (p + 0.5) * (p + 0.5)); };
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t m = 0; m < 128; ++m) plane[i * 128 + m] = gauss(a.at(i), a.at(m));
  const double c = std::cos(0.8), s = std::sin(0.8);
  pullback_plane(plane, a, a, {c, -s, s, c});
  double worst = 0.0;
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t m = 0; m < 128; ++m) {
      const double q = a.at(i), p = a.at(m);
      worst = std::max(worst, std::abs(plane[i * 128 + m] - gauss(c * q - s * p, s * q + c * p)));
    }
  CHECK(worst < 1e-10);

  std::vector<double> shear(128 * 128);
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t m = 0; m < 128; ++m) shear[i * 128 + m] = gauss(a.at(i), a.at(m));
  pullback_plane(shear, a, a, {1.0, -1.0, 0.0, 1.0});  // free flow back by t = 1
  worst = 0.0;
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t m = 0; m < 128; ++m) {
      const double q = a.at(i), p = a.at(m);
      worst = std::max(worst, std::abs(shear[i * 128 + m] - gauss(q - p, p)));
    }
  CHECK(worst < 1e-10);
}
