#include <doctest.h>

#include <functional>

#include <random>

#include "oracles.hpp"
#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/quasidist.hpp"

using namespace pt;

namespace {

const Axis kAxis{-8.0, 8.0, 256};

SpinDensity up_fock(int n) { return SpinDensity::pure(spin_up(oscillator_eigenstate(n, Grid::line(kAxis)))); }

// (|0> up + |1> down) / sqrt 2 built from closed forms.
SpinDensity entangled() {
  SpinorField s{ComplexField(Grid::line(kAxis)), ComplexField(Grid::line(kAxis))};
  for (std::size_t i = 0; i < kAxis.count; ++i) {
    s.up.values[i] = oracle::fock(0, kAxis.at(i)) / std::sqrt(2.0);
    s.down.values[i] = oracle::fock(1, kAxis.at(i)) / std::sqrt(2.0);
  }
  return SpinDensity::pure(s);
}

double field_diff(const std::vector<double>& a, const std::function<double(double, double)>& f, const Axis& q,
                  const Axis& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < q.count; ++i)
    for (std::size_t k = 0; k < p.count; ++k) m = std::max(m, std::abs(a[i * p.count + k] - f(q.at(i), p.at(k))));
  return m;
}

// Brute-force cross Wigner integral of two closed-form functions.
cplx cross_wigner(int a, int b, double q, double p) {
  const double h = 1e-3;
  cplx s = 0.0;
  for (double y = -12.0; y < 12.0; y += h)
    s += oracle::fock(a, q + y) * oracle::fock(b, q - y) * std::polar(1.0, -2.0 * p * y);
  return s * h / oracle::pi;
}

double max_abs_diff(const PhaseField4& a, const PhaseField4& b) {
  double m = 0.0;
  for (int j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < a.comp[j].size(); ++i) m = std::max(m, std::abs(a.comp[j][i] - b.comp[j][i]));
  return m;
}

// Same, restricted to |q|, |p| <= r.
double interior_diff(const PhaseField4& a, const PhaseField4& b, double r) {
  double m = 0.0;
  for (int j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < a.q.count; ++i)
      for (std::size_t k = 0; k < a.p.count; ++k)
        if (std::abs(a.q.at(i)) <= r && std::abs(a.p.at(k)) <= r)
          m = std::max(m, std::abs(a.at(j, i, k) - b.at(j, i, k)));
  return m;
}

}  // namespace

TEST_CASE("Wigner function of spin-up vacuum") {
  const auto w = wigner_vector(up_fock(0));
  auto g = [](double q, double p) { return std::exp(-q * q - p * p) / oracle::pi; };
  CHECK(field_diff(w.comp[2], g, w.q, w.p) < 1e-9);
  CHECK(field_diff(w.comp[3], [](double, double) { return 0.0; }, w.q, w.p) < 1e-12);
  CHECK(field_diff(w.comp[0], [&](double q, double p) { return 0.5 * g(q, p); }, w.q, w.p) < 1e-9);
  CHECK(w.integral(2) + w.integral(3) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Wigner function of the maximally mixed spin with vacuum") {
  SpinDensity mix;
  mix.weights = {0.5, 0.5};
  const auto f0 = oscillator_eigenstate(0, Grid::line(kAxis));
  mix.members = {spin_up(f0), spin_down(f0)};
  const auto w = wigner_vector(mix);
  auto g = [](double q, double p) { return std::exp(-q * q - p * p) / (2.0 * oracle::pi); };
  for (int j = 0; j < 4; ++j) CHECK(field_diff(w.comp[j], g, w.q, w.p) < 1e-9);
}

TEST_CASE("Wigner functions of Fock states against Laguerre closed forms") {
  for (int n = 1; n <= 4; ++n) {
    const auto w = wigner_vector(up_fock(n));
    CHECK(field_diff(w.comp[2], [n](double q, double p) { return oracle::fock_wigner(n, q, p); }, w.q, w.p) < 1e-9);
  }
  const auto w1 = wigner_vector(up_fock(1));
  CHECK(w1.at(2, 128, 128) == doctest::Approx(-1.0 / oracle::pi).epsilon(1e-12));
}

TEST_CASE("spin cross terms against brute-force quadrature") {
  const auto st = entangled();
  const auto w = wigner_vector(st);
  for (auto [iq, ip] : {std::pair<std::size_t, std::size_t>{128, 128}, {140, 120}, {110, 133}}) {
    const double q = w.q.at(iq), p = w.p.at(ip);
    const double uu = 0.5 * cross_wigner(0, 0, q, p).real();
    const double dd = 0.5 * cross_wigner(1, 1, q, p).real();
    // W of |up><down| block: psi_up(q+y) conj(psi_down(q-y))
    const cplx ud = 0.5 * cross_wigner(0, 1, q, p);
    const cplx du = 0.5 * cross_wigner(1, 0, q, p);
    const Vec4 e = dequantize_entries(uu, dd, 0.5 * (ud + std::conj(du)));
    for (int j = 0; j < 4; ++j) CHECK(std::abs(w.at(j, iq, ip) - e[j]) < 1e-9);
  }
  const auto s = wigner_samples(st, {{w.q.at(140), w.p.at(120)}});
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s[0][j] - w.at(j, 140, 120)) < 1e-12);
}

TEST_CASE("marginals and spin-trace compatibility") {
  const auto st = entangled();
  const auto w = wigner_vector(st);
  const auto& m = st.members[0];
  for (std::size_t i = 100; i < 160; i += 7) {
    double col[4] = {0, 0, 0, 0};
    for (int j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < w.p.count; ++k) col[j] += w.at(j, i, k) * w.p.spacing();
    const cplx u = m.up.values[i], d = m.down.values[i];
    const Vec4 e = dequantize_entries(std::norm(u), std::norm(d), u * std::conj(d));
    for (int j = 0; j < 4; ++j) CHECK(std::abs(col[j] - e[j]) < 1e-8);
  }
  const auto w0 = wigner_vector(SpinDensity::pure(spin_up(m.up)));
  const auto w1 = wigner_vector(SpinDensity::pure(spin_up(m.down)));
  const auto traced = w.spin_traced();
  double worst = 0.0;
  for (std::size_t i = 0; i < traced.size(); ++i) worst = std::max(worst, std::abs(traced[i] - w0.comp[2][i] - w1.comp[2][i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("Husimi functions") {
  for (int n = 0; n <= 3; ++n) {
    const auto q = husimi_vector(up_fock(n));
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    auto closed = [&](double x, double p) {
      const double a2 = 0.5 * (x * x + p * p);
      return std::exp(-a2) * std::pow(a2, n) / fact;
    };
    CHECK(field_diff(q.comp[2], closed, q.q, q.p) < 1e-10);
    CHECK(q.min_value() >= -1e-10);
    CHECK(q.integral(2) + q.integral(3) == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto q0 = husimi_vector(up_fock(0));
  CHECK(q0.at(2, 128, 128) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(q0.at(3, 128, 128)) < 1e-15);
  CHECK(std::abs(husimi_vector(up_fock(1)).at(2, 128, 128)) < 1e-14);
  CHECK(husimi_vector(entangled()).min_value() >= -1e-10);
}

TEST_CASE("Gaussian smoothing reproduces the Husimi function") {
  for (int n = 0; n <= 6; ++n) {
    const auto st = up_fock(n);
    CHECK(max_abs_diff(smooth_wigner_to_husimi(wigner_vector(st)), husimi_vector(st)) < 1e-8);
  }
  const auto st = entangled();
  CHECK(max_abs_diff(smooth_wigner_to_husimi(wigner_vector(st)), husimi_vector(st)) < 1e-8);
  const auto q1 = smooth_wigner_to_husimi(wigner_vector(up_fock(1)));
  CHECK(std::abs(q1.at(2, 128, 128)) < 1e-12);
  CHECK(q1.min_value() >= -1e-10);
  auto zero = zero_phase_field(kAxis, kAxis, PhaseKind::Wigner);
  CHECK(smooth_wigner_to_husimi(zero).min_value() == 0.0);
}

TEST_CASE("deconvolution back to Wigner") {
  const auto q0 = husimi_vector(up_fock(0));
  const auto w0 = deconvolve_husimi_to_wigner(q0);
  CHECK(field_diff(w0.comp[2], [](double q, double p) { return std::exp(-q * q - p * p) / oracle::pi; }, w0.q, w0.p) < 1e-6);
  const auto w1 = deconvolve_husimi_to_wigner(husimi_vector(up_fock(1)));
  CHECK(w1.at(2, 128, 128) == doctest::Approx(-1.0 / oracle::pi).epsilon(1e-5));
  for (int n = 0; n <= 4; ++n) {
    const auto q = husimi_vector(up_fock(n));
    // Deconvolution is periodic and rings out to the box edge; the linear smoothing only
    // undoes it away from the edge.
    CHECK(interior_diff(smooth_wigner_to_husimi(deconvolve_husimi_to_wigner(q)), q, 6.0) < 1e-6);
  }
}

TEST_CASE("white noise cannot be deconvolved") {
  auto q = zero_phase_field(kAxis, kAxis, PhaseKind::Husimi);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1e-3);
  for (auto& c : q.comp)
    for (auto& v : c) v = u(rng);
  bool thrown = false;
  try {
    deconvolve_husimi_to_wigner(q);
  } catch (const IllPosedDeconvolution& e) {
    thrown = true;
    CHECK(e.kind() == ErrorKind::IllPosed);
    CHECK(e.spectrum().tail_ratio > kTailThreshold);
  }
  CHECK(thrown);
}

TEST_CASE("Weyl reconstruction") {
  const auto k = weyl_reconstruct(wigner_vector(up_fock(0)));
  double worst = 0.0;
  for (std::size_t a = 0; a < kAxis.count; a += 3)
    for (std::size_t b = 0; b < kAxis.count; b += 3) {
      const double e = oracle::fock(0, kAxis.at(a)) * oracle::fock(0, kAxis.at(b));
      worst = std::max(worst, std::abs(k.at(0, 0, a, b) - e));
      for (int blk = 1; blk < 4; ++blk) worst = std::max(worst, std::abs(k.block[blk][a * kAxis.count + b]));
    }
  CHECK(worst < 1e-8);
  CHECK(k.trace() == doctest::Approx(1.0).epsilon(1e-8));

  // Purity of a reconstructed pure entangled state via double quadrature.
  const auto ke = weyl_reconstruct(wigner_vector(entangled()));
  const double h = kAxis.spacing();
  double purity = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l)
      for (std::size_t a = 0; a < kAxis.count; ++a)
        for (std::size_t b = 0; b < kAxis.count; ++b) purity += std::norm(ke.at(j, l, a, b)) * h * h;
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-7));

  SpinDensity mix;
  mix.weights = {0.5, 0.5};
  mix.members = {spin_up(oscillator_eigenstate(0, Grid::line(kAxis))), spin_up(oscillator_eigenstate(1, Grid::line(kAxis)))};
  const auto dm = density_from_kernel(weyl_reconstruct(wigner_vector(mix)));
  REQUIRE(dm.weights.size() == 2);
  CHECK(dm.weights[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(dm.weights[1] == doctest::Approx(0.5).epsilon(1e-7));

  auto bad = wigner_vector(up_fock(0));
  for (auto& c : bad.comp)
    for (auto& v : c) v *= 2.0;
  bool thrown = false;
  try {
    weyl_reconstruct(bad);
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::Contract;
  }
  CHECK(thrown);
}

TEST_CASE("aliasing guard") {
  ComplexField wide(Grid::line(kAxis));
  for (std::size_t i = 0; i < kAxis.count; ++i) wide.values[i] = std::exp(-kAxis.at(i) * kAxis.at(i) / 50.0);
  const double n = std::sqrt(wide.norm2());
  for (auto& v : wide.values) v /= n;
  bool thrown = false;
  try {
    wigner_vector(SpinDensity::pure(spin_up(wide)));
  } catch (const Error& e) {
    thrown = e.kind() == ErrorKind::Domain;
  }
  CHECK(thrown);
}
