#pragma once

#include <array>
#include <vector>

#include "pauli_tomograph/grid.hpp"
#include "pauli_tomograph/quasidist.hpp"
#include "pauli_tomograph/spin_frame.hpp"

namespace pt {

// Four real components per angle sample; each sample carries one angle per spatial axis.
// Data layout: comp[j][sample * x.size() + flat X index].
struct TomogramField4 {
  Grid x;
  std::vector<std::vector<double>> angles;
  std::array<std::vector<double>, 4> comp;

  std::size_t samples() const { return angles.size(); }
  std::size_t slice_size() const { return x.size(); }
  double at(int j, std::size_t s, std::size_t i) const { return comp[j][s * slice_size() + i]; }
  double min_value() const;
};

TomogramField4 zero_tomogram(const Grid& x, const std::vector<std::vector<double>>& angles);
std::vector<std::vector<double>> angle_list(const std::vector<double>& thetas);  // 1D helper
std::vector<double> uniform_angles(std::size_t count);                         // k pi / count

TomogramField4 optical_tomogram_vector(const SpinDensity& state, const std::vector<std::vector<double>>& angles);
TomogramField4 optical_tomogram_vector(const SpinDensity& state, const std::vector<double>& thetas);

// Radon transform of a 1D vector Wigner function along rotated lines (q and p axes must coincide).
TomogramField4 tomogram_from_wigner(const PhaseField4& w, const std::vector<double>& thetas);

struct SymplecticSample {
  double X = 0.0;
  std::vector<double> mu;
  std::vector<double> nu;
  Vec4 value{};
};

SymplecticSample symplectic_from_optical(const TomogramField4& w, double X, const std::vector<double>& mu,
                                         const std::vector<double>& nu);

// Symplectic tomogram M(X, mu, nu) on the X grid for a list of (mu, nu) pairs (1D).
struct SymplecticField4 {
  Axis x;
  std::vector<std::array<double, 2>> params;
  std::array<std::vector<double>, 4> comp;  // [pair][X]
};

// Needs uniform angular coverage of the optical tomogram.
SymplecticField4 symplectic_field(const TomogramField4& w, const std::vector<std::array<double, 2>>& params);

// Angular harmonic expansion of a 1D tomogram sampled at k pi / n, extended to [0, 2 pi)
// through w(X, theta + pi) = w(-X, theta). Evaluates w(X, theta) at any angle and X.
class AngularInterpolant {
 public:
  AngularInterpolant(const TomogramField4& w, int component);
  std::vector<double> slice(double theta) const;  // on the X grid
  double operator()(double X, double theta) const;
  const std::vector<std::vector<cplx>>& harmonics() const { return harm_; }  // [d index][X]
  const std::vector<int>& orders() const { return order_; }
  const Axis& axis() const { return axis_; }

 private:
  Axis axis_;
  std::size_t m_ = 0;
  std::vector<int> order_;
  std::vector<std::vector<cplx>> harm_;
};

// Checks uniform coverage k pi / n with n >= min_count; throws a reconstruction error otherwise.
void require_uniform_coverage(const TomogramField4& w, std::size_t min_count);

DensityKernel rho_from_optical_tomogram(const TomogramField4& w);
PhaseField4 wigner_from_optical_tomogram(const TomogramField4& w);

struct NormalizationReport {
  std::vector<Vec4> integrals;  // per angle sample
  double max_deviation = 0.0;   // of components 3+4 from 1
  bool ok = true;
};

NormalizationReport normalization_check(const TomogramField4& w, double tol = 1e-8);

}  // namespace pt
