#pragma once

#include <array>
#include <string>
#include <vector>

#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/grid.hpp"
#include "pauli_tomograph/spin_frame.hpp"

namespace pt {

enum class PhaseKind { Wigner, Husimi };

// Four real components over a 1D phase plane, row-major [q][p].
struct PhaseField4 {
  Axis q;
  Axis p;
  PhaseKind kind = PhaseKind::Wigner;
  std::array<std::vector<double>, 4> comp;

  std::size_t size() const { return q.count * p.count; }
  double at(int j, std::size_t iq, std::size_t ip) const { return comp[j][iq * p.count + ip]; }
  double measure() const;  // dq dp, divided by 2 pi for Husimi
  double integral(int j) const;
  double min_value() const;
  std::vector<double> spin_traced() const;  // component 3 + component 4
};

PhaseField4 zero_phase_field(const Axis& q, const Axis& p, PhaseKind kind);

PhaseField4 wigner_vector(const SpinDensity& state, const Axis& p);
PhaseField4 wigner_vector(const SpinDensity& state);
PhaseField4 husimi_vector(const SpinDensity& state, const Axis& p);
PhaseField4 husimi_vector(const SpinDensity& state);

PhaseField4 smooth_wigner_to_husimi(const PhaseField4& w);

struct DeconvolutionSpectrum {
  double cutoff = 0.0;
  double amplification = 0.0;
  double tail_ratio = 0.0;  // largest |Q^| beyond the cutoff over the largest |Q^|
};

class IllPosedDeconvolution : public Error {
 public:
  IllPosedDeconvolution(const std::string& what, DeconvolutionSpectrum s)
      : Error(ErrorKind::IllPosed, what), spectrum_(s) {}
  const DeconvolutionSpectrum& spectrum() const { return spectrum_; }

 private:
  DeconvolutionSpectrum spectrum_;
};

constexpr double kMaxAmplification = 1e8;
constexpr double kTailThreshold = 1e-10;
double default_deconvolution_cutoff();  // |k| at which exp(k^2/4) reaches the amplification bound

PhaseField4 deconvolve_husimi_to_wigner(const PhaseField4& q, double cutoff);
PhaseField4 deconvolve_husimi_to_wigner(const PhaseField4& q);

// Weyl quantizer applied to a vector Wigner function; the spatial axis is the q axis.
DensityKernel weyl_reconstruct(const PhaseField4& w);

// Pointwise samples for fields of any dimension (used for 2D states).
// Points are given as (q..., p...) with one q and one p per spatial axis.
std::vector<Vec4> wigner_samples(const SpinDensity& state, const std::vector<std::vector<double>>& points);
std::vector<Vec4> husimi_samples(const SpinDensity& state, const std::vector<std::vector<double>>& points);

// Largest |psi|^2 on the grid boundary over the ensemble.
double boundary_density(const SpinDensity& state);

}  // namespace pt
