#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "pauli_tomograph/grid.hpp"
#include "pauli_tomograph/quasidist.hpp"
#include "pauli_tomograph/spin_frame.hpp"
#include "pauli_tomograph/tomography.hpp"

namespace pt {

struct SpinGenerator {
  Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
  double omega0 = 0.0;
};

SpinGenerator spin_generator_homogeneous(double omega0);
// Real homogeneous field; H = (0, 0, H) gives the homogeneous stencil with omega0 = 2 kappa H.
SpinGenerator spin_generator_from_field(const std::array<double, 3>& field, double kappa);

struct SpinPropagator {
  Eigen::Matrix4d Pi = Eigen::Matrix4d::Identity();
  double t = 0.0;
};

SpinPropagator spin_propagator(double omega0, double t);
// exp(S t) for an arbitrary constant generator.
SpinPropagator spin_propagator(const SpinGenerator& g, double t);
Vec4 spin_marginal_evolution(const Vec4& p0, double omega0, double t);

// Spinor-level counterparts: diag(e^{i omega0 t/2}, e^{-i omega0 t/2}) for a field along q3, and
// exp(i kappa t H.sigma) for a general field. Dequantizing the rotated state reproduces the
// propagators above.
Mat2 spin_unitary(double omega0, double t);
Mat2 spin_unitary(const std::array<double, 3>& field, double kappa, double t);
SpinDensity rotate_spin(const SpinDensity& state, const Mat2& u);

enum class FlowKind { Free, Landau, Oscillator };

FlowKind parse_flow_kind(const std::string& name);
const char* to_string(FlowKind k);

struct FlowSpec {
  FlowKind kind = FlowKind::Free;
  std::size_t dims = 1;  // spatial dimensions; Landau is always 2
  double omega = -1.0;   // Landau cyclotron sign/frequency
};

// Phase-space coordinates ordered (q_1..q_n, p_1..p_n).
Eigen::MatrixXd flow_generator(const FlowSpec& spec);

struct LinearFlow {
  FlowSpec spec;
  Eigen::MatrixXd A;
  double t = 0.0;
};

LinearFlow classical_flow(const FlowSpec& spec, double t);
Eigen::MatrixXd symplectic_form(std::size_t dims);

struct PropagatorBundle {
  SpinPropagator spin;
  LinearFlow flow;
};

PropagatorBundle make_bundle(const FlowSpec& spec, double omega0, double t);
PropagatorBundle compose(const PropagatorBundle& a, const PropagatorBundle& b);

// 1D materialized Wigner evolution: W(z, t) = Pi(t) W0(A^-1 z).
PhaseField4 evolve_wigner(const PhaseField4& w0, const PropagatorBundle& bundle);

// Spatial metaplectic evolution of an ensemble (spin untouched).
SpinDensity evolve_state(const SpinDensity& state, const FlowSpec& spec, double t);

// Vector Wigner function of arbitrary dimension kept as initial ensemble plus propagator;
// values are produced on demand, never as a dense array.
struct LazyPhaseField4 {
  SpinDensity initial;
  FlowSpec spec;
  double omega0 = 0.0;
  double t = 0.0;

  std::vector<Vec4> samples(const std::vector<std::vector<double>>& points) const;
  // Radon projection of the pulled-back field onto the requested quadrature planes.
  TomogramField4 tomogram(const std::vector<std::vector<double>>& angles) const;
  double spin_traced_integral() const;
};

LazyPhaseField4 lazy_wigner(const SpinDensity& state, const FlowSpec& spec, double omega0);
LazyPhaseField4 evolve_wigner(const LazyPhaseField4& w0, double t);

// Parameter-map evolution of a 1D optical tomogram with uniform angular coverage.
TomogramField4 evolve_tomogram(const TomogramField4& w0, const PropagatorBundle& bundle);
// Symplectic samples of the evolved tomogram.
std::vector<SymplecticSample> evolve_symplectic(const TomogramField4& w0, const PropagatorBundle& bundle,
                                                const std::vector<SymplecticSample>& at);

enum class OperatorKind { Position, Momentum };

// Tomographic position/momentum operator on a scalar w(theta, X) stored row-major with
// theta on a uniform [0, 2 pi) axis (first) and X second.
std::vector<cplx> tomographic_operator(OperatorKind kind, const std::vector<double>& w, const Axis& theta,
                                       const Axis& X);

Axis full_turn_axis(std::size_t count);  // [0, 2 pi)

enum class EquationKind { OscillatorOptical, LandauOptical, LandauWigner };

struct ResidualReport {
  std::vector<double> times;      // interior times where the residual was evaluated
  std::vector<double> residuals;  // sup norm per time
  double max_residual = 0.0;
};

// Frame sources: the distribution evaluated at time t. Frames are taken on a uniform time grid.
struct ResidualInput {
  EquationKind equation = EquationKind::OscillatorOptical;
  std::vector<double> times;  // uniform spacing, at least 5 samples
  double omega = -1.0;
  double omega0 = -2.0;
  // OscillatorOptical: tomogram over full_turn_axis angles (1D).
  std::function<TomogramField4(double)> optical;
  // LandauOptical: 2D tomogram slices for the requested angle pairs at time t.
  std::function<TomogramField4(double, const std::vector<std::vector<double>>&)> optical2d;
  std::vector<std::vector<double>> angle_pairs;  // evaluation centres for LandauOptical
  std::size_t angle_samples = 64;                // per angular line
  // LandauWigner: pointwise vector Wigner function.
  std::function<std::vector<Vec4>(double, const std::vector<std::vector<double>>&)> wigner;
  std::vector<std::vector<double>> points;  // evaluation points (q1, q2, p1, p2)
  Axis line = Axis{-8.0, 8.0, 128};         // offsets for spectral derivatives along each axis
};

ResidualReport evolution_residual(const ResidualInput& in);

constexpr double kResidualStep = 1e-3;
std::vector<double> residual_times(double centre, std::size_t count = 5, double dt = kResidualStep);

}  // namespace pt
