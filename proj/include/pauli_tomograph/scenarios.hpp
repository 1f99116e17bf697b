#pragma once

#include <string>
#include <vector>

#include "pauli_tomograph/dynamics.hpp"
#include "pauli_tomograph/grid.hpp"
#include "pauli_tomograph/tomography.hpp"

namespace pt {

// Electron in a homogeneous field along q3: charge and spin frequencies.
constexpr double kLandauOmega = -1.0;
constexpr double kLandauOmega0 = -1.0;
constexpr double kOscillatorOmega0 = -2.0;

// Lowest Landau states in the symmetric-phase form; only (0,0) and (1,0) are available.
ComplexField landau_state(int n, int m, const Grid& grid);
Grid default_landau_grid();  // 128 x 128 over [-8, 8)^2

// (|0 0> x down + |1 0> x up) / sqrt 2.
SpinDensity landau_entangled_initial(const Grid& grid);
// (|0> x down + |1> x up) / sqrt 2 for the oscillator.
SpinDensity oscillator_entangled_initial(const Axis& axis);

// The fixed (theta1, theta2) comparison pairs.
std::vector<std::vector<double>> landau_angle_pairs();

TomogramField4 landau_analytic_tomogram(double t, const std::vector<std::vector<double>>& pairs, const Grid& grid);
TomogramField4 oscillator_entangled_tomogram(double t, const std::vector<double>& thetas, const Axis& X);

// Least-squares frequency nu of z(t) = a e^{i nu t} with
// z = (w1 - (w3 + w4)/2) + i (w2 - (w3 + w4)/2), a fitted per sample point. Searches [0, nu_max].
double fit_beat_frequency(const std::vector<double>& times, const std::vector<TomogramField4>& frames,
                          double nu_max = 10.0);

struct ScenarioOptions {
  std::vector<double> times;
  double tolerance = 0.0;           // 0 selects the scenario default
  double frequency_tolerance = 0.0;  // 0 selects the scenario default
  std::size_t angle_count = 64;     // oscillator
  Axis axis = default_axis_1d();    // oscillator X grid
  Grid grid = default_landau_grid();
};

struct ScenarioReport {
  std::string id;
  std::vector<double> times;
  std::vector<std::vector<double>> errors;  // [component][time], worst over all numeric paths
  std::vector<double> path_tomogram;        // per time, parameter-map or state path
  std::vector<double> path_wigner;          // per time, Wigner path
  double fitted_frequency = 0.0;
  bool frequency_fitted = false;
  double expected_frequency = 0.0;
  double normalization_deviation = 0.0;  // max |int (w3 + w4) - 1|
  double wigner_drift = 0.0;             // max |int (W3 + W4)(t) - int (W3 + W4)(0)|
  double tolerance = 0.0;
  double frequency_tolerance = 0.0;
  double seconds = 0.0;
  bool pass = false;

  double max_error() const;
  std::string to_json() const;
};

ScenarioReport run_scenario(const std::string& id, const ScenarioOptions& options);

}  // namespace pt
