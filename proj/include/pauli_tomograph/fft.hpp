#pragma once

#include <cstddef>
#include <vector>

#include "pauli_tomograph/grid.hpp"

namespace pt {

// Unnormalized in-place DFT of n contiguous values; sign -1 forward, +1 inverse.
void fft(cplx* data, std::size_t n, int sign);

// Transform along one axis of a row-major array.
void fft_axis(std::vector<cplx>& data, const std::vector<std::size_t>& shape, std::size_t axis, int sign);

// Angular wavenumbers matching the FFT bin order; the Nyquist bin is negative.
std::vector<double> wavenumbers(const Axis& a);

// Applies a diagonal Fourier multiplier to a contiguous line.
void apply_multiplier(cplx* line, std::size_t n, const std::vector<cplx>& mult);

// g(x) = f(x - shift) for a band-limited periodic line.
void translate(cplx* line, const Axis& a, double shift);
void translate(double* line, const Axis& a, double shift);

}  // namespace pt
