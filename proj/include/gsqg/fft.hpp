#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gsqg/grid.hpp"

namespace gsqg {

// Forward/backward 2D DFT with the n^-2 forward normalization. The inverse
// returns the real part; for Hermitian-symmetric spectra this is exact, and
// for multipliers that break the symmetry only at the Nyquist column it
// realizes the standard convention of dropping those modes.
Spectrum2D to_spectrum(const ScalarField2D& f);
ScalarField2D to_field(const Spectrum2D& s);

// 1D helpers (same normalization, n^-1), used by the d=1 scaling checks.
std::vector<std::complex<double>> dft_1d(std::span<const double> values);

}  // namespace gsqg
