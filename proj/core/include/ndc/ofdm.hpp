#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ndc {

using TimeFrame = std::vector<double>;

// Frequency-domain frame with Hermitian symmetry: bins[0] = bins[N/2] = 0 and
// bins[N-m] = conj(bins[m]), which makes the inverse transform real.
struct SpectralFrame {
    std::vector<std::complex<double>> bins;

    std::size_t size() const { return bins.size(); }
};

// Places the N/2-1 data symbols on bins 1..N/2-1 and mirrors the conjugates.
SpectralFrame build_spectral_frame(const std::vector<std::complex<double>>& symbols,
                                   std::size_t n);

// Unitary inverse DFT (1/sqrt(N) scaling). Validates the Hermitian structure
// and that the imaginary residue stays below 1e-9 before discarding it.
TimeFrame inverse_transform(const SpectralFrame& frame);

// Unitary forward DFT of a real frame.
std::vector<std::complex<double>> forward_transform(const TimeFrame& samples);

// In-place radix-2 unitary transform, both directions. Length must be a power
// of two.
void fft_unitary(std::vector<std::complex<double>>& v, bool inverse);

}  // namespace ndc
