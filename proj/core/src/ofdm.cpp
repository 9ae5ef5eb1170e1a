#include "ndc/ofdm.hpp"

#include <cmath>
#include <stdexcept>

namespace ndc {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_frame_size(std::size_t n) {
    if (n < 8 || !power_of_two(n))
        throw std::domain_error("frame size must be a power of two >= 8");
}

}  // namespace

void fft_unitary(std::vector<std::complex<double>>& v, bool inverse) {
    const std::size_t n = v.size();
    if (!power_of_two(n)) throw std::domain_error("transform length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    const double dir = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = dir * 2.0 * M_PI / double(len);
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = v[i + k];
                const auto t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wstep;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(double(n));
    for (auto& x : v) x *= scale;
}

SpectralFrame build_spectral_frame(const std::vector<std::complex<double>>& symbols,
                                   std::size_t n) {
    check_frame_size(n);
    if (symbols.size() != n / 2 - 1)
        throw std::invalid_argument("expected N/2-1 data symbols");
    SpectralFrame f;
    f.bins.assign(n, {0.0, 0.0});
    for (std::size_t m = 1; m < n / 2; ++m) {
        f.bins[m] = symbols[m - 1];
        f.bins[n - m] = std::conj(symbols[m - 1]);
    }
    return f;
}

TimeFrame inverse_transform(const SpectralFrame& frame) {
    const std::size_t n = frame.size();
    check_frame_size(n);
    const auto& b = frame.bins;
    if (std::abs(b[0]) > 1e-9 || std::abs(b[n / 2]) > 1e-9)
        throw std::invalid_argument("DC and Nyquist bins must be zero");
    for (std::size_t m = 1; m < n / 2; ++m)
        if (std::abs(b[n - m] - std::conj(b[m])) > 1e-9)
            throw std::invalid_argument("frame is not Hermitian-symmetric");
    auto v = b;
    fft_unitary(v, true);
    TimeFrame out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::fabs(v[k].imag()) > 1e-9)
            throw std::runtime_error("imaginary residue above tolerance");
        out[k] = v[k].real();
    }
    return out;
}

std::vector<std::complex<double>> forward_transform(const TimeFrame& samples) {
    std::vector<std::complex<double>> v(samples.begin(), samples.end());
    fft_unitary(v, false);
    return v;
}

}  // namespace ndc
