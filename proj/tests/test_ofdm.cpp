#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ndc/ofdm.hpp"
#include "ndc/rng.hpp"

using cd = std::complex<double>;
using ndc::build_spectral_frame;
using ndc::forward_transform;
using ndc::inverse_transform;
using ndc::SpectralFrame;
using ndc::TimeFrame;

namespace {

std::vector<cd> dft_reference(const std::vector<cd>& x, int dir) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = dir * 2.0 * std::numbers::pi * double(k * t) / double(n);
            acc += x[t] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc / std::sqrt(double(n));
    }
    return out;
}

}  // namespace

TEST_CASE("spectral frame mirrors conjugates around the upper half") {
    const std::vector<cd> syms = {{1.0, 2.0}, {-0.5, 0.25}, {3.0, -1.0}};
    const SpectralFrame f = build_spectral_frame(syms, 8);
    REQUIRE(f.size() == 8);
    CHECK(f.bins[0] == cd(0.0, 0.0));
    CHECK(f.bins[4] == cd(0.0, 0.0));
    CHECK(f.bins[1] == syms[0]);
    CHECK(f.bins[2] == syms[1]);
    CHECK(f.bins[3] == syms[2]);
    CHECK(f.bins[5] == std::conj(syms[2]));
    CHECK(f.bins[6] == std::conj(syms[1]));
    CHECK(f.bins[7] == std::conj(syms[0]));
}

TEST_CASE("single tone becomes a sampled cosine") {
    const SpectralFrame f = build_spectral_frame({{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 8);
    const TimeFrame x = inverse_transform(f);
    REQUIRE(x.size() == 8);
    for (int t = 0; t < 8; ++t) {
        const double expect = 2.0 * std::cos(2.0 * std::numbers::pi * t / 8.0) / std::sqrt(8.0);
        CHECK(x[t] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("transforms agree with a direct summation") {
    ndc::RandomStream rs(3, 9, 0, 0);
    for (std::size_t n : {8u, 16u, 32u}) {
        std::vector<cd> v(n);
        for (auto& z : v) z = {rs.next_gaussian(), rs.next_gaussian()};
        auto fwd = v;
        ndc::fft_unitary(fwd, false);
        const auto ref_f = dft_reference(v, -1);
        auto inv = v;
        ndc::fft_unitary(inv, true);
        const auto ref_i = dft_reference(v, +1);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(fwd[k] - ref_f[k]) < 1e-10);
            CHECK(std::abs(inv[k] - ref_i[k]) < 1e-10);
        }
    }
}

TEST_CASE("unit impulse spreads to a flat spectrum") {
    std::vector<cd> v(16, 0.0);
    v[0] = 1.0;
    ndc::fft_unitary(v, false);
    for (const auto& z : v) {
        CHECK(z.real() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(z.imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("energy is preserved across the transform") {
    ndc::RandomStream rs(17, 9, 1, 0);
    std::vector<cd> syms(1023);
    for (auto& z : syms) z = {rs.next_gaussian(), rs.next_gaussian()};
    const TimeFrame x = inverse_transform(build_spectral_frame(syms, 2048));
    double et = 0.0;
    for (double s : x) et += s * s;
    double ef = 0.0;
    for (const auto& z : syms) ef += std::norm(z);
    CHECK(et == doctest::Approx(2.0 * ef).epsilon(1e-10));
}

TEST_CASE("forward then inverse reproduces the waveform") {
    ndc::RandomStream rs(5, 9, 2, 0);
    std::vector<cd> syms(511);
    for (auto& z : syms) z = {rs.next_gaussian(), rs.next_gaussian()};
    const TimeFrame x = inverse_transform(build_spectral_frame(syms, 1024));
    const auto spectrum = forward_transform(x);
    REQUIRE(spectrum.size() == 1024);
    for (std::size_t m = 1; m < 512; ++m)
        CHECK(std::abs(spectrum[m] - syms[m - 1]) < 1e-9);
    CHECK(std::abs(spectrum[0]) < 1e-9);
    CHECK(std::abs(spectrum[512]) < 1e-9);
}

TEST_CASE("transforms are linear") {
    ndc::RandomStream rs(8, 9, 3, 0);
    std::vector<cd> a(255), b(255), mix(255);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = {rs.next_gaussian(), rs.next_gaussian()};
        b[i] = {rs.next_gaussian(), rs.next_gaussian()};
        mix[i] = 2.0 * a[i] - 3.0 * b[i];
    }
    const auto xa = inverse_transform(build_spectral_frame(a, 512));
    const auto xb = inverse_transform(build_spectral_frame(b, 512));
    const auto xm = inverse_transform(build_spectral_frame(mix, 512));
    for (std::size_t t = 0; t < 512; ++t)
        CHECK(xm[t] == doctest::Approx(2.0 * xa[t] - 3.0 * xb[t]).epsilon(1e-9));
}

TEST_CASE("malformed spectra are rejected") {
    CHECK_THROWS_AS(build_spectral_frame({{1, 0}, {2, 0}}, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_spectral_frame({{1, 0}, {2, 0}, {3, 0}}, 12), std::domain_error);
    CHECK_THROWS_AS(build_spectral_frame({{1, 0}}, 4), std::domain_error);

    SpectralFrame broken = build_spectral_frame({{1, 1}, {2, 0}, {3, 0}}, 8);
    broken.bins[7] = cd(5.0, 5.0);
    CHECK_THROWS_AS(inverse_transform(broken), std::invalid_argument);

    SpectralFrame dc = build_spectral_frame({{1, 1}, {2, 0}, {3, 0}}, 8);
    dc.bins[0] = cd(0.5, 0.0);
    CHECK_THROWS_AS(inverse_transform(dc), std::invalid_argument);
}
