#include <benchmark/benchmark.h>

#include "ndc/analysis.hpp"
#include "ndc/channel.hpp"
#include "ndc/constellation.hpp"
#include "ndc/modulation.hpp"
#include "ndc/ofdm.hpp"
#include "ndc/receiver.hpp"
#include "ndc/rng.hpp"

namespace {

void bench_philox_block(benchmark::State& state) {
    ndc::Philox::Key key{0x12345678u, 0x9abcdef0u};
    ndc::Philox::Block ctr{0, 0, 0, 0};
    for (auto _ : state) {
        ctr[0]++;
        benchmark::DoNotOptimize(ndc::Philox::encrypt(ctr, key));
    }
}
BENCHMARK(bench_philox_block);

void bench_fft_2048(benchmark::State& state) {
    ndc::RandomStream rng(7, ndc::stream_purpose::noise, 0, 0);
    std::vector<std::complex<double>> v(2048);
    for (auto& x : v) x = {rng.next_gaussian(), rng.next_gaussian()};
    for (auto _ : state) {
        auto w = v;
        ndc::fft_unitary(w, false);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(bench_fft_2048);

void bench_ndc_frame_chain(benchmark::State& state) {
    const std::size_t n = 2048;
    const auto c = ndc::make_qam(16);
    const ndc::ChannelMatrix h(ndc::Mat{{1.0, 0.5}, {0.5, 1.0}});
    std::uint32_t frame = 0;
    for (auto _ : state) {
        ndc::RandomStream bits(1, ndc::stream_purpose::data_bits, frame, 0);
        std::vector<int> tx((n / 2 - 1) * 4);
        for (auto& b : tx) b = bits.next_bit();
        const auto x = ndc::inverse_transform(
            ndc::build_spectral_frame(ndc::qam_map(tx, c), n));
        const auto sm = ndc::modulate_ndc(x);
        ndc::Mat s(2, n);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < n; ++k) s(i, k) = sm.rows[i][k];
        ndc::RandomStream noise(1, ndc::stream_purpose::noise, frame, 0);
        const auto y = ndc::propagate_block(h, s, ndc::NoiseModel{0.1}, noise);
        const auto g = ndc::zf_equalize(h, y);
        const auto xr = ndc::reconstruct_sign_select(g, ndc::detect_active_index(g));
        benchmark::DoNotOptimize(ndc::demodulate_frame(xr, c, ndc::Scheme::Ndc));
        ++frame;
    }
}
BENCHMARK(bench_ndc_frame_chain);

void bench_analytic_point(benchmark::State& state) {
    const ndc::ChannelMatrix h(ndc::Mat{{1.0, 0.5}, {0.5, 1.0}});
    double db = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ndc::ndc_analytic_ber(h, 16, 2048, 2, db));
        db = db == 10.0 ? 12.0 : 10.0;
    }
}
BENCHMARK(bench_analytic_point);

}  // namespace

BENCHMARK_MAIN();
