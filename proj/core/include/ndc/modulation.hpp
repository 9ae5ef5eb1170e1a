#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ndc/ofdm.hpp"

namespace ndc {

struct BiasedWaveform {
    TimeFrame samples;
    double bias = 0.0;
};

// Adds a DC bias of alpha * sqrt(mean(x^2)) with alpha = sqrt(10^(bias_db/10) - 1),
// then clips anything still negative at zero. The mean square is taken over the
// frame itself, so the result is self-contained.
BiasedWaveform modulate_dco(const TimeFrame& samples, double bias_db);

// Builds a Hermitian frame with data on odd bins only (expects N/4 symbols),
// inverse-transforms and clips negatives at zero. The pre-clip waveform is
// antisymmetric between half-frames, so clipping halves the odd-bin amplitudes
// without distorting them.
TimeFrame modulate_aco(const std::vector<std::complex<double>>& symbols, std::size_t n);

// Per-LED drive waveforms. Exactly one row is nonzero at each sample instant;
// active_index records which (1-based).
struct SmFrame {
    std::vector<TimeFrame> rows;
    std::vector<std::size_t> active_index;

    std::size_t n_t() const { return rows.size(); }
    std::size_t size() const { return active_index.size(); }
};

// Sign split across two LEDs: positives (and zeros) drive LED 1, magnitudes of
// negatives drive LED 2. L1 - L2 reproduces the input exactly.
SmFrame modulate_ndc(const TimeFrame& samples);

// Places each sample of a unipolar waveform on the LED named by its group of
// log2(N_t) index bits (MSB first, group value v -> LED v+1).
SmFrame osm_assign(const TimeFrame& samples, const std::vector<int>& index_bits,
                   std::size_t n_t);

// Spatially multiplexed frequency-domain frames: every LED transmits its own
// OFDM waveform carrying the data bins routed to it, and all LEDs emit at once.
struct OsmLedFrames {
    std::vector<TimeFrame> rows;
    std::vector<double> bias_values;  // one per LED; empty for ACO

    std::size_t n_t() const { return rows.size(); }
};

// symbols has N/2-1 entries (one per data bin); led_choice[m] in 0..N_t-1 routes
// bin m+1 to that LED. Each LED's waveform gets its own empirical DC bias.
OsmLedFrames osm_modulate_dco(const std::vector<std::complex<double>>& symbols,
                              const std::vector<std::size_t>& led_choice,
                              std::size_t n_t, std::size_t n, double bias_db);

// symbols has N/4 entries (one per odd data bin); led_choice routes each odd bin.
OsmLedFrames osm_modulate_aco(const std::vector<std::complex<double>>& symbols,
                              const std::vector<std::size_t>& led_choice,
                              std::size_t n_t, std::size_t n);

}  // namespace ndc
