#pragma once

#include <cstddef>
#include <vector>

#include "ndc/channel.hpp"
#include "ndc/constellation.hpp"
#include "ndc/mat.hpp"
#include "ndc/ofdm.hpp"
#include "ndc/scheme.hpp"

namespace ndc {

// G = H^-1 * Y, column by column. Rows are per-LED estimates.
Mat zf_equalize(const ChannelMatrix& h, const Mat& y);

// Per-column argmax over rows, 1-based; ties go to the lowest index.
std::vector<std::size_t> detect_active_index(const Mat& g);

// x'(k) = +G(1,k) when the detector picked LED 1, -G(2,k) when it picked LED 2.
TimeFrame reconstruct_sign_select(const Mat& g, const std::vector<std::size_t>& index);

// x'(k) = G(1,k) - G(2,k).
TimeFrame reconstruct_subtract(const Mat& g);

// Forward transform, data-bin extraction (all bins 1..N/2-1, or odd bins scaled
// by 2 for the clipped scheme), ML demap to bits.
std::vector<int> demodulate_frame(const TimeFrame& x, const QamConstellation& c,
                                  Scheme scheme);

struct OsmBits {
    std::vector<int> index_bits;
    std::vector<int> data_bits;
};

// Per-sample recovery: index bits spell l(k)-1, the selected samples feed the
// OFDM demodulator.
OsmBits recover_osm_bits(const Mat& g, const std::vector<std::size_t>& index,
                         const QamConstellation& c, Scheme scheme);

// Frequency-domain recovery for spatially multiplexed frames: each equalized
// LED row is transformed, and per data bin the LED with the larger magnitude
// wins the index decision and supplies the symbol for demapping.
OsmBits recover_osm_subcarrier(const Mat& g, const QamConstellation& c,
                               Scheme scheme, std::size_t n_t);

}  // namespace ndc
