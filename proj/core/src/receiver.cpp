#include "ndc/receiver.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ndc {

namespace {

int log2_exact(std::size_t n) {
    int b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

void append_label_bits(std::vector<int>& bits, int label, int width) {
    for (int b = width - 1; b >= 0; --b) bits.push_back((label >> b) & 1);
}

std::vector<std::complex<double>> extract_data_bins(const TimeFrame& x, Scheme scheme) {
    const std::size_t n = x.size();
    auto spectrum = forward_transform(x);
    std::vector<std::complex<double>> symbols;
    if (scheme == Scheme::AcoOsm) {
        symbols.reserve(n / 4);
        for (std::size_t m = 1; m < n / 2; m += 2) symbols.push_back(2.0 * spectrum[m]);
    } else {
        symbols.reserve(n / 2 - 1);
        for (std::size_t m = 1; m < n / 2; ++m) symbols.push_back(spectrum[m]);
    }
    return symbols;
}

}  // namespace

Mat zf_equalize(const ChannelMatrix& h, const Mat& y) {
    if (y.rows() != h.n_r())
        throw std::invalid_argument("received block row count must equal the PD count");
    return h.inverse() * y;
}

std::vector<std::size_t> detect_active_index(const Mat& g) {
    std::vector<std::size_t> index(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < g.rows(); ++i)
            if (g(i, k) > g(best, k)) best = i;
        index[k] = best + 1;
    }
    return index;
}

TimeFrame reconstruct_sign_select(const Mat& g, const std::vector<std::size_t>& index) {
    if (g.rows() != 2) throw std::invalid_argument("sign-select expects two LED rows");
    if (index.size() != g.cols())
        throw std::invalid_argument("index length must equal the block width");
    TimeFrame x(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k)
        x[k] = index[k] == 1 ? g(0, k) : -g(1, k);
    return x;
}

TimeFrame reconstruct_subtract(const Mat& g) {
    if (g.rows() != 2) throw std::invalid_argument("subtract expects two LED rows");
    TimeFrame x(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) x[k] = g(0, k) - g(1, k);
    return x;
}

std::vector<int> demodulate_frame(const TimeFrame& x, const QamConstellation& c,
                                  Scheme scheme) {
    const std::size_t n = x.size();
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("frame length must be a power of two >= 8");
    auto symbols = extract_data_bins(x, scheme);
    std::vector<int> bits;
    bits.reserve(symbols.size() * std::size_t(c.bits_per_symbol));
    for (auto s : symbols) append_label_bits(bits, qam_demap(s, c), c.bits_per_symbol);
    return bits;
}

OsmBits recover_osm_bits(const Mat& g, const std::vector<std::size_t>& index,
                         const QamConstellation& c, Scheme scheme) {
    if (scheme == Scheme::Ndc)
        throw std::domain_error("index-bit recovery applies to the OSM schemes only");
    if (index.size() != g.cols())
        throw std::invalid_argument("index length must equal the block width");
    const int bits_per = log2_exact(g.rows());
    OsmBits out;
    out.index_bits.reserve(index.size() * std::size_t(bits_per));
    TimeFrame selected(g.cols());
    for (std::size_t k = 0; k < g.cols(); ++k) {
        append_label_bits(out.index_bits, int(index[k] - 1), bits_per);
        selected[k] = g(index[k] - 1, k);
    }
    out.data_bits = demodulate_frame(selected, c, scheme);
    return out;
}

OsmBits recover_osm_subcarrier(const Mat& g, const QamConstellation& c,
                               Scheme scheme, std::size_t n_t) {
    if (scheme == Scheme::Ndc)
        throw std::domain_error("index-bit recovery applies to the OSM schemes only");
    if (g.rows() != n_t)
        throw std::invalid_argument("equalized block must have one row per LED");
    const std::size_t n = g.cols();
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("frame length must be a power of two >= 8");
    const int bits_per = log2_exact(n_t);

    std::vector<std::vector<std::complex<double>>> spectra(n_t);
    for (std::size_t i = 0; i < n_t; ++i) {
        TimeFrame row(g.row_ptr(i), g.row_ptr(i) + n);
        spectra[i] = forward_transform(row);
    }

    const std::size_t stride = scheme == Scheme::AcoOsm ? 2 : 1;
    OsmBits out;
    for (std::size_t m = 1; m < n / 2; m += stride) {
        std::size_t winner = 0;
        double best = std::abs(spectra[0][m]);
        for (std::size_t i = 1; i < n_t; ++i) {
            const double mag = std::abs(spectra[i][m]);
            if (mag > best) {
                best = mag;
                winner = i;
            }
        }
        append_label_bits(out.index_bits, int(winner), bits_per);
        std::complex<double> s = spectra[winner][m];
        if (scheme == Scheme::AcoOsm) s *= 2.0;
        append_label_bits(out.data_bits, qam_demap(s, c), c.bits_per_symbol);
    }
    return out;
}

}  // namespace ndc
