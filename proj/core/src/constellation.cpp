#include "ndc/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace ndc {

namespace {

int gray_decode(int g) {
    for (int shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
    return g;
}

}  // namespace

QamConstellation make_qam(int order) {
    if (order < 4 || (order & (order - 1)) != 0)
        throw std::domain_error("constellation order must be a power of two >= 4");
    QamConstellation c;
    c.order = order;
    int bits = 0;
    while ((1 << bits) < order) ++bits;
    c.bits_per_symbol = bits;
    const int i_bits = bits / 2;
    const int q_bits = bits - i_bits;
    const int li = 1 << i_bits;
    const int lq = 1 << q_bits;
    const double d = std::sqrt(3.0 / double(li * li + lq * lq - 2));
    c.points.resize(order);
    for (int v = 0; v < order; ++v) {
        const int gi = v >> q_bits;
        const int gq = v & (lq - 1);
        const int pi = gray_decode(gi);
        const int pq = gray_decode(gq);
        c.points[v] = {(2 * pi - li + 1) * d, (2 * pq - lq + 1) * d};
    }
    return c;
}

std::vector<std::complex<double>> qam_map(const std::vector<int>& bits,
                                          const QamConstellation& c) {
    if (bits.size() % std::size_t(c.bits_per_symbol) != 0)
        throw std::invalid_argument("bit count not divisible by bits per symbol");
    std::vector<std::complex<double>> out;
    out.reserve(bits.size() / c.bits_per_symbol);
    for (std::size_t i = 0; i < bits.size(); i += c.bits_per_symbol) {
        int v = 0;
        for (int b = 0; b < c.bits_per_symbol; ++b) v = (v << 1) | (bits[i + b] & 1);
        out.push_back(c.points[v]);
    }
    return out;
}

int qam_demap(std::complex<double> symbol, const QamConstellation& c) {
    int best = 0;
    double best_d2 = std::norm(symbol - c.points[0]);
    for (int v = 1; v < c.order; ++v) {
        const double d2 = std::norm(symbol - c.points[v]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = v;
        }
    }
    return best;
}

}  // namespace ndc
