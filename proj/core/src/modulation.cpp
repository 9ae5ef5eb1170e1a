#include "ndc/modulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "ndc/scheme.hpp"

namespace ndc {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

std::vector<std::complex<double>> route_bins(
    const std::vector<std::complex<double>>& symbols,
    const std::vector<std::size_t>& led_choice, std::size_t led) {
    std::vector<std::complex<double>> out(symbols.size(), {0.0, 0.0});
    for (std::size_t m = 0; m < symbols.size(); ++m)
        if (led_choice[m] == led) out[m] = symbols[m];
    return out;
}

void check_routing(std::size_t symbol_count, const std::vector<std::size_t>& led_choice,
                   std::size_t n_t) {
    if (n_t == 0 || !power_of_two(n_t))
        throw std::domain_error("transmitter count must be a power of two");
    if (led_choice.size() != symbol_count)
        throw std::invalid_argument("one LED choice per data bin required");
    for (auto c : led_choice)
        if (c >= n_t) throw std::domain_error("LED choice out of range");
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char ch : name) s.push_back(char(std::tolower((unsigned char)ch)));
    if (s == "ndc") return Scheme::Ndc;
    if (s == "dco" || s == "dco-osm") return Scheme::DcoOsm;
    if (s == "aco" || s == "aco-osm") return Scheme::AcoOsm;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::Ndc: return "ndc";
        case Scheme::DcoOsm: return "dco-osm";
        case Scheme::AcoOsm: return "aco-osm";
    }
    throw std::invalid_argument("unknown scheme value");
}

BiasedWaveform modulate_dco(const TimeFrame& samples, double bias_db) {
    if (bias_db < 0.0) throw std::domain_error("bias level must be nonnegative");
    double ms = 0.0;
    for (double x : samples) ms += x * x;
    if (!samples.empty()) ms /= double(samples.size());
    const double alpha = std::sqrt(std::pow(10.0, bias_db / 10.0) - 1.0);
    BiasedWaveform out;
    out.bias = alpha * std::sqrt(ms);
    out.samples.resize(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        out.samples[k] = std::max(samples[k] + out.bias, 0.0);
    return out;
}

TimeFrame modulate_aco(const std::vector<std::complex<double>>& symbols, std::size_t n) {
    if (n < 8 || !power_of_two(n))
        throw std::domain_error("frame size must be a power of two >= 8");
    if (symbols.size() != n / 4)
        throw std::invalid_argument("expected N/4 odd-bin symbols");
    std::vector<std::complex<double>> data(n / 2 - 1, {0.0, 0.0});
    for (std::size_t i = 0; i < symbols.size(); ++i) data[2 * i] = symbols[i];
    TimeFrame x = inverse_transform(build_spectral_frame(data, n));
    for (double& v : x) v = std::max(v, 0.0);
    return x;
}

SmFrame modulate_ndc(const TimeFrame& samples) {
    SmFrame f;
    f.rows.assign(2, TimeFrame(samples.size(), 0.0));
    f.active_index.resize(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k] >= 0.0) {
            f.rows[0][k] = samples[k];
            f.active_index[k] = 1;
        } else {
            f.rows[1][k] = -samples[k];
            f.active_index[k] = 2;
        }
    }
    return f;
}

SmFrame osm_assign(const TimeFrame& samples, const std::vector<int>& index_bits,
                   std::size_t n_t) {
    if (n_t == 0 || !power_of_two(n_t))
        throw std::domain_error("transmitter count must be a power of two");
    for (double v : samples)
        if (v < 0.0) throw std::domain_error("OSM accepts only unipolar waveforms");
    const int bits_per = log2_exact(n_t);
    if (index_bits.size() != samples.size() * std::size_t(bits_per))
        throw std::invalid_argument("expected N*log2(N_t) index bits");
    SmFrame f;
    f.rows.assign(n_t, TimeFrame(samples.size(), 0.0));
    f.active_index.resize(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        std::size_t v = 0;
        for (int b = 0; b < bits_per; ++b)
            v = (v << 1) | std::size_t(index_bits[k * bits_per + b] & 1);
        f.rows[v][k] = samples[k];
        f.active_index[k] = v + 1;
    }
    return f;
}

OsmLedFrames osm_modulate_dco(const std::vector<std::complex<double>>& symbols,
                              const std::vector<std::size_t>& led_choice,
                              std::size_t n_t, std::size_t n, double bias_db) {
    if (n < 8 || !power_of_two(n))
        throw std::domain_error("frame size must be a power of two >= 8");
    if (symbols.size() != n / 2 - 1)
        throw std::invalid_argument("expected N/2-1 data symbols");
    check_routing(symbols.size(), led_choice, n_t);
    OsmLedFrames out;
    out.rows.reserve(n_t);
    out.bias_values.reserve(n_t);
    for (std::size_t led = 0; led < n_t; ++led) {
        TimeFrame x = inverse_transform(build_spectral_frame(route_bins(symbols, led_choice, led), n));
        BiasedWaveform w = modulate_dco(x, bias_db);
        out.rows.push_back(std::move(w.samples));
        out.bias_values.push_back(w.bias);
    }
    return out;
}

OsmLedFrames osm_modulate_aco(const std::vector<std::complex<double>>& symbols,
                              const std::vector<std::size_t>& led_choice,
                              std::size_t n_t, std::size_t n) {
    if (n < 8 || !power_of_two(n))
        throw std::domain_error("frame size must be a power of two >= 8");
    if (symbols.size() != n / 4)
        throw std::invalid_argument("expected N/4 odd-bin symbols");
    check_routing(symbols.size(), led_choice, n_t);
    OsmLedFrames out;
    out.rows.reserve(n_t);
    for (std::size_t led = 0; led < n_t; ++led)
        out.rows.push_back(modulate_aco(route_bins(symbols, led_choice, led), n));
    return out;
}

}  // namespace ndc
