#include "ndc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ndc/constellation.hpp"
#include "ndc/modulation.hpp"
#include "ndc/receiver.hpp"
#include "ndc/rng.hpp"

namespace ndc {

namespace {

constexpr std::uint32_t frames_per_round = 256;
constexpr std::uint32_t calibration_frames = 128;

bool power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t n) {
    int b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

void validate(const SweepConfig& cfg) {
    if (cfg.m < 4 || !power_of_two(std::size_t(cfg.m)))
        throw std::domain_error("constellation order must be a power of two >= 4");
    if (cfg.n < 8 || !power_of_two(cfg.n))
        throw std::domain_error("frame size must be a power of two >= 8");
    if (cfg.n_t != 2) throw std::domain_error("the engine simulates two LEDs");
    if (cfg.scheme == Scheme::DcoOsm && cfg.bias_db < 0.0)
        throw std::domain_error("bias level must be nonnegative");
    if (cfg.min_bits == 0 || cfg.frame_cap == 0)
        throw std::domain_error("stopping thresholds must be positive");
}

Mat resolve_gains(const SweepConfig& cfg) {
    if (cfg.channel.rows() != 0) return cfg.channel;
    return preset_channel(cfg.channel_name).gains();
}

std::uint64_t data_bits_per_frame(Scheme scheme, int m, std::size_t n) {
    const std::uint64_t bins =
        scheme == Scheme::AcoOsm ? std::uint64_t(n / 4) : std::uint64_t(n / 2 - 1);
    int bits = 0;
    while ((1 << bits) < m) ++bits;
    return bins * std::uint64_t(bits);
}

std::uint64_t index_bits_per_frame(Scheme scheme, std::size_t n, std::size_t n_t) {
    if (scheme == Scheme::Ndc) return 0;
    const std::uint64_t bins =
        scheme == Scheme::AcoOsm ? std::uint64_t(n / 4) : std::uint64_t(n / 2 - 1);
    return bins * std::uint64_t(log2_exact(n_t));
}

struct FrameTx {
    std::vector<TimeFrame> rows;
    std::vector<int> index_bits;
    std::vector<int> data_bits;
};

FrameTx build_tx_frame(const SweepConfig& cfg, const QamConstellation& c,
                       std::uint32_t frame, std::uint32_t point) {
    FrameTx tx;
    const std::uint64_t n_data = data_bits_per_frame(cfg.scheme, cfg.m, cfg.n);
    RandomStream data_stream(cfg.seed, stream_purpose::data_bits, frame, point);
    tx.data_bits.resize(n_data);
    for (auto& b : tx.data_bits) b = data_stream.next_bit();
    const auto symbols = qam_map(tx.data_bits, c);

    if (cfg.scheme == Scheme::Ndc) {
        const TimeFrame x = inverse_transform(build_spectral_frame(symbols, cfg.n));
        tx.rows = modulate_ndc(x).rows;
        return tx;
    }

    const std::uint64_t n_index = index_bits_per_frame(cfg.scheme, cfg.n, cfg.n_t);
    RandomStream index_stream(cfg.seed, stream_purpose::index_bits, frame, point);
    tx.index_bits.resize(n_index);
    for (auto& b : tx.index_bits) b = index_stream.next_bit();
    const int per_bin = log2_exact(cfg.n_t);
    std::vector<std::size_t> led_choice(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        std::size_t v = 0;
        for (int b = 0; b < per_bin; ++b)
            v = (v << 1) | std::size_t(tx.index_bits[i * per_bin + b] & 1);
        led_choice[i] = v;
    }
    if (cfg.scheme == Scheme::DcoOsm)
        tx.rows = osm_modulate_dco(symbols, led_choice, cfg.n_t, cfg.n, cfg.bias_db).rows;
    else
        tx.rows = osm_modulate_aco(symbols, led_choice, cfg.n_t, cfg.n).rows;
    return tx;
}

std::uint64_t count_mismatches(const std::vector<int>& a, const std::vector<int>& b) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
    return e;
}

std::uint64_t simulate_frame(const SweepConfig& cfg, const ChannelMatrix& h,
                             const QamConstellation& c, double sigma_n,
                             std::uint32_t frame, std::uint32_t point) {
    const FrameTx tx = build_tx_frame(cfg, c, frame, point);
    Mat s(cfg.n_t, cfg.n);
    for (std::size_t i = 0; i < cfg.n_t; ++i)
        for (std::size_t k = 0; k < cfg.n; ++k) s(i, k) = tx.rows[i][k];
    RandomStream noise_stream(cfg.seed, stream_purpose::noise, frame, point);
    const Mat y = propagate_block(h, s, NoiseModel{sigma_n}, noise_stream);
    const Mat g = zf_equalize(h, y);

    if (cfg.scheme == Scheme::Ndc) {
        TimeFrame xr;
        if (cfg.reconstruction == Reconstruction::SignSelect)
            xr = reconstruct_sign_select(g, detect_active_index(g));
        else
            xr = reconstruct_subtract(g);
        const auto rx = demodulate_frame(xr, c, Scheme::Ndc);
        return count_mismatches(tx.data_bits, rx);
    }
    const OsmBits rx = recover_osm_subcarrier(g, c, cfg.scheme, cfg.n_t);
    return count_mismatches(tx.index_bits, rx.index_bits) +
           count_mismatches(tx.data_bits, rx.data_bits);
}

unsigned worker_count(const SweepConfig& cfg) {
    if (cfg.workers != 0) return cfg.workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

std::uint32_t point_index_of(const SweepConfig& cfg, double ebn0_db) {
    for (std::size_t i = 0; i < cfg.ebn0_points.size(); ++i)
        if (cfg.ebn0_points[i] == ebn0_db) return std::uint32_t(i);
    return 0;
}

BerPoint run_point_indexed(const SweepConfig& cfg, double ebn0_db,
                           std::uint32_t point, double eb) {
    const ChannelMatrix h(resolve_gains(cfg));
    const QamConstellation c = make_qam(cfg.m);
    const double sigma_n = noise_sigma_for(ebn0_db, eb);
    const std::uint64_t per_frame = bits_per_frame(cfg.scheme, cfg.m, cfg.n, cfg.n_t);
    const unsigned workers = worker_count(cfg);

    BerPoint result;
    result.ebn0_db = ebn0_db;
    std::uint64_t frames_done = 0;
    while (frames_done < cfg.frame_cap) {
        const std::uint64_t round =
            std::min<std::uint64_t>(frames_per_round, cfg.frame_cap - frames_done);
        const unsigned active = unsigned(std::min<std::uint64_t>(workers, round));
        std::vector<std::uint64_t> errs(active, 0);
        auto work = [&](unsigned w) {
            std::uint64_t acc = 0;
            for (std::uint64_t f = w; f < round; f += active)
                acc += simulate_frame(cfg, h, c, sigma_n,
                                      std::uint32_t(frames_done + f), point);
            errs[w] = acc;
        };
        if (active == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(active);
            for (unsigned w = 0; w < active; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (auto e : errs) result.errors += e;
        frames_done += round;
        result.bits = frames_done * per_frame;
        if (result.bits >= cfg.min_bits && result.errors >= cfg.min_errors) break;
    }
    result.ber = result.bits ? double(result.errors) / double(result.bits) : 0.0;
    result.low_confidence = result.errors < cfg.min_errors;
    return result;
}

}  // namespace

Reconstruction parse_reconstruction(const std::string& name) {
    if (name == "sign-select") return Reconstruction::SignSelect;
    if (name == "subtract") return Reconstruction::Subtract;
    throw std::invalid_argument("unknown reconstruction: " + name);
}

std::string reconstruction_name(Reconstruction r) {
    return r == Reconstruction::SignSelect ? "sign-select" : "subtract";
}

std::uint64_t bits_per_frame(Scheme scheme, int m, std::size_t n, std::size_t n_t) {
    return data_bits_per_frame(scheme, m, n) + index_bits_per_frame(scheme, n, n_t);
}

double energy_per_bit(const std::vector<std::vector<TimeFrame>>& frames,
                      Scheme scheme, const SweepConfig& config) {
    if (frames.empty()) throw std::invalid_argument("at least one frame required");
    const std::uint64_t per_frame =
        bits_per_frame(scheme, config.m, config.n, config.n_t);
    if (per_frame == 0) throw std::domain_error("frames carry no bits");
    double energy = 0.0;
    for (const auto& rows : frames)
        for (const auto& row : rows)
            for (double v : row) energy += v * v;
    return double(config.n_t) * energy / (double(frames.size()) * double(per_frame));
}

double noise_sigma_for(double ebn0_db, double eb) {
    if (!(eb > 0.0)) throw std::domain_error("energy per bit must be positive");
    if (std::isinf(ebn0_db) && ebn0_db > 0.0) return 0.0;
    const double n0 = eb * std::pow(10.0, -ebn0_db / 10.0);
    return std::sqrt(n0 / 2.0);
}

double calibrate_energy(const SweepConfig& config) {
    validate(config);
    const QamConstellation c = make_qam(config.m);
    std::vector<std::vector<TimeFrame>> frames;
    frames.reserve(calibration_frames);
    for (std::uint32_t f = 0; f < calibration_frames; ++f)
        frames.push_back(build_tx_frame(config, c, f, calibration_point).rows);
    return energy_per_bit(frames, config.scheme, config);
}

BerPoint run_point(const SweepConfig& config, double ebn0_db) {
    validate(config);
    return run_point_indexed(config, ebn0_db, point_index_of(config, ebn0_db),
                             calibrate_energy(config));
}

BerCurve run_sweep(const SweepConfig& config) {
    validate(config);
    BerCurve curve;
    curve.config = config;
    curve.eb = calibrate_energy(config);
    std::vector<std::pair<double, std::uint32_t>> order;
    order.reserve(config.ebn0_points.size());
    for (std::size_t i = 0; i < config.ebn0_points.size(); ++i)
        order.emplace_back(config.ebn0_points[i], std::uint32_t(i));
    std::sort(order.begin(), order.end());
    for (const auto& [db, idx] : order)
        curve.points.push_back(run_point_indexed(config, db, idx, curve.eb));
    return curve;
}

}  // namespace ndc
