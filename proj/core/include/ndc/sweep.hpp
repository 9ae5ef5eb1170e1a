#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndc/channel.hpp"
#include "ndc/mat.hpp"
#include "ndc/ofdm.hpp"
#include "ndc/scheme.hpp"

namespace ndc {

enum class Reconstruction { SignSelect, Subtract };

Reconstruction parse_reconstruction(const std::string& name);
std::string reconstruction_name(Reconstruction r);

struct SweepConfig {
    Scheme scheme = Scheme::Ndc;
    std::string channel_name = "H1";
    Mat channel;  // resolved from channel_name when left empty
    int m = 16;
    std::size_t n = 2048;
    std::size_t n_t = 2;
    double bias_db = 7.0;                                   // DCO only
    Reconstruction reconstruction = Reconstruction::SignSelect;  // NDC only
    std::vector<double> ebn0_points;
    std::uint64_t min_bits = 1'000'000;
    std::uint64_t min_errors = 100;
    std::uint64_t frame_cap = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0 picks the hardware concurrency
};

struct BerPoint {
    double ebn0_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    bool low_confidence = false;  // frame cap hit before the error target
};

struct BerCurve {
    SweepConfig config;
    double eb = 0.0;  // calibrated energy per bit behind the noise scaling
    std::vector<BerPoint> points;
};

// Information bits carried by one frame, index bits included.
std::uint64_t bits_per_frame(Scheme scheme, int m, std::size_t n, std::size_t n_t);

// Energy per information bit of a set of emitted frames (each entry holds the
// per-LED waveforms of one frame): N_t times the emitted energy divided by the
// bits carried. For bipolar sign-split frames this inverts the sigma_s-to-Eb
// relation exactly; for the biased and clipped schemes it charges the emitted
// waveforms as they are, bias included.
double energy_per_bit(const std::vector<std::vector<TimeFrame>>& frames,
                      Scheme scheme, const SweepConfig& config);

// N0 = Eb * 10^(-ebn0_db/10); sigma = sqrt(N0/2) per receive branch.
double noise_sigma_for(double ebn0_db, double eb);

// Deterministic 128-frame calibration of Eb for this configuration.
double calibrate_energy(const SweepConfig& config);

BerPoint run_point(const SweepConfig& config, double ebn0_db);

// Runs every configured Eb/N0 point; points come back sorted by Eb/N0.
BerCurve run_sweep(const SweepConfig& config);

}  // namespace ndc
