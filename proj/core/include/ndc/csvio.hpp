#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndc/scheme.hpp"
#include "ndc/sweep.hpp"

namespace ndc {

// One output row in the shared result schema. Monte Carlo rows carry bit and
// error counts; analytic rows leave them at zero. bias_db appears only for the
// biased scheme, the reconstruction tag only for the sign-carrying one.
struct ResultRow {
    std::string source;  // "montecarlo" or "analytic"
    Scheme scheme = Scheme::Ndc;
    std::string channel;
    int m = 0;
    bool has_bias = false;
    double bias_db = 0.0;
    bool has_reconstruction = false;
    Reconstruction reconstruction = Reconstruction::SignSelect;
    double ebn0_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    bool low_confidence = false;
};

std::vector<ResultRow> rows_from_curve(const BerCurve& curve);

ResultRow analytic_row(const std::string& channel, int m, double ebn0_db, double ber);

std::string csv_header();
std::string format_csv(const std::vector<ResultRow>& rows);

// Writes through a temporary file plus rename so readers never see a partial
// file.
void atomic_write_text(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

}  // namespace ndc
