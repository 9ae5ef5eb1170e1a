#include "ndc/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ndc {

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string format_ber(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

}  // namespace

std::vector<ResultRow> rows_from_curve(const BerCurve& curve) {
    std::vector<ResultRow> rows;
    rows.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        ResultRow r;
        r.source = "montecarlo";
        r.scheme = curve.config.scheme;
        r.channel = curve.config.channel_name;
        r.m = curve.config.m;
        if (curve.config.scheme == Scheme::DcoOsm) {
            r.has_bias = true;
            r.bias_db = curve.config.bias_db;
        }
        if (curve.config.scheme == Scheme::Ndc) {
            r.has_reconstruction = true;
            r.reconstruction = curve.config.reconstruction;
        }
        r.ebn0_db = p.ebn0_db;
        r.bits = p.bits;
        r.errors = p.errors;
        r.ber = p.ber;
        r.low_confidence = p.low_confidence;
        rows.push_back(std::move(r));
    }
    return rows;
}

ResultRow analytic_row(const std::string& channel, int m, double ebn0_db, double ber) {
    ResultRow r;
    r.source = "analytic";
    r.scheme = Scheme::Ndc;
    r.channel = channel;
    r.m = m;
    r.has_reconstruction = true;
    r.reconstruction = Reconstruction::SignSelect;
    r.ebn0_db = ebn0_db;
    r.ber = ber;
    return r;
}

std::string csv_header() {
    return "source,scheme,channel,M,bias_db,reconstruction,ebn0_db,bits,errors,ber";
}

std::string format_csv(const std::vector<ResultRow>& rows) {
    std::string out = csv_header();
    out.push_back('\n');
    for (const auto& r : rows) {
        out += r.source;
        out.push_back(',');
        out += scheme_name(r.scheme);
        out.push_back(',');
        out += r.channel;
        out.push_back(',');
        out += std::to_string(r.m);
        out.push_back(',');
        if (r.has_bias) out += format_number(r.bias_db);
        out.push_back(',');
        if (r.has_reconstruction) out += reconstruction_name(r.reconstruction);
        out.push_back(',');
        out += format_number(r.ebn0_db);
        out.push_back(',');
        out += std::to_string(r.bits);
        out.push_back(',');
        out += std::to_string(r.errors);
        out.push_back(',');
        out += format_ber(r.ber);
        out.push_back('\n');
    }
    return out;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out.write(content.data(), std::streamsize(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move " + tmp + " into place");
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    atomic_write_text(path, format_csv(rows));
}

}  // namespace ndc
