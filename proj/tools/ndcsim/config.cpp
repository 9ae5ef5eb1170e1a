#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ndc/channel.hpp"
#include "ndc/modulation.hpp"

namespace ndcsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = char(std::tolower((unsigned char)c));
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw std::invalid_argument("config key '" + key + "' has invalid value '" + value +
                                "'");
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    const std::set<std::string>& known) {
    for (const auto& [k, v] : kv)
        if (!known.count(k))
            throw std::invalid_argument("unknown config key '" + k + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not key = value: " + t);
        const std::string key = lower(trim(t.substr(0, eq)));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " has an empty key");
        if (kv.count(key))
            throw std::invalid_argument("config key '" + key + "' appears twice");
        kv[key] = value;
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& value) {
    if (lower(value) == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        bad_value(key, value);
    }
    if (pos != value.size()) bad_value(key, value);
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        bad_value(key, value);
    }
    if (pos != value.size()) bad_value(key, value);
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = lower(value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    bad_value(key, value);
}

std::vector<double> parse_ebn0_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& tok : split(text, ',')) {
        if (tok.empty()) continue;
        const auto parts = split(tok, ':');
        if (parts.size() == 1) {
            out.push_back(parse_double("ebn0_db", parts[0]));
        } else if (parts.size() == 3) {
            const double a = parse_double("ebn0_db", parts[0]);
            const double step = parse_double("ebn0_db", parts[1]);
            const double b = parse_double("ebn0_db", parts[2]);
            if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b) || b < a)
                throw std::invalid_argument("bad ebn0_db range: " + tok);
            for (int i = 0;; ++i) {
                const double v = a + double(i) * step;
                if (v > b + 1e-9) break;
                out.push_back(v);
            }
        } else {
            throw std::invalid_argument("bad ebn0_db entry: " + tok);
        }
    }
    return out;
}

ndc::SweepConfig simulate_config_from(const std::map<std::string, std::string>& kv) {
    reject_unknown(kv, {"scheme", "channel", "channel_file", "m", "n", "bias_db",
                        "reconstruction", "ebn0_db", "min_bits", "min_errors",
                        "frame_cap"});
    ndc::SweepConfig cfg;
    if (auto it = kv.find("scheme"); it != kv.end())
        cfg.scheme = ndc::parse_scheme(it->second);
    if (auto it = kv.find("channel_file"); it != kv.end()) {
        cfg.channel = ndc::read_matrix_text(it->second);
        auto base = it->second.substr(it->second.find_last_of('/') + 1);
        cfg.channel_name = base.substr(0, base.find_last_of('.'));
    }
    if (auto it = kv.find("channel"); it != kv.end()) {
        if (kv.count("channel_file"))
            throw std::invalid_argument("give either channel or channel_file, not both");
        cfg.channel_name = it->second;
        cfg.channel = ndc::preset_channel(it->second).gains();
    }
    if (auto it = kv.find("m"); it != kv.end())
        cfg.m = int(parse_u64("m", it->second));
    if (auto it = kv.find("n"); it != kv.end())
        cfg.n = std::size_t(parse_u64("n", it->second));
    if (auto it = kv.find("bias_db"); it != kv.end()) {
        if (cfg.scheme != ndc::Scheme::DcoOsm)
            throw std::invalid_argument("bias_db applies to the dco-osm scheme only");
        cfg.bias_db = parse_double("bias_db", it->second);
    }
    if (auto it = kv.find("reconstruction"); it != kv.end()) {
        if (cfg.scheme != ndc::Scheme::Ndc)
            throw std::invalid_argument("reconstruction applies to the ndc scheme only");
        cfg.reconstruction = ndc::parse_reconstruction(it->second);
    }
    if (auto it = kv.find("ebn0_db"); it != kv.end())
        cfg.ebn0_points = parse_ebn0_list(it->second);
    if (cfg.ebn0_points.empty())
        throw std::invalid_argument("ebn0_db must list at least one point");
    if (auto it = kv.find("min_bits"); it != kv.end())
        cfg.min_bits = parse_u64("min_bits", it->second);
    if (auto it = kv.find("min_errors"); it != kv.end())
        cfg.min_errors = parse_u64("min_errors", it->second);
    if (auto it = kv.find("frame_cap"); it != kv.end())
        cfg.frame_cap = parse_u64("frame_cap", it->second);
    return cfg;
}

AnalyzeConfig analyze_config_from(const std::map<std::string, std::string>& kv) {
    reject_unknown(kv, {"channel", "channel_file", "m", "n", "ebn0_db", "simulate",
                        "min_bits", "min_errors", "frame_cap"});
    AnalyzeConfig cfg;
    if (auto it = kv.find("channel_file"); it != kv.end()) cfg.channel_file = it->second;
    if (auto it = kv.find("channel"); it != kv.end()) {
        if (!cfg.channel_file.empty())
            throw std::invalid_argument("give either channel or channel_file, not both");
        cfg.channels = split(it->second, ',');
    }
    if (cfg.channels.empty() && cfg.channel_file.empty())
        throw std::invalid_argument("analyze needs a channel or channel_file");
    if (auto it = kv.find("m"); it != kv.end()) cfg.m = int(parse_u64("m", it->second));
    if (auto it = kv.find("n"); it != kv.end())
        cfg.n = std::size_t(parse_u64("n", it->second));
    if (auto it = kv.find("ebn0_db"); it != kv.end())
        cfg.ebn0_points = parse_ebn0_list(it->second);
    if (auto it = kv.find("simulate"); it != kv.end())
        cfg.with_simulation = parse_bool("simulate", it->second);
    if (auto it = kv.find("min_bits"); it != kv.end())
        cfg.min_bits = parse_u64("min_bits", it->second);
    if (auto it = kv.find("min_errors"); it != kv.end())
        cfg.min_errors = parse_u64("min_errors", it->second);
    if (auto it = kv.find("frame_cap"); it != kv.end())
        cfg.frame_cap = parse_u64("frame_cap", it->second);
    return cfg;
}

}  // namespace ndcsim
