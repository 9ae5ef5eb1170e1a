#include "ndc/channel.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ndc {

namespace {

constexpr double deg2rad = M_PI / 180.0;

std::string lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(char(std::tolower((unsigned char)c)));
    return out;
}

}  // namespace

double lambertian_order(double semiangle_deg) {
    if (!(semiangle_deg > 0.0 && semiangle_deg < 90.0))
        throw std::domain_error("semiangle must lie in (0, 90) degrees");
    return -std::log(2.0) / std::log(std::cos(semiangle_deg * deg2rad));
}

double los_gain(const LinkGeometry& g) {
    if (g.detector_area <= 0.0 || g.distance <= 0.0)
        throw std::domain_error("detector area and distance must be positive");
    if (g.incident_angle_deg < 0.0 || g.radiant_angle_deg < 0.0)
        throw std::domain_error("angles must be nonnegative");
    if (g.incident_angle_deg > g.fov_deg) return 0.0;
    const double beta = lambertian_order(g.semiangle_deg);
    const double phi = g.radiant_angle_deg * deg2rad;
    const double psi = g.incident_angle_deg * deg2rad;
    return (beta + 1.0) * g.detector_area / (2.0 * M_PI * g.distance * g.distance) *
           std::pow(std::cos(phi), beta) * g.filter_gain * g.concentrator_gain *
           std::cos(psi);
}

ChannelMatrix::ChannelMatrix(Mat gains) : gains_(std::move(gains)) {
    if (gains_.rows() != gains_.cols())
        throw std::invalid_argument("channel matrix must be square");
    inverse_ = gains_.inverse();
    if ((inverse_ * gains_).max_abs_diff(Mat::identity(gains_.rows())) > 1e-9)
        throw std::runtime_error("channel inverse failed the identity check");
}

std::vector<std::pair<std::string, ChannelMatrix>> preset_channels() {
    std::vector<std::pair<std::string, ChannelMatrix>> out;
    auto add = [&](const char* name, Mat m) { out.emplace_back(name, ChannelMatrix(std::move(m))); };
    add("H1", {{1.0, 0.0}, {0.0, 1.0}});
    add("H2", {{1.0, 0.3}, {0.3, 1.0}});
    add("H3", {{1.0, 0.5}, {0.5, 1.0}});
    add("H4", {{1.0, 0.7}, {0.7, 1.0}});
    add("H5", {{1.0, 0.0}, {0.0, 0.7}});
    add("H6", {{1.0, 0.0}, {0.3, 0.7}});
    add("H7", {{1.0, 0.5}, {0.0, 0.7}});
    add("H8", {{1.0, 0.5}, {0.3, 0.7}});
    add("HPrac1", {{0.1889e-5, 0.0713e-5}, {0.0713e-5, 0.1889e-5}});
    add("HPrac2", {{0.3847e-5, 0.1889e-5}, {0.1889e-5, 0.3847e-5}});
    add("HPrac3", {{0.1889e-5, 0.0713e-5}, {0.1157e-5, 0.1889e-5}});
    add("HPrac4", {{0.3847e-5, 0.2691e-5}, {0.1889e-5, 0.3847e-5}});
    return out;
}

const ChannelMatrix& preset_channel(const std::string& name) {
    static const auto presets = preset_channels();
    const std::string key = lower(name);
    for (const auto& [n, h] : presets)
        if (lower(n) == key) return h;
    throw std::invalid_argument("unknown channel preset: " + name);
}

std::vector<double> propagate(const ChannelMatrix& h, const std::vector<double>& s,
                              const NoiseModel& noise, RandomStream& stream) {
    if (s.size() != h.n_t())
        throw std::invalid_argument("sample vector length must equal the LED count");
    std::vector<double> y(h.n_r(), 0.0);
    for (std::size_t r = 0; r < h.n_r(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < h.n_t(); ++c) acc += h.gains()(r, c) * s[c];
        y[r] = acc + noise.sigma * stream.next_gaussian();
    }
    return y;
}

Mat propagate_block(const ChannelMatrix& h, const Mat& s, const NoiseModel& noise,
                    RandomStream& stream) {
    if (s.rows() != h.n_t())
        throw std::invalid_argument("block row count must equal the LED count");
    Mat y(h.n_r(), s.cols());
    for (std::size_t r = 0; r < h.n_r(); ++r)
        for (std::size_t k = 0; k < s.cols(); ++k) {
            double acc = 0.0;
            for (std::size_t c = 0; c < h.n_t(); ++c) acc += h.gains()(r, c) * s(c, k);
            y(r, k) = acc;
        }
    if (noise.sigma > 0.0)
        for (std::size_t k = 0; k < s.cols(); ++k)
            for (std::size_t r = 0; r < h.n_r(); ++r)
                y(r, k) += noise.sigma * stream.next_gaussian();
    return y;
}

Mat read_matrix_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof() && ls.fail())
            throw std::runtime_error("non-numeric token in matrix file: " + path);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("matrix file is empty: " + path);
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::runtime_error("ragged rows in matrix file: " + path);
    Mat m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    return m;
}

void write_matrix_text(const std::string& path, const Mat& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    out.precision(17);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing matrix file: " + path);
}

}  // namespace ndc
