#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ndc/mat.hpp"
#include "ndc/rng.hpp"

namespace ndc {

// Line-of-sight link parameters. Angles are in degrees at this boundary and
// converted to radians internally.
struct LinkGeometry {
    double semiangle_deg = 60.0;
    double detector_area = 1e-4;
    double distance = 2.0;
    double radiant_angle_deg = 0.0;
    double incident_angle_deg = 0.0;
    double filter_gain = 1.0;
    double concentrator_gain = 1.0;
    double fov_deg = 90.0;
};

// Lambertian mode number -ln(2)/ln(cos(semiangle)).
double lambertian_order(double semiangle_deg);

// DC gain of a LOS link; zero outside the receiver field of view.
double los_gain(const LinkGeometry& g);

// Square gain matrix with its inverse computed eagerly so equalization never
// repeats the factorization.
class ChannelMatrix {
public:
    explicit ChannelMatrix(Mat gains);

    const Mat& gains() const { return gains_; }
    const Mat& inverse() const { return inverse_; }
    std::size_t n_r() const { return gains_.rows(); }
    std::size_t n_t() const { return gains_.cols(); }

private:
    Mat gains_;
    Mat inverse_;
};

std::vector<std::pair<std::string, ChannelMatrix>> preset_channels();

// Looks a preset up by name (case-insensitive); throws if absent.
const ChannelMatrix& preset_channel(const std::string& name);

struct NoiseModel {
    double sigma = 0.0;  // standard deviation per receive branch
};

// y = H*s + w for a single sample instant.
std::vector<double> propagate(const ChannelMatrix& h, const std::vector<double>& s,
                              const NoiseModel& noise, RandomStream& stream);

// Column-by-column block form: s is N_t x N, result is N_r x N. Noise is drawn
// sample-major (all branches of sample k before sample k+1).
Mat propagate_block(const ChannelMatrix& h, const Mat& s, const NoiseModel& noise,
                    RandomStream& stream);

Mat read_matrix_text(const std::string& path);
void write_matrix_text(const std::string& path, const Mat& m);

}  // namespace ndc
