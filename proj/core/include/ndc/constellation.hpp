#pragma once

#include <complex>
#include <vector>

namespace ndc {

// Unit-average-energy QAM with Gray labels per axis. points[v] is the point
// whose bit label (MSB first) has value v. Square orders use a square grid;
// other power-of-two orders use the 2^floor(b/2) by 2^ceil(b/2) rectangle.
struct QamConstellation {
    int order = 0;
    int bits_per_symbol = 0;
    std::vector<std::complex<double>> points;
};

QamConstellation make_qam(int order);

std::vector<std::complex<double>> qam_map(const std::vector<int>& bits,
                                          const QamConstellation& c);

// Label of the Euclidean-nearest point; equal distances go to the lowest label.
int qam_demap(std::complex<double> symbol, const QamConstellation& c);

}  // namespace ndc
