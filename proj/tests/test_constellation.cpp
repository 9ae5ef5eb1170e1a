#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <vector>

#include "ndc/constellation.hpp"

using ndc::make_qam;
using ndc::qam_demap;
using ndc::qam_map;

namespace {

std::vector<int> label_bits(int v, int width) {
    std::vector<int> bits(width);
    for (int b = 0; b < width; ++b) bits[b] = (v >> (width - 1 - b)) & 1;
    return bits;
}

}  // namespace

TEST_CASE("average symbol energy is one") {
    for (int m : {4, 8, 16, 32, 64, 128, 8192}) {
        const auto c = make_qam(m);
        double e = 0.0;
        for (const auto& p : c.points) e += std::norm(p);
        CHECK(e / m == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("four point layout") {
    const auto c = make_qam(4);
    const double d = std::sqrt(0.5);
    CHECK(c.bits_per_symbol == 2);
    CHECK(c.points[0].real() == doctest::Approx(-d).epsilon(1e-14));
    CHECK(c.points[0].imag() == doctest::Approx(-d).epsilon(1e-14));
    std::set<std::pair<int, int>> quadrants;
    for (const auto& p : c.points)
        quadrants.insert({p.real() > 0 ? 1 : -1, p.imag() > 0 ? 1 : -1});
    CHECK(quadrants.size() == 4);
}

TEST_CASE("eight points form a two by four rectangle") {
    const auto c = make_qam(8);
    std::set<double> re, im;
    for (const auto& p : c.points) {
        re.insert(std::round(p.real() * 1e12) / 1e12);
        im.insert(std::round(p.imag() * 1e12) / 1e12);
    }
    CHECK(re.size() == 2);
    CHECK(im.size() == 4);
}

TEST_CASE("map and demap round trip every label") {
    for (int m : {4, 8, 16, 32, 128}) {
        const auto c = make_qam(m);
        for (int v = 0; v < m; ++v) {
            const auto pts = qam_map(label_bits(v, c.bits_per_symbol), c);
            REQUIRE(pts.size() == 1);
            CHECK(qam_demap(pts[0], c) == v);
        }
    }
}

TEST_CASE("nearest neighbours along the grid differ in one label bit") {
    for (int m : {4, 8, 16, 32}) {
        const auto c = make_qam(m);
        double dmin = 1e9;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                dmin = std::min(dmin, std::abs(c.points[a] - c.points[b]));
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (std::abs(c.points[a] - c.points[b]) > dmin * 1.001) continue;
                const int diff = a ^ b;
                CHECK((diff & (diff - 1)) == 0);
                CHECK(diff != 0);
            }
    }
}

TEST_CASE("perturbations below half the spacing keep the label") {
    const auto c = make_qam(16);
    double dmin = 1e9;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b)
            dmin = std::min(dmin, std::abs(c.points[a] - c.points[b]));
    const double r = 0.45 * dmin;
    for (int v = 0; v < 16; ++v) {
        CHECK(qam_demap(c.points[v] + std::complex<double>(r, 0.0), c) == v);
        CHECK(qam_demap(c.points[v] + std::complex<double>(0.0, -r), c) == v);
    }
}

TEST_CASE("equidistant symbol resolves to the lowest label") {
    const auto c = make_qam(4);
    CHECK(qam_demap({0.0, 0.0}, c) == 0);
}

TEST_CASE("invalid orders are rejected") {
    CHECK_THROWS_AS(make_qam(2), std::domain_error);
    CHECK_THROWS_AS(make_qam(12), std::domain_error);
    CHECK_THROWS_AS(make_qam(0), std::domain_error);
    const auto c = make_qam(4);
    CHECK_THROWS_AS(qam_map({0, 1, 0}, c), std::invalid_argument);
}
