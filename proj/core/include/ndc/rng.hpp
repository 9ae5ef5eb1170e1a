#pragma once

#include <array>
#include <cstdint>

namespace ndc {

// Philox 4x32-10 counter-based generator. Output is a pure function of
// (key, counter), so every frame, sweep point and draw purpose can be
// addressed directly and results never depend on thread scheduling.
struct Philox {
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block encrypt(Block counter, Key key);
};

// Purpose tags place logically distinct draw kinds in disjoint counter
// subspaces of the same master seed.
namespace stream_purpose {
inline constexpr std::uint32_t data_bits = 1;
inline constexpr std::uint32_t index_bits = 2;
inline constexpr std::uint32_t noise = 3;
inline constexpr std::uint32_t oracle_signal = 5;
inline constexpr std::uint32_t oracle_noise = 6;
}  // namespace stream_purpose

// Sentinel point id used for calibration frames so they never collide with
// measurement frames of any sweep point.
inline constexpr std::uint32_t calibration_point = 0xFFFFFFFFu;

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t purpose, std::uint32_t frame,
                 std::uint32_t point);

    std::uint32_t next_u32();
    double next_unit();      // uniform on (0, 1]
    double next_gaussian();  // standard normal, Box-Muller partner cached
    int next_bit();          // one bit at a time, 32 per consumed word

private:
    Philox::Key key_;
    Philox::Block prefix_;
    Philox::Block buffer_{};
    std::uint32_t block_ = 0;
    int word_ = 4;
    std::uint32_t bit_buffer_ = 0;
    int bits_left_ = 0;
    double spare_gauss_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ndc
