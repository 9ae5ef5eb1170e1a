#include "ndc/rng.hpp"

#include <cmath>

namespace ndc {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
}  // namespace

Philox::Block Philox::encrypt(Block c, Key k) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
        const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
        const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t purpose,
                           std::uint32_t frame, std::uint32_t point)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      prefix_{0, purpose, frame, point} {}

std::uint32_t RandomStream::next_u32() {
    if (word_ == 4) {
        Philox::Block ctr = prefix_;
        ctr[0] = block_++;
        buffer_ = Philox::encrypt(ctr, key_);
        word_ = 0;
    }
    return buffer_[word_++];
}

double RandomStream::next_unit() {
    return (double(next_u32()) + 1.0) * 0x1p-32;
}

double RandomStream::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_gauss_;
    }
    const double u1 = next_unit();
    const double u2 = double(next_u32()) * 0x1p-32;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_gauss_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

int RandomStream::next_bit() {
    if (bits_left_ == 0) {
        bit_buffer_ = next_u32();
        bits_left_ = 32;
    }
    const int b = int(bit_buffer_ & 1u);
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
}

}  // namespace ndc
