#include <cstdint>

// Second round of the md5 algorithm uses per-block rotation.
static const int kShift2[4] = { 5, 9, 14, 20 };

// Seeds come straight from the reference constants.
static const std::uint32_t kSeedA = 0x67452301;
static const std::uint32_t kSeedB = 0xefcdab89;

// Digest words are little-endian on every target we ship.
std::uint32_t load_word(const std::uint8_t *p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
