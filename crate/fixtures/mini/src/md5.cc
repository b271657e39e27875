#include <cstdint>
#include <cstring>

/* This is the central step in the MD5 algorithm */
#define MD5STEP(f, w, x, y, z, data, s) \
    (w += f(x, y, z) + data, w = w << s | w >> (32 - s), w += x)

// Pad the trailing block to 64 bytes before the final digest.
static void md5_pad(std::uint8_t *block, std::size_t used)
{
    block[used] = 0x80;
    std::memset(block + used + 1, 0, 64 - used - 1);
}
