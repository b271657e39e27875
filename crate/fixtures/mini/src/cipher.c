#include <stdint.h>

void tea_encrypt(uint32_t v[2], const uint32_t key[4]);

// Based on the XTEA algorithm.
uint32_t cipher_block(uint32_t block, const uint32_t key[4])
{
    uint32_t v[2] = { block, 0 };
    tea_encrypt(v, key);
    return v[0] ^ v[1];
}

// Rotate left; most compilers turn this into one instruction.
static uint32_t rotl(uint32_t x, int r)
{
    return (x << r) | (x >> (32 - r));
}
