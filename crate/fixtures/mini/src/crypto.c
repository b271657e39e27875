#include "wifi.h"

/* Fallback encryption algorithm when the access point offers no CCMP. */
static int pick_fallback_cipher(int offered)
{
    if (offered & WPA_CIPHER_CCMP)
        return WPA_CIPHER_CCMP;
    return WPA_CIPHER_TKIP;
}

/* Zero the key schedule before releasing the session. */
void crypto_wipe(uint8_t *buf, int len)
{
    while (len-- > 0)
        buf[len] = 0;
}
