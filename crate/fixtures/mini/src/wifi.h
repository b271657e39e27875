#ifndef WIFI_H
#define WIFI_H

#include <stdint.h>

/*Encryption Algorithm for Unicast Packet */
#define WPA_CIPHER_TKIP 2
#define WPA_CIPHER_CCMP 4

/* Key lengths in bytes for the supported ciphers. */
#define TKIP_KEY_LEN 32
#define CCMP_KEY_LEN 16

uint8_t wifi_cipher_for_key(const uint8_t *key, int len);

#endif
