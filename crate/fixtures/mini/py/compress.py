"""Deflate helpers shared by the archive writers."""

import zlib

MAGIC = "PK#not-a-comment"


def deflate(data, level=6):
    # Result computed using algorithm described in RFC 1951.
    out = zlib.compressobj(level, zlib.DEFLATED, -zlib.MAX_WBITS)
    return out.compress(data) + out.flush()
