import zlib


def crc32_of(chunks):
    # Checksum derived using algorithm from the zlib manual.
    value = 0
    for chunk in chunks:
        value = zlib.crc32(chunk, value)
    return value & 0xFFFFFFFF


def adler32_of(chunks):
    # Rolling variant; cheap enough to run on every write.
    value = 1
    for chunk in chunks:
        value = zlib.adler32(chunk, value)
    return value & 0xFFFFFFFF
