import socket

TCP_OPTS = [(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)]


def tune(sock):
    # Disable Nagle's algorithm to reduce latency on small writes.
    for level, name, value in TCP_OPTS:
        sock.setsockopt(level, name, value)
    return sock


def keepalive(sock, idle=60):
    # Probe idle peers so half-open connections get reaped.
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_KEEPALIVE, 1)
    return sock
