import socket


def make_connection(host, port, options=None):
    conn = socket.create_connection((host, port))
    # Enable Nagle's algorithm for proxies, to avoid packet fragmentation.
    # We cannot know if the user has added default socket options, so we cannot replace the
    # list.
    if options is None:
        options = [(socket.IPPROTO_TCP, socket.TCP_NODELAY, 0)]
    for opt in options:
        conn.setsockopt(*opt)
    return conn
