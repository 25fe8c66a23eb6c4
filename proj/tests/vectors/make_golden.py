#!/usr/bin/env python3
# Copyright (c) 2026 The upw developers
# Distributed under the MIT software license, see the accompanying
# file COPYING or http://www.opensource.org/licenses/mit-license.php.
"""Independent generator for the frozen replica-format golden vectors.

Re-derives, with nothing but hashlib, the bytes the encoder must produce
for source 0xA5 at difficulty 1, node id "A", one all-zero block segment.
The hex printed here is frozen into tests/unit/test_encoding.cpp and
tests/acceptance/acceptance.cpp; if the format ever changes on purpose,
regenerate with this script.
"""

import hashlib
import struct


def sha256(b: bytes) -> bytes:
    return hashlib.sha256(b).digest()


def sealed_value(node_id: bytes, block: bytes, index: int, nonce: int, L: int) -> int:
    d = sha256(node_id + block + struct.pack("<Q", index) + struct.pack("<Q", nonce))
    return ((d[30] << 8) | d[31]) & ((1 << L) - 1)


def seal(node_id: bytes, block: bytes, index: int, symbol: int, L: int):
    nonce = 0
    hashes = 0
    while True:
        hashes += 1
        if sealed_value(node_id, block, index, nonce, L) == symbol:
            return nonce, hashes
        nonce += 1


def symbolize(data: bytes, L: int):
    bits = []
    for byte in data:
        for i in range(7, -1, -1):
            bits.append((byte >> i) & 1)
    pad = (-len(bits)) % L
    bits += [0] * pad
    symbols = []
    for i in range(0, len(bits), L):
        v = 0
        for b in bits[i:i + L]:
            v = (v << 1) | b
        symbols.append(v)
    return symbols, pad


def encode_file(source: bytes, L: int, node_id: bytes, block: bytes) -> bytes:
    symbols, pad = symbolize(source, L)
    nonces, total = [], 0
    for i, m in enumerate(symbols):
        nonce, hashes = seal(node_id, block, i, m, L)
        nonces.append(nonce)
        total += hashes

    out = b"UPW1" + bytes([1, 1, L, pad])          # magic, version, sha256, L, pad
    out += struct.pack(">H", len(node_id)) + node_id
    out += struct.pack(">I", 1)                    # one segment
    out += block + struct.pack(">Q", 0)            # (block_hash, first_index)
    out += struct.pack(">Q", len(symbols))
    for nonce in nonces:
        out += struct.pack(">Q", nonce)
    out += sha256(out)                             # trailer
    print(f"# nonces = {nonces}, encode hashes = {total}")
    return out


def main():
    zero_block = bytes(32)
    nonce, hashes = seal(b"A", zero_block, 0, 0, 1)
    print(f"# smallest nonce for a 0-bit at L=1, id 'A', index 0: {nonce} ({hashes} hash)")
    golden = encode_file(b"\xa5", 1, b"A", zero_block)
    print(golden.hex())


if __name__ == "__main__":
    main()
