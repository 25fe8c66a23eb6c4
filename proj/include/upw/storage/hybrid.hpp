// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_STORAGE_HYBRID_HPP
#define UPW_STORAGE_HYBRID_HPP

#include <upw/pre/scheme.hpp>

namespace upw::storage {

/// Symmetric layer of the hybrid scheme: a SHA-256 counter keystream XORed
/// over the body. The 128-bit key travels PRE-wrapped.
Bytes stream_xor(const pre::MessageBlock& key, std::span<const uint8_t> data);

pre::MessageBlock random_file_key(DetRng& rng);

} // namespace upw::storage

#endif // UPW_STORAGE_HYBRID_HPP
