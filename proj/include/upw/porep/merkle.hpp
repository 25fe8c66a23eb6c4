// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_POREP_MERKLE_HPP
#define UPW_POREP_MERKLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <upw/util/serialize.hpp>
#include <upw/util/sha256.hpp>

namespace upw::porep {

/// Binary Merkle tree over leaf digests. Leaves and interior nodes are
/// domain-separated (0x00 / 0x01 prefix); an odd node is carried up unchanged.
class MerkleTree {
public:
    static Hash256 leaf_hash(std::span<const uint8_t> data);

    explicit MerkleTree(std::vector<Hash256> leaves);

    const Hash256& root() const { return levels_.back().front(); }
    size_t leaf_count() const { return levels_.front().size(); }

    struct PathNode {
        Hash256 sibling;
        bool sibling_on_left;
    };
    using Path = std::vector<PathNode>;

    Path prove(size_t leaf_index) const;

    static bool verify(const Hash256& leaf, size_t leaf_index, const Path& path,
                       const Hash256& root);

private:
    std::vector<std::vector<Hash256>> levels_;
};

} // namespace upw::porep

#endif // UPW_POREP_MERKLE_HPP
