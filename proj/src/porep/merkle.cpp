// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/porep/merkle.hpp>

#include <stdexcept>

namespace upw::porep {

namespace {

Hash256 interior_hash(const Hash256& left, const Hash256& right)
{
    Sha256 h;
    uint8_t tag = 0x01;
    h.update(std::span<const uint8_t>(&tag, 1));
    h.update(std::span<const uint8_t>(left));
    h.update(std::span<const uint8_t>(right));
    return h.finalize();
}

} // namespace

Hash256 MerkleTree::leaf_hash(std::span<const uint8_t> data)
{
    Sha256 h;
    uint8_t tag = 0x00;
    h.update(std::span<const uint8_t>(&tag, 1));
    h.update(data);
    return h.finalize();
}

MerkleTree::MerkleTree(std::vector<Hash256> leaves)
{
    if (leaves.empty()) throw std::invalid_argument("merkle tree needs at least one leaf");
    levels_.push_back(std::move(leaves));
    while (levels_.back().size() > 1) {
        const auto& prev = levels_.back();
        std::vector<Hash256> next;
        next.reserve((prev.size() + 1) / 2);
        for (size_t i = 0; i + 1 < prev.size(); i += 2)
            next.push_back(interior_hash(prev[i], prev[i + 1]));
        if (prev.size() % 2 == 1) next.push_back(prev.back()); // odd node carried up
        levels_.push_back(std::move(next));
    }
}

MerkleTree::Path MerkleTree::prove(size_t leaf_index) const
{
    if (leaf_index >= leaf_count()) throw std::out_of_range("leaf index out of range");
    Path path;
    size_t idx = leaf_index;
    for (size_t level = 0; level + 1 < levels_.size(); ++level) {
        const auto& nodes = levels_[level];
        size_t sibling = idx ^ 1;
        if (sibling < nodes.size())
            path.push_back({nodes[sibling], (sibling & 1) == 0});
        // odd carried-up node has no sibling at this level
        idx /= 2;
    }
    return path;
}

bool MerkleTree::verify(const Hash256& leaf, size_t leaf_index, const Path& path,
                        const Hash256& root)
{
    Hash256 cur = leaf;
    size_t idx = leaf_index;
    for (const PathNode& node : path) {
        cur = node.sibling_on_left ? interior_hash(node.sibling, cur)
                                   : interior_hash(cur, node.sibling);
        idx /= 2;
    }
    (void)idx;
    return cur == root;
}

} // namespace upw::porep
