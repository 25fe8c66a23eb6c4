// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_WIDER_SHARD_HPP
#define UPW_WIDER_SHARD_HPP

#include <upw/wider/chain.hpp>

namespace upw::wider {

/// Tree of sharding nodes. Each node carries a bit-prefix group label over
/// the account-id space; a child extends its parent's label by one bit and
/// so hosts half of the parent's keyspace. A node effectively hosts the
/// accounts matching its own label minus those matching a child's.
class ShardTree {
public:
    struct Node {
        std::string label; // '0'/'1' string, "" = whole space
        int parent = -1;
        std::vector<int> children;
    };

    ShardTree() { nodes_.push_back({"", -1, {}}); }

    /// Appends a node as the outer leaf: first tree node (breadth-first)
    /// with a free child slot. Returns the new node index.
    int join();

    const Node& node(int idx) const { return nodes_.at(idx); }
    size_t size() const { return nodes_.size(); }

    static bool label_matches(const std::string& label, const Hash256& account);

    /// True when this node is responsible for the account right now.
    bool hosts(int idx, const Hash256& account) const;

    /// All node indices hosting the account (exactly one in a valid tree).
    std::vector<int> hosting_nodes(const Hash256& account) const;

private:
    std::vector<Node> nodes_;
};

/// Disk footprint of a sharding node with group label `label`: the full
/// main chain, the hosted subchains, and the full latest global state.
struct NodeStorage {
    uint64_t main_chain_bytes = 0;
    uint64_t subchain_bytes = 0;
    uint64_t state_bytes = 0;
    uint64_t hosted_accounts = 0;

    uint64_t total() const { return main_chain_bytes + subchain_bytes + state_bytes; }
};

NodeStorage measure_node_storage(const WiderNode& node, const std::string& label);

} // namespace upw::wider

#endif // UPW_WIDER_SHARD_HPP
