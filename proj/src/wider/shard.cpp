// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/wider/shard.hpp>

#include <deque>

namespace upw::wider {

int ShardTree::join()
{
    // breadth-first: the first node with fewer than two children adopts
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int idx = frontier.front();
        frontier.pop_front();
        if (nodes_[idx].children.size() < 2) {
            int child = static_cast<int>(nodes_.size());
            char bit = nodes_[idx].children.empty() ? '0' : '1';
            nodes_.push_back({nodes_[idx].label + bit, idx, {}});
            nodes_[idx].children.push_back(child);
            return child;
        }
        for (int c : nodes_[idx].children) frontier.push_back(c);
    }
    throw std::logic_error("unreachable: tree frontier exhausted");
}

bool ShardTree::label_matches(const std::string& label, const Hash256& account)
{
    for (size_t i = 0; i < label.size(); ++i) {
        int bit = (account[i / 8] >> (7 - i % 8)) & 1;
        if (label[i] != (bit ? '1' : '0')) return false;
    }
    return true;
}

bool ShardTree::hosts(int idx, const Hash256& account) const
{
    const Node& n = nodes_.at(idx);
    if (!label_matches(n.label, account)) return false;
    for (int c : n.children)
        if (label_matches(nodes_[c].label, account)) return false;
    return true;
}

std::vector<int> ShardTree::hosting_nodes(const Hash256& account) const
{
    std::vector<int> out;
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (hosts(static_cast<int>(i), account)) out.push_back(static_cast<int>(i));
    return out;
}

NodeStorage measure_node_storage(const WiderNode& node, const std::string& label)
{
    NodeStorage s;
    for (const Hash256& h : node.store().canonical_chain()) {
        const pow::BlockRecord* rec = node.store().find(h);
        s.main_chain_bytes += pow::BlockHeader::serialized_size + rec->body.size();
    }
    for (const auto& [account, sub] : node.subchains()) {
        if (!ShardTree::label_matches(label, account)) continue;
        ++s.hosted_accounts;
        for (const SubTx& tx : sub.txs) s.subchain_bytes += tx.serialize(node.group()).size();
    }
    s.state_bytes = node.state().byte_size();
    return s;
}

} // namespace upw::wider
