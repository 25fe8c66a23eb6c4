// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/porep/porep.hpp>

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

namespace upw::porep {

using nlohmann::json;

uint64_t replica_page_count(const enc::ReplicaFile& replica)
{
    return (replica.symbol_count() + kPageNonces - 1) / kPageNonces;
}

Bytes replica_page(const enc::ReplicaFile& replica, uint64_t page_index)
{
    uint64_t begin = page_index * kPageNonces;
    uint64_t end = std::min<uint64_t>(begin + kPageNonces, replica.symbol_count());
    if (begin >= end) throw PorepError("page index out of range");
    ByteWriter w;
    for (uint64_t i = begin; i < end; ++i) w.u64_be(replica.nonces[i]);
    return w.take();
}

MerkleTree replica_tree(const enc::ReplicaFile& replica)
{
    std::vector<Hash256> leaves;
    uint64_t pages = replica_page_count(replica);
    leaves.reserve(pages);
    for (uint64_t p = 0; p < pages; ++p)
        leaves.push_back(MerkleTree::leaf_hash(replica_page(replica, p)));
    return MerkleTree(std::move(leaves));
}

ReplicaCommitment commit(const enc::ReplicaFile& replica, std::span<const uint8_t> source)
{
    if (enc::decode(replica).data != Bytes(source.begin(), source.end()))
        throw PorepError("ReplicaSourceMismatch");
    ReplicaCommitment c;
    c.replica_root = replica_tree(replica).root();
    c.source_digest = sha256(source);
    c.node_id = replica.node_id;
    c.difficulty_L = replica.difficulty_L;
    c.segments = replica.segments;
    return c;
}

Challenge issue_challenge(uint64_t seed, const ReplicaCommitment& commitment,
                          uint64_t symbol_count, uint64_t q, uint64_t deadline_factor_c,
                          uint64_t issued_at)
{
    if (q < 1) throw PorepError("q must be >= 1");
    if (q > symbol_count) throw PorepError("QTooLarge");

    Challenge ch;
    ch.replica_root = commitment.replica_root;
    ch.issued_at = issued_at;
    ch.deadline = deadline_factor_c * q;

    // distinct uniform draws; a fixed seed replays the same index set
    DetRng rng(seed);
    std::vector<uint64_t> picked;
    std::unordered_set<uint64_t> seen;
    picked.reserve(q);
    while (picked.size() < q) {
        uint64_t idx = rng.uniform(symbol_count);
        if (seen.insert(idx).second) picked.push_back(idx);
    }
    ch.indices = std::move(picked);

    ByteWriter w;
    w.raw(commitment.replica_root);
    w.u64_be(seed);
    w.u64_be(q);
    w.u64_be(deadline_factor_c);
    w.u64_be(issued_at);
    ch.challenge_id = sha256(w.bytes());
    return ch;
}

ChallengeProof respond(ProverStorage storage, const enc::ReplicaFile& replica,
                       std::span<const uint8_t> source, const Challenge& challenge)
{
    ChallengeProof proof;
    proof.responder_id = replica.node_id;
    if (storage == ProverStorage::HasNothing) return proof;

    HashMeter seal_meter;
    MerkleTree tree = replica_tree(replica);
    auto [symbols, pad] = enc::symbolize(source, replica.difficulty_L);

    for (uint64_t idx : challenge.indices) {
        ProofEntry entry;
        entry.index = idx;
        uint64_t page_index = idx / kPageNonces;
        entry.page = replica_page(replica, page_index);
        entry.path = tree.prove(page_index);

        if (storage == ProverStorage::HasSourceOnly) {
            // outsourcing attacker: the nonce must be re-derived from the
            // source, costing the full sealing scan per challenged symbol
            entry.nonce = enc::seal_symbol(replica.node_id, replica.active_block(idx), idx,
                                           symbols[idx], replica.difficulty_L, &seal_meter);
        } else {
            entry.nonce = replica.nonces[idx];
        }
        proof.entries.push_back(std::move(entry));
    }
    proof.hash_ops_spent = seal_meter.count;
    return proof;
}

const char* verdict_name(Verdict::Kind k)
{
    switch (k) {
    case Verdict::Kind::Pass: return "pass";
    case Verdict::Kind::BadPath: return "fail(BadPath)";
    case Verdict::Kind::BadSymbol: return "fail(BadSymbol)";
    case Verdict::Kind::DeadlineExceeded: return "fail(DeadlineExceeded)";
    case Verdict::Kind::Empty: return "fail(Empty)";
    }
    return "?";
}

Verdict verify(const ChallengeProof& proof, const Challenge& challenge,
               const ReplicaCommitment& commitment,
               std::span<const uint16_t> original_symbols)
{
    if (proof.entries.size() != challenge.indices.size() ||
        original_symbols.size() != challenge.indices.size() || proof.entries.empty())
        return {Verdict::Kind::Empty};

    for (size_t i = 0; i < proof.entries.size(); ++i) {
        const ProofEntry& e = proof.entries[i];
        if (e.index != challenge.indices[i]) return {Verdict::Kind::BadPath};

        uint64_t page_index = e.index / kPageNonces;
        uint64_t offset = e.index % kPageNonces;
        if (e.page.size() % 8 != 0 || offset * 8 + 8 > e.page.size())
            return {Verdict::Kind::BadPath};
        if (!MerkleTree::verify(MerkleTree::leaf_hash(e.page), page_index, e.path,
                                commitment.replica_root))
            return {Verdict::Kind::BadPath};

        // the nonce claimed must be the one committed in the page
        uint64_t committed = 0;
        for (int b = 0; b < 8; ++b) committed = committed << 8 | e.page[offset * 8 + b];
        if (committed != e.nonce) return {Verdict::Kind::BadSymbol};

        // sealing check against the original symbol
        const Hash256* block = nullptr;
        size_t seg = 0;
        for (size_t s = 1; s < commitment.segments.size() &&
                           commitment.segments[s].first_index <= e.index;
             ++s)
            seg = s;
        block = &commitment.segments[seg].block_hash;
        uint16_t sealed = enc::sealed_value(commitment.node_id, *block, e.index, e.nonce,
                                            commitment.difficulty_L);
        if (sealed != original_symbols[i]) return {Verdict::Kind::BadSymbol};
    }

    if (proof.hash_ops_spent > challenge.deadline) return {Verdict::Kind::DeadlineExceeded};
    return {Verdict::Kind::Pass};
}

bool verify_naive(const enc::ReplicaFile& replica, const ReplicaCommitment& commitment)
{
    return replica_tree(replica).root() == commitment.replica_root;
}

// --- JSON ---

namespace {

json path_to_json(const MerkleTree::Path& path)
{
    json arr = json::array();
    for (const auto& node : path)
        arr.push_back({{"sibling", to_hex(node.sibling)}, {"left", node.sibling_on_left}});
    return arr;
}

MerkleTree::Path path_from_json(const json& arr)
{
    MerkleTree::Path path;
    for (const auto& node : arr)
        path.push_back({hash_from_hex(node.at("sibling")), node.at("left").get<bool>()});
    return path;
}

} // namespace

std::string ReplicaCommitment::to_json() const
{
    json segs = json::array();
    for (const auto& s : segments)
        segs.push_back({{"block_hash", to_hex(s.block_hash)}, {"first_index", s.first_index}});
    json j{{"replica_root", to_hex(replica_root)},
           {"source_digest", to_hex(source_digest)},
           {"node_id", to_hex(node_id)},
           {"difficulty_l", difficulty_L},
           {"segments", segs}};
    return j.dump();
}

ReplicaCommitment ReplicaCommitment::from_json(const std::string& s)
{
    json j = json::parse(s);
    ReplicaCommitment c;
    c.replica_root = hash_from_hex(j.at("replica_root"));
    c.source_digest = hash_from_hex(j.at("source_digest"));
    c.node_id = from_hex(j.at("node_id"));
    c.difficulty_L = j.at("difficulty_l").get<uint8_t>();
    for (const auto& seg : j.at("segments"))
        c.segments.push_back({hash_from_hex(seg.at("block_hash")), seg.at("first_index")});
    return c;
}

std::string Challenge::to_json() const
{
    json j{{"challenge_id", to_hex(challenge_id)},
           {"replica_root", to_hex(replica_root)},
           {"indices", indices},
           {"issued_at", issued_at},
           {"deadline", deadline}};
    return j.dump();
}

Challenge Challenge::from_json(const std::string& s)
{
    json j = json::parse(s);
    Challenge c;
    c.challenge_id = hash_from_hex(j.at("challenge_id"));
    c.replica_root = hash_from_hex(j.at("replica_root"));
    c.indices = j.at("indices").get<std::vector<uint64_t>>();
    c.issued_at = j.at("issued_at").get<uint64_t>();
    c.deadline = j.at("deadline").get<uint64_t>();
    return c;
}

std::string ChallengeProof::to_json() const
{
    json arr = json::array();
    for (const auto& e : entries)
        arr.push_back({{"index", e.index},
                       {"nonce", e.nonce},
                       {"page", to_hex(e.page)},
                       {"path", path_to_json(e.path)}});
    json j{{"responder_id", to_hex(responder_id)},
           {"entries", arr},
           {"hash_ops_spent", hash_ops_spent}};
    return j.dump();
}

ChallengeProof ChallengeProof::from_json(const std::string& s)
{
    json j = json::parse(s);
    ChallengeProof p;
    p.responder_id = from_hex(j.at("responder_id"));
    for (const auto& e : j.at("entries")) {
        ProofEntry entry;
        entry.index = e.at("index").get<uint64_t>();
        entry.nonce = e.at("nonce").get<uint64_t>();
        entry.page = from_hex(e.at("page"));
        entry.path = path_from_json(e.at("path"));
        p.entries.push_back(std::move(entry));
    }
    p.hash_ops_spent = j.at("hash_ops_spent").get<uint64_t>();
    return p;
}

} // namespace upw::porep
