// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/pow/chain.hpp>

#include <fstream>

#include <json.hpp>

namespace upw::pow {

U256 retarget(std::span<const BlockHeader> history, const DifficultyParams& params)
{
    params.validate();
    if (history.size() != params.retarget_interval)
        throw std::invalid_argument("retarget: insufficient history");
    for (size_t i = 1; i < history.size(); ++i)
        if (history[i].timestamp < history[i - 1].timestamp)
            throw std::invalid_argument("retarget: timestamps not monotone");

    uint64_t expected = uint64_t(params.retarget_interval) * params.target_spacing;
    uint64_t actual = history.back().timestamp - history.front().timestamp;
    if (actual < expected / 4) actual = expected / 4;
    if (actual > expected * 4) actual = expected * 4;

    U256 next = U256::from_compact(history.back().bits).mul_div(actual, expected);
    if (next > params.initial_target) next = params.initial_target;
    return next;
}

const char* reject_reason_name(RejectReason r)
{
    switch (r) {
    case RejectReason::BadPow: return "BadPow";
    case RejectReason::UnknownParent: return "UnknownParent";
    case RejectReason::DuplicateBlock: return "DuplicateBlock";
    case RejectReason::BadBody: return "BadBody";
    case RejectReason::BadTarget: return "BadTarget";
    }
    return "?";
}

ChainStore::ChainStore(DifficultyParams params, uint64_t genesis_timestamp, Bytes genesis_body)
    : params_(params)
{
    params_.validate();
    BlockHeader g;
    g.prev_hash = Hash256{};
    g.merkle_root = body_merkle_root(genesis_body);
    g.timestamp = genesis_timestamp;
    g.bits = params_.initial_target.to_compact();
    genesis_ = g.hash();
    canonical_ = genesis_;
    blocks_.emplace(genesis_, BlockRecord{g, std::move(genesis_body), 0});
    insertion_order_.push_back(genesis_);
    tips_.insert(genesis_);
}

const BlockRecord* ChainStore::find(const Hash256& hash) const
{
    auto it = blocks_.find(hash);
    return it == blocks_.end() ? nullptr : &it->second;
}

uint32_t ChainStore::expected_bits(const Hash256& parent) const
{
    const BlockRecord* rec = find(parent);
    if (!rec) throw std::invalid_argument("expected_bits: unknown parent");
    uint64_t child_height = rec->height + 1;
    if (child_height % params_.retarget_interval != 0)
        return rec->header.bits;

    std::vector<BlockHeader> history(params_.retarget_interval);
    Hash256 cur = parent;
    for (size_t i = params_.retarget_interval; i-- > 0;) {
        const BlockRecord& r = blocks_.at(cur);
        history[i] = r.header;
        cur = r.header.prev_hash;
    }
    return retarget(history, params_).to_compact();
}

AcceptResult ChainStore::accept(const BlockHeader& header, Bytes body)
{
    const Hash256 hash = header.hash();
    if (blocks_.count(hash))
        return {AcceptResult::Kind::Rejected, 0, RejectReason::DuplicateBlock};
    const BlockRecord* parent = find(header.prev_hash);
    if (!parent)
        return {AcceptResult::Kind::Rejected, 0, RejectReason::UnknownParent};
    if (body_merkle_root(body) != header.merkle_root)
        return {AcceptResult::Kind::Rejected, 0, RejectReason::BadBody};
    if (header.bits != expected_bits(header.prev_hash))
        return {AcceptResult::Kind::Rejected, 0, RejectReason::BadTarget};
    if (!header.pow_ok())
        return {AcceptResult::Kind::Rejected, 0, RejectReason::BadPow};

    uint64_t height = parent->height + 1;
    blocks_.emplace(hash, BlockRecord{header, std::move(body), height});
    insertion_order_.push_back(hash);
    tips_.erase(header.prev_hash);
    tips_.insert(hash);

    if (header.prev_hash == canonical_) {
        canonical_ = hash;
        return {AcceptResult::Kind::ExtendedCanonical, 0, {}};
    }
    if (height > canonical_height()) {
        // a side branch overtook the canonical chain
        Hash256 ancestor = fork_ancestor(canonical_, hash);
        uint64_t depth = canonical_height() - blocks_.at(ancestor).height;
        canonical_ = hash;
        return {AcceptResult::Kind::Reorg, depth, {}};
    }
    // equal or lower height: first-seen canonical tip stays
    return {AcceptResult::Kind::NewFork, 0, {}};
}

Hash256 ChainStore::fork_ancestor(Hash256 a, Hash256 b) const
{
    while (blocks_.at(a).height > blocks_.at(b).height) a = blocks_.at(a).header.prev_hash;
    while (blocks_.at(b).height > blocks_.at(a).height) b = blocks_.at(b).header.prev_hash;
    while (a != b) {
        a = blocks_.at(a).header.prev_hash;
        b = blocks_.at(b).header.prev_hash;
    }
    return a;
}

std::vector<Hash256> ChainStore::chain_to(const Hash256& tip) const
{
    std::vector<Hash256> out;
    Hash256 cur = tip;
    for (;;) {
        out.push_back(cur);
        if (cur == genesis_) break;
        cur = blocks_.at(cur).header.prev_hash;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void ChainStore::save(const std::filesystem::path& dir) const
{
    std::filesystem::create_directories(dir);
    std::ofstream blocks(dir / "blocks.dat", std::ios::binary | std::ios::trunc);
    for (const Hash256& h : insertion_order_) {
        const BlockRecord& rec = blocks_.at(h);
        Bytes hdr = rec.header.serialize();
        ByteWriter w;
        w.u32_le(static_cast<uint32_t>(hdr.size() + rec.body.size()));
        w.raw(hdr);
        w.raw(rec.body);
        const Bytes& buf = w.bytes();
        blocks.write(reinterpret_cast<const char*>(buf.data()), buf.size());
    }
    blocks.close();

    nlohmann::json manifest;
    manifest["magic"] = "upw-chain";
    manifest["hash_alg"] = "sha256";
    manifest["canonical"] = to_hex(canonical_);
    manifest["height"] = canonical_height();
    std::vector<std::string> tips;
    for (const Hash256& t : tips_) tips.push_back(to_hex(t));
    manifest["tips"] = tips;
    std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
}

ChainStore ChainStore::load(const std::filesystem::path& dir, DifficultyParams params)
{
    std::ifstream in(dir / "blocks.dat", std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + (dir / "blocks.dat").string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ByteReader r(data);

    std::optional<ChainStore> store;
    while (!r.done()) {
        uint32_t len = r.u32_le();
        Bytes rec = r.raw(len);
        ByteReader rr(rec);
        BlockHeader header = BlockHeader::deserialize(rr);
        Bytes body = rr.raw(rr.remaining());
        if (!store) {
            store.emplace(params, header.timestamp, std::move(body));
            if (store->genesis_hash() != header.hash())
                throw std::runtime_error("genesis mismatch on load");
        } else {
            AcceptResult res = store->accept(header, std::move(body));
            if (!res.accepted())
                throw std::runtime_error(std::string("load: block rejected: ") +
                                         reject_reason_name(res.reason));
        }
    }
    if (!store) throw std::runtime_error("empty block file");

    std::ifstream mf(dir / "manifest.json");
    if (mf) {
        nlohmann::json manifest = nlohmann::json::parse(mf);
        if (manifest.value("canonical", "") != to_hex(store->canonical_tip()))
            throw std::runtime_error("manifest canonical tip mismatch");
    }
    return std::move(*store);
}

} // namespace upw::pow
