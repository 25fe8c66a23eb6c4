// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/storage/sim.hpp>

#include <fstream>

#include <json.hpp>

namespace upw::storage {

using nlohmann::json;

std::string SimConfig::to_json() const
{
    json j{{"seed", seed},
           {"nodes", nodes},
           {"providers", providers},
           {"verifiers", verifiers},
           {"difficulty_L", difficulty_L},
           {"q", q},
           {"deadline_factor_c", deadline_factor_c},
           {"price_per_byte_epoch", {{"num", price_per_byte_epoch.num},
                                     {"den", price_per_byte_epoch.den}}},
           {"verifier_reward", verifier_reward},
           {"epochs", epochs},
           {"epoch_secs", epoch_secs},
           {"chunk_size", chunk_size},
           {"heartbeat_miss_limit", heartbeat_miss_limit},
           {"cheater_profiles", cheater_profiles},
           {"replication", replication},
           {"prepay", prepay},
           {"file_bytes", file_bytes}};
    return j.dump(2);
}

SimConfig SimConfig::from_json(const std::string& s)
{
    json j = json::parse(s);
    SimConfig c;
    c.seed = j.value("seed", c.seed);
    c.nodes = j.value("nodes", c.nodes);
    c.providers = j.value("providers", c.providers);
    c.verifiers = j.value("verifiers", c.verifiers);
    c.difficulty_L = j.value("difficulty_L", c.difficulty_L);
    c.q = j.value("q", c.q);
    c.deadline_factor_c = j.value("deadline_factor_c", c.deadline_factor_c);
    if (j.contains("price_per_byte_epoch")) {
        c.price_per_byte_epoch.num = j["price_per_byte_epoch"].value("num", 1);
        c.price_per_byte_epoch.den = j["price_per_byte_epoch"].value("den", 1);
    }
    c.verifier_reward = j.value("verifier_reward", c.verifier_reward);
    c.epochs = j.value("epochs", c.epochs);
    c.epoch_secs = j.value("epoch_secs", c.epoch_secs);
    c.chunk_size = j.value("chunk_size", c.chunk_size);
    c.heartbeat_miss_limit = j.value("heartbeat_miss_limit", c.heartbeat_miss_limit);
    if (j.contains("cheater_profiles"))
        c.cheater_profiles =
            j["cheater_profiles"].get<std::map<std::string, std::string>>();
    c.replication = j.value("replication", c.replication);
    c.prepay = j.value("prepay", c.prepay);
    c.file_bytes = j.value("file_bytes", c.file_bytes);
    return c;
}

Hash256 FileSpaceState::head() const
{
    Sha256 h;
    ByteWriter w;
    w.u64_be(version);
    h.update(w.bytes());
    for (const auto& [path, entry] : files) {
        h.update(path);
        h.update(std::string(1, '\0'));
        for (const Hash256& c : entry.chunks) h.update(std::span<const uint8_t>(c));
        ByteWriter sz;
        sz.u64_be(entry.size);
        h.update(sz.bytes());
    }
    return h.finalize();
}

Bytes UserOp::signing_payload(const std::string& user, uint64_t next_version) const
{
    ByteWriter w;
    w.str(user);
    w.u8(static_cast<uint8_t>(kind));
    w.u64_be(next_version);
    w.str(path);
    w.u8(0);
    w.str(new_path);
    w.u8(0);
    w.raw(sha256(data));
    return w.take();
}

StorageSim::StorageSim(SimConfig cfg)
    : cfg_(cfg), rng_(cfg.seed), pre_scheme_(crypto::Group::production())
{
    for (uint32_t i = 0; i < cfg_.nodes; ++i) nodes_.push_back("node-" + std::to_string(i));
    for (uint32_t i = 0; i < cfg_.providers; ++i) {
        Provider p;
        p.name = "provider-" + std::to_string(i);
        auto it = cfg_.cheater_profiles.find(p.name);
        if (it != cfg_.cheater_profiles.end()) {
            if (it->second == "source-only") p.profile = ProviderProfile::SourceOnly;
            else if (it->second == "nothing") p.profile = ProviderProfile::Nothing;
            else throw SimError("unknown cheater profile: " + it->second);
        }
        providers_.push_back(std::move(p));
    }
    for (uint32_t i = 0; i < cfg_.verifiers; ++i)
        verifiers_.push_back("verifier-" + std::to_string(i));
    log_event("sim_start", json{{"nodes", cfg_.nodes},
                                {"providers", cfg_.providers},
                                {"verifiers", cfg_.verifiers}}
                               .dump());
}

void StorageSim::log_event(const std::string& kind, const std::string& fields_json)
{
    json j = json::parse(fields_json);
    j["t"] = now_;
    j["seq"] = event_seq_++;
    j["event"] = kind;
    events_ += j.dump();
    events_ += '\n';
    if (!ledger_.conserved()) throw SimError("ledger conservation broken at event " + kind);
}

StorageSim::Provider* StorageSim::find_provider(const std::string& name)
{
    for (Provider& p : providers_)
        if (p.name == name) return &p;
    return nullptr;
}

const StorageSim::Provider* StorageSim::find_provider(const std::string& name) const
{
    for (const Provider& p : providers_)
        if (p.name == name) return &p;
    return nullptr;
}

StorageSim::User& StorageSim::user_ref(const std::string& name)
{
    auto it = users_.find(name);
    if (it == users_.end()) throw SimError("unknown user: " + name);
    return it->second;
}

StorageContractRecord& StorageSim::setup(const std::string& user, uint32_t replication_count,
                                         uint64_t prepay)
{
    if (nodes_.empty()) throw SimError("NoNodesRegistered");
    if (prepay == 0) throw SimError("InsufficientPrepay");
    if (replication_count < 1 || replication_count > providers_.size())
        throw SimError("replication count out of range");
    if (users_.count(user)) throw SimError("user already set up");

    User u{user,
           crypto::keygen(pre_scheme_.group(), rng_),
           pre_scheme_.keygen(rng_),
           {},
           {},
           {},
           rng_.fork(users_.size() + 1)};
    u.record.user_id = user;
    u.record.replication_count = replication_count;
    // deterministic, seeded choice: one primary plus replication-1 backups
    if (replication_count > nodes_.size())
        throw SimError("not enough nodes for the requested redundancy");
    uint64_t start = rng_.uniform(nodes_.size());
    u.record.primary_node = nodes_[start];
    for (size_t i = 1; i < replication_count; ++i)
        u.record.backup_nodes.push_back(nodes_[(start + i) % nodes_.size()]);
    u.record.storage_start_time = now_;
    u.record.last_payment_time = now_;

    ledger_.mint(user, prepay, now_, "user deposit");
    if (!ledger_.transfer(user, escrow_of(user), prepay, now_, "prepay"))
        throw SimError("prepay transfer failed");
    u.record.prepaid_balance = prepay;

    auto [it, inserted] = users_.emplace(user, std::move(u));
    log_event("setup", json{{"user", user},
                            {"primary", it->second.record.primary_node},
                            {"backups", it->second.record.backup_nodes},
                            {"replication", replication_count},
                            {"prepay", prepay}}
                           .dump());
    return it->second.record;
}

void StorageSim::seal_for_provider(StoredChunk& chunk, Provider& prov)
{
    enc::EncodingParams params{cfg_.difficulty_L, to_bytes(prov.name),
                               enc::BindingMode::StaticBlock};
    // the active chain block the sealing binds to; one per replication event
    enc::Segment feed{sha256("chain-block-" + std::to_string(event_seq_)), 0};
    enc::EncodeResult sealed = enc::encode(chunk.data, params, {&feed, 1}, &prov.seal_meter);

    ChunkReplica rep;
    rep.provider = prov.name;
    rep.replica = std::move(sealed.replica);
    rep.commitment = porep::commit(rep.replica, chunk.data);
    chunk.replicas.push_back(std::move(rep));

    log_event("replicated", json{{"chunk", to_hex(chunk.digest)},
                                 {"provider", prov.name},
                                 {"hash_ops", sealed.hash_count},
                                 {"root", to_hex(chunk.replicas.back().commitment.replica_root)}}
                                .dump());
}

void StorageSim::assign_and_replicate(const Hash256& chunk_digest, uint32_t replication,
                                      const std::string& owner)
{
    StoredChunk& chunk = chunks_.at(chunk_digest);
    (void)owner;
    uint32_t placed = 0;
    for (Provider& prov : providers_) {
        if (placed >= replication) break;
        if (prov.paused) continue;
        bool holds = false;
        for (const ChunkReplica& rep : chunk.replicas)
            if (rep.provider == prov.name && rep.valid) holds = true;
        if (holds) continue;
        seal_for_provider(chunk, prov);
        ++placed;
    }
    if (placed < replication) throw SimError("not enough providers for replication");
}

uint64_t StorageSim::apply_user_op(const std::string& user, const UserOp& op,
                                   const crypto::Signature& sig)
{
    User& u = user_ref(user);
    if (u.record.suspended) throw SimError("service suspended");
    Bytes payload = op.signing_payload(user, u.filespace.version + 1);
    if (!crypto::verify_sig(pre_scheme_.group(), u.sign_keys.pk, payload, sig))
        throw SimError("BadSignature");

    switch (op.kind) {
    case UserOp::Kind::Upload: {
        FileSpaceState::Entry entry;
        entry.size = op.data.size();
        std::vector<pre::PreCiphertext> wraps;
        for (size_t off = 0; off < op.data.size(); off += cfg_.chunk_size) {
            size_t n = std::min<size_t>(cfg_.chunk_size, op.data.size() - off);
            pre::MessageBlock key = random_file_key(u.rng);
            Bytes cipher = stream_xor(
                key, std::span<const uint8_t>(op.data.data() + off, n));
            Hash256 digest = sha256(cipher);
            wraps.push_back(pre_scheme_.encrypt(u.pre_keys.sk, key, u.rng));
            entry.chunks.push_back(digest);
            chunks_.emplace(digest, StoredChunk{digest, std::move(cipher), user, {}});
        }
        u.filespace.files[op.path] = entry;
        u.wraps[op.path] = std::move(wraps);
        u.record.data_size += entry.size;
        ++u.filespace.version;
        log_event("user_op", json{{"user", user},
                                  {"op", "upload"},
                                  {"path", op.path},
                                  {"bytes", entry.size},
                                  {"chunks", entry.chunks.size()},
                                  {"version", u.filespace.version},
                                  {"state_head", to_hex(u.filespace.head())}}
                                 .dump());
        for (const Hash256& digest : u.filespace.files[op.path].chunks)
            assign_and_replicate(digest, u.record.replication_count, user);
        return u.filespace.version;
    }
    case UserOp::Kind::Rename: {
        auto it = u.filespace.files.find(op.path);
        if (it == u.filespace.files.end()) throw SimError("UnknownPath");
        u.filespace.files[op.new_path] = it->second;
        u.filespace.files.erase(it);
        auto wit = u.wraps.find(op.path);
        if (wit != u.wraps.end()) {
            u.wraps[op.new_path] = std::move(wit->second);
            u.wraps.erase(wit);
        }
        ++u.filespace.version;
        log_event("user_op", json{{"user", user},
                                  {"op", "rename"},
                                  {"path", op.path},
                                  {"new_path", op.new_path},
                                  {"version", u.filespace.version},
                                  {"state_head", to_hex(u.filespace.head())}}
                                 .dump());
        return u.filespace.version;
    }
    case UserOp::Kind::Remove: {
        auto it = u.filespace.files.find(op.path);
        if (it == u.filespace.files.end()) throw SimError("UnknownPath");
        u.record.data_size -= it->second.size;
        for (const Hash256& digest : it->second.chunks) chunks_.erase(digest);
        u.filespace.files.erase(it);
        u.wraps.erase(op.path);
        ++u.filespace.version;
        log_event("user_op", json{{"user", user},
                                  {"op", "remove"},
                                  {"path", op.path},
                                  {"version", u.filespace.version},
                                  {"state_head", to_hex(u.filespace.head())}}
                                 .dump());
        return u.filespace.version;
    }
    }
    throw SimError("unreachable");
}

namespace {

crypto::Signature sign_op(const crypto::Group& group, const crypto::KeyPair& keys,
                          const std::string& user, const UserOp& op, uint64_t next_version)
{
    return crypto::sign(group, keys.sk, op.signing_payload(user, next_version));
}

} // namespace

uint64_t StorageSim::upload(const std::string& user, const std::string& path,
                            const Bytes& plaintext)
{
    User& u = user_ref(user);
    UserOp op{UserOp::Kind::Upload, path, "", plaintext};
    return apply_user_op(user, op,
                         sign_op(pre_scheme_.group(), u.sign_keys, user, op,
                                 u.filespace.version + 1));
}

uint64_t StorageSim::rename(const std::string& user, const std::string& old_path,
                            const std::string& new_path)
{
    User& u = user_ref(user);
    UserOp op{UserOp::Kind::Rename, old_path, new_path, {}};
    return apply_user_op(user, op,
                         sign_op(pre_scheme_.group(), u.sign_keys, user, op,
                                 u.filespace.version + 1));
}

uint64_t StorageSim::remove(const std::string& user, const std::string& path)
{
    User& u = user_ref(user);
    UserOp op{UserOp::Kind::Remove, path, "", {}};
    return apply_user_op(user, op,
                         sign_op(pre_scheme_.group(), u.sign_keys, user, op,
                                 u.filespace.version + 1));
}

bool StorageSim::run_one_challenge(StoredChunk& chunk, ChunkReplica& rep,
                                   const std::string& verifier)
{
    Provider* prov = find_provider(rep.provider);
    if (!prov || prov->paused) return true;

    uint64_t seed = rng_.next_u64();
    porep::Challenge ch = porep::issue_challenge(seed, rep.commitment,
                                                 rep.replica.symbol_count(), cfg_.q,
                                                 cfg_.deadline_factor_c, now_);

    porep::ProverStorage storage = porep::ProverStorage::HasReplica;
    if (prov->profile == ProviderProfile::SourceOnly)
        storage = porep::ProverStorage::HasSourceOnly;
    else if (prov->profile == ProviderProfile::Nothing)
        storage = porep::ProverStorage::HasNothing;

    porep::ChallengeProof proof = porep::respond(storage, rep.replica, chunk.data, ch);
    prov->seal_meter.count += proof.hash_ops_spent;

    // the verifier holds the original symbols at the challenged indices
    auto [symbols, pad] = enc::symbolize(chunk.data, rep.replica.difficulty_L);
    std::vector<uint16_t> originals;
    for (uint64_t idx : ch.indices) originals.push_back(symbols[idx]);

    porep::Verdict v = porep::verify(proof, ch, rep.commitment, originals);
    verdicts_csv_ += std::to_string(epoch_) + "," + to_hex(chunk.digest).substr(0, 16) + "," +
                     rep.provider + "," + porep::verdict_name(v.kind) + "," +
                     std::to_string(proof.hash_ops_spent) + "," + std::to_string(ch.deadline) +
                     "\n";
    log_event("challenge", json{{"chunk", to_hex(chunk.digest)},
                                {"provider", rep.provider},
                                {"verifier", verifier},
                                {"verdict", porep::verdict_name(v.kind)},
                                {"hash_ops_spent", proof.hash_ops_spent},
                                {"deadline", ch.deadline}}
                               .dump());
    if (v.pass()) return true;

    // the verifier disputes; the primary rechecks before acting
    porep::Verdict recheck = porep::verify(proof, ch, rep.commitment, originals);
    if (recheck.pass()) return true; // false alarm

    const std::string provider_name = rep.provider;
    const std::string owner = chunk.owner;
    bool rewarded = ledger_.transfer(escrow_of(owner), verifier, cfg_.verifier_reward, now_,
                                     "verifier reward");
    if (rewarded) {
        User& u = user_ref(owner);
        u.record.prepaid_balance = ledger_.balance(escrow_of(owner));
    }
    log_event("provider_paused", json{{"provider", provider_name},
                                      {"chunk", to_hex(chunk.digest)},
                                      {"verifier", verifier},
                                      {"rewarded", rewarded}}
                                     .dump());
    pause_and_transfer_duties(provider_name);
    return false;
}

void StorageSim::pause_and_transfer_duties(const std::string& provider)
{
    Provider* prov = find_provider(provider);
    if (!prov) throw SimError("unknown provider");
    prov->paused = true;
    for (auto& [digest, chunk] : chunks_) {
        bool held = false;
        for (ChunkReplica& rep : chunk.replicas) {
            if (rep.provider == provider && rep.valid) {
                rep.valid = false;
                held = true;
            }
        }
        if (held) reassign_chunk(chunk, provider);
    }
}

void StorageSim::reassign_chunk(StoredChunk& chunk, std::string failed_provider)
{
    for (Provider& prov : providers_) {
        if (prov.paused || prov.name == failed_provider) continue;
        bool holds = false;
        for (const ChunkReplica& rep : chunk.replicas)
            if (rep.provider == prov.name && rep.valid) holds = true;
        if (holds) continue;
        seal_for_provider(chunk, prov);
        log_event("duty_transferred", json{{"chunk", to_hex(chunk.digest)},
                                           {"from", failed_provider},
                                           {"to", prov.name}}
                                          .dump());
        return;
    }
    log_event("duty_transfer_failed", json{{"chunk", to_hex(chunk.digest)},
                                           {"from", failed_provider}}
                                          .dump());
}

void StorageSim::run_challenge_round()
{
    if (verifiers_.empty()) throw SimError("no verifier registered");
    size_t vi = 0;
    for (auto& [digest, chunk] : chunks_) {
        const std::string& verifier = verifiers_[vi++ % verifiers_.size()];
        for (size_t r = 0; r < chunk.replicas.size(); ++r) {
            if (!chunk.replicas[r].valid) continue;
            run_one_challenge(chunk, chunk.replicas[r], verifier);
        }
    }
}

bool StorageSim::accuse(const std::string& verifier, const Hash256& chunk_digest,
                        const std::string& provider)
{
    auto it = chunks_.find(chunk_digest);
    if (it == chunks_.end()) throw SimError("unknown chunk");
    for (ChunkReplica& rep : it->second.replicas) {
        if (rep.provider != provider || !rep.valid) continue;
        // recheck: a fresh challenge answered by the actual holder
        uint64_t seed = rng_.next_u64();
        porep::Challenge ch = porep::issue_challenge(seed, rep.commitment,
                                                     rep.replica.symbol_count(), cfg_.q,
                                                     cfg_.deadline_factor_c, now_);
        Provider* prov = find_provider(provider);
        porep::ProverStorage storage = porep::ProverStorage::HasReplica;
        if (prov->profile == ProviderProfile::SourceOnly)
            storage = porep::ProverStorage::HasSourceOnly;
        else if (prov->profile == ProviderProfile::Nothing)
            storage = porep::ProverStorage::HasNothing;
        porep::ChallengeProof proof = porep::respond(storage, rep.replica, it->second.data, ch);
        auto [symbols, pad] = enc::symbolize(it->second.data, rep.replica.difficulty_L);
        std::vector<uint16_t> originals;
        for (uint64_t idx : ch.indices) originals.push_back(symbols[idx]);
        porep::Verdict v = porep::verify(proof, ch, rep.commitment, originals);
        log_event("accusation", json{{"verifier", verifier},
                                     {"provider", provider},
                                     {"chunk", to_hex(chunk_digest)},
                                     {"recheck", porep::verdict_name(v.kind)}}
                                    .dump());
        if (v.pass()) return false; // recheck overrides the accusation
        pause_and_transfer_duties(provider);
        return true;
    }
    throw SimError("provider holds no valid replica of that chunk");
}

void StorageSim::epoch_settle()
{
    for (auto& [name, u] : users_) {
        if (u.record.suspended) continue;

        // shares per provider for this user's chunks
        std::map<std::string, uint64_t> due;
        for (const auto& [path, entry] : u.filespace.files) {
            for (const Hash256& digest : entry.chunks) {
                auto cit = chunks_.find(digest);
                if (cit == chunks_.end()) continue;
                for (const ChunkReplica& rep : cit->second.replicas) {
                    const Provider* prov = find_provider(rep.provider);
                    if (!rep.valid || !prov || prov->paused) continue;
                    due[rep.provider] +=
                        cfg_.price_per_byte_epoch.per_epoch(cit->second.data.size());
                }
            }
        }
        uint64_t total = 0;
        for (const auto& [prov, amount] : due) total += amount;

        if (ledger_.balance(escrow_of(name)) < total) {
            u.record.suspended = true;
            log_event("service_suspended", json{{"user", name},
                                                {"balance", ledger_.balance(escrow_of(name))},
                                                {"due", total}}
                                               .dump());
            continue;
        }
        for (const auto& [prov, amount] : due) {
            if (amount == 0) continue;
            ledger_.transfer(escrow_of(name), prov, amount, now_, "storage payment");
        }
        u.record.prepaid_balance = ledger_.balance(escrow_of(name));
        u.record.last_payment_time = now_;
        log_event("epoch_settle", json{{"user", name},
                                       {"paid", total},
                                       {"balance", u.record.prepaid_balance}}
                                      .dump());
    }
}

std::optional<std::string> StorageSim::failover(const std::string& user,
                                                const std::map<std::string, bool>& votes)
{
    User& u = user_ref(user);
    auto& backups = u.record.backup_nodes;
    for (const auto& [voter, vote] : votes) {
        (void)vote;
        if (std::find(backups.begin(), backups.end(), voter) == backups.end())
            throw SimError("UnregisteredVoter");
    }
    uint64_t invalid_votes = 0;
    for (const auto& [voter, vote] : votes)
        if (vote) ++invalid_votes;

    // strictly more than 2/3 of the backup set
    if (3 * invalid_votes <= 2 * backups.size()) {
        log_event("failover_rejected", json{{"user", user},
                                            {"votes", invalid_votes},
                                            {"backups", backups.size()}}
                                           .dump());
        return std::nullopt;
    }
    std::string old_primary = u.record.primary_node;
    u.record.primary_node = backups.front();
    backups.erase(backups.begin());
    backups.push_back(old_primary);
    log_event("failover", json{{"user", user},
                               {"old_primary", old_primary},
                               {"new_primary", u.record.primary_node}}
                              .dump());
    return u.record.primary_node;
}

void StorageSim::miss_heartbeat(const std::string& node) { ++heartbeat_misses_[node]; }

std::optional<std::string> StorageSim::propose_offline_failover(const std::string& user)
{
    User& u = user_ref(user);
    if (heartbeat_misses_[u.record.primary_node] < cfg_.heartbeat_miss_limit)
        return std::nullopt;
    // every live backup votes the unreachable primary out
    std::map<std::string, bool> votes;
    for (const std::string& b : u.record.backup_nodes) votes[b] = true;
    return failover(user, votes);
}

void StorageSim::grant_access(const std::string& owner, const std::string& grantee,
                              const std::string& path)
{
    User& o = user_ref(owner);
    User& g = user_ref(grantee);
    auto it = o.wraps.find(path);
    if (it == o.wraps.end()) throw SimError("UnknownPath");

    std::vector<pre::ReKey> rks;
    for (const pre::PreCiphertext& wrap : it->second)
        rks.push_back(pre_scheme_.rekeygen(o.pre_keys.sk, g.pre_keys.pk, wrap.r));
    rekeys_[owner + "|" + grantee + "|" + path] = std::move(rks);
    log_event("grant_access", json{{"owner", owner},
                                   {"grantee", grantee},
                                   {"path", path}}
                                  .dump());
}

Bytes StorageSim::read_as(const std::string& reader, const std::string& owner,
                          const std::string& path)
{
    User& o = user_ref(owner);
    User& r = user_ref(reader);
    auto fit = o.filespace.files.find(path);
    if (fit == o.filespace.files.end()) throw SimError("UnknownPath");
    const auto& wraps = o.wraps.at(path);

    Bytes plain;
    for (size_t i = 0; i < fit->second.chunks.size(); ++i) {
        const StoredChunk& chunk = chunks_.at(fit->second.chunks[i]);
        std::optional<pre::MessageBlock> key;
        if (reader == owner) {
            key = pre_scheme_.decrypt(o.pre_keys.sk, wraps[i]);
        } else {
            auto rit = rekeys_.find(owner + "|" + reader + "|" + path);
            if (rit == rekeys_.end()) throw SimError("AccessDenied: no re-key");
            pre::PreCiphertext c_b = pre_scheme_.reencrypt(rit->second[i], wraps[i]);
            key = pre_scheme_.decrypt(r.pre_keys.sk, c_b, o.pre_keys.pk);
        }
        if (!key) throw SimError("AccessDenied: unwrap failed");
        Bytes part = stream_xor(*key, chunk.data);
        plain.insert(plain.end(), part.begin(), part.end());
    }
    plain.resize(fit->second.size);
    return plain;
}

void StorageSim::run()
{
    for (uint32_t e = 1; e <= cfg_.epochs; ++e) {
        epoch_ = e;
        run_challenge_round();
        now_ += cfg_.epoch_secs;
        epoch_settle();
    }
}

const StorageContractRecord& StorageSim::record(const std::string& user) const
{
    return users_.at(user).record;
}

const FileSpaceState& StorageSim::filespace(const std::string& user) const
{
    return users_.at(user).filespace;
}

bool StorageSim::provider_paused(const std::string& provider) const
{
    const Provider* p = find_provider(provider);
    if (!p) throw SimError("unknown provider");
    return p->paused;
}

uint64_t StorageSim::provider_hash_ops(const std::string& provider) const
{
    const Provider* p = find_provider(provider);
    if (!p) throw SimError("unknown provider");
    return p->seal_meter.count;
}

uint32_t StorageSim::replica_count(const Hash256& chunk) const
{
    auto it = chunks_.find(chunk);
    if (it == chunks_.end()) return 0;
    uint32_t n = 0;
    for (const ChunkReplica& rep : it->second.replicas)
        if (rep.valid) ++n;
    return n;
}

std::vector<Hash256> StorageSim::chunks_of(const std::string& user,
                                           const std::string& path) const
{
    return users_.at(user).filespace.files.at(path).chunks;
}

void StorageSim::write_outputs(const std::filesystem::path& dir) const
{
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "events.log") << events_;
    std::ofstream(dir / "ledger.csv") << ledger_.to_csv();
    std::ofstream(dir / "verdicts.csv") << verdicts_csv_;
    std::ofstream(dir / "config.json") << cfg_.to_json() << '\n';
}

} // namespace upw::storage
