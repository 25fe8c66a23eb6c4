// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_STORAGE_SIM_HPP
#define UPW_STORAGE_SIM_HPP

#include <filesystem>
#include <optional>

#include <upw/porep/porep.hpp>
#include <upw/storage/hybrid.hpp>
#include <upw/storage/ledger.hpp>

namespace upw::storage {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational price: units per byte per epoch.
struct Price {
    uint64_t num = 1;
    uint64_t den = 1;
    uint64_t per_epoch(uint64_t bytes) const { return bytes * num / den; }
};

struct SimConfig {
    uint64_t seed = 1;
    uint32_t nodes = 3;     // storage nodes (primary/backup pool)
    uint32_t providers = 4; // resource providers
    uint32_t verifiers = 1;
    unsigned difficulty_L = 8;
    uint64_t q = 32;
    uint64_t deadline_factor_c = 16;
    Price price_per_byte_epoch{1, 1};
    uint64_t verifier_reward = 2;
    uint32_t epochs = 10;
    uint64_t epoch_secs = 1000;
    uint64_t chunk_size = 1 << 20;
    uint32_t heartbeat_miss_limit = 3;
    // provider name -> "source-only" | "nothing"
    std::map<std::string, std::string> cheater_profiles;

    // canned scenario knobs for the CLI runner
    uint32_t replication = 3;
    uint64_t prepay = 1'000'000;
    uint64_t file_bytes = 65536;

    std::string to_json() const;
    static SimConfig from_json(const std::string& s);
};

enum class ProviderProfile { Honest, SourceOnly, Nothing };

struct StorageContractRecord {
    std::string user_id;
    uint64_t data_size = 0;
    uint32_t replication_count = 1;
    std::string primary_node;
    std::vector<std::string> backup_nodes;
    uint64_t prepaid_balance = 0;    // mirrors the escrow account
    uint64_t last_payment_time = 0;
    uint64_t storage_start_time = 0; // immutable after setup
    bool suspended = false;
};

struct FileSpaceState {
    struct Entry {
        std::vector<Hash256> chunks; // digests of the encrypted chunks
        uint64_t size = 0;           // plaintext bytes
    };
    std::map<std::string, Entry> files;
    uint64_t version = 0;

    Hash256 head() const;
};

struct UserOp {
    enum class Kind { Upload, Rename, Remove } kind = Kind::Upload;
    std::string path;
    std::string new_path; // rename target
    Bytes data;           // upload plaintext

    Bytes signing_payload(const std::string& user, uint64_t next_version) const;
};

/// Deterministic discrete-event simulation of the storage protocol: one
/// logical event stream, all randomness from the config seed, exact hash
/// and stablecoin accounting at every event.
class StorageSim {
public:
    explicit StorageSim(SimConfig cfg);

    // --- protocol surface ---
    StorageContractRecord& setup(const std::string& user, uint32_t replication_count,
                                 uint64_t prepay);
    uint64_t apply_user_op(const std::string& user, const UserOp& op,
                           const crypto::Signature& sig);
    uint64_t upload(const std::string& user, const std::string& path, const Bytes& plaintext);
    uint64_t rename(const std::string& user, const std::string& old_path,
                    const std::string& new_path);
    uint64_t remove(const std::string& user, const std::string& path);

    void run_challenge_round();
    void epoch_settle();
    /// Strictly more than 2/3 of the backups must vote invalid.
    std::optional<std::string> failover(const std::string& user,
                                        const std::map<std::string, bool>& votes);

    /// Missed-heartbeat bookkeeping; at the limit the backups vote the
    /// primary out on the verifier's proposal.
    void miss_heartbeat(const std::string& node);
    std::optional<std::string> propose_offline_failover(const std::string& user);

    void grant_access(const std::string& owner, const std::string& grantee,
                      const std::string& path);
    Bytes read_as(const std::string& reader, const std::string& owner, const std::string& path);

    /// Verifier disputes a (chunk, provider) pair; the primary rechecks.
    bool accuse(const std::string& verifier, const Hash256& chunk, const std::string& provider);

    /// epochs x (challenge round + settle), per config.
    void run();

    // --- inspection ---
    const Ledger& ledger() const { return ledger_; }
    const StorageContractRecord& record(const std::string& user) const;
    const FileSpaceState& filespace(const std::string& user) const;
    bool provider_paused(const std::string& provider) const;
    uint64_t provider_hash_ops(const std::string& provider) const;
    uint64_t provider_balance(const std::string& provider) const
    {
        return ledger_.balance(provider);
    }
    /// Valid commitments currently held for the chunk.
    uint32_t replica_count(const Hash256& chunk) const;
    std::vector<Hash256> chunks_of(const std::string& user, const std::string& path) const;
    uint64_t now() const { return now_; }
    uint32_t current_epoch() const { return epoch_; }

    const std::string& events_log() const { return events_; }
    std::string verdicts_csv() const { return verdicts_csv_; }
    void write_outputs(const std::filesystem::path& dir) const;

private:
    struct Provider {
        std::string name;
        ProviderProfile profile = ProviderProfile::Honest;
        bool paused = false;
        HashMeter seal_meter;
    };
    struct ChunkReplica {
        std::string provider;
        enc::ReplicaFile replica;
        porep::ReplicaCommitment commitment;
        bool valid = true;
    };
    struct StoredChunk {
        Hash256 digest;
        Bytes data; // encrypted content, kept by the storage node
        std::string owner;
        std::vector<ChunkReplica> replicas;
    };
    struct User {
        std::string name;
        crypto::KeyPair sign_keys;
        crypto::KeyPair pre_keys;
        StorageContractRecord record;
        FileSpaceState filespace;
        std::map<std::string, std::vector<pre::PreCiphertext>> wraps; // path -> per-chunk
        DetRng rng;
    };

    void log_event(const std::string& kind, const std::string& fields_json);
    void assign_and_replicate(const Hash256& chunk_digest, uint32_t replication,
                              const std::string& owner);
    void seal_for_provider(StoredChunk& chunk, Provider& prov);
    Provider* find_provider(const std::string& name);
    const Provider* find_provider(const std::string& name) const;
    User& user_ref(const std::string& name);
    bool run_one_challenge(StoredChunk& chunk, ChunkReplica& rep, const std::string& verifier);
    // by value: the caller's name may live inside chunk.replicas, which
    // reassignment reallocates
    void reassign_chunk(StoredChunk& chunk, std::string failed_provider);
    /// Pause + invalidate and hand off every replica the provider held.
    void pause_and_transfer_duties(const std::string& provider);
    std::string escrow_of(const std::string& user) const { return "escrow:" + user; }

    SimConfig cfg_;
    DetRng rng_;
    pre::PreScheme pre_scheme_;
    uint64_t now_ = 0;
    uint32_t epoch_ = 0;
    uint64_t event_seq_ = 0;

    std::vector<std::string> nodes_;
    std::vector<Provider> providers_;
    std::vector<std::string> verifiers_;
    std::map<std::string, User> users_;
    std::map<Hash256, StoredChunk> chunks_;
    std::map<std::string, uint32_t> heartbeat_misses_;
    // (owner, grantee, path) -> per-chunk re-keys, stored at the primary
    std::map<std::string, std::vector<pre::ReKey>> rekeys_;

    Ledger ledger_;
    std::string events_;
    std::string verdicts_csv_ = "epoch,chunk,provider,verdict,hash_ops_spent,deadline\n";
};

} // namespace upw::storage

#endif // UPW_STORAGE_SIM_HPP
