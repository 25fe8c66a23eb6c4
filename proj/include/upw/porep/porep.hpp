// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_POREP_POREP_HPP
#define UPW_POREP_POREP_HPP

#include <optional>
#include <string>

#include <upw/enc/codec.hpp>
#include <upw/porep/merkle.hpp>
#include <upw/util/rng.hpp>

namespace upw::porep {

struct PorepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nonces per Merkle page. A page is the unit a challenge proof ships.
constexpr uint64_t kPageNonces = 1024;

struct ReplicaCommitment {
    Hash256 replica_root;  // Merkle root over fixed-size nonce pages
    Hash256 source_digest; // digest of the original chunk
    Bytes node_id;
    uint8_t difficulty_L = 0;
    std::vector<enc::Segment> segments;

    bool operator==(const ReplicaCommitment&) const = default;

    std::string to_json() const;
    static ReplicaCommitment from_json(const std::string& s);
};

/// Serialized nonce page (8 bytes big-endian per nonce, last page short).
Bytes replica_page(const enc::ReplicaFile& replica, uint64_t page_index);
uint64_t replica_page_count(const enc::ReplicaFile& replica);
MerkleTree replica_tree(const enc::ReplicaFile& replica);

/// Fails with ReplicaSourceMismatch unless the replica decodes to source.
ReplicaCommitment commit(const enc::ReplicaFile& replica, std::span<const uint8_t> source);

struct Challenge {
    Hash256 challenge_id;
    Hash256 replica_root;            // which commitment this challenges
    std::vector<uint64_t> indices;   // distinct symbol positions
    uint64_t issued_at = 0;          // simulated time
    uint64_t deadline = 0;           // hash-budget units

    std::string to_json() const;
    static Challenge from_json(const std::string& s);
};

/// q distinct uniform indices from the seeded generator; deadline = c * q.
Challenge issue_challenge(uint64_t seed, const ReplicaCommitment& commitment,
                          uint64_t symbol_count, uint64_t q, uint64_t deadline_factor_c,
                          uint64_t issued_at = 0);

enum class ProverStorage { HasReplica, HasSourceOnly, HasNothing };

struct ProofEntry {
    uint64_t index = 0;
    uint64_t nonce = 0;
    Bytes page;             // the nonce page holding this index
    MerkleTree::Path path;  // page inclusion path to replica_root
};

struct ChallengeProof {
    Bytes responder_id;
    std::vector<ProofEntry> entries;
    uint64_t hash_ops_spent = 0; // exact sealing-hash count spent responding

    std::string to_json() const;
    static ChallengeProof from_json(const std::string& s);
};

/// A has-replica prover answers from disk: lookups and paths, zero sealing
/// hashes. A has-source-only prover models the outsourcing attack: it must
/// re-seal every challenged symbol (exactly counted) and fetches the page
/// material from the network; the re-derived nonces are identical because
/// the nonce scan is deterministic. A has-nothing prover returns an empty
/// proof.
ChallengeProof respond(ProverStorage storage, const enc::ReplicaFile& replica,
                       std::span<const uint8_t> source, const Challenge& challenge);

struct Verdict {
    enum class Kind { Pass, BadPath, BadSymbol, DeadlineExceeded, Empty };
    Kind kind = Kind::Pass;

    bool pass() const { return kind == Kind::Pass; }
};

const char* verdict_name(Verdict::Kind k);

/// The verifier holds the commitment and the original symbol values at the
/// challenged indices (fetched from the storage node at setup).
Verdict verify(const ChallengeProof& proof, const Challenge& challenge,
               const ReplicaCommitment& commitment,
               std::span<const uint16_t> original_symbols);

/// Full-download check: recompute the page root of the presented replica.
bool verify_naive(const enc::ReplicaFile& replica, const ReplicaCommitment& commitment);

} // namespace upw::porep

#endif // UPW_POREP_POREP_HPP
