// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include <upw/storage/sim.hpp>

using namespace upw;
using namespace upw::storage;

namespace {

SimConfig small_config()
{
    SimConfig cfg;
    cfg.seed = 42;
    cfg.nodes = 4;
    cfg.providers = 4;
    cfg.verifiers = 1;
    cfg.difficulty_L = 4; // keep unit sealing cheap
    cfg.q = 16;
    cfg.deadline_factor_c = 16;
    cfg.chunk_size = 1024;
    cfg.epochs = 3;
    return cfg;
}

} // namespace

TEST_CASE("ledger: exact conservation and refusal on shortfall")
{
    Ledger l;
    l.mint("alice", 100, 0, "deposit");
    CHECK(l.conserved());
    CHECK(l.transfer("alice", "bob", 40, 1, "pay"));
    CHECK_FALSE(l.transfer("alice", "bob", 61, 2, "too much"));
    CHECK(l.balance("alice") == 60);
    CHECK(l.balance("bob") == 40);
    CHECK(l.conserved());
    CHECK(l.entries().size() == 2); // the refused transfer left no trace
    CHECK(l.to_csv().find("pay") != std::string::npos);
}

TEST_CASE("stream cipher roundtrips and is key-sensitive")
{
    DetRng rng(1);
    pre::MessageBlock k1 = random_file_key(rng);
    pre::MessageBlock k2 = random_file_key(rng);
    Bytes data = rng.bytes(1000);
    Bytes c = stream_xor(k1, data);
    CHECK(c != data);
    CHECK(stream_xor(k1, c) == data);
    CHECK(stream_xor(k2, c) != data);
}

TEST_CASE("setup: node selection, prepay escrow, validation")
{
    StorageSim sim(small_config());
    const StorageContractRecord& rec = sim.setup("alice", 3, 500);
    CHECK(rec.primary_node.substr(0, 5) == "node-");
    CHECK(rec.backup_nodes.size() == 2); // replication 3 = 1 primary + 2 backups
    CHECK(rec.prepaid_balance == 500);
    CHECK(rec.storage_start_time == 0);
    CHECK(sim.ledger().balance("escrow:alice") == 500);
    CHECK(sim.ledger().conserved());

    CHECK_THROWS_AS(StorageSim(small_config()).setup("x", 3, 0), SimError);

    SimConfig no_nodes = small_config();
    no_nodes.nodes = 0;
    CHECK_THROWS_AS(StorageSim(no_nodes).setup("x", 1, 10), SimError);

    // same seed, same selection
    StorageSim sim2(small_config());
    CHECK(sim2.setup("alice", 3, 500).primary_node == rec.primary_node);
}

TEST_CASE("user ops: upload, rename, remove, signatures")
{
    StorageSim sim(small_config());
    sim.setup("alice", 2, 100000);
    DetRng rng(7);
    Bytes file = rng.bytes(4096); // 4 chunks of 1024

    uint64_t v1 = sim.upload("alice", "/doc.txt", file);
    CHECK(v1 == 1);
    CHECK(sim.chunks_of("alice", "/doc.txt").size() == 4);
    CHECK(sim.record("alice").data_size == 4096);
    // every chunk carries replication_count valid commitments
    for (const Hash256& c : sim.chunks_of("alice", "/doc.txt"))
        CHECK(sim.replica_count(c) == 2);

    uint64_t v2 = sim.rename("alice", "/doc.txt", "/archive/doc.txt");
    CHECK(v2 == 2);
    CHECK_THROWS_AS(sim.rename("alice", "/doc.txt", "/x"), SimError);

    uint64_t v3 = sim.remove("alice", "/archive/doc.txt");
    CHECK(v3 == 3);
    CHECK(sim.record("alice").data_size == 0);
    // remove then rename the removed path
    CHECK_THROWS_AS(sim.rename("alice", "/archive/doc.txt", "/y"), SimError);

    // a forged signature is rejected
    UserOp op{UserOp::Kind::Upload, "/evil", "", Bytes{1, 2, 3}};
    crypto::Signature bogus{1, 1};
    CHECK_THROWS_AS(sim.apply_user_op("alice", op, bogus), SimError);
}

TEST_CASE("upload and read back through the hybrid layer")
{
    StorageSim sim(small_config());
    sim.setup("alice", 2, 100000);
    DetRng rng(9);
    Bytes file = rng.bytes(2500);
    sim.upload("alice", "/f", file);
    CHECK(sim.read_as("alice", "alice", "/f") == file);
}

TEST_CASE("grant pipeline recovers plaintext; strangers and cross-grants fail")
{
    StorageSim sim(small_config());
    sim.setup("alice", 2, 100000);
    sim.setup("bob", 2, 100000);
    sim.setup("carol", 2, 100000);
    DetRng rng(11);
    Bytes file_a = rng.bytes(1500);
    Bytes file_b = rng.bytes(800);
    sim.upload("alice", "/a", file_a);
    sim.upload("alice", "/b", file_b);

    // no re-key: denied
    CHECK_THROWS_AS(sim.read_as("bob", "alice", "/a"), SimError);

    sim.grant_access("alice", "bob", "/a");
    CHECK(sim.read_as("bob", "alice", "/a") == file_a);

    // bob's grant does not open /b, nor carol anything
    CHECK_THROWS_AS(sim.read_as("bob", "alice", "/b"), SimError);
    CHECK_THROWS_AS(sim.read_as("carol", "alice", "/a"), SimError);
}

TEST_CASE("epoch settlement: pay-per-byte, pause, suspension")
{
    SimConfig cfg = small_config();
    cfg.price_per_byte_epoch = {1, 1024}; // 1 unit per 1024-byte chunk per epoch
    StorageSim sim(cfg);
    sim.setup("alice", 2, 1000);
    DetRng rng(13);
    sim.upload("alice", "/f", rng.bytes(2048)); // 2 chunks x 2 replicas

    sim.epoch_settle();
    // 4 replica-chunks x 1 unit
    CHECK(sim.ledger().balance("escrow:alice") == 1000 - 4);
    uint64_t p0 = sim.provider_balance("provider-0");
    uint64_t p1 = sim.provider_balance("provider-1");
    CHECK(p0 + p1 == 4);
    CHECK(sim.ledger().conserved());
}

TEST_CASE("suspension at zero: prepaid 5 at 2 per epoch stops after epoch 2")
{
    SimConfig cfg = small_config();
    cfg.providers = 1;
    cfg.price_per_byte_epoch = {2, 1024}; // one 1024-byte chunk, 1 replica -> 2/epoch
    StorageSim sim(cfg);
    sim.setup("alice", 1, 5);
    DetRng rng(17);
    sim.upload("alice", "/f", rng.bytes(1024));

    sim.epoch_settle(); // pays 2, balance 3
    CHECK(sim.record("alice").prepaid_balance == 3);
    CHECK_FALSE(sim.record("alice").suspended);
    sim.epoch_settle(); // pays 2, balance 1
    CHECK(sim.record("alice").prepaid_balance == 1);
    sim.epoch_settle(); // 1 < 2: suspends, no payment
    CHECK(sim.record("alice").suspended);
    CHECK(sim.ledger().balance("escrow:alice") == 1);
    CHECK_THROWS_AS(sim.upload("alice", "/g", Bytes{1}), SimError);
    CHECK(sim.ledger().conserved());
}

TEST_CASE("challenge round: honest pass, source-only cheater caught and replaced")
{
    SimConfig cfg = small_config();
    cfg.difficulty_L = 8;
    cfg.q = 32;
    cfg.deadline_factor_c = 16;
    cfg.cheater_profiles["provider-1"] = "source-only";
    StorageSim sim(cfg);
    sim.setup("alice", 3, 100000);
    DetRng rng(19);
    Bytes file = rng.bytes(1024);
    sim.upload("alice", "/f", file);
    Hash256 chunk = sim.chunks_of("alice", "/f")[0];
    REQUIRE(sim.replica_count(chunk) == 3);

    uint64_t verifier_before = sim.ledger().balance("verifier-0");
    sim.run_challenge_round();

    CHECK(sim.provider_paused("provider-1"));
    CHECK_FALSE(sim.provider_paused("provider-0"));
    CHECK_FALSE(sim.provider_paused("provider-2"));
    // duty transferred to provider-3, availability restored
    CHECK(sim.replica_count(chunk) == 3);
    CHECK(sim.ledger().balance("verifier-0") == verifier_before + cfg.verifier_reward);
    CHECK(sim.ledger().conserved());

    // paused provider earns nothing at the next settle
    sim.epoch_settle();
    CHECK(sim.provider_balance("provider-1") == 0);

    // events and verdicts logged
    CHECK(sim.events_log().find("provider_paused") != std::string::npos);
    CHECK(sim.verdicts_csv().find("DeadlineExceeded") != std::string::npos);
}

TEST_CASE("a nothing prover fails with an empty proof")
{
    SimConfig cfg = small_config();
    cfg.cheater_profiles["provider-0"] = "nothing";
    StorageSim sim(cfg);
    sim.setup("alice", 2, 100000);
    DetRng rng(23);
    sim.upload("alice", "/f", rng.bytes(512));
    sim.run_challenge_round();
    CHECK(sim.provider_paused("provider-0"));
    CHECK(sim.verdicts_csv().find("fail(Empty)") != std::string::npos);
}

TEST_CASE("false accusation is overridden by the primary's recheck")
{
    StorageSim sim(small_config());
    sim.setup("alice", 2, 100000);
    DetRng rng(29);
    sim.upload("alice", "/f", rng.bytes(600));
    Hash256 chunk = sim.chunks_of("alice", "/f")[0];

    CHECK_FALSE(sim.accuse("verifier-0", chunk, "provider-0"));
    CHECK_FALSE(sim.provider_paused("provider-0"));
    CHECK(sim.replica_count(chunk) == 2);
}

TEST_CASE("failover: strict two-thirds of the backups")
{
    SimConfig cfg = small_config();
    cfg.nodes = 4;
    StorageSim sim(cfg);
    sim.setup("alice", 4, 1000); // 3 backups
    const StorageContractRecord& rec = sim.record("alice");
    REQUIRE(rec.backup_nodes.size() == 3);
    std::string b0 = rec.backup_nodes[0], b1 = rec.backup_nodes[1], b2 = rec.backup_nodes[2];
    std::string old_primary = rec.primary_node;

    // 2 of 3 is not strictly more than 2/3
    CHECK_FALSE(sim.failover("alice", {{b0, true}, {b1, true}, {b2, false}}).has_value());
    CHECK(sim.record("alice").primary_node == old_primary);

    // a vote from a non-backup is rejected
    CHECK_THROWS_AS(sim.failover("alice", {{"node-x", true}}), SimError);

    // 3 of 3 promotes the first backup and rotates the list
    auto promoted = sim.failover("alice", {{b0, true}, {b1, true}, {b2, true}});
    REQUIRE(promoted.has_value());
    CHECK(*promoted == b0);
    CHECK(sim.record("alice").primary_node == b0);
    CHECK(sim.record("alice").backup_nodes == std::vector<std::string>{b1, b2, old_primary});

    // user operations resume after promotion
    DetRng rng(31);
    CHECK(sim.upload("alice", "/post-failover", rng.bytes(100)) > 0);
}

TEST_CASE("offline primary is voted out after missed heartbeats")
{
    SimConfig cfg = small_config();
    cfg.heartbeat_miss_limit = 2;
    StorageSim sim(cfg);
    sim.setup("alice", 3, 1000);
    std::string primary = sim.record("alice").primary_node;

    CHECK_FALSE(sim.propose_offline_failover("alice").has_value());
    sim.miss_heartbeat(primary);
    CHECK_FALSE(sim.propose_offline_failover("alice").has_value());
    sim.miss_heartbeat(primary);
    auto promoted = sim.propose_offline_failover("alice");
    REQUIRE(promoted.has_value());
    CHECK(sim.record("alice").primary_node == *promoted);
    CHECK(*promoted != primary);
}

TEST_CASE("replay determinism: identical seeds produce identical event logs")
{
    auto run_once = [] {
        SimConfig cfg = small_config();
        cfg.cheater_profiles["provider-2"] = "source-only";
        cfg.epochs = 2;
        StorageSim sim(cfg);
        sim.setup("alice", 2, 100000);
        DetRng rng(37);
        sim.upload("alice", "/f", rng.bytes(2000));
        sim.run();
        return std::make_pair(sim.events_log(), sim.ledger().to_csv());
    };
    auto [e1, l1] = run_once();
    auto [e2, l2] = run_once();
    CHECK(e1 == e2);
    CHECK(l1 == l2);
}

TEST_CASE("config roundtrips through json")
{
    SimConfig cfg = small_config();
    cfg.cheater_profiles["provider-3"] = "nothing";
    cfg.price_per_byte_epoch = {3, 4096};
    SimConfig back = SimConfig::from_json(cfg.to_json());
    CHECK(back.seed == cfg.seed);
    CHECK(back.providers == cfg.providers);
    CHECK(back.price_per_byte_epoch.num == 3);
    CHECK(back.price_per_byte_epoch.den == 4096);
    CHECK(back.cheater_profiles == cfg.cheater_profiles);
    CHECK(back.chunk_size == cfg.chunk_size);
}
