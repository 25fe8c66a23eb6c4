// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <upw/enc/codec.hpp>
#include <upw/porep/porep.hpp>
#include <upw/pow/miner.hpp>
#include <upw/pre/scheme.hpp>
#include <upw/storage/sim.hpp>
#include <upw/wider/bench.hpp>
#include <upw/wider/shard.hpp>

using namespace upw;
using nlohmann::json;

namespace {

Bytes read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const uint8_t> data)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), data.size());
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    write_file(path, std::span<const uint8_t>(
                         reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

/// UPW_SEED beats --seed; all randomness of a run flows from this one value.
uint64_t resolve_seed(uint64_t cli_seed)
{
    if (const char* env = std::getenv("UPW_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

void record_config(const std::filesystem::path& dir, const std::string& command, json params)
{
    params["command"] = command;
    std::filesystem::create_directories(dir);
    write_text(dir / "config.json", params.dump(2) + "\n");
}

std::vector<enc::Segment> make_feed(uint64_t seed, uint64_t segment_every, uint64_t symbols)
{
    std::vector<enc::Segment> feed;
    uint64_t index = 0, n = 0;
    do {
        feed.push_back({sha256("feed-" + std::to_string(seed) + "-" + std::to_string(n++)),
                        index});
        index += segment_every ? segment_every : symbols + 1;
    } while (segment_every && index < symbols);
    return feed;
}

int cmd_encode(const std::string& input, const std::string& id, unsigned L,
               const std::string& out, uint64_t seed, uint64_t segment_every)
{
    Bytes source = read_file(input);
    enc::EncodingParams params{L, to_bytes(id),
                               segment_every ? enc::BindingMode::FollowChain
                                             : enc::BindingMode::StaticBlock};
    uint64_t symbols = (source.size() * 8 + L - 1) / L;
    auto feed = make_feed(seed, segment_every, symbols);
    enc::EncodeResult res = enc::encode(source, params, feed);
    write_file(out, res.replica.serialize());

    json summary{{"command", "encode"},   {"input", input},
                 {"node_id", id},         {"difficulty_l", L},
                 {"seed", seed},          {"segment_every", segment_every},
                 {"source_bytes", source.size()},
                 {"symbols", res.replica.symbol_count()},
                 {"segments", res.replica.segments.size()},
                 {"encode_hashes", res.hash_count},
                 {"out", out}};
    write_text(out + ".config.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_decode(const std::string& input, const std::string& out)
{
    enc::ReplicaFile replica = enc::ReplicaFile::parse(read_file(input));
    enc::DecodeResult res = enc::decode(replica);
    write_file(out, res.data);
    json summary{{"command", "decode"},
                 {"input", input},
                 {"out", out},
                 {"bytes", res.data.size()},
                 {"symbols", replica.symbol_count()},
                 {"decode_hashes", res.hash_count}};
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_bench_encoding(const std::string& range, size_t size, const std::string& out_dir,
                       uint64_t seed)
{
    unsigned lo = 1, hi = 8;
    if (auto pos = range.find(".."); pos != std::string::npos) {
        lo = std::stoul(range.substr(0, pos));
        hi = std::stoul(range.substr(pos + 2));
    } else {
        lo = hi = std::stoul(range);
    }
    auto rows = enc::bench_asymmetry(lo, hi, size, seed);

    std::string csv = "difficulty_l,encode_seconds,decode_seconds,encode_hashes,decode_hashes,"
                      "hash_ratio\n";
    for (const auto& r : rows) {
        char line[256];
        std::snprintf(line, sizeof line, "%u,%.6f,%.6f,%llu,%llu,%.3f\n", r.L,
                      r.encode_seconds, r.decode_seconds,
                      static_cast<unsigned long long>(r.encode_hashes),
                      static_cast<unsigned long long>(r.decode_hashes),
                      double(r.encode_hashes) / double(r.decode_hashes));
        csv += line;
    }
    std::filesystem::path dir(out_dir);
    record_config(dir, "bench-encoding",
                  {{"difficulty", range}, {"size", size}, {"seed", seed}});
    write_text(dir / "bench.csv", csv);
    std::cout << csv;
    return 0;
}

int cmd_challenge(const std::string& replica_path, const std::string& source_path, uint64_t q,
                  uint64_t factor_c, uint64_t seed, const std::string& prover,
                  const std::string& out_dir)
{
    enc::ReplicaFile replica = enc::ReplicaFile::parse(read_file(replica_path));
    Bytes source = read_file(source_path);
    porep::ReplicaCommitment commitment = porep::commit(replica, source);
    porep::Challenge ch =
        porep::issue_challenge(seed, commitment, replica.symbol_count(), q, factor_c);

    porep::ProverStorage storage = porep::ProverStorage::HasReplica;
    if (prover == "source-only") storage = porep::ProverStorage::HasSourceOnly;
    else if (prover == "nothing") storage = porep::ProverStorage::HasNothing;
    else if (prover != "honest") throw std::runtime_error("unknown prover profile: " + prover);

    porep::ChallengeProof proof = porep::respond(storage, replica, source, ch);
    auto [symbols, pad] = enc::symbolize(source, replica.difficulty_L);
    std::vector<uint16_t> originals;
    for (uint64_t idx : ch.indices) originals.push_back(symbols[idx]);
    porep::Verdict verdict = porep::verify(proof, ch, commitment, originals);

    std::filesystem::path dir(out_dir);
    record_config(dir, "challenge",
                  {{"replica", replica_path},
                   {"source", source_path},
                   {"q", q},
                   {"deadline_factor_c", factor_c},
                   {"seed", seed},
                   {"prover", prover}});
    write_text(dir / "commitment.json", commitment.to_json() + "\n");
    write_text(dir / "challenge.json", ch.to_json() + "\n");
    write_text(dir / "proof.json", proof.to_json() + "\n");

    json summary{{"verdict", porep::verdict_name(verdict.kind)},
                 {"hash_ops_spent", proof.hash_ops_spent},
                 {"deadline", ch.deadline},
                 {"q", q}};
    write_text(dir / "verdict.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return verdict.pass() ? 0 : 1;
}

const crypto::Group& cli_group() { return crypto::Group::production(); }

int cmd_pre_keygen(uint64_t seed, const std::string& out_dir)
{
    pre::PreScheme scheme(cli_group());
    DetRng rng(seed);
    crypto::KeyPair kp = scheme.keygen(rng);
    std::filesystem::path dir(out_dir);
    record_config(dir, "pre-keygen", {{"seed", seed}});
    write_text(dir / "sk.hex", to_hex(cli_group().encode_scalar(kp.sk)) + "\n");
    write_text(dir / "pk.hex", to_hex(cli_group().encode_element(kp.pk)) + "\n");
    std::cout << "wrote " << (dir / "sk.hex") << " and " << (dir / "pk.hex") << '\n';
    return 0;
}

std::string read_hex_line(const std::string& path)
{
    std::string text(reinterpret_cast<const char*>(read_file(path).data()),
                     read_file(path).size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

int cmd_pre_enc(const std::string& sk_path, const std::string& msg, uint64_t seed,
                const std::string& out)
{
    pre::PreScheme scheme(cli_group());
    crypto::Scalar sk = cli_group().decode_scalar(from_hex(read_hex_line(sk_path)));
    DetRng rng(seed);
    pre::MessageBlock block = pre::pad_block(to_bytes(msg));
    pre::PreCiphertext ct = scheme.encrypt(sk, block, rng);
    write_text(out, to_hex(ct.serialize(cli_group())) + "\n");
    std::cout << "ciphertext -> " << out << '\n';
    return 0;
}

int cmd_pre_rekey(const std::string& sk_path, const std::string& pk_to_path,
                  const std::string& ct_path, const std::string& out)
{
    pre::PreScheme scheme(cli_group());
    crypto::Scalar sk = cli_group().decode_scalar(from_hex(read_hex_line(sk_path)));
    crypto::Element pk_to = cli_group().decode_element(from_hex(read_hex_line(pk_to_path)));
    pre::PreCiphertext ct =
        pre::PreCiphertext::deserialize(cli_group(), from_hex(read_hex_line(ct_path)));
    pre::ReKey rk = scheme.rekeygen(sk, pk_to, ct.r);
    write_text(out, to_hex(rk.serialize(cli_group())) + "\n");
    std::cout << "re-key -> " << out << '\n';
    return 0;
}

int cmd_pre_reenc(const std::string& rk_path, const std::string& ct_path,
                  const std::string& out)
{
    pre::PreScheme scheme(cli_group());
    pre::ReKey rk = pre::ReKey::deserialize(cli_group(), from_hex(read_hex_line(rk_path)));
    pre::PreCiphertext ct =
        pre::PreCiphertext::deserialize(cli_group(), from_hex(read_hex_line(ct_path)));
    pre::PreCiphertext out_ct = scheme.reencrypt(rk, ct);
    write_text(out, to_hex(out_ct.serialize(cli_group())) + "\n");
    std::cout << "re-encrypted ciphertext -> " << out << '\n';
    return 0;
}

int cmd_pre_dec(const std::string& sk_path, const std::string& ct_path,
                const std::string& origin_path)
{
    pre::PreScheme scheme(cli_group());
    crypto::Scalar sk = cli_group().decode_scalar(from_hex(read_hex_line(sk_path)));
    pre::PreCiphertext ct =
        pre::PreCiphertext::deserialize(cli_group(), from_hex(read_hex_line(ct_path)));
    std::optional<crypto::Element> origin;
    if (!origin_path.empty())
        origin = cli_group().decode_element(from_hex(read_hex_line(origin_path)));
    auto block = scheme.decrypt(sk, ct, origin);
    if (!block) {
        std::cout << json{{"error", "decryption rejected"}}.dump() << '\n';
        return 1;
    }
    Bytes msg = pre::unpad_block(*block);
    std::cout << json{{"message", bytes_to_string(msg)}}.dump() << '\n';
    return 0;
}

int cmd_mine(uint64_t blocks, uint64_t spacing, uint32_t bits, uint64_t seed,
             const std::string& out_dir)
{
    pow::DifficultyParams params;
    params.target_spacing = spacing;
    params.initial_target = U256::from_compact(bits);
    pow::ChainStore store(params, 1'000'000, to_bytes("genesis"));

    DetRng rng(seed);
    std::string csv = "height,hash,nonce,hashes_used,bits\n";
    uint64_t timestamp = 1'000'000;
    Hash256 tip = store.genesis_hash();
    for (uint64_t i = 1; i <= blocks; ++i) {
        timestamp += spacing;
        Bytes body = pow::frame_body(to_bytes("miner"), rng.bytes(16));
        pow::MineResult res = pow::mine_block(store, tip, pow::body_merkle_root(body),
                                              timestamp, 1ull << 40);
        if (res.status != pow::MineResult::Status::Found)
            throw std::runtime_error("mining budget exhausted");
        pow::AcceptResult acc = store.accept(res.header, body);
        if (!acc.accepted()) throw std::runtime_error("mined block rejected");
        tip = res.header.hash();
        char line[160];
        std::snprintf(line, sizeof line, "%llu,%s,%llu,%llu,0x%08x\n",
                      static_cast<unsigned long long>(i), to_hex(tip).c_str(),
                      static_cast<unsigned long long>(res.header.nonce),
                      static_cast<unsigned long long>(res.hashes_used), res.header.bits);
        csv += line;
    }
    std::filesystem::path dir(out_dir);
    record_config(dir, "mine",
                  {{"blocks", blocks}, {"spacing", spacing}, {"bits", bits}, {"seed", seed}});
    store.save(dir / "chain");
    write_text(dir / "mining.csv", csv);
    std::cout << csv;
    return 0;
}

int cmd_storage_sim(const std::string& config_path, const std::string& out_dir)
{
    storage::SimConfig cfg;
    if (!config_path.empty())
        cfg = storage::SimConfig::from_json(
            std::string(reinterpret_cast<const char*>(read_file(config_path).data()),
                        read_file(config_path).size()));
    if (const char* env = std::getenv("UPW_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

    storage::StorageSim sim(cfg);
    sim.setup("user-0", cfg.replication, cfg.prepay);
    DetRng rng(cfg.seed ^ 0x9e3779b9);
    sim.upload("user-0", "/data.bin", rng.bytes(cfg.file_bytes));
    sim.run();
    sim.write_outputs(out_dir);

    json summary{{"epochs", cfg.epochs},
                 {"conserved", sim.ledger().conserved()},
                 {"escrow", sim.ledger().balance("escrow:user-0")},
                 {"suspended", sim.record("user-0").suspended}};
    for (uint32_t i = 0; i < cfg.providers; ++i) {
        std::string name = "provider-" + std::to_string(i);
        summary["providers"][name] = {{"paused", sim.provider_paused(name)},
                                      {"balance", sim.provider_balance(name)},
                                      {"hash_ops", sim.provider_hash_ops(name)}};
    }
    write_text(std::filesystem::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_chain_sim(uint64_t width, uint64_t avg_txs, uint64_t block_size, uint64_t interval,
                  uint64_t duration, uint64_t seed, const std::string& out_dir)
{
    wider::TpsConfig cfg;
    cfg.width = width;
    cfg.avg_txs = avg_txs;
    cfg.block_size = block_size;
    cfg.interval_secs = interval;
    cfg.duration_blocks = duration;
    cfg.seed = seed;
    wider::TpsResult res = wider::bench_tps(cli_group(), cfg);

    std::string csv = "width,block_size_bytes,interval_secs,tps,blocks,submitted,confirmed,"
                      "elapsed_secs\n";
    char line[256];
    std::snprintf(line, sizeof line, "%llu,%llu,%llu,%.1f,%llu,%llu,%llu,%.3f\n",
                  static_cast<unsigned long long>(width),
                  static_cast<unsigned long long>(block_size),
                  static_cast<unsigned long long>(interval), res.tps,
                  static_cast<unsigned long long>(res.blocks),
                  static_cast<unsigned long long>(res.submitted),
                  static_cast<unsigned long long>(res.confirmed), res.elapsed_secs);
    csv += line;

    std::filesystem::path dir(out_dir);
    record_config(dir, "chain-sim",
                  {{"width", width},
                   {"avg_txs", avg_txs},
                   {"block_size", block_size},
                   {"interval", interval},
                   {"duration", duration},
                   {"seed", seed}});
    write_text(dir / "tps.csv", csv);
    std::cout << csv;
    return 0;
}

int cmd_chain_demo(uint64_t seed, const std::string& out_dir)
{
    const crypto::Group& group = cli_group();
    DetRng rng(seed);
    wider::Account alice = wider::make_account(group, rng);
    wider::Account bob = wider::make_account(group, rng);
    wider::Account carol = wider::make_account(group, rng);

    wider::ChainConfig cfg;
    wider::WiderNode node(group, cfg,
                          {{alice.keys.pk, 100}, {bob.keys.pk, 50}, {carol.keys.pk, 0}});
    auto show = [&](const char* who, const wider::Account& a) {
        std::cout << who << " = " << to_hex(a.id).substr(0, 16) << "  balance "
                  << node.balance(a.id) << "  spendable " << node.spendable(a.id) << '\n';
    };
    std::cout << "genesis allocations:\n";
    show("alice", alice);
    show("bob", bob);
    show("carol", carol);

    auto submit = [&](const wider::SubTx& tx, const char* label) {
        wider::SubmitResult r = node.submit_tx(tx);
        std::cout << label << ": " << wider::submit_result_name(r) << '\n';
        return tx.txid(group);
    };

    const wider::Subchain& sa = node.subchain(alice.id);
    Hash256 t1 = submit(wider::make_transfer(group, alice, sa.seq() + 1, sa.head_hash(group),
                                             bob.id, 30, 2),
                        "alice -> bob 30 (fee 2)");
    Hash256 t2 = submit(wider::make_transfer(group, alice, 2, t1, carol.id, 10, 1),
                        "alice -> carol 10 (fee 1)");

    uint64_t ts = cfg.genesis_timestamp + 600;
    auto out1 = node.mine_and_submit(carol.id, ts);
    std::cout << "block 1 mined by carol: confirmed " << out1.confirmed_txs
              << " txs, records:\n";
    for (const auto& rec :
         wider::BlockBodies::parse(pow::unframe_body(node.store().find(out1.block_hash)->body)
                                       .payload)
             .confirmations)
        std::cout << "  account " << to_hex(rec.account_id).substr(0, 16) << " head "
                  << to_hex(rec.subchain_head).substr(0, 16) << " seq " << rec.subchain_seq
                  << '\n';

    const wider::Subchain& sb = node.subchain(bob.id);
    submit(wider::make_claim(group, bob, sb.seq() + 1, sb.head_hash(group), t1,
                             node.confirm_height_of(t1).value_or(0), 0),
           "bob claims alice's 30");
    const wider::Subchain& sc = node.subchain(carol.id);
    submit(wider::make_claim(group, carol, sc.seq() + 1, sc.head_hash(group), t2,
                             node.confirm_height_of(t2).value_or(0), 0),
           "carol claims alice's 10");

    auto out2 = node.mine_and_submit(carol.id, ts + 600);
    std::cout << "block 2 mined by carol: confirmed " << out2.confirmed_txs << " txs\n";
    show("alice", alice);
    show("bob", bob);
    show("carol", carol);

    if (!out_dir.empty()) {
        std::filesystem::path dir(out_dir);
        record_config(dir, "chain-demo", {{"seed", seed}});
        write_text(dir / "state.txt", node.state().snapshot_text());
        node.store().save(dir / "chain");
        std::cout << "state snapshot -> " << (dir / "state.txt") << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"useful-PoW storage and sharding workbench"};
    app.require_subcommand(1);

    // encode
    auto* enc_cmd = app.add_subcommand("encode", "seal a file into a PoW replica");
    std::string in_path, out_path, node_id = "node-0";
    unsigned difficulty = 8;
    uint64_t seed = 1, segment_every = 0;
    enc_cmd->add_option("--input", in_path, "source file")->required();
    enc_cmd->add_option("--id", node_id, "encoder node id");
    enc_cmd->add_option("--difficulty", difficulty, "bits per symbol (1..16)");
    enc_cmd->add_option("--out", out_path, "replica file")->required();
    enc_cmd->add_option("--seed", seed, "seed for the synthetic chain feed");
    enc_cmd->add_option("--segment-every", segment_every,
                        "follow-chain mode: new block every N symbols (0 = static)");

    // decode
    auto* dec_cmd = app.add_subcommand("decode", "decode a replica back to the source");
    std::string dec_in, dec_out;
    dec_cmd->add_option("--input", dec_in, "replica file")->required();
    dec_cmd->add_option("--out", dec_out, "output file")->required();

    // bench-encoding
    auto* bench_cmd = app.add_subcommand("bench-encoding", "encode/decode asymmetry table");
    std::string bench_range = "1..8", bench_out = "bench-out";
    size_t bench_size = 65536;
    uint64_t bench_seed = 1;
    bench_cmd->add_option("--difficulty", bench_range, "difficulty or range LO..HI");
    bench_cmd->add_option("--size", bench_size, "source bytes");
    bench_cmd->add_option("--out", bench_out, "output directory");
    bench_cmd->add_option("--seed", bench_seed, "source seed");

    // challenge
    auto* ch_cmd = app.add_subcommand("challenge", "run one PoRep challenge round");
    std::string ch_replica, ch_source, ch_prover = "honest", ch_out = "challenge-out";
    uint64_t ch_q = 32, ch_c = 16, ch_seed = 1;
    ch_cmd->add_option("--replica", ch_replica)->required();
    ch_cmd->add_option("--source", ch_source)->required();
    ch_cmd->add_option("--q", ch_q, "challenged indices");
    ch_cmd->add_option("--factor", ch_c, "deadline factor c");
    ch_cmd->add_option("--seed", ch_seed);
    ch_cmd->add_option("--prover", ch_prover, "honest | source-only | nothing");
    ch_cmd->add_option("--out", ch_out, "output directory");

    // pre
    auto* pre_cmd = app.add_subcommand("pre", "proxy re-encryption operations");
    pre_cmd->require_subcommand(1);
    auto* pre_keygen = pre_cmd->add_subcommand("keygen", "generate a key pair");
    uint64_t pre_seed = 1;
    std::string pre_out = "pre-out";
    pre_keygen->add_option("--seed", pre_seed);
    pre_keygen->add_option("--out", pre_out, "output directory");

    auto* pre_enc = pre_cmd->add_subcommand("enc", "encrypt a short message");
    std::string pre_sk, pre_msg, pre_ct_out = "ct.hex";
    uint64_t pre_enc_seed = 2;
    pre_enc->add_option("--sk", pre_sk, "secret key hex file")->required();
    pre_enc->add_option("--msg", pre_msg, "message (up to 15 bytes)")->required();
    pre_enc->add_option("--seed", pre_enc_seed);
    pre_enc->add_option("--out", pre_ct_out);

    auto* pre_rekey = pre_cmd->add_subcommand("rekey", "issue a per-ciphertext re-key");
    std::string rk_sk, rk_pk_to, rk_ct, rk_out = "rk.hex";
    pre_rekey->add_option("--sk", rk_sk, "delegator secret key hex file")->required();
    pre_rekey->add_option("--pk-to", rk_pk_to, "delegatee public key hex file")->required();
    pre_rekey->add_option("--ct", rk_ct, "ciphertext hex file the key binds to")->required();
    pre_rekey->add_option("--out", rk_out);

    auto* pre_reenc = pre_cmd->add_subcommand("reenc", "re-encrypt a ciphertext");
    std::string re_rk, re_ct, re_out = "ct2.hex";
    pre_reenc->add_option("--rk", re_rk)->required();
    pre_reenc->add_option("--ct", re_ct)->required();
    pre_reenc->add_option("--out", re_out);

    auto* pre_dec = pre_cmd->add_subcommand("dec", "decrypt a ciphertext");
    std::string dec_sk, dec_ct, dec_origin;
    pre_dec->add_option("--sk", dec_sk)->required();
    pre_dec->add_option("--ct", dec_ct)->required();
    pre_dec->add_option("--origin", dec_origin, "delegator public key hex file (optional)");

    // mine
    auto* mine_cmd = app.add_subcommand("mine", "mine a standalone PoW chain");
    uint64_t mine_blocks = 16, mine_spacing = 600, mine_seed = 1;
    uint32_t mine_bits = 0x20007fff;
    std::string mine_out = "mine-out";
    mine_cmd->add_option("--blocks", mine_blocks);
    mine_cmd->add_option("--spacing", mine_spacing, "target seconds between blocks");
    mine_cmd->add_option("--bits", mine_bits, "compact initial target");
    mine_cmd->add_option("--seed", mine_seed);
    mine_cmd->add_option("--out", mine_out, "output directory");

    // storage-sim
    auto* ssim_cmd = app.add_subcommand("storage-sim", "permissionless storage simulation");
    std::string ssim_config, ssim_out = "storage-out";
    ssim_cmd->add_option("--config", ssim_config, "sim config json");
    ssim_cmd->add_option("--out", ssim_out, "output directory");

    // chain-sim
    auto* csim_cmd = app.add_subcommand("chain-sim", "wider chain TPS benchmark");
    uint64_t cs_width = 100, cs_avg = 10, cs_block = 40960, cs_interval = 15, cs_duration = 4,
             cs_seed = 1;
    std::string cs_out = "chain-out";
    csim_cmd->add_option("--width", cs_width);
    csim_cmd->add_option("--avg-txs", cs_avg);
    csim_cmd->add_option("--block-size", cs_block);
    csim_cmd->add_option("--interval", cs_interval);
    csim_cmd->add_option("--duration", cs_duration, "blocks to run");
    csim_cmd->add_option("--seed", cs_seed);
    csim_cmd->add_option("--out", cs_out, "output directory");

    // chain-demo
    auto* demo_cmd = app.add_subcommand("chain-demo", "3-account transfer/claim walkthrough");
    uint64_t demo_seed = 7;
    std::string demo_out;
    demo_cmd->add_option("--seed", demo_seed);
    demo_cmd->add_option("--out", demo_out, "optional output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2, --help exits 0
    }

    try {
        if (enc_cmd->parsed())
            return cmd_encode(in_path, node_id, difficulty, out_path, resolve_seed(seed),
                              segment_every);
        if (dec_cmd->parsed()) return cmd_decode(dec_in, dec_out);
        if (bench_cmd->parsed())
            return cmd_bench_encoding(bench_range, bench_size, bench_out,
                                      resolve_seed(bench_seed));
        if (ch_cmd->parsed())
            return cmd_challenge(ch_replica, ch_source, ch_q, ch_c, resolve_seed(ch_seed),
                                 ch_prover, ch_out);
        if (pre_cmd->parsed()) {
            if (pre_keygen->parsed()) return cmd_pre_keygen(resolve_seed(pre_seed), pre_out);
            if (pre_enc->parsed())
                return cmd_pre_enc(pre_sk, pre_msg, resolve_seed(pre_enc_seed), pre_ct_out);
            if (pre_rekey->parsed()) return cmd_pre_rekey(rk_sk, rk_pk_to, rk_ct, rk_out);
            if (pre_reenc->parsed()) return cmd_pre_reenc(re_rk, re_ct, re_out);
            if (pre_dec->parsed()) return cmd_pre_dec(dec_sk, dec_ct, dec_origin);
        }
        if (mine_cmd->parsed())
            return cmd_mine(mine_blocks, mine_spacing, mine_bits, resolve_seed(mine_seed),
                            mine_out);
        if (ssim_cmd->parsed()) return cmd_storage_sim(ssim_config, ssim_out);
        if (csim_cmd->parsed())
            return cmd_chain_sim(cs_width, cs_avg, cs_block, cs_interval, cs_duration,
                                 resolve_seed(cs_seed), cs_out);
        if (demo_cmd->parsed()) return cmd_chain_demo(resolve_seed(demo_seed), demo_out);
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return 2;
}
