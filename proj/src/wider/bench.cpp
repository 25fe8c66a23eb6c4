// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/wider/bench.hpp>

#include <chrono>
#include <thread>

namespace upw::wider {

TpsResult bench_tps(const Group& group, const TpsConfig& cfg)
{
    using Clock = std::chrono::steady_clock;
    DetRng rng(cfg.seed);

    std::vector<Account> accounts;
    std::vector<std::pair<crypto::Element, uint64_t>> alloc;
    accounts.reserve(cfg.width);
    for (uint64_t i = 0; i < cfg.width; ++i) {
        accounts.push_back(make_account(group, rng));
        alloc.emplace_back(accounts.back().keys.pk, 1'000'000'000ULL);
    }

    ChainConfig chain_cfg;
    chain_cfg.block_size_limit = cfg.block_size;
    chain_cfg.pow_params.target_spacing = cfg.interval_secs;
    WiderNode node(group, chain_cfg, alloc);

    TpsResult res;
    res.config = cfg;
    uint64_t timestamp = chain_cfg.genesis_timestamp;

    auto t0 = Clock::now();
    for (uint64_t blk = 0; blk < cfg.duration_blocks; ++blk) {
        for (Account& acct : accounts) {
            const Subchain& sub = node.subchain(acct.id);
            for (uint64_t t = 0; t < cfg.avg_txs; ++t) {
                const Account& to = accounts[rng.uniform(accounts.size())];
                SubTx tx = make_transfer(group, acct, sub.seq() + 1, sub.head_hash(group),
                                         to.id, 1, rng.uniform(4));
                if (node.submit_tx(tx) == SubmitResult::Accepted) ++res.submitted;
            }
        }
        timestamp += cfg.interval_secs;
        WiderNode::MineOutcome out = node.mine_and_submit(accounts[0].id, timestamp);
        res.confirmed += out.confirmed_txs;
        ++res.blocks;
    }
    res.elapsed_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    res.tps = res.elapsed_secs > 0 ? double(res.confirmed) / res.elapsed_secs : 0;
    return res;
}

VerifyParallelResult verify_parallel(const Group& group, const std::vector<SubTx>& txs,
                                     const std::map<Hash256, crypto::Element>& sender_pk,
                                     unsigned workers)
{
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    using Clock = std::chrono::steady_clock;

    std::vector<uint8_t> ok(txs.size(), 0);
    auto t0 = Clock::now();
    auto run = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            auto it = sender_pk.find(txs[i].sender);
            if (it != sender_pk.end() && check_tx_signature(group, it->second, txs[i]))
                ok[i] = 1;
        }
    };
    if (workers == 1) {
        run(0, txs.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (txs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t begin = std::min<size_t>(w * chunk, txs.size());
            size_t end = std::min<size_t>(begin + chunk, txs.size());
            pool.emplace_back(run, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    VerifyParallelResult res;
    res.elapsed_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    for (uint32_t i = 0; i < txs.size(); ++i)
        if (ok[i]) res.valid.push_back(i);
    return res;
}

} // namespace upw::wider
