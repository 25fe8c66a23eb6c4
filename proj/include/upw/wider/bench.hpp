// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_WIDER_BENCH_HPP
#define UPW_WIDER_BENCH_HPP

#include <upw/wider/chain.hpp>

namespace upw::wider {

struct TpsConfig {
    uint64_t width = 100;          // accounts updating per interval
    uint64_t avg_txs = 10;         // transactions per subchain per interval
    uint64_t block_size = 40 * 1024;
    uint64_t interval_secs = 15;   // simulated clock step per block
    uint64_t duration_blocks = 4;
    uint64_t seed = 1;
};

struct TpsResult {
    TpsConfig config;
    uint64_t submitted = 0;
    uint64_t confirmed = 0;
    uint64_t blocks = 0;
    double elapsed_secs = 0; // wall clock over the full pipeline
    double tps = 0;          // confirmed / elapsed
};

/// Drives width account-shards through sign -> submit -> build -> mine (at
/// the easiest target) -> apply -> verify, on the simulated clock, and
/// reports sustained pipeline throughput on this hardware.
TpsResult bench_tps(const Group& group, const TpsConfig& cfg);

struct VerifyParallelResult {
    std::vector<uint32_t> valid; // indices of txs whose signatures verify
    double elapsed_secs = 0;
};

/// Signature verification fanned out over `workers` threads. The verified
/// set is identical for any worker count.
VerifyParallelResult verify_parallel(const Group& group, const std::vector<SubTx>& txs,
                                     const std::map<Hash256, crypto::Element>& sender_pk,
                                     unsigned workers);

} // namespace upw::wider

#endif // UPW_WIDER_BENCH_HPP
