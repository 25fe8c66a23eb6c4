// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_STORAGE_LEDGER_HPP
#define UPW_STORAGE_LEDGER_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace upw::storage {

struct LedgerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stablecoin ledger with exact integer accounting. Deposits mint, every
/// other movement is a transfer, so sum(balances) == minted at all times.
class Ledger {
public:
    struct Entry {
        uint64_t time;
        uint64_t seq;
        std::string from; // "" for a mint
        std::string to;
        uint64_t amount;
        std::string reason;
    };

    void mint(const std::string& account, uint64_t amount, uint64_t time,
              const std::string& reason);

    /// False (and no movement) when `from` lacks funds.
    bool transfer(const std::string& from, const std::string& to, uint64_t amount,
                  uint64_t time, const std::string& reason);

    uint64_t balance(const std::string& account) const;
    uint64_t minted() const { return minted_; }

    /// Exact conservation: every minted unit is in exactly one balance.
    bool conserved() const;

    const std::vector<Entry>& entries() const { return log_; }
    std::string to_csv() const;

private:
    std::map<std::string, uint64_t> balances_;
    std::vector<Entry> log_;
    uint64_t minted_ = 0;
    uint64_t seq_ = 0;
};

} // namespace upw::storage

#endif // UPW_STORAGE_LEDGER_HPP
