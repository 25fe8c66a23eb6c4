// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/storage/ledger.hpp>

namespace upw::storage {

void Ledger::mint(const std::string& account, uint64_t amount, uint64_t time,
                  const std::string& reason)
{
    balances_[account] += amount;
    minted_ += amount;
    log_.push_back({time, seq_++, "", account, amount, reason});
}

bool Ledger::transfer(const std::string& from, const std::string& to, uint64_t amount,
                      uint64_t time, const std::string& reason)
{
    auto it = balances_.find(from);
    if (it == balances_.end() || it->second < amount) return false;
    it->second -= amount;
    balances_[to] += amount;
    log_.push_back({time, seq_++, from, to, amount, reason});
    return true;
}

uint64_t Ledger::balance(const std::string& account) const
{
    auto it = balances_.find(account);
    return it == balances_.end() ? 0 : it->second;
}

bool Ledger::conserved() const
{
    uint64_t total = 0;
    for (const auto& [account, amount] : balances_) total += amount;
    return total == minted_;
}

std::string Ledger::to_csv() const
{
    std::string out = "time,seq,from,to,amount,reason\n";
    for (const Entry& e : log_) {
        out += std::to_string(e.time) + "," + std::to_string(e.seq) + "," + e.from + "," +
               e.to + "," + std::to_string(e.amount) + "," + e.reason + "\n";
    }
    return out;
}

} // namespace upw::storage
