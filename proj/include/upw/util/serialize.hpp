// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef UPW_UTIL_SERIALIZE_HPP
#define UPW_UTIL_SERIALIZE_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <upw/util/sha256.hpp>

namespace upw {

using Bytes = std::vector<uint8_t>;

inline Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }
inline std::string bytes_to_string(std::span<const uint8_t> b) { return std::string(b.begin(), b.end()); }

class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16_be(uint16_t v) { for (int i = 1; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i))); }
    void u32_be(uint32_t v) { for (int i = 3; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i))); }
    void u64_be(uint64_t v) { for (int i = 7; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i))); }
    void u32_le(uint32_t v) { for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i))); }
    void u64_le(uint64_t v) { for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i))); }
    void raw(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void raw(const Hash256& h) { buf_.insert(buf_.end(), h.begin(), h.end()); }
    void str(const std::string& s) { buf_.insert(buf_.end(), s.begin(), s.end()); }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

private:
    Bytes buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t u8() { need(1); return data_[pos_++]; }
    uint16_t u16_be() { return uint16_t(be(2)); }
    uint32_t u32_be() { return uint32_t(be(4)); }
    uint64_t u64_be() { return be(8); }
    uint32_t u32_le() { return uint32_t(le(4)); }
    uint64_t u64_le() { return le(8); }

    Bytes raw(size_t n)
    {
        need(n);
        Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
        pos_ += n;
        return out;
    }

    Hash256 hash()
    {
        need(32);
        Hash256 h;
        std::memcpy(h.data(), data_.data() + pos_, 32);
        pos_ += 32;
        return h;
    }

    size_t remaining() const { return data_.size() - pos_; }
    size_t position() const { return pos_; }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(size_t n) const
    {
        if (pos_ + n > data_.size()) throw std::out_of_range("truncated input");
    }
    uint64_t be(int n)
    {
        need(n);
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v = v << 8 | data_[pos_++];
        return v;
    }
    uint64_t le(int n)
    {
        need(n);
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= uint64_t(data_[pos_++]) << (8 * i);
        return v;
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

} // namespace upw

#endif // UPW_UTIL_SERIALIZE_HPP
