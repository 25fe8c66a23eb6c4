// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <upw/crypto/group.hpp>

namespace upw::crypto {

mpz_class mpz_from_bytes(std::span<const uint8_t> b)
{
    mpz_class v;
    mpz_import(v.get_mpz_t(), b.size(), 1 /*msb first*/, 1, 0, 0, b.data());
    return v;
}

Bytes mpz_to_bytes(const mpz_class& v, size_t width)
{
    Bytes out(width, 0);
    size_t count = 0;
    mpz_export(out.data(), &count, 1, 1, 0, 0, v.get_mpz_t());
    if (count > width) throw std::invalid_argument("value wider than encoding");
    // right-align: mpz_export wrote the significant bytes at the front
    if (count < width) {
        std::copy_backward(out.begin(), out.begin() + count, out.begin() + width);
        std::fill(out.begin(), out.begin() + (width - count), 0);
    }
    return out;
}

Group::Group(const char* q_hex, const char* p_hex, unsigned generator, size_t element_bytes)
    : q_(q_hex, 16), p_(p_hex, 16), g_(generator), element_bytes_(element_bytes)
{
    if (mpz_sizeinbase(q_.get_mpz_t(), 2) > element_bytes_ * 8)
        throw std::invalid_argument("element encoding too narrow for q");
}

const Group& Group::production()
{
    static const Group g(
        "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff72ef",
        "7fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffb977", 4, 32);
    return g;
}

const Group& Group::tiny()
{
    static const Group g("fef3", "7f79", 4, 32); // q = 65267, p = 32633
    return g;
}

Element Group::pow(const Element& base, const Scalar& e) const
{
    Element r;
    Scalar exp = ((e % p_) + p_) % p_;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), q_.get_mpz_t());
    return r;
}

Element Group::inv(const Element& a) const
{
    Element r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q_.get_mpz_t()) == 0)
        throw std::invalid_argument("element not invertible");
    return r;
}

Scalar Group::scalar_inv(const Scalar& s) const
{
    Scalar r;
    if (mpz_invert(r.get_mpz_t(), s.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw std::invalid_argument("scalar not invertible");
    return r;
}

bool Group::is_element(const Element& a) const
{
    if (a < 1 || a >= q_) return false;
    Element t;
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    return t == 1;
}

Scalar Group::random_scalar(DetRng& rng) const
{
    const size_t bits = mpz_sizeinbase(p_.get_mpz_t(), 2);
    const size_t bytes = (bits + 7) / 8;
    const unsigned drop = static_cast<unsigned>(bytes * 8 - bits);
    for (;;) {
        Bytes buf = rng.bytes(bytes);
        buf[0] = static_cast<uint8_t>(buf[0] & (0xff >> drop));
        Scalar s = mpz_from_bytes(buf);
        if (s >= 1 && s < p_) return s;
    }
}

Bytes Group::encode_element(const Element& a) const { return mpz_to_bytes(a, element_bytes_); }

Element Group::decode_element(std::span<const uint8_t> b) const
{
    if (b.size() != element_bytes_) throw std::invalid_argument("bad element encoding length");
    Element a = mpz_from_bytes(b);
    if (a < 1 || a >= q_) throw std::invalid_argument("element out of range");
    return a;
}

Bytes Group::encode_scalar(const Scalar& s) const { return mpz_to_bytes(s, element_bytes_); }

Scalar Group::decode_scalar(std::span<const uint8_t> b) const
{
    if (b.size() != element_bytes_) throw std::invalid_argument("bad scalar encoding length");
    Scalar s = mpz_from_bytes(b);
    if (s >= p_) throw std::invalid_argument("scalar out of range");
    return s;
}

Scalar Group::hash_to_scalar(const std::string& tag, std::span<const uint8_t> data) const
{
    const size_t bits = mpz_sizeinbase(p_.get_mpz_t(), 2);
    for (uint8_t counter = 0;; ++counter) {
        Sha256 h;
        h.update(tag);
        h.update(data);
        h.update(std::span<const uint8_t>(&counter, 1));
        Hash256 d = h.finalize();
        Scalar s = mpz_from_bytes(d);
        // keep the top `bits` of the digest, then rejection-sample
        if (256 > bits) s >>= (256 - bits);
        if (s >= 1 && s < p_) return s;
    }
}

} // namespace upw::crypto
