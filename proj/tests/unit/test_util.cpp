// Copyright (c) 2026 The upw developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include <upw/util/hex.hpp>
#include <upw/util/rng.hpp>
#include <upw/util/serialize.hpp>
#include <upw/util/sha256.hpp>
#include <upw/util/u256.hpp>

using namespace upw;

TEST_CASE("sha256 FIPS 180-4 vectors")
{
    CHECK(to_hex(sha256(std::string(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256(std::string("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(std::string("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // one million 'a': exercises the multi-block streaming path
    Sha256 h;
    std::string chunk(1000, 'a');
    for (int i = 0; i < 1000; ++i) h.update(chunk);
    CHECK(to_hex(h.finalize()) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("sha256 streaming equals one-shot at odd boundaries")
{
    DetRng rng(7);
    Bytes data = rng.bytes(300);
    for (size_t split : {size_t(1), size_t(63), size_t(64), size_t(65), size_t(150)}) {
        Sha256 h;
        h.update(std::span<const uint8_t>(data.data(), split));
        h.update(std::span<const uint8_t>(data.data() + split, data.size() - split));
        CHECK(h.finalize() == sha256(data));
    }
}

TEST_CASE("u256 byte order and comparison")
{
    Hash256 one{};
    one[31] = 1;
    CHECK(U256::from_be_bytes(one) == U256(1));
    CHECK(U256(1) < U256(2));
    CHECK(U256(2) > U256(1));
    CHECK((U256(1) << 128) > U256(~0ULL));
    CHECK((U256(1) << 255).to_be_bytes()[0] == 0x80);

    DetRng rng(11);
    for (int i = 0; i < 50; ++i) {
        Hash256 h;
        rng.fill(h.data(), 32);
        CHECK(U256::from_be_bytes(h).to_be_bytes() == h);
    }
}

TEST_CASE("u256 compact roundtrip matches known encodings")
{
    // 2^248: mantissa 0x010000, exponent 0x20
    U256 t = U256(1) << 248;
    CHECK(t.to_compact() == 0x20010000u);
    CHECK(U256::from_compact(0x20010000u) == t);

    // regtest-style easiest target
    U256 easy = U256::from_compact(0x207fffff);
    CHECK(easy.to_compact() == 0x207fffffu);
    CHECK(easy.bits() == 255);

    CHECK(U256::from_compact(U256(0x1234).to_compact()) == U256(0x1234));
}

TEST_CASE("u256 mul_div")
{
    CHECK(U256(1000).mul_div(3, 2) == U256(1500));
    CHECK((U256(1) << 200).mul_div(4, 1) == (U256(1) << 202));
    CHECK((U256(1) << 200).mul_div(1, 4) == (U256(1) << 198));
    // saturates instead of wrapping
    CHECK(U256::max_value().mul_div(2, 1) == U256::max_value());
    CHECK(U256::max_value().mul_div(7, 7) == U256::max_value());
}

TEST_CASE("deterministic rng replays and respects bounds")
{
    DetRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    DetRng r(1);
    for (int i = 0; i < 1000; ++i) {
        uint64_t v = r.uniform(17);
        CHECK(v < 17);
    }
    CHECK(r.bytes(33).size() == 33);
    CHECK_THROWS(r.uniform(0));
}

TEST_CASE("byte reader/writer roundtrip and bounds")
{
    ByteWriter w;
    w.u8(0xab);
    w.u16_be(0x1234);
    w.u32_be(0xdeadbeef);
    w.u64_be(0x0102030405060708ULL);
    w.u32_le(0xcafebabe);
    w.u64_le(0x1122334455667788ULL);
    w.str("hi");
    Bytes buf = w.take();

    ByteReader r(buf);
    CHECK(r.u8() == 0xab);
    CHECK(r.u16_be() == 0x1234);
    CHECK(r.u32_be() == 0xdeadbeef);
    CHECK(r.u64_be() == 0x0102030405060708ULL);
    CHECK(r.u32_le() == 0xcafebabe);
    CHECK(r.u64_le() == 0x1122334455667788ULL);
    CHECK(bytes_to_string(r.raw(2)) == "hi");
    CHECK(r.done());
    CHECK_THROWS_AS(r.u8(), std::out_of_range);
}

TEST_CASE("hex roundtrip")
{
    CHECK(to_hex(from_hex("00ff10ab")) == "00ff10ab");
    CHECK_THROWS(from_hex("abc"));
    CHECK_THROWS(from_hex("zz"));
}
