#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hxx {

// Fixed-width chain of bits backed by 64-bit words. Bit 0 lives in the lowest
// bit of word 0 and is printed first by to_string(). Widths above 64 spill
// into further words; the common case (one word) takes the fast paths below.
class BitChain {
public:
    BitChain() : nbits_(0) {}
    explicit BitChain(uint32_t nbits)
        : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    static BitChain single(uint32_t nbits, uint32_t pos) {
        BitChain b(nbits);
        b.set(pos);
        return b;
    }

    uint32_t width() const { return nbits_; }
    size_t nwords() const { return w_.size(); }
    uint64_t word(size_t i) const { return w_[i]; }

    bool test(uint32_t i) const {
        check(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(uint32_t i) {
        check(i);
        w_[i >> 6] |= uint64_t(1) << (i & 63);
    }
    void reset(uint32_t i) {
        check(i);
        w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void flip(uint32_t i) {
        check(i);
        w_[i >> 6] ^= uint64_t(1) << (i & 63);
    }

    uint32_t count() const {
        if (w_.size() == 1) return std::popcount(w_[0]);
        uint32_t n = 0;
        for (uint64_t x : w_) n += std::popcount(x);
        return n;
    }

    // number of set bits strictly below position i
    uint32_t count_below(uint32_t i) const {
        if (i == 0) return 0;
        if (w_.size() == 1)
            return std::popcount(w_[0] & ((i >= 64) ? ~uint64_t(0) : ((uint64_t(1) << i) - 1)));
        uint32_t n = 0;
        uint32_t full = i >> 6;
        for (uint32_t k = 0; k < full && k < w_.size(); ++k) n += std::popcount(w_[k]);
        if (full < w_.size() && (i & 63))
            n += std::popcount(w_[full] & ((uint64_t(1) << (i & 63)) - 1));
        return n;
    }

    // count of set bits within [lo, hi)
    uint32_t count_range(uint32_t lo, uint32_t hi) const {
        return count_below(hi) - count_below(lo);
    }

    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }

    bool intersects(const BitChain& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    BitChain& operator^=(const BitChain& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    BitChain& operator|=(const BitChain& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    BitChain& operator&=(const BitChain& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }

    friend bool operator==(const BitChain& a, const BitChain& b) {
        return a.nbits_ == b.nbits_ && a.w_ == b.w_;
    }

    // numeric order, treating the chain as a little-endian integer
    friend bool operator<(const BitChain& a, const BitChain& b) {
        for (size_t k = a.w_.size(); k-- > 0;) {
            if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
        }
        return false;
    }

    // xor an all-ones mask over [i, width)
    void flip_from(uint32_t i) {
        uint32_t k0 = i >> 6;
        for (size_t k = k0; k < w_.size(); ++k) {
            uint64_t m = ~uint64_t(0);
            if (k == k0) m <<= (i & 63);
            w_[k] ^= m;
        }
        trim();
    }

    // prefix parity: result bit i = parity of the number of set bits of v
    // strictly below i, carried across words
    static BitChain parity_chain(const BitChain& v) {
        BitChain s(v.nbits_);
        uint64_t carry = 0;
        for (size_t k = 0; k < v.w_.size(); ++k) {
            uint64_t x = v.w_[k] << 1; // strict prefix within the word
            x ^= x << 1;
            x ^= x << 2;
            x ^= x << 4;
            x ^= x << 8;
            x ^= x << 16;
            x ^= x << 32;
            s.w_[k] = x ^ (carry ? ~uint64_t(0) : 0);
            carry ^= uint64_t(std::popcount(v.w_[k]) & 1);
        }
        s.trim();
        return s;
    }

    // visit set bit positions in ascending order
    template <class F>
    void for_each_set(F&& f) const {
        for (size_t k = 0; k < w_.size(); ++k) {
            uint64_t x = w_[k];
            while (x) {
                f(uint32_t(k * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (uint32_t i = 0; i < nbits_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    static BitChain from_string(const std::string& s) {
        BitChain b(uint32_t(s.size()));
        for (uint32_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                b.set(i);
            else if (s[i] != '0')
                throw std::invalid_argument("bad bit character in '" + s + "'");
        }
        return b;
    }

    size_t hash() const {
        uint64_t h = 0xcbf29ce484222325ull ^ nbits_;
        for (uint64_t x : w_) {
            h ^= x;
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return size_t(h);
    }

private:
    void check(uint32_t i) const {
        if (i >= nbits_) throw std::out_of_range("bit index " + std::to_string(i) +
                                                 " out of range for width " + std::to_string(nbits_));
    }
    void trim() {
        uint32_t tail = nbits_ & 63;
        if (tail && !w_.empty()) w_.back() &= (uint64_t(1) << tail) - 1;
    }

    uint32_t nbits_;
    std::vector<uint64_t> w_;
};

struct BitChainHash {
    size_t operator()(const BitChain& b) const { return b.hash(); }
};

} // namespace hxx
