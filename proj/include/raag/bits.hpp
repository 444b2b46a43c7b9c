#ifndef RAAG_BITS_HPP
#define RAAG_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace raag {

/// Dense bit vector packed into 64-bit words. Bits past size() are always zero.
///
/// Doubles as a vertex set for the graph code and as a vector over GF(2) for
/// the linear algebra.
class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

    static constexpr std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

    /// Vector with the given bit set.
    static BitVector unit(std::size_t size, std::size_t index) {
        BitVector v(size);
        v.set(index);
        return v;
    }

    /// Parses a string of '0'/'1' characters; character i becomes bit i.
    static BitVector from_string(const std::string& bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set(i);
            }
        }
        return v;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    bool operator[](std::size_t i) const { return test(i); }

    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
    void assign(std::size_t i, bool value) {
        if (value) {
            set(i);
        } else {
            reset(i);
        }
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    bool none() const {
        for (Word w : words_) {
            if (w != 0) {
                return false;
            }
        }
        return true;
    }
    bool any() const { return !none(); }

    /// Index of the lowest set bit at or after `from`, or size() when there is none.
    std::size_t find_next(std::size_t from) const {
        if (from >= size_) {
            return size_;
        }
        std::size_t wi = from / kWordBits;
        Word w = words_[wi] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w != 0) {
                return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            }
            if (++wi == words_.size()) {
                return size_;
            }
            w = words_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    /// Indices of the set bits in increasing order.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) {
            out.push_back(i);
        }
        return out;
    }

    BitVector& operator^=(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] ^= o.words_[i];
        }
        return *this;
    }
    BitVector& operator&=(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= o.words_[i];
        }
        return *this;
    }
    BitVector& operator|=(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] |= o.words_[i];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

    /// Inner product over GF(2).
    bool dot(const BitVector& o) const {
        Word acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            acc ^= words_[i] & o.words_[i];
        }
        return (std::popcount(acc) & 1) != 0;
    }

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    /// Bits as '0'/'1' characters, bit 0 first.
    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i) {
            if (test(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Orders by size, then by the bit string read from bit 0 upward.
    friend bool operator<(const BitVector& a, const BitVector& b) {
        if (a.size_ != b.size_) {
            return a.size_ < b.size_;
        }
        for (std::size_t i = 0; i < a.size_; ++i) {
            if (a.test(i) != b.test(i)) {
                return !a.test(i);
            }
        }
        return false;
    }

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

using Gf2Vector = BitVector;

}  // namespace raag

#endif  // RAAG_BITS_HPP
