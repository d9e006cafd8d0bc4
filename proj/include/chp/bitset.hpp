#ifndef CHP_BITSET_HPP
#define CHP_BITSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace chp {

// Fixed-size dynamic bitset. Word count is set at construction; all binary
// operations require operands of equal size.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (uint64_t w : words_) {
            if (w) return true;
        }
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // this &= ~o
    Bitset& and_not(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & o.words_[i]) return true;
        }
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & ~o.words_[i]) return false;
        }
        return true;
    }

    int find_first() const { return find_next(-1); }

    // First set bit strictly after `prev`, or -1.
    int find_next(int prev) const {
        int i = prev + 1;
        if (i >= nbits_) return -1;
        size_t wi = static_cast<size_t>(i) >> 6;
        uint64_t w = words_[wi] >> (i & 63);
        if (w) return i + std::countr_zero(w);
        for (++wi; wi < words_.size(); ++wi) {
            if (words_[wi]) return static_cast<int>(wi * 64) + std::countr_zero(words_[wi]);
        }
        return -1;
    }

    template <class F>
    void for_each(F f) const {
        for (int v = find_first(); v >= 0; v = find_next(v)) f(v);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    static Bitset from(const std::vector<int>& ids, int nbits) {
        Bitset b(nbits);
        for (int v : ids) b.set(v);
        return b;
    }

    bool operator==(const Bitset&) const = default;

private:
    int nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace chp

#endif
