#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace tourney {

using Word = std::uint64_t;

inline int word_count(int bits) { return (bits + 63) / 64; }

// Fixed-size bit vector; used for adjacency rows and vertex subsets.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_(word_count(n), 0) {}

    int size() const { return n_; }
    int words() const { return static_cast<int>(w_.size()); }
    Word* data() { return w_.data(); }
    const Word* data() const { return w_.data(); }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= Word{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
    void clear() { std::fill(w_.begin(), w_.end(), Word{0}); }

    int count() const {
        int c = 0;
        for (Word x : w_) c += std::popcount(x);
        return c;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    static Bitset of(int n, const std::vector<int>& members) {
        Bitset b(n);
        for (int v : members) b.set(v);
        return b;
    }

private:
    int n_ = 0;
    std::vector<Word> w_;
};

inline int and_popcount(const Word* a, const Word* b, int nw) {
    int c = 0;
    for (int i = 0; i < nw; ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

inline int and3_popcount(const Word* a, const Word* b, const Word* c, int nw) {
    int s = 0;
    for (int i = 0; i < nw; ++i) s += std::popcount(a[i] & b[i] & c[i]);
    return s;
}

}  // namespace tourney
