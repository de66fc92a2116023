#pragma once

// D_k embeddings: three ordered classes of k distinct vertices, each class
// transitive in its listed order, class edges complete and cyclic
// U1 -> U2 -> U3 -> U1. check_dk_embedding is the single source of truth for
// validity; the search pipeline never returns an embedding it has not passed
// through this check.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tournament.hpp"

namespace tourney {

struct DkEmbedding {
    int k = 0;
    std::vector<int> u1, u2, u3;
};

namespace detail {

inline bool class_transitive(const Tournament& t, const std::vector<int>& c) {
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b)
            if (!t.edge(c[a], c[b])) return false;
    return true;
}

inline bool complete_between(const Tournament& t, const std::vector<int>& from,
                             const std::vector<int>& to) {
    for (int u : from)
        for (int v : to)
            if (!t.edge(u, v)) return false;
    return true;
}

}  // namespace detail

// Pure verdict. Out-of-range vertex ids are a call error, distinct from a
// false verdict.
inline bool check_dk_embedding(const Tournament& t, const DkEmbedding& e) {
    if (e.k < 1) throw InvalidParameter("check_dk_embedding: k must be >= 1");
    const std::array<const std::vector<int>*, 3> classes = {&e.u1, &e.u2, &e.u3};
    for (auto* c : classes) {
        if (static_cast<int>(c->size()) != e.k)
            throw InvalidParameter("check_dk_embedding: class size != k");
        for (int v : *c)
            if (v < 0 || v >= t.size())
                throw InvalidParameter("check_dk_embedding: vertex id out of range");
    }
    Bitset seen(t.size());
    for (auto* c : classes)
        for (int v : *c) {
            if (seen.test(v)) return false;
            seen.set(v);
        }
    for (auto* c : classes)
        if (!detail::class_transitive(t, *c)) return false;
    return detail::complete_between(t, e.u1, e.u2) && detail::complete_between(t, e.u2, e.u3) &&
           detail::complete_between(t, e.u3, e.u1);
}

namespace detail {

// Transitive k-subsets of a small tournament (n <= 15 so masks fit one word),
// each with its unique topological order. Within a tournament, a subset is
// transitive iff its in-set out-degrees are pairwise distinct.
struct SmallTransSet {
    std::uint32_t mask;
    std::vector<int> order;
};

inline std::vector<SmallTransSet> transitive_subsets(const Tournament& t, int k) {
    int n = t.size();
    std::vector<SmallTransSet> out;
    std::vector<int> idx(k);
    std::vector<std::uint32_t> rows(n);
    for (int u = 0; u < n; ++u) {
        std::uint32_t r = 0;
        for (int v = 0; v < n; ++v)
            if (t.edge(u, v)) r |= std::uint32_t{1} << v;
        rows[u] = r;
    }
    auto rec = [&](auto&& self, int depth, int start) -> void {
        if (depth == k) {
            std::uint32_t mask = 0;
            for (int i = 0; i < k; ++i) mask |= std::uint32_t{1} << idx[i];
            std::vector<std::pair<int, int>> by_deg;  // (-outdeg, vertex)
            for (int i = 0; i < k; ++i) {
                int d = std::popcount(rows[idx[i]] & mask);
                by_deg.emplace_back(-d, idx[i]);
            }
            std::sort(by_deg.begin(), by_deg.end());
            for (int i = 0; i + 1 < k; ++i)
                if (by_deg[i].first == by_deg[i + 1].first) return;  // tie: not transitive
            SmallTransSet s;
            s.mask = mask;
            for (auto& [d, v] : by_deg) s.order.push_back(v);
            out.push_back(std::move(s));
            return;
        }
        for (int v = start; v < n; ++v) {
            idx[depth] = v;
            self(self, depth + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

// Exhaustive oracle: finds some D_k embedding iff one exists. Enforced caps
// keep it a terminating desk-scale tool; iteration order is fixed, so the
// witness is deterministic.
inline std::optional<DkEmbedding> brute_force_contains_dk(const Tournament& t, int k) {
    if (k < 1) throw InvalidParameter("brute_force_contains_dk: k must be >= 1");
    if (t.size() > 15 || k > 3)
        throw SizeLimitError("brute_force_contains_dk capped at n <= 15, k <= 3");
    if (3 * k > t.size()) return std::nullopt;

    auto sets = detail::transitive_subsets(t, k);
    int s = static_cast<int>(sets.size());
    if (s == 0) return std::nullopt;

    // complete[a][b]: every edge between set a and set b points a -> b.
    std::vector<std::uint32_t> rows(t.size());
    for (int u = 0; u < t.size(); ++u) {
        std::uint32_t r = 0;
        for (int v = 0; v < t.size(); ++v)
            if (t.edge(u, v)) r |= std::uint32_t{1} << v;
        rows[u] = r;
    }
    auto complete = [&](int a, int b) {
        if (sets[a].mask & sets[b].mask) return false;
        for (int v : sets[a].order)
            if ((rows[v] & sets[b].mask) != sets[b].mask) return false;
        return true;
    };

    int words = word_count(s);
    std::vector<Word> succ(std::size_t(s) * words, 0), pred(std::size_t(s) * words, 0);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            if (a != b && complete(a, b)) {
                succ[std::size_t(a) * words + (b >> 6)] |= Word{1} << (b & 63);
                pred[std::size_t(b) * words + (a >> 6)] |= Word{1} << (a & 63);
            }

    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            if (!((succ[std::size_t(a) * words + (b >> 6)] >> (b & 63)) & 1)) continue;
            for (int w = 0; w < words; ++w) {
                Word cand = succ[std::size_t(b) * words + w] & pred[std::size_t(a) * words + w];
                while (cand) {
                    int c = w * 64 + std::countr_zero(cand);
                    cand &= cand - 1;
                    if (sets[c].mask & (sets[a].mask | sets[b].mask)) continue;
                    DkEmbedding e;
                    e.k = k;
                    e.u1 = sets[a].order;
                    e.u2 = sets[b].order;
                    e.u3 = sets[c].order;
                    return e;
                }
            }
        }
    return std::nullopt;
}

}  // namespace tourney
