#pragma once

// Generator families. All randomness is drawn from streams derived from the
// spec seed, so any (family, parameters, seed) triple rebuilds the same
// tournament bit for bit.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"
#include "tournament.hpp"

namespace tourney {

enum class Family { transitive, dk, cyclic_blowup, eps_random, planted_long };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::transitive: return "transitive";
        case Family::dk: return "dk";
        case Family::cyclic_blowup: return "cyclic-blowup";
        case Family::eps_random: return "eps-random";
        case Family::planted_long: return "planted-long";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "transitive") return Family::transitive;
    if (s == "dk") return Family::dk;
    if (s == "cyclic-blowup") return Family::cyclic_blowup;
    if (s == "eps-random") return Family::eps_random;
    if (s == "planted-long") return Family::planted_long;
    throw InvalidParameter("unknown generator family: " + s);
}

struct GeneratorSpec {
    Family family = Family::transitive;
    int n = 0;
    int k = 0;
    int m = 0;
    double eps = 0.0;
    int min_length = 0;
    std::uint64_t seed = 0;
};

// Edges i -> j for i < j; the identity order has no backward edges.
inline Tournament gen_transitive(int n) {
    if (n < 1) throw InvalidParameter("gen_transitive: n must be >= 1");
    Tournament t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.orient(i, j);
    return t;
}

// Three transitive classes of size k on vertices {0..k-1}, {k..2k-1},
// {2k..3k-1}; class edges cycle 1 -> 2 -> 3 -> 1.
inline Tournament gen_dk(int k) {
    if (k < 1) throw InvalidParameter("gen_dk: k must be >= 1");
    int n = 3 * k;
    Tournament t(n);
    auto cls = [k](int v) { return v / k; };
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int cu = cls(u), cv = cls(v);
            if (cu == cv) {
                t.orient(u, v);
            } else if ((cu + 1) % 3 == cv) {
                t.orient(u, v);
            } else {
                t.orient(v, u);
            }
        }
    return t;
}

// k consecutive blocks, each a copy of D_{n/3k}; cross-block edges run from
// lower blocks to higher ones.
inline Tournament gen_cyclic_blowup(int n, int k) {
    if (n < 1 || k < 1) throw InvalidParameter("gen_cyclic_blowup: n and k must be >= 1");
    if (n % (3 * k) != 0) throw InvalidParameter("gen_cyclic_blowup: 3k must divide n");
    int block = n / k;
    Tournament dk = gen_dk(block / 3);
    Tournament t(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (u / block != v / block) {
                t.orient(u, v);
            } else if (dk.edge(u % block, v % block)) {
                t.orient(u, v);
            } else {
                t.orient(v, u);
            }
        }
    return t;
}

// Transitive base with each forward edge independently reversed with
// probability eps. Pairs are visited in fixed (u, v) order, one Bernoulli
// draw per pair, so output is bitwise reproducible per seed.
inline Tournament gen_eps_random(int n, double eps, std::uint64_t seed) {
    if (n < 1) throw InvalidParameter("gen_eps_random: n must be >= 1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidParameter("gen_eps_random: eps must be in [0,1]");
    Tournament t(n);
    Rng rng(derive_seed(seed, stream::kGenerator));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.bernoulli(eps))
                t.orient(v, u);
            else
                t.orient(u, v);
        }
    return t;
}

// Transitive base with exactly m reversed edges of index gap >= min_length,
// chosen uniformly without replacement. Rejection sampling is tried first
// (100*m attempt cap), then explicit enumeration of eligible pairs.
inline Tournament gen_planted_long(int n, int m, int min_length, std::uint64_t seed) {
    if (n < 1) throw InvalidParameter("gen_planted_long: n must be >= 1");
    if (m < 0) throw InvalidParameter("gen_planted_long: m must be >= 0");
    if (min_length >= n) throw InvalidParameter("gen_planted_long: min_length must be < n");
    int gap = std::max(1, min_length);
    long long eligible = 0;
    for (int g = gap; g < n; ++g) eligible += n - g;
    if (m > eligible)
        throw InvalidParameter("gen_planted_long: m exceeds number of eligible pairs");

    Tournament t = gen_transitive(n);
    Rng rng(derive_seed(seed, stream::kGenerator));
    std::vector<std::pair<int, int>> picked;
    auto seen = [&](int i, int j) {
        for (auto& p : picked)
            if (p.first == i && p.second == j) return true;
        return false;
    };
    long long attempts = 0, cap = 100LL * std::max(1, m);
    while (static_cast<int>(picked.size()) < m && attempts < cap) {
        ++attempts;
        int i = rng.below_int(n);
        int j = rng.below_int(n);
        if (j - i < gap) continue;
        if (seen(i, j)) continue;
        picked.emplace_back(i, j);
    }
    if (static_cast<int>(picked.size()) < m) {
        std::size_t need = m - picked.size();
        std::vector<std::pair<int, int>> pool;
        pool.reserve(static_cast<std::size_t>(eligible));
        for (int i = 0; i < n; ++i)
            for (int j = i + gap; j < n; ++j)
                if (!seen(i, j)) pool.emplace_back(i, j);
        rng.partial_shuffle(pool, need);
        picked.insert(picked.end(), pool.begin(), pool.begin() + need);
    }
    for (auto& [i, j] : picked) t.orient(j, i);
    return t;
}

inline Tournament generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::transitive: return gen_transitive(spec.n);
        case Family::dk: return gen_dk(spec.k);
        case Family::cyclic_blowup: return gen_cyclic_blowup(spec.n, spec.k);
        case Family::eps_random: return gen_eps_random(spec.n, spec.eps, spec.seed);
        case Family::planted_long:
            return gen_planted_long(spec.n, spec.m, spec.min_length, spec.seed);
    }
    throw InvalidParameter("unknown generator family");
}

// Visits every labeled tournament on n vertices (2^C(n,2) of them); only
// sensible for tiny n.
template <class F>
void for_each_labeled_tournament(int n, F&& f) {
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        Tournament t(n);
        int bit = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++bit) {
                if ((mask >> bit) & 1)
                    t.orient(v, u);
                else
                    t.orient(u, v);
            }
        f(t);
    }
}

}  // namespace tourney
