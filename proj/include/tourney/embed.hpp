#pragma once

// The embedding pipeline. Given a set E of edges that each lie in many
// directed triangles, find_dk_imbalanced runs: tripartition -> good-edge
// filter -> dependent random choice -> transitive greedy (twice) -> matching
// -> complete-bipartite extraction -> transitive greedy -> assembly. Every
// stage that can fall short retries with fresh derived randomness, and the
// assembled embedding must pass check_dk_embedding before it is returned, so
// false positives are impossible by construction.
//
// find_dk is the driver: it walks the density increment (descend into a
// backward-dense window, doubling eps) until the long-edges branch fires,
// then hands off to the pipeline. Paper mode uses the symbolic parameters
// (d = ceil(3k/gamma), l = 4d, floors sqrt(n) and (n/3)^(3/4)) and honestly
// reports not-found when they are unreachable; adaptive mode scales the
// floors to the measured instance so the same stages can be exercised at
// desk sizes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dk.hpp"
#include "ordering.hpp"
#include "ratio.hpp"
#include "rng.hpp"
#include "tournament.hpp"
#include "triangles.hpp"

namespace tourney {

struct PipelineConfig {
    enum class Mode { paper, adaptive };
    Mode mode = Mode::adaptive;
    std::uint64_t seed = 0;
    int partition_retries = 30;  // best-of-R tripartitions
    int stage_retries = 20;      // retries for DRC/matching/extraction chain
    int search_retries = 3;      // whole-pipeline reruns inside find_dk
    int drc_sample_size = 2;     // adaptive l
    bool brute_force_fallback = true;
    // The triangle lower-bound constant c is never pinned numerically by the
    // theory; it is carried here for reporting only. C = 2^33 * c.
    double c_triangle = 1.0;
    std::int64_t time_budget_ms = 0;  // 0 = unlimited
    double big_c() const { return std::ldexp(c_triangle, 33); }
};

inline std::string mode_name(PipelineConfig::Mode m) {
    return m == PipelineConfig::Mode::paper ? "paper" : "adaptive";
}

inline PipelineConfig::Mode mode_from_name(const std::string& s) {
    if (s == "paper") return PipelineConfig::Mode::paper;
    if (s == "adaptive") return PipelineConfig::Mode::adaptive;
    throw InvalidParameter("unknown mode: " + s);
}

// Bipartite graph with bit-rows on the A side.
struct Bigraph {
    int na = 0, nb = 0, words = 0;
    std::vector<Word> rows;

    Bigraph() = default;
    Bigraph(int a, int b) : na(a), nb(b), words(word_count(b)), rows(std::size_t(a) * words, 0) {}

    void add(int a, int b) { rows[std::size_t(a) * words + (b >> 6)] |= Word{1} << (b & 63); }
    bool edge(int a, int b) const {
        return (rows[std::size_t(a) * words + (b >> 6)] >> (b & 63)) & 1;
    }
    const Word* row(int a) const { return &rows[std::size_t(a) * words]; }
    int degree(int a) const {
        int c = 0;
        for (int i = 0; i < words; ++i) c += std::popcount(row(a)[i]);
        return c;
    }
    long long edge_count() const {
        long long c = 0;
        for (int a = 0; a < na; ++a) c += degree(a);
        return c;
    }
};

// ---------------------------------------------------------------------------
// Tripartition and good edges

struct Tripartition {
    std::vector<int> v1, v2, v3;
    Ratio gamma;
    int n = 0;  // ambient vertex count the threshold gamma*n/3 refers to
    std::vector<std::pair<int, int>> candidates;  // edges x->y with x in v1, y in v2
    std::vector<long long> q3;                    // directed-triangle completions into v3
    std::vector<int> good;                        // indices into candidates passing the threshold

    // q3 >= gamma*n/3, exact: 3*den*q3 >= num*n
    bool passes(long long q) const { return Int128(3) * gamma.den * q >= Int128(gamma.num) * n; }
};

// Uniformly random equipartition into three parts of size floor(n/3); up to
// two leftover vertices are excluded. Parts are reported sorted.
inline std::array<std::vector<int>, 3> random_tripartition(const Tournament& t,
                                                           std::uint64_t seed) {
    int n = t.size();
    if (n < 3) throw InvalidParameter("random_tripartition: need n >= 3");
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    Rng rng(derive_seed(seed, stream::kPartition));
    rng.shuffle(ids);
    int q = n / 3;
    std::array<std::vector<int>, 3> parts;
    for (int p = 0; p < 3; ++p) {
        parts[p].assign(ids.begin() + std::ptrdiff_t(p) * q, ids.begin() + std::ptrdiff_t(p + 1) * q);
        std::sort(parts[p].begin(), parts[p].end());
    }
    return parts;
}

// Deterministic partition aligned with an edge set: vertices that mostly
// appear as tails of E go to V1, mostly heads to V2, the rest to V3. For
// backward-edge inputs this puts late ordering positions in V1 and early ones
// in V2, which is where the cyclic structure lives.
inline std::array<std::vector<int>, 3> structured_tripartition(
    int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<long long> score(n, 0);
    for (const auto& [x, y] : edges) {
        ++score[x];
        --score[y];
    }
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    int q = n / 3;
    std::array<std::vector<int>, 3> parts;
    parts[0].assign(ids.begin(), ids.begin() + q);
    parts[2].assign(ids.begin() + q, ids.begin() + 2 * q);
    parts[1].assign(ids.end() - q, ids.end());
    for (auto& p : parts) std::sort(p.begin(), p.end());
    return parts;
}

// Filters E to edges x->y with x in V1, y in V2 whose completion count
// Q3 = |{z in V3 : y->z and z->x}| reaches gamma*n/3. All Q3 values of the
// candidates are kept for later recounts.
inline Tripartition good_edges(const Tournament& t, const std::vector<std::pair<int, int>>& edges,
                               const std::array<std::vector<int>, 3>& parts, Ratio gamma) {
    int n = t.size();
    Tripartition tri;
    tri.v1 = parts[0];
    tri.v2 = parts[1];
    tri.v3 = parts[2];
    tri.gamma = gamma;
    tri.n = n;

    std::vector<signed char> part_of(n, -1);
    for (int p = 0; p < 3; ++p)
        for (int v : parts[p]) {
            if (v < 0 || v >= n) throw InvalidParameter("good_edges: vertex id out of range");
            if (part_of[v] != -1) throw InvalidParameter("good_edges: parts not disjoint");
            part_of[v] = static_cast<signed char>(p);
        }
    Bitset v3 = Bitset::of(n, tri.v3);
    int nw = t.row_words();

    for (const auto& [x, y] : edges) {
        if (x < 0 || y < 0 || x >= n || y >= n || !t.edge(x, y))
            throw InvalidParameter("good_edges: E contains a non-edge");
        if (part_of[x] != 0 || part_of[y] != 1) continue;
        // z in V3 with y->z and z->x:  row(y) & ~row(x) & v3  (x,y are not in V3)
        const Word* ry = t.row(y);
        const Word* rx = t.row(x);
        const Word* m = v3.data();
        long long q = 0;
        for (int i = 0; i < nw; ++i) q += std::popcount(ry[i] & ~rx[i] & m[i]);
        tri.candidates.emplace_back(x, y);
        tri.q3.push_back(q);
        if (tri.passes(q)) tri.good.push_back(static_cast<int>(tri.candidates.size()) - 1);
    }
    return tri;
}

// ---------------------------------------------------------------------------
// Dependent random choice

struct DrcParams {
    int d = 1;                  // subset size whose common neighbourhood must stay large
    int l = 4;                  // sample size
    Ratio beta, gamma;          // densities from the caller, for the record
    int w1_floor = 1;           // required |W1|
    int neighborhood_floor = 0; // required common-neighbour count per d-subset; 0 disables
};

struct DrcResult {
    std::vector<int> w1;  // indices into A
    int attempts = 0;
    std::vector<std::vector<int>> checked_subsets;  // the spot-checked d-subsets
    std::vector<int> checked_counts;                // their common-neighbour counts
};

// Samples l vertices of B with replacement and keeps their common
// neighbourhood W1 in A. Accepts when |W1| reaches the caller's floor and a
// spot-check of min(100, all) d-subsets of W1 each has at least
// neighborhood_floor common neighbours in B; otherwise retries.
inline std::optional<DrcResult> dependent_random_choice(const Bigraph& h, const DrcParams& p,
                                                        std::uint64_t seed, int max_retries) {
    if (h.na != h.nb) throw InvalidParameter("dependent_random_choice: |A| != |B|");
    if (max_retries < 1) throw InvalidParameter("dependent_random_choice: max_retries >= 1");
    if (p.d < 1 || p.l < p.d) throw InvalidParameter("dependent_random_choice: need l >= d >= 1");

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(derive_seed(seed, stream::kDrc, static_cast<std::uint64_t>(attempt)));
        std::vector<int> samples(p.l);
        for (int i = 0; i < p.l; ++i) samples[i] = rng.below_int(h.nb);

        DrcResult res;
        res.attempts = attempt + 1;
        for (int a = 0; a < h.na; ++a) {
            bool all = true;
            for (int s : samples)
                if (!h.edge(a, s)) {
                    all = false;
                    break;
                }
            if (all) res.w1.push_back(a);
        }
        if (static_cast<int>(res.w1.size()) < p.w1_floor) continue;

        bool ok = true;
        int w = static_cast<int>(res.w1.size());
        if (p.neighborhood_floor > 0 && w >= p.d) {
            // number of d-subsets, saturating at 101
            long long subsets = 1;
            for (int i = 0; i < p.d && subsets <= 100; ++i)
                subsets = subsets * (w - i) / (i + 1);
            std::vector<std::vector<int>> picks;
            if (subsets <= 100) {
                std::vector<int> comb(p.d);
                for (int i = 0; i < p.d; ++i) comb[i] = i;
                for (;;) {
                    std::vector<int> subset(p.d);
                    for (int i = 0; i < p.d; ++i) subset[i] = res.w1[comb[i]];
                    picks.push_back(std::move(subset));
                    int i = p.d - 1;
                    while (i >= 0 && comb[i] == w - p.d + i) --i;
                    if (i < 0) break;
                    ++comb[i];
                    for (int j = i + 1; j < p.d; ++j) comb[j] = comb[j - 1] + 1;
                }
            } else {
                std::vector<int> pool(res.w1);
                for (int c = 0; c < 100; ++c) {
                    rng.partial_shuffle(pool, p.d);
                    std::vector<int> subset(pool.begin(), pool.begin() + p.d);
                    std::sort(subset.begin(), subset.end());
                    picks.push_back(std::move(subset));
                }
            }
            std::vector<Word> acc(h.words);
            for (const auto& subset : picks) {
                std::fill(acc.begin(), acc.end(), ~Word{0});
                for (int a : subset)
                    for (int i = 0; i < h.words; ++i) acc[i] &= h.row(a)[i];
                int spare = h.words * 64 - h.nb;
                if (spare > 0) acc[h.words - 1] &= ~Word{0} >> spare;
                int common = 0;
                for (Word x : acc) common += std::popcount(x);
                res.checked_subsets.push_back(subset);
                res.checked_counts.push_back(common);
                if (common < p.neighborhood_floor) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return res;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Transitive greedy, matching, complete-bipartite extraction

// Greedy halving: repeatedly take the vertex of maximum out-degree inside the
// current set (lowest id on ties) and recurse into its out-neighbourhood.
// Returns a transitive sequence of size >= floor(log2 |S|) + 1.
inline std::vector<int> erdos_moser(const Tournament& t, const std::vector<int>& s) {
    if (s.empty()) throw InvalidParameter("erdos_moser: empty set");
    Bitset cur = Bitset::of(t.size(), s);
    std::vector<int> out;
    int remaining = cur.count();
    while (remaining > 0) {
        int best = -1, best_deg = -1;
        for (int v = 0; v < t.size(); ++v) {
            if (!cur.test(v)) continue;
            int d = t.out_degree_in(v, cur);
            if (d > best_deg) {
                best_deg = d;
                best = v;
            }
        }
        out.push_back(best);
        const Word* r = t.row(best);
        for (int i = 0; i < cur.words(); ++i) cur.data()[i] &= r[i];
        remaining = cur.count();
    }
    return out;
}

// Pairs the i-th vertex of s1 with the i-th of s2. The caller guarantees all
// s1 x s2 edges point s1 -> s2; the d pairs used are still verified.
inline std::optional<std::vector<std::pair<int, int>>> greedy_matching(const Tournament& t,
                                                                       const std::vector<int>& s1,
                                                                       const std::vector<int>& s2,
                                                                       int d) {
    if (d < 0) throw InvalidParameter("greedy_matching: d must be >= 0");
    if (static_cast<int>(s1.size()) < d || static_cast<int>(s2.size()) < d) return std::nullopt;
    std::vector<std::pair<int, int>> m;
    m.reserve(d);
    for (int i = 0; i < d; ++i) {
        if (!t.edge(s1[i], s2[i])) return std::nullopt;
        m.emplace_back(s1[i], s2[i]);
    }
    return m;
}

struct KstResult {
    std::vector<int> chosen;  // k indices into A, sorted
    std::vector<int> w3;      // indices into B completely joined to all chosen rows
    int attempts = 0;
    bool used_fallback = false;
};

// Finds k rows of G and a set W3 of at least `target` columns forming a
// complete bipartite subgraph. Greedy (most surviving neighbours first, then
// randomized tie-breaking on retries); for na <= 24 an exhaustive
// superset-sum over column neighbourhood masks decides the instance exactly.
inline std::optional<KstResult> kst_extract(const Bigraph& g, int k, int target,
                                            std::uint64_t seed, int max_retries) {
    if (k < 1 || k > g.na) throw InvalidParameter("kst_extract: need 1 <= k <= |A|");
    if (target < 1) throw InvalidParameter("kst_extract: target must be >= 1");

    int attempts = 0;
    for (int attempt = 0; attempt < std::max(1, max_retries); ++attempt) {
        ++attempts;
        Rng rng(derive_seed(seed, stream::kKst, static_cast<std::uint64_t>(attempt)));
        Bitset surv(g.nb);
        for (int b = 0; b < g.nb; ++b) surv.set(b);
        std::vector<char> used(g.na, 0);
        std::vector<int> chosen;
        bool dead = false;
        for (int round = 0; round < k; ++round) {
            int best_deg = -1;
            std::vector<int> ties;
            for (int a = 0; a < g.na; ++a) {
                if (used[a]) continue;
                int dgr = and_popcount(g.row(a), surv.data(), g.words);
                if (dgr > best_deg) {
                    best_deg = dgr;
                    ties.assign(1, a);
                } else if (dgr == best_deg) {
                    ties.push_back(a);
                }
            }
            int pick = attempt == 0 ? ties.front() : ties[rng.below_int(static_cast<int>(ties.size()))];
            used[pick] = 1;
            chosen.push_back(pick);
            for (int i = 0; i < surv.words(); ++i) surv.data()[i] &= g.row(pick)[i];
            if (surv.count() < target) {
                dead = true;
                break;
            }
        }
        if (!dead) {
            KstResult res;
            res.chosen = chosen;
            std::sort(res.chosen.begin(), res.chosen.end());
            res.w3 = surv.to_vector();
            res.attempts = attempts;
            return res;
        }
    }

    if (g.na <= 24) {
        // f[S] = number of columns adjacent to every row in S, via a
        // superset-sum over column neighbourhood masks.
        int bits = g.na;
        std::vector<std::uint32_t> col_mask(g.nb, 0);
        for (int a = 0; a < bits; ++a)
            for (int b = 0; b < g.nb; ++b)
                if (g.edge(a, b)) col_mask[b] |= std::uint32_t{1} << a;
        std::size_t total = std::size_t{1} << bits;
        std::vector<std::int32_t> f(total, 0);
        for (int b = 0; b < g.nb; ++b) ++f[col_mask[b]];
        for (int i = 0; i < bits; ++i)
            for (std::size_t s = 0; s < total; ++s)
                if (!((s >> i) & 1)) f[s] += f[s | (std::size_t{1} << i)];
        std::uint32_t best_set = 0;
        std::int32_t best_cnt = -1;
        for (std::size_t s = 0; s < total; ++s) {
            if (std::popcount(static_cast<std::uint32_t>(s)) != k) continue;
            if (f[s] > best_cnt) {
                best_cnt = f[s];
                best_set = static_cast<std::uint32_t>(s);
            }
        }
        if (best_cnt >= target) {
            KstResult res;
            res.used_fallback = true;
            res.attempts = attempts;
            for (int a = 0; a < bits; ++a)
                if ((best_set >> a) & 1) res.chosen.push_back(a);
            for (int b = 0; b < g.nb; ++b)
                if ((col_mask[b] & best_set) == best_set) res.w3.push_back(b);
            return res;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Traces

struct DriverLevel {
    int n = 0;
    Ratio eps, alpha;
    long long b = 0, b_prime = 0, b_dprime = 0;
    std::string branch;
    int window_start = -1, window_width = 0;
    long long window_count = 0;
};

struct StageRetries {
    int partition = 0, drc = 0, s1 = 0, s2 = 0, matching = 0, kst = 0, s3 = 0, final_check = 0;
    int total() const { return partition + drc + s1 + s2 + matching + kst + s3 + final_check; }
};

struct EmbeddingTrace {
    bool found = false;
    std::string fail_stage;            // last failing stage when not found
    std::string source = "pipeline";   // "pipeline" or "brute-force"
    int k = 0;
    PipelineConfig::Mode mode = PipelineConfig::Mode::adaptive;
    std::uint64_t seed = 0;
    Ratio eps;          // driver eps; 0/1 when the pipeline was invoked directly
    Ratio beta, gamma;  // densities the pipeline ran with
    std::vector<DriverLevel> driver;

    std::vector<int> vertices;  // subtournament the witness chain lives in (original ids)
    std::vector<int> v1, v2, v3;
    std::vector<int> w1, s1, s2;
    std::vector<std::pair<int, int>> matching;
    std::vector<int> chosen;             // indices into matching, sorted
    std::vector<long long> chosen_q3;    // Q3 of each chosen edge
    std::vector<int> w3, s3;
    DkEmbedding result;
    StageRetries retries;

    long long e_size = 0, e_good_size = 0;
    int d = 0, l = 0, w1_floor = 0, neighborhood_floor = 0, target = 0;
};

namespace detail {

inline int isqrt_ceil(long long n) {
    int q = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (static_cast<long long>(q) * q < n) ++q;
    while (q > 0 && static_cast<long long>(q - 1) * (q - 1) >= n) --q;
    return q;
}

inline int ceil_div_ll(long long a, long long b) {
    return static_cast<int>((a + b - 1) / b);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The imbalanced-triangles pipeline

namespace detail {

struct PipelineSeeds {
    std::uint64_t root;
    std::uint64_t partition(int r) const { return derive_seed(root, stream::kPartition, r); }
    std::uint64_t drc(int r) const { return derive_seed(root, stream::kDrc, r); }
    std::uint64_t kst(int r) const { return derive_seed(root, stream::kKst, r); }
};

inline std::vector<int> ids_of(const std::vector<int>& pool, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(pool[i]);
    return out;
}

}  // namespace detail

inline EmbeddingTrace find_dk_imbalanced_seeded(const Tournament& t,
                                                const std::vector<std::pair<int, int>>& edges,
                                                Ratio beta, Ratio gamma, int k,
                                                const PipelineConfig& cfg, std::uint64_t seed) {
    if (k < 1) throw InvalidParameter("find_dk_imbalanced: k must be >= 1");
    if (!gamma.positive() || !beta.positive())
        throw InvalidParameter("find_dk_imbalanced: beta and gamma must be positive");

    const bool adaptive = cfg.mode == PipelineConfig::Mode::adaptive;
    const int n = t.size();
    EmbeddingTrace tr;
    tr.k = k;
    tr.mode = cfg.mode;
    tr.seed = seed;
    tr.beta = beta;
    tr.gamma = gamma;
    tr.e_size = static_cast<long long>(edges.size());
    auto fail = [&](const std::string& stage) {
        tr.found = false;
        tr.fail_stage = stage;
        return tr;
    };
    if (edges.empty()) return fail("empty-edge-set");
    if (n < 3 || 3 * k > n) return fail("size");

    const int side = n / 3;

    // Parameters: paper mode uses the symbolic values, adaptive mode uses the
    // weakest floors the downstream stages genuinely need.
    int d, l, w1_floor, nb_floor, target;
    if (!adaptive) {
        d = detail::ceil_div_ll(3LL * k * gamma.den, gamma.num);
        l = 4 * d;
        w1_floor = detail::isqrt_ceil(n);
        nb_floor = static_cast<int>(
            std::ceil(std::pow(static_cast<double>(side), 1.0 - static_cast<double>(d) / l)));
        target = detail::isqrt_ceil(n);
    } else {
        d = k;
        l = std::max(1, cfg.drc_sample_size);
        w1_floor = d;
        nb_floor = 0;  // the one d-set actually used is verified downstream
        target = std::min(side, std::max(k, detail::isqrt_ceil(n)));
    }
    if (d > side) return fail("parameters");  // a d-matching cannot fit in one part
    tr.d = d;
    tr.l = l;
    tr.w1_floor = w1_floor;
    tr.neighborhood_floor = nb_floor;
    tr.target = target;

    detail::PipelineSeeds seeds{seed};

    // Tripartition: accept early once |E_good| reaches the expected share,
    // otherwise keep the best of R. Adaptive mode spends attempt 0 on the
    // deterministic partition aligned with E.
    const Int128 paper_accept =
        (Int128(beta.num) * n * n + Int128(27) * beta.den - 1) / (Int128(27) * beta.den);
    const long long adaptive_accept = std::max<long long>(1, 1LL * k * k);
    Tripartition best;
    long long best_score = -1;
    int partition_attempts = 0;
    for (int r = 0; r < std::max(1, cfg.partition_retries); ++r) {
        ++partition_attempts;
        std::array<std::vector<int>, 3> parts;
        if (adaptive && r == 0)
            parts = structured_tripartition(n, edges);
        else
            parts = random_tripartition(t, seeds.partition(r));
        Tripartition tri = good_edges(t, edges, parts, gamma);
        long long score = static_cast<long long>(tri.good.size());
        if (score > best_score) {
            best_score = score;
            best = std::move(tri);
        }
        if (adaptive ? best_score >= adaptive_accept : Int128(best_score) >= paper_accept) break;
    }
    tr.retries.partition = partition_attempts;
    tr.e_good_size = best_score;
    tr.v1 = best.v1;
    tr.v2 = best.v2;
    tr.v3 = best.v3;
    if (best_score <= 0) return fail("good-edges");

    // H: bipartite good-edge graph between V1 and V2 (by part index).
    std::vector<int> idx1(n, -1), idx2(n, -1), idx3(n, -1);
    for (int i = 0; i < side; ++i) {
        idx1[best.v1[i]] = i;
        idx2[best.v2[i]] = i;
        idx3[best.v3[i]] = i;
    }
    Bigraph h(side, side);
    for (int gi : best.good) {
        auto [x, y] = best.candidates[gi];
        h.add(idx1[x], idx2[y]);
    }

    DrcParams params;
    params.d = d;
    params.l = l;
    params.beta = beta;
    params.gamma = gamma;
    params.w1_floor = w1_floor;
    params.neighborhood_floor = nb_floor;

    std::string last_fail = "drc";
    for (int attempt = 0; attempt < std::max(1, cfg.stage_retries); ++attempt) {
        auto drc = dependent_random_choice(h, params, seeds.drc(attempt), 1);
        if (!drc) {
            ++tr.retries.drc;
            last_fail = "drc";
            continue;
        }
        std::vector<int> w1_ids = detail::ids_of(best.v1, drc->w1);

        std::vector<int> em1 = erdos_moser(t, w1_ids);
        if (static_cast<int>(em1.size()) < d) {
            ++tr.retries.s1;
            last_fail = "s1";
            continue;
        }
        std::vector<int> s1(em1.begin(), em1.begin() + d);

        // Common H-neighbourhood of the d-set actually used.
        std::vector<Word> acc(h.words, ~Word{0});
        for (int v : s1)
            for (int i = 0; i < h.words; ++i) acc[i] &= h.row(idx1[v])[i];
        int spare = h.words * 64 - h.nb;
        if (spare > 0) acc[h.words - 1] &= ~Word{0} >> spare;
        std::vector<int> nbhd;
        for (int b = 0; b < h.nb; ++b)
            if ((acc[b >> 6] >> (b & 63)) & 1) nbhd.push_back(best.v2[b]);
        if (static_cast<int>(nbhd.size()) < d || (!adaptive && static_cast<int>(nbhd.size()) < nb_floor)) {
            ++tr.retries.s2;
            last_fail = "s2";
            continue;
        }
        std::vector<int> em2 = erdos_moser(t, nbhd);
        if (static_cast<int>(em2.size()) < d) {
            ++tr.retries.s2;
            last_fail = "s2";
            continue;
        }
        std::vector<int> s2(em2.begin(), em2.begin() + d);

        auto matching = greedy_matching(t, s1, s2, d);
        if (!matching) {
            ++tr.retries.matching;
            last_fail = "matching";
            continue;
        }

        // Incidence of matching edges with V3 via triangle completion.
        Bigraph g(d, side);
        for (int i = 0; i < d; ++i) {
            auto [x, y] = (*matching)[i];
            for (int zi = 0; zi < side; ++zi) {
                int z = best.v3[zi];
                if (t.edge(y, z) && t.edge(z, x)) g.add(i, zi);
            }
        }
        auto kst = kst_extract(g, k, target, seeds.kst(attempt), std::max(1, cfg.stage_retries));
        if (!kst) {
            ++tr.retries.kst;
            last_fail = "kst";
            continue;
        }
        std::vector<int> w3_ids = detail::ids_of(best.v3, kst->w3);

        std::vector<int> s3 = erdos_moser(t, w3_ids);
        if (static_cast<int>(s3.size()) < k) {
            ++tr.retries.s3;
            last_fail = "s3";
            continue;
        }

        DkEmbedding emb;
        emb.k = k;
        for (int j : kst->chosen) {
            emb.u1.push_back((*matching)[j].first);
            emb.u2.push_back((*matching)[j].second);
        }
        emb.u3.assign(s3.begin(), s3.begin() + k);
        if (!check_dk_embedding(t, emb)) {
            ++tr.retries.final_check;
            last_fail = "final-check";
            continue;
        }

        tr.found = true;
        tr.w1 = w1_ids;
        tr.s1 = s1;
        tr.s2 = s2;
        tr.matching = *matching;
        tr.chosen = kst->chosen;
        Bitset v3mask = Bitset::of(n, best.v3);
        for (int j : kst->chosen) {
            auto [x, y] = (*matching)[j];
            const Word* ry = t.row(y);
            const Word* rx = t.row(x);
            long long q = 0;
            for (int i = 0; i < t.row_words(); ++i)
                q += std::popcount(ry[i] & ~rx[i] & v3mask.data()[i]);
            tr.chosen_q3.push_back(q);
        }
        tr.w3 = w3_ids;
        tr.s3 = s3;
        tr.result = emb;
        tr.vertices.resize(n);
        for (int i = 0; i < n; ++i) tr.vertices[i] = i;
        return tr;
    }
    return fail(last_fail);
}

// Public entry: seeds come from the config.
inline EmbeddingTrace find_dk_imbalanced(const Tournament& t,
                                         const std::vector<std::pair<int, int>>& edges, Ratio beta,
                                         Ratio gamma, int k, const PipelineConfig& cfg) {
    EmbeddingTrace tr = find_dk_imbalanced_seeded(t, edges, beta, gamma, k, cfg, cfg.seed);
    if (tr.found && tr.vertices.empty()) {
        tr.vertices.resize(t.size());
        for (int i = 0; i < t.size(); ++i) tr.vertices[i] = i;
    }
    return tr;
}

}  // namespace tourney
