#pragma once

// Density-increment driver and trace verification.
//
// find_dk keeps a current subtournament T' and farness eps_i = 2^i * eps.
// Each round computes a relocation-stable ordering and applies the
// long-or-boost dichotomy: a backward-dense window of width floor(n/8) is
// descended into with eps doubled (sizes shrink by 8x, so the walk
// terminates), and a long-edges certificate hands off to the embedding
// pipeline. Every returned embedding has passed check_dk_embedding, so only
// false negatives are possible.

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include "embed.hpp"

namespace tourney {

namespace detail {

inline void remap_ids(std::vector<int>& v, const std::vector<int>& ids) {
    for (int& x : v) x = ids[x];
}

// Rewrites a pipeline trace produced on the induced subtournament into the
// original vertex ids.
inline void remap_trace(EmbeddingTrace& tr, const std::vector<int>& ids) {
    remap_ids(tr.v1, ids);
    remap_ids(tr.v2, ids);
    remap_ids(tr.v3, ids);
    remap_ids(tr.w1, ids);
    remap_ids(tr.s1, ids);
    remap_ids(tr.s2, ids);
    for (auto& [x, y] : tr.matching) {
        x = ids[x];
        y = ids[y];
    }
    remap_ids(tr.w3, ids);
    remap_ids(tr.s3, ids);
    remap_ids(tr.result.u1, ids);
    remap_ids(tr.result.u2, ids);
    remap_ids(tr.result.u3, ids);
    tr.vertices = ids;
}

struct Deadline {
    bool armed = false;
    std::chrono::steady_clock::time_point at{};
    static Deadline from_budget_ms(std::int64_t ms) {
        Deadline d;
        if (ms > 0) {
            d.armed = true;
            d.at = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        }
        return d;
    }
    bool expired() const { return armed && std::chrono::steady_clock::now() >= at; }
};

}  // namespace detail

inline EmbeddingTrace find_dk(const Tournament& t, int k, Ratio eps, const PipelineConfig& cfg) {
    if (k < 1) throw InvalidParameter("find_dk: k must be >= 1");
    if (!eps.positive()) throw InvalidParameter("find_dk: eps must be positive");

    const bool adaptive = cfg.mode == PipelineConfig::Mode::adaptive;
    auto deadline = detail::Deadline::from_budget_ms(cfg.time_budget_ms);

    EmbeddingTrace out;
    out.k = k;
    out.mode = cfg.mode;
    out.seed = cfg.seed;
    out.eps = eps;
    auto fail = [&](const std::string& stage) {
        out.found = false;
        out.fail_stage = stage;
        return out;
    };

    // Runs the pipeline on a subtournament and merges the result on success.
    auto try_pipeline = [&](const Tournament& sub, const std::vector<int>& ids,
                            const std::vector<std::pair<int, int>>& edges, Ratio beta, Ratio gamma,
                            PipelineConfig::Mode mode, std::uint64_t seed_base) -> bool {
        PipelineConfig sub_cfg = cfg;
        sub_cfg.mode = mode;
        for (int r = 0; r < std::max(1, cfg.search_retries); ++r) {
            if (deadline.expired()) return false;
            EmbeddingTrace tr = find_dk_imbalanced_seeded(sub, edges, beta, gamma, k, sub_cfg,
                                                          derive_seed(seed_base, stream::kDriver, r));
            if (!out.driver.empty()) {
                out.driver.back().b_dprime = tr.e_size;
            }
            if (tr.found) {
                detail::remap_trace(tr, ids);
                if (!check_dk_embedding(t, tr.result)) continue;  // cannot happen: induced is faithful
                tr.driver = out.driver;
                tr.k = k;
                tr.mode = cfg.mode;
                tr.seed = cfg.seed;
                tr.eps = eps;
                out = tr;
                return true;
            }
            if (r + 1 == std::max(1, cfg.search_retries)) out.fail_stage = tr.fail_stage;
        }
        return false;
    };

    // Adaptive handoff from an analysis: long backward edges that lie in at
    // least one directed triangle, with measured densities.
    auto adaptive_edges = [&](const Tournament& sub, const OrderingAnalysis& analysis,
                              std::vector<std::pair<int, int>>& edges, Ratio& beta,
                              Ratio& gamma) -> bool {
        const auto& base = analysis.long_edges.empty() ? analysis.backward : analysis.long_edges;
        long long min_count = -1;
        for (const auto& e : base) {
            int tail = analysis.order[e.j], head = analysis.order[e.i];
            long long c = edge_triangle_count(sub, tail, head);
            if (c < 1) continue;
            edges.emplace_back(tail, head);
            if (min_count < 0 || c < min_count) min_count = c;
        }
        if (edges.empty()) return false;
        int tn = sub.size();
        beta = make_ratio_128(Int128(edges.size()), Int128(tn) * tn);
        gamma = Ratio(min_count, tn);
        return true;
    };

    std::vector<int> ids(t.size());
    for (int i = 0; i < t.size(); ++i) ids[i] = i;
    Tournament cur = t;
    Ratio eps_i = eps;
    int level = 0;

    // Level-0 snapshot for the post-descent fallback.
    std::vector<std::pair<int, int>> level0_edges;
    Ratio level0_beta, level0_gamma;
    bool level0_usable = false;

    std::string exit_reason = "exhausted";
    const int max_levels = 64;
    while (level < max_levels) {
        if (deadline.expired()) return fail("timeout");
        int tn = cur.size();
        DriverLevel diag;
        diag.n = tn;
        diag.eps = eps_i;

        if (3 * k > tn) {
            diag.branch = "too-small";
            out.driver.push_back(diag);
            exit_reason = "too-small";
            break;
        }

        std::vector<int> order =
            local_search_ordering(cur, derive_seed(cfg.seed, stream::kLocalSearch, level));
        OrderingAnalysis analysis = analyze_ordering(cur, order);
        diag.alpha = analysis.alpha;
        diag.b = analysis.b_size();
        diag.b_prime = analysis.b_prime_size();

        if (analysis.backward.empty()) {
            diag.branch = "transitive";
            out.driver.push_back(diag);
            exit_reason = "transitive";
            break;
        }

        if (level == 0 && adaptive) {
            level0_usable = adaptive_edges(cur, analysis, level0_edges, level0_beta, level0_gamma);
        }

        DichotomyResult dich = long_or_boost(cur, analysis, eps_i);
        if (dich.kind == DichotomyResult::Kind::dense_window && dich.width >= 3) {
            diag.branch = "dense-window";
            diag.window_start = dich.start;
            diag.window_width = dich.width;
            diag.window_count = dich.backward_count;
            out.driver.push_back(diag);
            std::vector<int> sub_ids;
            sub_ids.reserve(dich.width);
            for (int p = dich.start; p < dich.start + dich.width; ++p)
                sub_ids.push_back(ids[order[p]]);
            std::sort(sub_ids.begin(), sub_ids.end());
            ids = std::move(sub_ids);
            cur = induced(t, ids);
            eps_i = make_ratio_128(Int128(eps_i.num) * 2, Int128(eps_i.den));
            ++level;
            continue;
        }

        if (dich.kind == DichotomyResult::Kind::long_edges) {
            bool sparse = (Int128(analysis.b_size()) << 16) <= Int128(tn) * tn;
            if (sparse) {
                diag.branch = "long-edges-sparse";
                out.driver.push_back(diag);
                TriangleRichSet rich = extract_triangle_rich(cur, analysis);
                out.driver.back().b_dprime = static_cast<long long>(rich.edges.size());
                std::vector<std::pair<int, int>> edges;
                edges.reserve(rich.edges.size());
                for (const auto& e : rich.edges)
                    edges.emplace_back(analysis.order[e.j], analysis.order[e.i]);
                Ratio beta = make_ratio_128(Int128(analysis.alpha.num),
                                            Int128(analysis.alpha.den) * 8);
                Ratio gamma(1, 64);
                if (try_pipeline(cur, ids, edges, beta, gamma, cfg.mode,
                                 derive_seed(cfg.seed, stream::kDriver, 1000 + level)))
                    return out;
                exit_reason = adaptive ? "pipeline-failed" : "paper-mode-floors";
                break;
            }
            // Dense-alpha branch: the theory defers to a black-box theorem
            // here; we run the pipeline with measured per-edge triangle
            // counts instead.
            diag.branch = "long-edges-dense";
            out.driver.push_back(diag);
            std::vector<std::pair<int, int>> edges;
            Ratio beta, gamma;
            if (adaptive_edges(cur, analysis, edges, beta, gamma)) {
                if (try_pipeline(cur, ids, edges, beta, gamma, PipelineConfig::Mode::adaptive,
                                 derive_seed(cfg.seed, stream::kDriver, 2000 + level)))
                    return out;
            }
            exit_reason = "pipeline-failed";
            break;
        }

        if (dich.kind == DichotomyResult::Kind::dense_window)
            diag.branch = "dense-window-unusable";  // width < 3, nothing to descend into
        else
            diag.branch = "no-certificate: " + dich.reason;
        out.driver.push_back(diag);
        // No certificate (tiny n, or the measured alpha no longer clears
        // eps_i): try the pipeline directly on the measured structure.
        std::vector<std::pair<int, int>> edges;
        Ratio beta, gamma;
        if (adaptive && adaptive_edges(cur, analysis, edges, beta, gamma)) {
            if (try_pipeline(cur, ids, edges, beta, gamma, PipelineConfig::Mode::adaptive,
                             derive_seed(cfg.seed, stream::kDriver, 3000 + level)))
                return out;
            exit_reason = "pipeline-failed";
        } else {
            exit_reason = "no-certificate";
        }
        break;
    }

    // Post-descent fallback: retry at the original tournament if we only ever
    // attempted embeddings deep in the descent.
    if (adaptive && level > 0 && level0_usable && !deadline.expired()) {
        if (try_pipeline(t, [&] {
                std::vector<int> all(t.size());
                for (int i = 0; i < t.size(); ++i) all[i] = i;
                return all;
            }(), level0_edges, level0_beta, level0_gamma, PipelineConfig::Mode::adaptive,
                         derive_seed(cfg.seed, stream::kDriver, 4000)))
            return out;
    }

    // Exhaustive oracle fallback at desk sizes.
    if (cfg.brute_force_fallback && t.size() <= 15 && k <= 3) {
        auto emb = brute_force_contains_dk(t, k);
        if (emb) {
            out.found = true;
            out.source = "brute-force";
            out.fail_stage.clear();
            out.result = *emb;
            out.vertices.resize(t.size());
            for (int i = 0; i < t.size(); ++i) out.vertices[i] = i;
            return out;
        }
    }

    if (out.fail_stage.empty()) out.fail_stage = exit_reason;
    return out;
}

// ---------------------------------------------------------------------------
// Independent re-verification of a trace against the tournament it came from.

struct TraceVerification {
    bool pass = true;
    std::vector<std::string> failures;
    void require(bool ok, const std::string& clause) {
        if (!ok) {
            pass = false;
            failures.push_back(clause);
        }
    }
};

inline TraceVerification verify_trace(const Tournament& t, const EmbeddingTrace& tr) {
    TraceVerification v;
    v.require(tr.found, "trace.found");
    if (!tr.found) return v;

    auto in_range = [&](const std::vector<int>& xs) {
        for (int x : xs)
            if (x < 0 || x >= t.size()) return false;
        return true;
    };
    v.require(in_range(tr.vertices), "vertices: ids in range");
    if (!v.pass) return v;

    // The embedding itself is checked in full for every source.
    bool emb_ok = false;
    try {
        emb_ok = check_dk_embedding(t, tr.result);
    } catch (const InvalidParameter&) {
        emb_ok = false;
    }
    v.require(emb_ok, "result: check_dk_embedding");

    if (tr.source == "brute-force") return v;

    const int tn = static_cast<int>(tr.vertices.size());
    Bitset member = Bitset::of(t.size(), tr.vertices);
    auto inside = [&](const std::vector<int>& xs) {
        for (int x : xs)
            if (!member.test(x)) return false;
        return true;
    };

    const int q = tn / 3;
    v.require(static_cast<int>(tr.v1.size()) == q && static_cast<int>(tr.v2.size()) == q &&
                  static_cast<int>(tr.v3.size()) == q,
              "partition: parts of size floor(n/3)");
    v.require(inside(tr.v1) && inside(tr.v2) && inside(tr.v3), "partition: parts within vertices");
    {
        Bitset seen(t.size());
        bool disjoint = true;
        for (const auto* part : {&tr.v1, &tr.v2, &tr.v3})
            for (int x : *part) {
                if (seen.test(x)) disjoint = false;
                seen.set(x);
            }
        v.require(disjoint, "partition: parts disjoint");
    }

    Bitset in1 = Bitset::of(t.size(), tr.v1);
    Bitset in2 = Bitset::of(t.size(), tr.v2);
    Bitset in3 = Bitset::of(t.size(), tr.v3);

    auto subset_of = [&](const std::vector<int>& xs, const Bitset& s) {
        for (int x : xs)
            if (!s.test(x)) return false;
        return true;
    };
    auto transitive_seq = [&](const std::vector<int>& seq) {
        for (std::size_t a = 0; a < seq.size(); ++a)
            for (std::size_t b = a + 1; b < seq.size(); ++b)
                if (!t.edge(seq[a], seq[b])) return false;
        return true;
    };

    v.require(subset_of(tr.w1, in1), "w1 within v1");
    {
        Bitset w1set = Bitset::of(t.size(), tr.w1);
        v.require(subset_of(tr.s1, w1set), "s1 within w1");
    }
    v.require(transitive_seq(tr.s1), "s1 transitive in listed order");
    v.require(subset_of(tr.s2, in2), "s2 within v2");
    v.require(transitive_seq(tr.s2), "s2 transitive in listed order");

    const int d = static_cast<int>(tr.matching.size());
    v.require(static_cast<int>(tr.s1.size()) == d && static_cast<int>(tr.s2.size()) == d,
              "matching pairs s1[i] with s2[i]");
    bool pairs_ok = true, direction_ok = true;
    for (int i = 0; i < d && i < static_cast<int>(tr.s1.size()) && i < static_cast<int>(tr.s2.size());
         ++i) {
        if (tr.matching[i].first != tr.s1[i] || tr.matching[i].second != tr.s2[i]) pairs_ok = false;
    }
    for (int a : tr.s1)
        for (int b : tr.s2)
            if (!t.edge(a, b)) direction_ok = false;
    v.require(pairs_ok, "matching built from s1/s2 in order");
    v.require(direction_ok, "all s1 x s2 edges directed s1 -> s2");

    v.require(static_cast<int>(tr.chosen.size()) == tr.k, "chosen: k matching edges");
    v.require(static_cast<int>(tr.chosen_q3.size()) == tr.k, "chosen_q3 recorded");
    bool chosen_ok = true;
    for (int j : tr.chosen)
        if (j < 0 || j >= d) chosen_ok = false;
    v.require(chosen_ok, "chosen indices valid");
    if (!v.pass) return v;

    // Q3 recount and the good-edge threshold for each chosen edge.
    for (std::size_t c = 0; c < tr.chosen.size(); ++c) {
        auto [x, y] = tr.matching[tr.chosen[c]];
        long long q3 = 0;
        for (int z : tr.v3)
            if (t.edge(y, z) && t.edge(z, x)) ++q3;
        v.require(q3 == tr.chosen_q3[c], "q3 recount matches (edge " + std::to_string(x) + "->" +
                                             std::to_string(y) + ")");
        v.require(Int128(3) * tr.gamma.den * q3 >= Int128(tr.gamma.num) * tn,
                  "chosen edge reaches gamma*n/3 completions");
    }

    v.require(subset_of(tr.w3, in3), "w3 within v3");
    bool complete = true;
    for (int z : tr.w3)
        for (int j : tr.chosen) {
            auto [x, y] = tr.matching[j];
            if (!(t.edge(y, z) && t.edge(z, x))) complete = false;
        }
    v.require(complete, "w3 completely joined to all chosen edges");

    {
        Bitset w3set = Bitset::of(t.size(), tr.w3);
        v.require(subset_of(tr.s3, w3set), "s3 within w3");
    }
    v.require(transitive_seq(tr.s3), "s3 transitive in listed order");

    // Assembly: u1/u2 are the chosen matching endpoints in order, u3 the
    // k-prefix of s3.
    bool assembly = static_cast<int>(tr.result.u1.size()) == tr.k &&
                    static_cast<int>(tr.result.u2.size()) == tr.k &&
                    static_cast<int>(tr.result.u3.size()) == tr.k;
    if (assembly) {
        for (int c = 0; c < tr.k; ++c) {
            auto [x, y] = tr.matching[tr.chosen[c]];
            if (tr.result.u1[c] != x || tr.result.u2[c] != y) assembly = false;
        }
        for (int c = 0; c < tr.k && c < static_cast<int>(tr.s3.size()); ++c)
            if (tr.result.u3[c] != tr.s3[c]) assembly = false;
    }
    v.require(assembly, "result assembled from chosen edges and s3 prefix");

    return v;
}

}  // namespace tourney
