#pragma once

// Directed-triangle machinery: global count, per-edge counts, and the
// extraction of a large subset of long backward edges that each lie in many
// directed triangles. Degree thresholds of the form 4*sqrt(|B|) are compared
// as squared integers, so every certificate decision is exact.

#include <cmath>
#include <string>
#include <vector>

#include "ordering.hpp"
#include "ratio.hpp"
#include "tournament.hpp"

namespace tourney {

// Number of cyclically oriented triples: sum over edges u->v of
// |N+(v) ∩ N-(u)|, divided by 3 (each triangle is counted once per edge).
inline long long count_directed_triangles(const Tournament& t) {
    int n = t.size();
    int nw = t.row_words();
    long long total = 0;
    for (int u = 0; u < n; ++u) {
        Bitset in_u = t.in_mask(u);
        const Word* out_u = t.row(u);
        for (int w = 0; w < nw; ++w) {
            Word bits = out_u[w];
            while (bits) {
                int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                total += and_popcount(t.row(v), in_u.data(), nw);
            }
        }
    }
    return total / 3;
}

// |{x : v -> x and x -> u}| for an edge u -> v.
inline long long edge_triangle_count(const Tournament& t, int u, int v) {
    if (u < 0 || v < 0 || u >= t.size() || v >= t.size())
        throw InvalidParameter("edge_triangle_count: vertex id out of range");
    if (!t.edge(u, v)) throw InvalidParameter("edge_triangle_count: u -> v is not an edge");
    Bitset in_u = t.in_mask(u);
    return and_popcount(t.row(v), in_u.data(), t.row_words());
}

// Diagnostic path: triangle counts of the analysis' backward edges, no
// hypothesis guards. Entry order matches a.backward.
inline std::vector<long long> backward_edge_triangle_counts(const Tournament& t,
                                                            const OrderingAnalysis& a) {
    std::vector<long long> counts;
    counts.reserve(a.backward.size());
    for (const auto& e : a.backward)
        counts.push_back(edge_triangle_count(t, a.order[e.j], a.order[e.i]));
    return counts;
}

struct TriangleRichSet {
    std::vector<BackwardEdge> edges;       // B'', subset of the analysis' long edges
    std::vector<long long> per_edge_count; // directed triangles through each edge
    Ratio alpha;
    double threshold = 0;    // 4*sqrt(|B|) = 4*alpha^(1/2)*n, for reporting
    long long b_size = 0;
    long long b_prime_size = 0;
    int s_minus_size = 0;    // vertices with backward in-degree above threshold
    int s_plus_size = 0;     // vertices with backward out-degree above threshold
    int min_required = 0;    // floor(n/64)
};

// Keeps the long backward edges whose head has small backward in-degree or
// whose tail has small backward out-degree ("small" = at most 4*sqrt(|B|)).
// Under the guards below this retains at least half of the long edges and
// every kept edge lies in at least floor(n/64) directed triangles.
inline TriangleRichSet extract_triangle_rich(const Tournament& t, const OrderingAnalysis& a) {
    int n = t.size();
    long long b = a.b_size();
    if ((Int128(b) << 16) > Int128(n) * n)
        throw HypothesisViolated("extract_triangle_rich: alpha > 2^-16 (2^16*|B| = " +
                                 std::to_string(b << 16) + " > n^2 = " + std::to_string(1LL * n * n) +
                                 ")");
    if (4 * a.b_prime_size() < b)
        throw HypothesisViolated("extract_triangle_rich: 4*|B'| = " +
                                 std::to_string(4 * a.b_prime_size()) + " < |B| = " +
                                 std::to_string(b));
    if (!prop21_holds(t, a.order))
        throw HypothesisViolated("extract_triangle_rich: ordering not relocation-stable");

    std::vector<long long> in_b(n, 0), out_b(n, 0);
    for (const auto& e : a.backward) {
        ++in_b[a.order[e.i]];   // backward edge points into the early endpoint
        ++out_b[a.order[e.j]];
    }

    // deg <= 4*sqrt(|B|)  <=>  deg^2 <= 16*|B|
    auto small_deg = [&](long long d) { return Int128(d) * d <= Int128(16) * b; };

    TriangleRichSet rich;
    rich.alpha = a.alpha;
    rich.b_size = b;
    rich.b_prime_size = a.b_prime_size();
    rich.threshold = 4.0 * std::sqrt(static_cast<double>(b));
    rich.min_required = n / 64;
    for (int v = 0; v < n; ++v) {
        if (!small_deg(in_b[v])) ++rich.s_minus_size;
        if (!small_deg(out_b[v])) ++rich.s_plus_size;
    }
    for (const auto& e : a.long_edges) {
        int head = a.order[e.i], tail = a.order[e.j];
        if (small_deg(in_b[head]) || small_deg(out_b[tail])) {
            rich.edges.push_back(e);
            rich.per_edge_count.push_back(edge_triangle_count(t, tail, head));
        }
    }
    return rich;
}

struct TriangleConstant {
    long long triangles = 0;
    Ratio exact;   // triangles / (eps^2 * n^3)
    double value = 0;
};

// Measured ratio triangles / (eps^2 n^3); the multiplicative constant the
// triangle lower bound leaves unnamed.
inline TriangleConstant measure_triangle_constant(const Tournament& t, Ratio eps) {
    if (!eps.positive()) throw InvalidParameter("measure_triangle_constant: eps must be positive");
    TriangleConstant out;
    out.triangles = count_directed_triangles(t);
    Int128 n = t.size();
    out.exact = make_ratio_128(Int128(out.triangles) * eps.den * eps.den,
                               Int128(eps.num) * eps.num * n * n * n);
    out.value = out.exact.value();
    return out;
}

}  // namespace tourney
