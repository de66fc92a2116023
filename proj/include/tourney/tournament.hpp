#pragma once

// A tournament on n vertices: a complete graph with every edge oriented.
// Adjacency is stored as n bit-rows; edge(u, v) is true iff the edge between
// u and v points u -> v. Values are immutable once built by a generator or
// parser and safe to share across threads.

#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace tourney {

class Tournament {
public:
    explicit Tournament(int n) : n_(n), words_(word_count(n)), bits_(std::size_t(n) * words_, 0) {
        if (n < 1) throw InvalidParameter("tournament needs at least one vertex");
    }

    int size() const { return n_; }
    int row_words() const { return words_; }

    bool edge(int u, int v) const {
        return (bits_[std::size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
    }

    // Directs the pair {u, v} as u -> v.
    void orient(int u, int v) {
        if (u == v) throw InvalidParameter("self-loop");
        set_bit(u, v);
        clear_bit(v, u);
    }

    const Word* row(int u) const { return &bits_[std::size_t(u) * words_]; }

    int out_degree(int u) const {
        int c = 0;
        const Word* r = row(u);
        for (int i = 0; i < words_; ++i) c += std::popcount(r[i]);
        return c;
    }

    int out_degree_in(int u, const Bitset& s) const {
        return and_popcount(row(u), s.data(), words_);
    }

    // d^-_S(u) = |S \ {u}| - d^+_S(u): the pair between u and any other vertex
    // is oriented exactly one way.
    int in_degree_in(int u, const Bitset& s) const {
        int total = s.count() - (s.test(u) ? 1 : 0);
        return total - out_degree_in(u, s);
    }

    // Complement row: all w != u with w -> u.
    Bitset in_mask(int u) const {
        Bitset m(n_);
        const Word* r = row(u);
        for (int i = 0; i < words_; ++i) m.data()[i] = ~r[i];
        m.reset(u);
        trim(m);
        return m;
    }

    bool valid() const {
        for (int u = 0; u < n_; ++u) {
            if (edge(u, u)) return false;
            for (int v = u + 1; v < n_; ++v)
                if (edge(u, v) == edge(v, u)) return false;
        }
        return true;
    }

private:
    void set_bit(int u, int v) { bits_[std::size_t(u) * words_ + (v >> 6)] |= Word{1} << (v & 63); }
    void clear_bit(int u, int v) {
        bits_[std::size_t(u) * words_ + (v >> 6)] &= ~(Word{1} << (v & 63));
    }
    void trim(Bitset& m) const {
        int spare = words_ * 64 - n_;
        if (spare > 0) m.data()[words_ - 1] &= ~Word{0} >> spare;
    }

    int n_;
    int words_;
    std::vector<Word> bits_;
};

// Subtournament induced by the given vertices (kept in the given order).
inline Tournament induced(const Tournament& t, const std::vector<int>& vertices) {
    if (vertices.empty()) throw InvalidParameter("empty vertex set");
    Tournament s(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b) {
            if (t.edge(vertices[a], vertices[b]))
                s.orient(static_cast<int>(a), static_cast<int>(b));
            else
                s.orient(static_cast<int>(b), static_cast<int>(a));
        }
    return s;
}

// Canonical text form: a line holding n, then n rows of n characters in
// {0,1}, each newline-terminated. Vertex ids are 0-based, rows are
// out-adjacency.
inline std::string serialize_tournament(const Tournament& t) {
    std::string out = std::to_string(t.size());
    out.push_back('\n');
    for (int u = 0; u < t.size(); ++u) {
        for (int v = 0; v < t.size(); ++v) out.push_back(t.edge(u, v) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

inline Tournament parse_tournament(const std::string& text) {
    std::size_t pos = 0;
    auto next_line = [&](bool required) -> std::string {
        if (pos >= text.size()) {
            if (required) throw FormatError("unexpected end of input");
            return {};
        }
        auto nl = text.find('\n', pos);
        std::string line;
        if (nl == std::string::npos) {
            line = text.substr(pos);
            pos = text.size();
        } else {
            line = text.substr(pos, nl - pos);
            pos = nl + 1;
        }
        return line;
    };

    std::string header = next_line(true);
    if (header.empty() || header.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("bad header line: expected vertex count");
    long long n_ll = 0;
    try {
        n_ll = std::stoll(header);
    } catch (const std::exception&) {
        throw FormatError("bad header line: expected vertex count");
    }
    if (n_ll < 1 || n_ll > 1000000) throw FormatError("vertex count out of range");
    int n = static_cast<int>(n_ll);

    Tournament t(n);
    std::vector<std::string> rows(n);
    for (int u = 0; u < n; ++u) {
        rows[u] = next_line(true);
        if (static_cast<int>(rows[u].size()) != n) throw FormatError("ragged row");
    }
    if (pos != text.size()) throw FormatError("trailing content after matrix");

    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            char c = rows[u][v];
            if (c != '0' && c != '1') throw FormatError("matrix entry not 0/1");
            if (u == v && c == '1') throw FormatError("self-loop");
        }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool uv = rows[u][v] == '1', vu = rows[v][u] == '1';
            if (uv == vu) throw FormatError("not a tournament");
            if (uv)
                t.orient(u, v);
            else
                t.orient(v, u);
        }
    return t;
}

}  // namespace tourney
