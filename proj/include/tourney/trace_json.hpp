#pragma once

// JSON forms of the witness structures. Rationals are serialized as "p/q"
// strings plus a convenience float; vertex ids are original tournament ids.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "find_dk.hpp"

namespace tourney {

using Json = nlohmann::json;

inline Json ratio_to_json(const Ratio& r) {
    return Json{{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

inline Ratio ratio_from_json(const Json& j) {
    if (j.is_string()) return Ratio::parse(j.get<std::string>());
    return Ratio(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

inline Json embedding_to_json(const DkEmbedding& e) {
    return Json{{"k", e.k}, {"u1", e.u1}, {"u2", e.u2}, {"u3", e.u3}};
}

inline DkEmbedding embedding_from_json(const Json& j) {
    DkEmbedding e;
    e.k = j.at("k").get<int>();
    e.u1 = j.at("u1").get<std::vector<int>>();
    e.u2 = j.at("u2").get<std::vector<int>>();
    e.u3 = j.at("u3").get<std::vector<int>>();
    return e;
}

inline Json trace_to_json(const EmbeddingTrace& tr) {
    Json j;
    j["schema"] = "dk-embedding-trace/1";
    j["found"] = tr.found;
    j["source"] = tr.source;
    j["k"] = tr.k;
    j["mode"] = mode_name(tr.mode);
    j["seed"] = tr.seed;
    j["eps"] = ratio_to_json(tr.eps);
    if (!tr.fail_stage.empty()) j["fail_stage"] = tr.fail_stage;

    Json levels = Json::array();
    for (const auto& lv : tr.driver) {
        Json l;
        l["n"] = lv.n;
        l["eps"] = ratio_to_json(lv.eps);
        l["alpha"] = ratio_to_json(lv.alpha);
        l["b"] = lv.b;
        l["b_prime"] = lv.b_prime;
        l["b_dprime"] = lv.b_dprime;
        l["branch"] = lv.branch;
        if (lv.window_start >= 0) {
            l["window_start"] = lv.window_start;
            l["window_width"] = lv.window_width;
            l["window_count"] = lv.window_count;
        }
        levels.push_back(std::move(l));
    }
    j["driver"] = std::move(levels);

    if (!tr.found) return j;

    j["result"] = embedding_to_json(tr.result);
    if (tr.source == "brute-force") {
        j["vertices"] = tr.vertices;
        return j;
    }
    j["beta"] = ratio_to_json(tr.beta);
    j["gamma"] = ratio_to_json(tr.gamma);
    j["vertices"] = tr.vertices;
    j["v1"] = tr.v1;
    j["v2"] = tr.v2;
    j["v3"] = tr.v3;
    j["w1"] = tr.w1;
    j["s1"] = tr.s1;
    j["s2"] = tr.s2;
    Json match = Json::array();
    for (const auto& [x, y] : tr.matching) match.push_back(Json::array({x, y}));
    j["matching"] = std::move(match);
    j["chosen"] = tr.chosen;
    j["chosen_q3"] = tr.chosen_q3;
    j["w3"] = tr.w3;
    j["s3"] = tr.s3;
    j["params"] = Json{{"d", tr.d},
                       {"l", tr.l},
                       {"w1_floor", tr.w1_floor},
                       {"neighborhood_floor", tr.neighborhood_floor},
                       {"target", tr.target},
                       {"e_size", tr.e_size},
                       {"e_good_size", tr.e_good_size}};
    j["retries"] = Json{{"partition", tr.retries.partition},
                        {"drc", tr.retries.drc},
                        {"s1", tr.retries.s1},
                        {"s2", tr.retries.s2},
                        {"matching", tr.retries.matching},
                        {"kst", tr.retries.kst},
                        {"s3", tr.retries.s3},
                        {"final_check", tr.retries.final_check}};
    return j;
}

inline EmbeddingTrace trace_from_json(const Json& j) {
    EmbeddingTrace tr;
    try {
        tr.found = j.at("found").get<bool>();
        tr.source = j.value("source", "pipeline");
        tr.k = j.at("k").get<int>();
        tr.mode = mode_from_name(j.value("mode", "adaptive"));
        tr.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("eps")) tr.eps = ratio_from_json(j["eps"]);
        tr.fail_stage = j.value("fail_stage", "");
        if (!tr.found) return tr;
        tr.result = embedding_from_json(j.at("result"));
        tr.vertices = j.value("vertices", std::vector<int>{});
        if (tr.source == "brute-force") return tr;
        tr.beta = ratio_from_json(j.at("beta"));
        tr.gamma = ratio_from_json(j.at("gamma"));
        tr.v1 = j.at("v1").get<std::vector<int>>();
        tr.v2 = j.at("v2").get<std::vector<int>>();
        tr.v3 = j.at("v3").get<std::vector<int>>();
        tr.w1 = j.at("w1").get<std::vector<int>>();
        tr.s1 = j.at("s1").get<std::vector<int>>();
        tr.s2 = j.at("s2").get<std::vector<int>>();
        for (const auto& m : j.at("matching"))
            tr.matching.emplace_back(m.at(0).get<int>(), m.at(1).get<int>());
        tr.chosen = j.at("chosen").get<std::vector<int>>();
        tr.chosen_q3 = j.at("chosen_q3").get<std::vector<long long>>();
        tr.w3 = j.at("w3").get<std::vector<int>>();
        tr.s3 = j.at("s3").get<std::vector<int>>();
        if (j.contains("params")) {
            const auto& p = j["params"];
            tr.d = p.value("d", 0);
            tr.l = p.value("l", 0);
            tr.w1_floor = p.value("w1_floor", 0);
            tr.neighborhood_floor = p.value("neighborhood_floor", 0);
            tr.target = p.value("target", 0);
            tr.e_size = p.value("e_size", 0LL);
            tr.e_good_size = p.value("e_good_size", 0LL);
        }
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bad trace JSON: ") + e.what());
    }
    return tr;
}

inline Json dichotomy_to_json(const DichotomyResult& d) {
    Json j;
    j["eps"] = ratio_to_json(d.eps);
    j["b"] = d.b_size;
    switch (d.kind) {
        case DichotomyResult::Kind::long_edges: {
            j["kind"] = "long-edges";
            j["b_prime"] = static_cast<long long>(d.b_prime.size());
            break;
        }
        case DichotomyResult::Kind::dense_window: {
            j["kind"] = "dense-window";
            j["start"] = d.start;
            j["width"] = d.width;
            j["backward_count"] = d.backward_count;
            break;
        }
        case DichotomyResult::Kind::no_certificate: {
            j["kind"] = "no-certificate";
            j["reason"] = d.reason;
            break;
        }
    }
    return j;
}

}  // namespace tourney
