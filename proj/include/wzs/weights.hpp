#pragma once

// Weight configurations (A, optional B), witnesses, subsequence
// constraints, and the canonical form used by the search symmetries.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzs/module.hpp"

namespace wzs {

struct BadWeightSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A nonempty set of nonzero residues for A, and optionally one for B.
// Absent B is the classical A-weighted setting (only sum a_i x_i = 0 is
// imposed). Members are reduced mod m and deduplicated, so {+1,-1} over
// Z_2 collapses to {1}.
struct WeightConfig {
    std::vector<Scalar> a_set;                 // sorted, unique, nonzero
    std::optional<std::vector<Scalar>> b_set;  // same invariants when present

    static std::vector<Scalar> reduce_set(const ModuleSpec& mod,
                                          const std::vector<int>& raw,
                                          const char* name) {
        if (raw.empty()) throw BadWeightSet(std::string(name) + " set is empty");
        std::vector<Scalar> out;
        for (int v : raw) {
            Scalar red = mod.reduce(v);
            if (red == 0)
                throw BadWeightSet(std::string(name) + " set contains 0 mod m");
            out.push_back(red);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    static WeightConfig make(const ModuleSpec& mod, const std::vector<int>& a,
                             const std::optional<std::vector<int>>& b = std::nullopt) {
        WeightConfig cfg;
        cfg.a_set = reduce_set(mod, a, "A");
        if (b) cfg.b_set = reduce_set(mod, *b, "B");
        return cfg;
    }

    // A = {+1, -1} reduced mod m
    static WeightConfig plus_minus_one(const ModuleSpec& mod, bool with_b_one = true) {
        std::vector<int> a{1, mod.modulus() - 1};
        if (with_b_one) return make(mod, a, std::vector<int>{1});
        return make(mod, a);
    }

    static WeightConfig ones(const ModuleSpec& mod, bool with_b_one = true) {
        if (with_b_one) return make(mod, {1}, std::vector<int>{1});
        return make(mod, {1});
    }

    bool has_b() const { return b_set.has_value(); }

    // Translation symmetry holds exactly when B = {1}.
    bool translation_valid() const {
        return b_set && b_set->size() == 1 && (*b_set)[0] == 1;
    }

    // Drop the B constraint (the classical counterpart of this config).
    WeightConfig classical() const { return WeightConfig{a_set, std::nullopt}; }

    bool operator==(const WeightConfig&) const = default;
};

// One (a, b) choice per used term. b is absent in classical mode.
// ba = b*a mod m is the contribution to the second congruence.
struct WeightChoice {
    Scalar a;
    Scalar b;   // -1 when B absent
    Scalar ba;  // 0 when B absent
};

inline std::vector<WeightChoice> weight_choices(const ModuleSpec& mod,
                                                const WeightConfig& cfg) {
    std::vector<WeightChoice> out;
    for (Scalar a : cfg.a_set) {
        if (cfg.b_set) {
            for (Scalar b : *cfg.b_set)
                out.push_back({a, b, mod.mul(b, a)});
        } else {
            out.push_back({a, -1, 0});
        }
    }
    return out;
}

// Per-term weight assignment certifying a weighted zero-sum.
struct Witness {
    std::vector<int> indices;  // strictly increasing positions in the host
    std::vector<Scalar> a_weights;
    std::optional<std::vector<Scalar>> b_weights;  // present iff B present
};

// Re-checks a witness by plain modular arithmetic, independent of how it
// was produced.
inline bool witness_valid(const ModuleSpec& mod, const Sequence& s,
                          const WeightConfig& cfg, const Witness& w) {
    const std::size_t n = w.indices.size();
    if (n == 0) return false;
    if (w.a_weights.size() != n) return false;
    if (cfg.has_b() != w.b_weights.has_value()) return false;
    if (w.b_weights && w.b_weights->size() != n) return false;

    Elem sum1 = 0;
    Scalar sum2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int idx = w.indices[i];
        if (idx < 0 || idx >= static_cast<int>(s.size())) return false;
        if (i > 0 && w.indices[i] <= w.indices[i - 1]) return false;
        Scalar a = w.a_weights[i];
        if (!std::binary_search(cfg.a_set.begin(), cfg.a_set.end(), a)) return false;
        sum1 = mod.add(sum1, mod.scale_elem(a, s[static_cast<std::size_t>(idx)]));
        if (w.b_weights) {
            Scalar b = (*w.b_weights)[i];
            if (!std::binary_search(cfg.b_set->begin(), cfg.b_set->end(), b))
                return false;
            sum2 = mod.add_scalar(sum2, mod.mul(b, a));
        }
    }
    if (sum1 != 0) return false;
    if (w.b_weights && sum2 != 0) return false;
    return true;
}

struct BadConstraint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SubseqConstraint {
    enum class Mode { AnyNonempty, ExactLength, FullSequence, ConsecutiveAnyNonempty };
    Mode mode = Mode::AnyNonempty;
    int length = 0;  // for ExactLength

    static SubseqConstraint any() { return {Mode::AnyNonempty, 0}; }
    static SubseqConstraint exact(int len) { return {Mode::ExactLength, len}; }
    static SubseqConstraint full() { return {Mode::FullSequence, 0}; }
    static SubseqConstraint consecutive() { return {Mode::ConsecutiveAnyNonempty, 0}; }

    void validate_for(std::size_t host_len) const {
        if (mode == Mode::ExactLength &&
            (length < 1 || length > static_cast<int>(host_len)))
            throw BadConstraint("ExactLength must satisfy 1 <= L <= |S|");
    }
};

// Lexicographically least sequence over the symmetries valid for cfg:
// unit scalings always, translations only when B = {1}. When
// order_insensitive is set (D/E-type contexts) the terms are sorted
// first, so the result canonicalizes the multiset.
inline Sequence canonical_form(const ModuleSpec& mod, const Sequence& s,
                               const WeightConfig& cfg,
                               bool order_insensitive = true) {
    auto base = s;
    if (order_insensitive) std::sort(base.begin(), base.end());

    std::vector<Elem> translations{0};
    if (cfg.translation_valid()) {
        translations.clear();
        for (Elem x = 0; x < static_cast<Elem>(mod.cardinality()); ++x)
            translations.push_back(x);
    }

    std::optional<Sequence> best;
    for (Scalar u : mod.units()) {
        for (Elem t : translations) {
            Sequence cand(base.size());
            for (std::size_t i = 0; i < base.size(); ++i)
                cand[i] = mod.add(mod.scale_elem(u, base[i]), t);
            if (order_insensitive) std::sort(cand.begin(), cand.end());
            if (!best || cand < *best) best = std::move(cand);
        }
    }
    return *best;
}

}  // namespace wzs
