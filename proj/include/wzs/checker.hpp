#pragma once

// Decision kernel: does a sequence contain an (A,B)-weighted zero-sum
// (sub)sequence under a length/consecutiveness constraint? All checks run
// a dynamic program over joint achievable states (s1, s2) in M x Z_m,
// where a used term x contributes one pair (a*x, b*a); the second
// coordinate is dropped entirely in absent-B mode. Witnesses are
// reconstructed by backtracking over the stored DP layers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wzs/module.hpp"
#include "wzs/weights.hpp"

namespace wzs {

struct EmptySequence : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// (s1, s2) state index helpers for one DP instance.
struct DpShape {
    int card;  // |M|
    int m;     // modulus
    int msz;   // m when B present, 1 otherwise
    int base() const { return static_cast<int>(card) * msz; }
};

inline DpShape dp_shape(const ModuleSpec& mod, const WeightConfig& cfg) {
    return {static_cast<int>(mod.cardinality()), mod.modulus(),
            cfg.has_b() ? mod.modulus() : 1};
}

inline int dp_step(const ModuleSpec& mod, const DpShape& sh, int state, Elem x,
                   const WeightChoice& c) {
    int s1 = state / sh.msz, s2 = state % sh.msz;
    int n1 = mod.add(s1, mod.scale_elem(c.a, x));
    int n2 = sh.msz == 1 ? 0 : (s2 + c.ba) % sh.m;
    return n1 * sh.msz + n2;
}

}  // namespace detail

// Witness using ALL positions of S, if any assignment of weights makes
// both congruences vanish.
inline std::optional<Witness> check_full(const ModuleSpec& mod, const Sequence& s,
                                         const WeightConfig& cfg) {
    if (s.empty()) throw EmptySequence("check_full: empty sequence");
    const auto sh = detail::dp_shape(mod, cfg);
    const auto choices = weight_choices(mod, cfg);
    const int k = static_cast<int>(s.size());

    std::vector<std::vector<std::uint8_t>> layer(
        static_cast<std::size_t>(k) + 1,
        std::vector<std::uint8_t>(static_cast<std::size_t>(sh.base()), 0));
    layer[0][0] = 1;
    for (int i = 0; i < k; ++i) {
        for (int st = 0; st < sh.base(); ++st) {
            if (!layer[static_cast<std::size_t>(i)][static_cast<std::size_t>(st)]) continue;
            for (const auto& c : choices)
                layer[static_cast<std::size_t>(i) + 1]
                     [static_cast<std::size_t>(detail::dp_step(mod, sh, st, s[static_cast<std::size_t>(i)], c))] = 1;
        }
    }
    if (!layer[static_cast<std::size_t>(k)][0]) return std::nullopt;

    Witness w;
    w.indices.resize(static_cast<std::size_t>(k));
    w.a_weights.resize(static_cast<std::size_t>(k));
    if (cfg.has_b()) w.b_weights = std::vector<Scalar>(static_cast<std::size_t>(k));
    int cur = 0;
    for (int i = k; i >= 1; --i) {
        bool found = false;
        for (int st = 0; st < sh.base() && !found; ++st) {
            if (!layer[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(st)]) continue;
            for (const auto& c : choices) {
                if (detail::dp_step(mod, sh, st, s[static_cast<std::size_t>(i) - 1], c) != cur) continue;
                w.indices[static_cast<std::size_t>(i) - 1] = i - 1;
                w.a_weights[static_cast<std::size_t>(i) - 1] = c.a;
                if (w.b_weights) (*w.b_weights)[static_cast<std::size_t>(i) - 1] = c.b;
                cur = st;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;  // unreachable
    }
    return w;
}

namespace detail {

// DP with a per-term skip option and a count coordinate. `cap` is 1 with
// saturation for AnyNonempty, L without saturation for ExactLength(L).
inline std::optional<Witness> find_counted(const ModuleSpec& mod, const Sequence& s,
                                           const WeightConfig& cfg, int cap,
                                           bool saturate) {
    const auto sh = dp_shape(mod, cfg);
    const auto choices = weight_choices(mod, cfg);
    const int k = static_cast<int>(s.size());
    const int nstates = (cap + 1) * sh.base();
    auto id = [&](int cnt, int st) { return cnt * sh.base() + st; };

    std::vector<std::vector<std::uint8_t>> layer(
        static_cast<std::size_t>(k) + 1,
        std::vector<std::uint8_t>(static_cast<std::size_t>(nstates), 0));
    layer[0][static_cast<std::size_t>(id(0, 0))] = 1;
    for (int i = 0; i < k; ++i) {
        const auto& prev = layer[static_cast<std::size_t>(i)];
        auto& next = layer[static_cast<std::size_t>(i) + 1];
        next = prev;  // skip option
        for (int cnt = 0; cnt <= cap; ++cnt) {
            for (int st = 0; st < sh.base(); ++st) {
                if (!prev[static_cast<std::size_t>(id(cnt, st))]) continue;
                int ncnt = cnt + 1;
                if (ncnt > cap) {
                    if (!saturate) continue;
                    ncnt = cap;
                }
                for (const auto& c : choices)
                    next[static_cast<std::size_t>(
                        id(ncnt, dp_step(mod, sh, st, s[static_cast<std::size_t>(i)], c)))] = 1;
            }
        }
    }
    const int target = id(cap, 0);
    if (!layer[static_cast<std::size_t>(k)][static_cast<std::size_t>(target)])
        return std::nullopt;

    // Backtrack: at each position prefer the skip edge, else find a take
    // edge; deterministic because layers and choices are scanned in order.
    Witness w;
    if (cfg.has_b()) w.b_weights = std::vector<Scalar>{};
    std::vector<int> rev_idx;
    std::vector<Scalar> rev_a, rev_b;
    int cur = target;
    for (int i = k; i >= 1; --i) {
        const auto& prev = layer[static_cast<std::size_t>(i) - 1];
        if (prev[static_cast<std::size_t>(cur)]) continue;  // term i-1 skipped
        int ccnt = cur / sh.base(), cst = cur % sh.base();
        bool found = false;
        for (int pcnt = ccnt - 1; pcnt <= ccnt && !found; ++pcnt) {
            if (pcnt < 0) continue;
            if (pcnt == ccnt && !(saturate && ccnt == cap)) continue;
            for (int st = 0; st < sh.base() && !found; ++st) {
                if (!prev[static_cast<std::size_t>(id(pcnt, st))]) continue;
                for (const auto& c : choices) {
                    if (dp_step(mod, sh, st, s[static_cast<std::size_t>(i) - 1], c) != cst)
                        continue;
                    rev_idx.push_back(i - 1);
                    rev_a.push_back(c.a);
                    rev_b.push_back(c.b);
                    cur = id(pcnt, st);
                    found = true;
                    break;
                }
            }
        }
        if (!found) return std::nullopt;  // unreachable
    }
    for (std::size_t j = rev_idx.size(); j-- > 0;) {
        w.indices.push_back(rev_idx[j]);
        w.a_weights.push_back(rev_a[j]);
        if (w.b_weights) w.b_weights->push_back(rev_b[j]);
    }
    return w;
}

}  // namespace detail

// Some subsequence of S satisfying the constraint, with its witness.
// Witness indices are positions in S.
inline std::optional<Witness> find_subsequence(const ModuleSpec& mod, const Sequence& s,
                                               const WeightConfig& cfg,
                                               const SubseqConstraint& c) {
    if (s.empty()) throw EmptySequence("find_subsequence: empty sequence");
    c.validate_for(s.size());
    using Mode = SubseqConstraint::Mode;
    switch (c.mode) {
        case Mode::FullSequence:
            return check_full(mod, s, cfg);
        case Mode::AnyNonempty:
            return detail::find_counted(mod, s, cfg, 1, true);
        case Mode::ExactLength:
            return detail::find_counted(mod, s, cfg, c.length, false);
        case Mode::ConsecutiveAnyNonempty: {
            const int k = static_cast<int>(s.size());
            for (int start = 0; start < k; ++start) {
                for (int end = start; end < k; ++end) {
                    Sequence window(s.begin() + start, s.begin() + end + 1);
                    if (auto w = check_full(mod, window, cfg)) {
                        for (auto& idx : w->indices) idx += start;
                        return w;
                    }
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

struct OracleBudget {
    int max_len = 12;
    long long max_vectors = 10'000'000;
};

// Exhaustive enumeration of all admissible subsequences and all weight
// vectors. Test-only cross-validation path; refuses oversized instances
// instead of sampling.
inline std::optional<Witness> brute_force_oracle(const ModuleSpec& mod, const Sequence& s,
                                                 const WeightConfig& cfg,
                                                 const SubseqConstraint& c,
                                                 const OracleBudget& budget = {}) {
    if (s.empty()) throw EmptySequence("brute_force_oracle: empty sequence");
    c.validate_for(s.size());
    const int k = static_cast<int>(s.size());
    if (k > budget.max_len) throw BudgetExceeded("oracle: sequence too long");
    const auto choices = weight_choices(mod, cfg);
    const double w = static_cast<double>(choices.size());

    using Mode = SubseqConstraint::Mode;
    double projected = 0;
    {
        // per-subset-size weight vector counts
        std::vector<double> binom(static_cast<std::size_t>(k) + 1, 0.0);
        binom[0] = 1;
        for (int i = 1; i <= k; ++i)
            for (int j = i; j >= 1; --j)
                binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j) - 1];
        double pw = 1;
        for (int t = 1; t <= k; ++t) {
            pw *= w;
            switch (c.mode) {
                case Mode::AnyNonempty: projected += binom[static_cast<std::size_t>(t)] * pw; break;
                case Mode::ExactLength:
                    if (t == c.length) projected += binom[static_cast<std::size_t>(t)] * pw;
                    break;
                case Mode::FullSequence:
                    if (t == k) projected += pw;
                    break;
                case Mode::ConsecutiveAnyNonempty:
                    projected += static_cast<double>(k - t + 1) * pw;
                    break;
            }
        }
    }
    if (projected > static_cast<double>(budget.max_vectors))
        throw BudgetExceeded("oracle: weight vector budget exceeded");

    auto try_subset = [&](const std::vector<int>& idx) -> std::optional<Witness> {
        const std::size_t t = idx.size();
        std::vector<std::size_t> pick(t, 0);  // odometer over choices
        while (true) {
            Elem sum1 = 0;
            Scalar sum2 = 0;
            for (std::size_t i = 0; i < t; ++i) {
                const auto& ch = choices[pick[i]];
                sum1 = mod.add(sum1, mod.scale_elem(ch.a, s[static_cast<std::size_t>(idx[i])]));
                sum2 = mod.add_scalar(sum2, ch.ba);
            }
            if (sum1 == 0 && (!cfg.has_b() || sum2 == 0)) {
                Witness wit;
                wit.indices = idx;
                if (cfg.has_b()) wit.b_weights = std::vector<Scalar>{};
                for (std::size_t i = 0; i < t; ++i) {
                    wit.a_weights.push_back(choices[pick[i]].a);
                    if (wit.b_weights) wit.b_weights->push_back(choices[pick[i]].b);
                }
                return wit;
            }
            std::size_t pos = 0;
            while (pos < t && ++pick[pos] == choices.size()) pick[pos++] = 0;
            if (pos == t) return std::nullopt;
        }
    };

    if (c.mode == Mode::ConsecutiveAnyNonempty) {
        for (int start = 0; start < k; ++start)
            for (int end = start; end < k; ++end) {
                std::vector<int> idx;
                for (int i = start; i <= end; ++i) idx.push_back(i);
                if (auto wit = try_subset(idx)) return wit;
            }
        return std::nullopt;
    }

    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < k; ++i)
            if (mask & (1ul << i)) idx.push_back(i);
        switch (c.mode) {
            case Mode::ExactLength:
                if (static_cast<int>(idx.size()) != c.length) continue;
                break;
            case Mode::FullSequence:
                if (static_cast<int>(idx.size()) != k) continue;
                break;
            default: break;
        }
        if (auto wit = try_subset(idx)) return wit;
    }
    return std::nullopt;
}

}  // namespace wzs
