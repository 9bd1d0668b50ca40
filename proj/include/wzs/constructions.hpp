#pragma once

// Executable versions of the constructive proofs: lower-bound sequence
// constructions, the pigeonhole witness extractor, the even-length
// extractor, and the Z_2 symmetric-difference extractor. Every extractor
// re-validates its output through the independent witness checker; if the
// counting behind a construction ever fails, InternalProofViolation is
// raised instead of falling back.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "wzs/checker.hpp"
#include "wzs/module.hpp"
#include "wzs/search.hpp"
#include "wzs/weights.hpp"

namespace wzs {

struct InputNotFree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InternalProofViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct Overflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

namespace detail {

inline bool subset_of_units(const ModuleSpec& mod, const std::vector<Scalar>& set) {
    for (Scalar s : set)
        if (!mod.is_unit(s)) return false;
    return true;
}

inline bool is_pm1_b1(const ModuleSpec& mod, const WeightConfig& cfg) {
    return cfg == WeightConfig::plus_minus_one(mod, true);
}

}  // namespace detail

// (0, x_1, 0, x_2, ..., 0, x_{k-1}, 0): zeroes in alternate positions.
// Input must be consecutive-free in classical A-weighted mode; output is
// consecutive-free for (A,B) when A or B consists of units, which is
// verified before returning.
inline Sequence build_interleaved(const ModuleSpec& mod, const Sequence& s_free,
                                  const WeightConfig& cfg) {
    if (s_free.empty() || !is_free(mod, s_free, cfg.classical(), ConstantKind::C))
        throw InputNotFree("build_interleaved: input is not C-free for (A, no B)");
    Sequence out;
    out.push_back(0);
    for (Elem x : s_free) {
        out.push_back(x);
        out.push_back(0);
    }
    if (cfg.has_b() && (detail::subset_of_units(mod, cfg.a_set) ||
                        detail::subset_of_units(mod, *cfg.b_set))) {
        if (!is_free(mod, out, cfg, ConstantKind::C))
            throw InternalProofViolation("interleaved sequence is not C-free for (A,B)");
    }
    return out;
}

// S_free with a single 0 appended; D-free for (A,B) when A or B consists
// of units.
inline Sequence build_appended(const ModuleSpec& mod, const Sequence& s_free,
                               const WeightConfig& cfg) {
    if (s_free.empty() || !is_free(mod, s_free, cfg.classical(), ConstantKind::D))
        throw InputNotFree("build_appended: input is not D-free for (A, no B)");
    Sequence out = s_free;
    out.push_back(0);
    if (cfg.has_b() && (detail::subset_of_units(mod, cfg.a_set) ||
                        detail::subset_of_units(mod, *cfg.b_set))) {
        if (!is_free(mod, out, cfg, ConstantKind::D))
            throw InternalProofViolation("appended sequence is not D-free for (A,B)");
    }
    return out;
}

// C(2k,k) > 2^k, checked with overflow-guarded 64-bit arithmetic. The
// stated inequality fails (as a strict one) at k=1, where both sides are 2.
inline bool binom_exceeds(int k) {
    if (k < 1) throw PreconditionViolated("binom_exceeds: k must be >= 1");
    if (k > 30) throw Overflow("binom_exceeds: k beyond checked range (k <= 30)");
    unsigned long long binom = 1;
    for (int i = 1; i <= k; ++i) {
        // C(2k,k) built incrementally: C(2i,i) = C(2i-2,i-1) * (2i-1)*2 / i
        binom = binom * (2ull * static_cast<unsigned long long>(i) - 1) * 2ull /
                static_cast<unsigned long long>(i);
    }
    return binom > (1ull << k);
}

// Witness built exactly as in the equal-sum pigeonhole argument: find two
// distinct k-term index sets with the same sum, drop the common indices,
// put +1 on one side and -1 on the other. Requires A={+-1}, B={1},
// |S|=2k with k >= 2 and 2^k >= |M|.
inline Witness pigeonhole_witness(const ModuleSpec& mod, const Sequence& s,
                                  const WeightConfig& cfg) {
    if (!detail::is_pm1_b1(mod, cfg))
        throw PreconditionViolated("pigeonhole_witness: requires A={+-1}, B={1}");
    const int len = static_cast<int>(s.size());
    if (len < 4 || len % 2 != 0)
        throw PreconditionViolated("pigeonhole_witness: |S| must be even, >= 4");
    const int k = len / 2;
    if ((std::int64_t{1} << k) < mod.cardinality())
        throw PreconditionViolated("pigeonhole_witness: requires 2^k >= |M|");

    // sum-indexed table over all k-subsets, lexicographic order
    std::map<Elem, std::vector<int>> by_sum;
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
        Elem sum = 0;
        for (int idx : comb) sum = mod.add(sum, s[static_cast<std::size_t>(idx)]);
        auto [it, fresh] = by_sum.try_emplace(sum, comb);
        if (!fresh) {
            const auto& first = it->second;
            std::vector<int> plus, minus;
            std::set_difference(first.begin(), first.end(), comb.begin(), comb.end(),
                                std::back_inserter(plus));
            std::set_difference(comb.begin(), comb.end(), first.begin(), first.end(),
                                std::back_inserter(minus));
            Witness w;
            w.b_weights = std::vector<Scalar>{};
            std::vector<int> all = plus;
            all.insert(all.end(), minus.begin(), minus.end());
            std::sort(all.begin(), all.end());
            const Scalar minus_one = mod.reduce(-1);
            for (int idx : all) {
                w.indices.push_back(idx);
                bool in_plus = std::binary_search(plus.begin(), plus.end(), idx);
                w.a_weights.push_back(in_plus ? 1 : minus_one);
                w.b_weights->push_back(1);
            }
            if (!witness_valid(mod, s, cfg, w))
                throw InternalProofViolation("pigeonhole witness failed re-validation");
            return w;
        }
        // next k-combination of [0, 2k)
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == len - k + i) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j) - 1] + 1;
    }
    throw InternalProofViolation("no equal-sum collision found among k-subsets");
}

namespace detail {

// Merge a witness on a sub-view back into host indices and append to acc.
inline void append_witness(Witness& acc, const Witness& local,
                           const std::vector<int>& view_to_host) {
    for (std::size_t i = 0; i < local.indices.size(); ++i) {
        acc.indices.push_back(view_to_host[static_cast<std::size_t>(local.indices[i])]);
        acc.a_weights.push_back(local.a_weights[i]);
        if (acc.b_weights) acc.b_weights->push_back((*local.b_weights)[i]);
    }
}

inline void sort_witness(Witness& w) {
    std::vector<std::size_t> order(w.indices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return w.indices[a] < w.indices[b]; });
    Witness out;
    if (w.b_weights) out.b_weights = std::vector<Scalar>{};
    for (std::size_t i : order) {
        out.indices.push_back(w.indices[i]);
        out.a_weights.push_back(w.a_weights[i]);
        if (out.b_weights) out.b_weights->push_back((*w.b_weights)[i]);
    }
    w = std::move(out);
}

}  // namespace detail

// Witness of exactly m_target indices over even modulus, built as in the
// repeated-pairs argument: pair up repeated terms; if the pairs alone
// cover m_target use them, otherwise grow a maximal weighted zero-sum
// subsequence of the unpaired remainder and pad it with repeated pairs.
// d_known must be D_{A,1}(M) (from constant-search).
inline Witness extract_even_length(const ModuleSpec& mod, const Sequence& s,
                                   const WeightConfig& cfg, int m_target, int d_known) {
    if (!detail::is_pm1_b1(mod, cfg))
        throw PreconditionViolated("extract_even_length: requires A={+-1}, B={1}");
    if (mod.modulus() % 2 != 0)
        throw PreconditionViolated("extract_even_length: modulus must be even");
    if (m_target < 2 || m_target % 2 != 0)
        throw PreconditionViolated("extract_even_length: m_target must be even, >= 2");
    if (static_cast<int>(s.size()) < m_target - 2 + d_known)
        throw PreconditionViolated("extract_even_length: |S| < m_target - 2 + D_{A,1}(M)");

    const Scalar minus_one = mod.reduce(-1);

    // Greedily pair repeated terms (maximum number of pairs).
    std::map<Elem, std::vector<int>> positions;
    for (std::size_t i = 0; i < s.size(); ++i)
        positions[s[i]].push_back(static_cast<int>(i));
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::uint8_t> paired(s.size(), 0);
    for (auto& [val, idxs] : positions) {
        for (std::size_t i = 0; i + 1 < idxs.size(); i += 2) {
            pairs.emplace_back(idxs[i], idxs[i + 1]);
            paired[static_cast<std::size_t>(idxs[i])] = 1;
            paired[static_cast<std::size_t>(idxs[i + 1])] = 1;
        }
    }

    Witness w;
    w.b_weights = std::vector<Scalar>{};
    auto add_pair = [&](const std::pair<int, int>& p) {
        w.indices.push_back(p.first);
        w.a_weights.push_back(1);
        w.b_weights->push_back(1);
        w.indices.push_back(p.second);
        w.a_weights.push_back(minus_one);
        w.b_weights->push_back(1);
    };

    if (2 * static_cast<int>(pairs.size()) >= m_target) {
        for (int p = 0; p < m_target / 2; ++p)
            add_pair(pairs[static_cast<std::size_t>(p)]);
        detail::sort_witness(w);
        if (!witness_valid(mod, s, cfg, w))
            throw InternalProofViolation("pairs-only witness failed re-validation");
        return w;
    }

    // S' = S minus the paired terms; its terms are all distinct.
    std::vector<int> rest;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!paired[i]) rest.push_back(static_cast<int>(i));

    // Maximal weighted zero-sum subsequence of S': accumulate disjoint
    // witnesses until the remainder has none (then no strictly larger one
    // could leave a zero-sum remainder of length >= D_{A,1}).
    std::vector<int> used_pieces;  // host indices in T'
    while (true) {
        std::vector<int> view;
        for (int idx : rest)
            if (!std::binary_search(used_pieces.begin(), used_pieces.end(), idx))
                view.push_back(idx);
        if (view.empty()) break;
        Sequence sub;
        for (int idx : view) sub.push_back(s[static_cast<std::size_t>(idx)]);
        auto piece = find_subsequence(mod, sub, cfg, SubseqConstraint::any());
        if (!piece) break;
        detail::append_witness(w, *piece, view);
        for (int li : piece->indices)
            used_pieces.push_back(view[static_cast<std::size_t>(li)]);
        std::sort(used_pieces.begin(), used_pieces.end());
    }

    int l = static_cast<int>(w.indices.size());
    if (l % 2 != 0)
        throw InternalProofViolation("maximal zero-sum subsequence has odd length");
    if (l > m_target)
        throw InternalProofViolation("maximal zero-sum subsequence exceeds target length");
    const int need_pairs = (m_target - l) / 2;
    if (need_pairs > static_cast<int>(pairs.size()))
        throw InternalProofViolation("not enough repeated pairs to pad to target length");
    for (int p = 0; p < need_pairs; ++p)
        add_pair(pairs[static_cast<std::size_t>(p)]);

    detail::sort_witness(w);
    if (static_cast<int>(w.indices.size()) != m_target ||
        !witness_valid(mod, s, cfg, w))
        throw InternalProofViolation("padded witness failed re-validation");
    return w;
}

// Even-length zero-sum witness over Z_2^r with A=B={1}: take a zero-sum T,
// drop one of its terms and take a second zero-sum T'; if either has even
// length return it, otherwise their symmetric difference has even length
// and zero sum. d_classical must be the classical Davenport constant D(M).
inline Witness extract_z2(const ModuleSpec& mod, const Sequence& s,
                          const WeightConfig& cfg, int d_classical) {
    if (mod.modulus() != 2)
        throw PreconditionViolated("extract_z2: requires modulus 2");
    if (cfg != WeightConfig::ones(mod, true))
        throw PreconditionViolated("extract_z2: requires A=B={1}");
    if (static_cast<int>(s.size()) < d_classical + 1)
        throw PreconditionViolated("extract_z2: |S| < D(M)+1");

    const WeightConfig classical = cfg.classical();
    auto as_11_witness = [&](const std::vector<int>& idx) {
        Witness w;
        w.indices = idx;
        w.a_weights.assign(idx.size(), 1);
        w.b_weights = std::vector<Scalar>(idx.size(), 1);
        return w;
    };

    auto t = find_subsequence(mod, s, classical, SubseqConstraint::any());
    if (!t) throw InternalProofViolation("no zero-sum subsequence in S despite |S| > D(M)");
    if (t->indices.size() % 2 == 0) {
        Witness w = as_11_witness(t->indices);
        if (!witness_valid(mod, s, cfg, w))
            throw InternalProofViolation("even zero-sum T failed re-validation");
        return w;
    }

    // Remove one term of T, find a second zero-sum in the remainder.
    const int dropped = t->indices.front();
    std::vector<int> view;
    Sequence sub;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (static_cast<int>(i) == dropped) continue;
        view.push_back(static_cast<int>(i));
        sub.push_back(s[i]);
    }
    auto t2 = find_subsequence(mod, sub, classical, SubseqConstraint::any());
    if (!t2) throw InternalProofViolation("no zero-sum subsequence in S' despite |S'| >= D(M)");
    std::vector<int> t2_idx;
    for (int li : t2->indices) t2_idx.push_back(view[static_cast<std::size_t>(li)]);
    if (t2_idx.size() % 2 == 0) {
        Witness w = as_11_witness(t2_idx);
        if (!witness_valid(mod, s, cfg, w))
            throw InternalProofViolation("even zero-sum T' failed re-validation");
        return w;
    }

    // Both odd: the symmetric difference has even length and zero sum.
    std::vector<int> sym;
    std::set_symmetric_difference(t->indices.begin(), t->indices.end(), t2_idx.begin(),
                                  t2_idx.end(), std::back_inserter(sym));
    if (sym.empty() || sym.size() % 2 != 0)
        throw InternalProofViolation("symmetric difference is empty or odd");
    Witness w = as_11_witness(sym);
    if (!witness_valid(mod, s, cfg, w))
        throw InternalProofViolation("symmetric-difference witness failed re-validation");
    return w;
}

}  // namespace wzs
