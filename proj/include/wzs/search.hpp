#pragma once

// Exact computation of D_{A,B}, C_{A,B}, E_{A,B} over Z_m^r. Constants are
// computed as 1 + (maximum length of a free sequence), found by a pruned
// depth-first extension search: freeness is hereditary, so a non-free node
// never needs children. D/E enumerate canonical nondecreasing multisets,
// C enumerates ordered sequences with prefix pruning. Each DFS extension
// updates an incremental reachable-state set instead of re-running the
// full checker.

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wzs/checker.hpp"
#include "wzs/module.hpp"
#include "wzs/weights.hpp"

namespace wzs {

enum class ConstantKind { D, C, E };

inline const char* to_string(ConstantKind k) {
    switch (k) {
        case ConstantKind::D: return "D";
        case ConstantKind::C: return "C";
        case ConstantKind::E: return "E";
    }
    return "?";
}

struct CapTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SearchIncomplete : std::runtime_error {
    int lower_bound;  // best value bound established before giving up
    SearchIncomplete(const std::string& msg, int bound)
        : std::runtime_error(msg), lower_bound(bound) {}
};

inline SubseqConstraint kind_constraint(ConstantKind kind, const ModuleSpec& mod) {
    switch (kind) {
        case ConstantKind::D: return SubseqConstraint::any();
        case ConstantKind::C: return SubseqConstraint::consecutive();
        case ConstantKind::E:
            return SubseqConstraint::exact(static_cast<int>(mod.cardinality()));
    }
    return SubseqConstraint::any();
}

// True iff S has no (A,B)-weighted zero-sum subsequence under the kind's
// constraint. Runs the standalone checker, independent of the incremental
// search path, so certificates re-verify through different code.
inline bool is_free(const ModuleSpec& mod, const Sequence& s, const WeightConfig& cfg,
                    ConstantKind kind) {
    if (s.empty()) throw EmptySequence("is_free: empty sequence");
    if (kind == ConstantKind::E &&
        static_cast<std::int64_t>(s.size()) < mod.cardinality())
        return true;  // no length-|M| subsequence exists at all
    return !find_subsequence(mod, s, cfg, kind_constraint(kind, mod)).has_value();
}

struct SearchOptions {
    bool symmetry_reduction = true;
    int threads = 1;
    std::uint64_t node_budget = 0;  // 0 = unlimited
};

struct SearchOutcome {
    int length = 0;
    Sequence witness;
    bool exhaustive = false;
    std::uint64_t nodes = 0;
    std::vector<std::string> symmetries;
};

struct SearchStats {
    std::uint64_t nodes_explored = 0;
    std::vector<std::string> symmetries_used;
    bool exhaustive = false;
};

struct ConstantCertificate {
    ConstantKind kind;
    ModuleSpec module;
    WeightConfig config;
    int value;
    Sequence extremal;  // free, length value-1
    SearchStats stats;
};

namespace detail {

// Elements minimal in their orbit under the pointwise symmetries valid
// for cfg (x -> u*x + t; translations only when B = {1}). A free sequence
// can always be mapped by a valid symmetry so that its first term (the
// multiset minimum for D/E) lands in this set.
inline std::vector<Elem> root_representatives(const ModuleSpec& mod,
                                              const WeightConfig& cfg) {
    const Elem card = static_cast<Elem>(mod.cardinality());
    const auto us = mod.units();
    const bool tr = cfg.translation_valid();
    std::vector<Elem> reps;
    for (Elem x = 0; x < card; ++x) {
        Elem lo = x;
        for (Scalar u : us) {
            Elem ux = mod.scale_elem(u, x);
            if (tr) {
                lo = 0;  // translation alone reaches 0
                break;
            }
            if (ux < lo) lo = ux;
        }
        if (lo == x) reps.push_back(x);
        if (tr) break;  // reps == {0}
    }
    if (tr) return {0};
    return reps;
}

// Shared incremental-DP plumbing: per-element transition deltas
// (d1, d2) = (a*x, b*a), deduplicated, plus a dense addition table.
class DeltaTable {
public:
    DeltaTable(const ModuleSpec& mod, const WeightConfig& cfg)
        : card_(static_cast<int>(mod.cardinality())),
          m_(mod.modulus()),
          msz_(cfg.has_b() ? mod.modulus() : 1) {
        const auto choices = weight_choices(mod, cfg);
        deltas_.resize(static_cast<std::size_t>(card_));
        for (Elem x = 0; x < card_; ++x) {
            auto& dl = deltas_[static_cast<std::size_t>(x)];
            for (const auto& c : choices) {
                std::pair<int, int> d{mod.scale_elem(c.a, x), msz_ == 1 ? 0 : c.ba};
                bool dup = false;
                for (const auto& e : dl) dup |= (e == d);
                if (!dup) dl.push_back(d);
            }
        }
        add_.resize(static_cast<std::size_t>(card_) * static_cast<std::size_t>(card_));
        for (Elem a = 0; a < card_; ++a)
            for (Elem b = 0; b < card_; ++b)
                add_[static_cast<std::size_t>(a) * static_cast<std::size_t>(card_) +
                     static_cast<std::size_t>(b)] = mod.add(a, b);
    }

    int card() const { return card_; }
    int msz() const { return msz_; }
    int base() const { return card_ * msz_; }
    const std::vector<std::pair<int, int>>& deltas(Elem x) const {
        return deltas_[static_cast<std::size_t>(x)];
    }
    // state arithmetic on packed (s1, s2)
    int shift(int state, const std::pair<int, int>& d) const {
        int s1 = state / msz_, s2 = state % msz_;
        int n1 = add_[static_cast<std::size_t>(s1) * static_cast<std::size_t>(card_) +
                      static_cast<std::size_t>(d.first)];
        int n2 = msz_ == 1 ? 0 : (s2 + d.second) % m_;
        return n1 * msz_ + n2;
    }
    int singleton(const std::pair<int, int>& d) const { return d.first * msz_ + d.second; }

private:
    int card_, m_, msz_;
    std::vector<std::vector<std::pair<int, int>>> deltas_;
    std::vector<Elem> add_;
};

// State space for D (any nonempty subsequence) and E (exact length |M|).
// D state: bitset over (s1, s2) reachable by nonempty sub-multisets.
// E state: the same with a count coordinate in 1..|M|.
class SubsetSpace {
public:
    using State = std::vector<std::uint8_t>;

    SubsetSpace(const ModuleSpec& mod, const WeightConfig& cfg, int exact_len)
        : tab_(mod, cfg), n_(exact_len) {}

    static constexpr bool ordered = false;

    State root() const {
        return State(static_cast<std::size_t>((n_ > 0 ? n_ : 1) * tab_.base()), 0);
    }

    // Extends the reachable set by one term; false if a zero-sum target
    // state becomes reachable (child is not free).
    bool extend(const State& in, Elem x, State& out) const {
        out = in;
        const int base = tab_.base();
        bool free = true;
        for (const auto& d : tab_.deltas(x)) {
            const int single = tab_.singleton(d);
            if (n_ <= 0) {
                if (single == 0) free = false;
                out[static_cast<std::size_t>(single)] = 1;
                for (int st = 0; st < base; ++st) {
                    if (!in[static_cast<std::size_t>(st)]) continue;
                    int ns = tab_.shift(st, d);
                    if (ns == 0) free = false;
                    out[static_cast<std::size_t>(ns)] = 1;
                }
            } else {
                if (n_ == 1 && single == 0) free = false;
                out[static_cast<std::size_t>(single)] = 1;  // count 1 block
                for (int cnt = n_ - 1; cnt >= 1; --cnt) {
                    const int src = (cnt - 1) * base, dst = cnt * base;
                    for (int st = 0; st < base; ++st) {
                        if (!in[static_cast<std::size_t>(src + st)]) continue;
                        int ns = tab_.shift(st, d);
                        if (cnt + 1 == n_ && ns == 0) free = false;
                        out[static_cast<std::size_t>(dst + ns)] = 1;
                    }
                }
            }
        }
        return free;
    }

private:
    DeltaTable tab_;
    int n_;  // 0 for kind D, |M| for kind E
};

// State space for C: one full-use reachable set per window start; only
// windows ending at the new term need checking (prefix-hereditary).
class ConsecSpace {
public:
    using State = std::vector<std::vector<std::uint8_t>>;

    ConsecSpace(const ModuleSpec& mod, const WeightConfig& cfg) : tab_(mod, cfg) {}

    static constexpr bool ordered = true;

    State root() const { return {}; }

    bool extend(const State& in, Elem x, State& out) const {
        const int base = tab_.base();
        out.clear();
        out.reserve(in.size() + 1);
        bool free = true;
        const auto& dl = tab_.deltas(x);
        for (const auto& win : in) {
            std::vector<std::uint8_t> nw(static_cast<std::size_t>(base), 0);
            for (const auto& d : dl) {
                for (int st = 0; st < base; ++st) {
                    if (!win[static_cast<std::size_t>(st)]) continue;
                    int ns = tab_.shift(st, d);
                    if (ns == 0) free = false;
                    nw[static_cast<std::size_t>(ns)] = 1;
                }
            }
            out.push_back(std::move(nw));
        }
        std::vector<std::uint8_t> nw(static_cast<std::size_t>(base), 0);
        for (const auto& d : dl) {
            int single = tab_.singleton(d);
            if (single == 0) free = false;
            nw[static_cast<std::size_t>(single)] = 1;
        }
        out.push_back(std::move(nw));
        return free;
    }

private:
    DeltaTable tab_;
};

template <class Space>
SearchOutcome run_free_search(const ModuleSpec& mod, const WeightConfig& cfg,
                              const Space& space, int cap, const SearchOptions& opt) {
    if (cap < 1) throw CapTooSmall("search cap must be >= 1");
    const Elem card = static_cast<Elem>(mod.cardinality());

    SearchOutcome result;
    if (opt.symmetry_reduction) {
        if (mod.units().size() > 1) result.symmetries.push_back("unit-scaling");
        if (cfg.translation_valid()) result.symmetries.push_back("translation");
    }
    std::vector<Elem> roots;
    if (opt.symmetry_reduction) {
        roots = root_representatives(mod, cfg);
    } else {
        for (Elem e = 0; e < card; ++e) roots.push_back(e);
    }

    std::atomic<std::uint64_t> nodes{1};  // the empty sequence
    std::atomic<bool> aborted{false};

    struct TaskResult {
        int best = 0;
        Sequence best_seq;
        bool saw_cap = false;
    };

    // Recursive extension from one task prefix.
    auto dfs = [&](const typename Space::State& st0, Sequence& cur, TaskResult& tr) {
        auto rec = [&](auto&& self, const typename Space::State& st, Elem minNext) -> void {
            if (static_cast<int>(cur.size()) > tr.best) {
                tr.best = static_cast<int>(cur.size());
                tr.best_seq = cur;
            }
            if (static_cast<int>(cur.size()) >= cap) {
                tr.saw_cap = true;
                return;
            }
            typename Space::State next;
            for (Elem e = Space::ordered ? 0 : minNext; e < card; ++e) {
                if (aborted.load(std::memory_order_relaxed)) return;
                if (!space.extend(st, e, next)) continue;
                std::uint64_t n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
                if (opt.node_budget && n > opt.node_budget) {
                    aborted.store(true, std::memory_order_relaxed);
                    return;
                }
                cur.push_back(e);
                self(self, next, e);
                cur.pop_back();
            }
        };
        rec(rec, st0, cur.empty() ? Elem{0} : cur.back());
    };

    // Task prefixes of length 1 (roots only, by symmetry).
    struct Task {
        Sequence prefix;
        typename Space::State state;
    };
    std::vector<Task> tasks;
    TaskResult head;  // results established while building tasks
    {
        auto root_state = space.root();
        typename Space::State st;
        for (Elem e0 : roots) {
            if (!space.extend(root_state, e0, st)) continue;
            nodes.fetch_add(1, std::memory_order_relaxed);
            if (head.best < 1) {
                head.best = 1;
                head.best_seq = {e0};
            }
            if (cap == 1) {
                head.saw_cap = true;
                continue;
            }
            tasks.push_back({{e0}, st});
        }
    }

    std::vector<TaskResult> results(tasks.size());
    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            Sequence cur = tasks[i].prefix;
            dfs(tasks[i].state, cur, results[i]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    Sequence cur = tasks[i].prefix;
                    dfs(tasks[i].state, cur, results[i]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    TaskResult merged = head;
    for (const auto& tr : results) {
        if (tr.best > merged.best) {
            merged.best = tr.best;
            merged.best_seq = tr.best_seq;
        }
        merged.saw_cap |= tr.saw_cap;
    }

    result.length = merged.best;
    result.witness = merged.best_seq;
    result.nodes = nodes.load();
    result.exhaustive = !merged.saw_cap && !aborted.load();
    return result;
}

}  // namespace detail

// Maximum length of a free sequence (up to cap), one free sequence of that
// length, and whether the search was exhaustive below the cap.
inline SearchOutcome max_free_length(const ModuleSpec& mod, const WeightConfig& cfg,
                                     ConstantKind kind, int cap,
                                     const SearchOptions& opt = {}) {
    if (cap < 1) throw CapTooSmall("max_free_length: cap must be >= 1");
    switch (kind) {
        case ConstantKind::D: {
            detail::SubsetSpace space(mod, cfg, 0);
            return detail::run_free_search(mod, cfg, space, cap, opt);
        }
        case ConstantKind::E: {
            detail::SubsetSpace space(mod, cfg, static_cast<int>(mod.cardinality()));
            return detail::run_free_search(mod, cfg, space, cap, opt);
        }
        case ConstantKind::C: {
            detail::ConsecSpace space(mod, cfg);
            return detail::run_free_search(mod, cfg, space, cap, opt);
        }
    }
    throw std::logic_error("unknown kind");
}

// Default search cap from the known upper bounds: D,E <= 2|M|-1 and
// C <= |M|^2 (valid here since |M| = m^r is always a multiple of m).
inline int default_cap(const ModuleSpec& mod, ConstantKind kind) {
    auto card = mod.cardinality();
    if (kind == ConstantKind::C) {
        if (card * card > (std::int64_t{1} << 30)) throw CapTooSmall("cap overflow");
        return static_cast<int>(card * card);
    }
    return static_cast<int>(2 * card - 1);
}

inline ConstantCertificate compute_constant(const ModuleSpec& mod, const WeightConfig& cfg,
                                            ConstantKind kind,
                                            const SearchOptions& opt = {},
                                            int cap_override = 0) {
    const int cap = cap_override > 0 ? cap_override : default_cap(mod, kind);
    auto out = max_free_length(mod, cfg, kind, cap, opt);
    if (!out.exhaustive)
        throw SearchIncomplete("search cap reached without exhausting the space; value is only a lower bound",
                               out.length + 1);
    if (out.length >= 1 && !is_free(mod, out.witness, cfg, kind))
        throw std::logic_error("extremal witness failed independent freeness re-check");
    ConstantCertificate cert{kind, mod, cfg, out.length + 1, out.witness,
                             SearchStats{out.nodes, out.symmetries, out.exhaustive}};
    return cert;
}

}  // namespace wzs
