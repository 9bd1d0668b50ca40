#pragma once

// Re-verifies the stated equalities, inequalities, and computed values at
// desk scale. Each row compares two independently computed sides (search
// vs. formula, or two separate searches); rows are assembled in a fixed
// claim order regardless of evaluation order.

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wzs/search.hpp"

namespace wzs {

inline std::string config_key(const ModuleSpec& mod, const WeightConfig& cfg,
                              ConstantKind kind) {
    std::ostringstream os;
    os << to_string(kind) << ":m" << mod.modulus() << ":r" << mod.rank() << ":a";
    for (std::size_t i = 0; i < cfg.a_set.size(); ++i)
        os << (i ? "," : "") << cfg.a_set[i];
    os << ":b";
    if (cfg.b_set) {
        for (std::size_t i = 0; i < cfg.b_set->size(); ++i)
            os << (i ? "," : "") << (*cfg.b_set)[i];
    } else {
        os << "none";
    }
    return os.str();
}

// Memoizing front end to compute_constant, safe to call from concurrent
// claim evaluations. Optional hooks connect a persistent certificate
// cache without this layer knowing its format.
class ConstantEngine {
public:
    using LoadHook = std::function<std::optional<ConstantCertificate>(
        const ModuleSpec&, const WeightConfig&, ConstantKind)>;
    using StoreHook = std::function<void(const ConstantCertificate&)>;

    explicit ConstantEngine(SearchOptions opts = {}) : opts_(opts) {}

    void set_cache_hooks(LoadHook load, StoreHook store) {
        load_ = std::move(load);
        store_ = std::move(store);
    }

    SearchOptions& options() { return opts_; }

    ConstantCertificate get(const ModuleSpec& mod, const WeightConfig& cfg,
                            ConstantKind kind) {
        const std::string key = config_key(mod, cfg, kind);
        std::shared_future<ConstantCertificate> fut;
        bool owner = false;
        {
            std::lock_guard lk(mu_);
            auto it = memo_.find(key);
            if (it == memo_.end()) {
                auto prom = std::make_shared<std::promise<ConstantCertificate>>();
                fut = prom->get_future().share();
                memo_.emplace(key, fut);
                pending_.emplace(key, prom);
                owner = true;
            } else {
                fut = it->second;
            }
        }
        if (owner) {
            std::shared_ptr<std::promise<ConstantCertificate>> prom;
            {
                std::lock_guard lk(mu_);
                prom = pending_.at(key);
                pending_.erase(key);
            }
            try {
                std::optional<ConstantCertificate> cert;
                if (load_) cert = load_(mod, cfg, kind);
                if (!cert) {
                    cert = compute_constant(mod, cfg, kind, opts_);
                    if (store_) store_(*cert);
                }
                prom->set_value(*cert);
            } catch (...) {
                prom->set_exception(std::current_exception());
            }
        }
        return fut.get();
    }

    // Convenience: just the value.
    int value(const ModuleSpec& mod, const WeightConfig& cfg, ConstantKind kind) {
        return get(mod, cfg, kind).value;
    }

private:
    SearchOptions opts_;
    LoadHook load_;
    StoreHook store_;
    std::mutex mu_;
    std::map<std::string, std::shared_future<ConstantCertificate>> memo_;
    std::map<std::string, std::shared_ptr<std::promise<ConstantCertificate>>> pending_;
};

struct ClaimParams {
    int modulus = 0;
    int rank = 1;
    std::string a, b;  // human-readable weight sets, "" when absent
};

struct ClaimResult {
    std::string claim_id;
    ClaimParams params;
    long long lhs = 0, rhs = 0;
    std::string relation;  // "==", "<=", ">"
    std::string status;    // verified | violated | skipped | consistent | counterexample
    std::string note;
    std::vector<ConstantCertificate> certificates;  // filled when violated
};

struct SuiteRanges {
    std::vector<int> d_mods = {2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> e_odd = {3, 5, 7};
    std::vector<int> e_even = {4, 6, 8};
    std::vector<int> c_mods = {2, 4};   // powers of two: C_A(m)=m is known there
    std::vector<int> c11_mods = {3};    // C_{1,1}(n)=n^2 spot check
    std::vector<int> de11_mods = {2, 3, 4};
    std::vector<int> z2_ranks_de = {1, 2, 3};
    std::vector<int> z2_ranks_c = {1, 2};
    std::uint64_t node_budget = 200'000'000;  // per search; 0 skips every row
    std::vector<std::string> claim_filter;    // prefixes; empty = all claims
    int threads = 1;
};

namespace detail {

struct ClaimSpec {
    std::string id;
    ClaimParams params;
    // Computes (lhs, rhs, relation); throws to mark the row skipped.
    std::function<void(ConstantEngine&, ClaimResult&)> eval;
    bool conjecture = false;
};

inline bool claim_selected(const std::string& id, const std::vector<std::string>& filter) {
    if (filter.empty()) return true;
    for (const auto& f : filter)
        if (id.rfind(f, 0) == 0) return true;
    return false;
}

inline void finish_row(ClaimResult& row, bool conjecture) {
    bool ok = false;
    if (row.relation == "==") ok = row.lhs == row.rhs;
    else if (row.relation == "<=") ok = row.lhs <= row.rhs;
    else if (row.relation == ">") ok = row.lhs > row.rhs;
    if (conjecture)
        row.status = ok ? "consistent" : "counterexample";
    else
        row.status = ok ? "verified" : "violated";
    // certificates are audit payload for violations only
    if (ok) row.certificates.clear();
}

// Fetches a constant and keeps its certificate on the row for audit.
inline long long cert_value(ConstantEngine& eng, ClaimResult& row, const ModuleSpec& mod,
                            const WeightConfig& cfg, ConstantKind kind) {
    auto c = eng.get(mod, cfg, kind);
    row.certificates.push_back(c);
    return c.value;
}

inline std::vector<ClaimSpec> build_claims(const SuiteRanges& r) {
    std::vector<ClaimSpec> claims;
    auto add = [&](std::string id, ClaimParams p,
                   std::function<void(ConstantEngine&, ClaimResult&)> f) {
        claims.push_back({std::move(id), std::move(p), std::move(f), false});
    };

    for (int m : r.c_mods) {
        add("thm-3.2", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::C);
            row.rhs = 2ll * cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::C);
            row.relation = "==";
        });
    }
    for (int m : r.c_mods) {
        if ((m & (m - 1)) != 0) continue;  // cited value only for powers of two
        add("sec6-ca-pow2", {m, 1, "+-1", ""}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::C);
            row.rhs = m;
            row.relation = "==";
        });
    }
    for (int m : r.d_mods) {
        add("prop-2.3", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D) + 1;
            row.rhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
            row.relation = "<=";
        });
        add("thm-3.4", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
            row.rhs = 2ll * cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D);
            row.relation = "<=";
        });
        add("sec5-2k", {m, 1, "+-1", ""}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            int k = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D);
            row.lhs = 1ll << k;
            row.rhs = m;
            row.relation = ">";
        });
    }
    for (int m : r.e_odd) {
        add("sec5-odd-e", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::E);
            row.rhs = 2ll * m - 1;
            row.relation = "==";
        });
    }
    for (int m : r.e_even) {
        add("cor-3.7-lower", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::E);
            row.rhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::E);
            row.relation = "<=";
        });
        add("cor-3.7-upper", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::E);
            row.rhs = m - 2 +
                      cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
            row.relation = "<=";
        });
    }
    for (int rk : r.z2_ranks_de) {
        add("thm-4.2", {2, rk, "1", "1"}, [rk](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(2, rk);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::D);
            row.rhs = cert_value(eng, row, mod, WeightConfig::ones(mod, false), ConstantKind::D) + 1;
            row.relation = "==";
        });
        add("sec4-d11", {2, rk, "1", "1"}, [rk](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(2, rk);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::D);
            row.rhs = rk + 2;
            row.relation = "==";
        });
        add("sec4-e11", {2, rk, "1", "1"}, [rk](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(2, rk);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::E);
            row.rhs = (1ll << rk) + rk;
            row.relation = "==";
        });
    }
    for (int rk : r.z2_ranks_c) {
        add("sec4-c11", {2, rk, "1", "1"}, [rk](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(2, rk);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::C);
            row.rhs = 1ll << (rk + 1);
            row.relation = "==";
        });
    }
    add("remark-d6", {6, 1, "+-1", "1"}, [](ConstantEngine& eng, ClaimResult& row) {
        ModuleSpec mod(6, 1);
        row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
        row.rhs = 5;
        row.relation = "==";
    });
    add("remark-da6", {6, 1, "+-1", ""}, [](ConstantEngine& eng, ClaimResult& row) {
        ModuleSpec mod(6, 1);
        row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D);
        row.rhs = 3;
        row.relation = "==";
    });
    add("remark-gap6", {6, 1, "+-1", "1"}, [](ConstantEngine& eng, ClaimResult& row) {
        ModuleSpec mod(6, 1);
        row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
        row.rhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D) + 2;
        row.relation = "==";
    });
    for (int m : {4, 8}) {
        add("remark-pow2", {m, 1, "+-1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, true), ConstantKind::D);
            row.rhs = cert_value(eng, row, mod, WeightConfig::plus_minus_one(mod, false), ConstantKind::D) + 1;
            row.relation = "==";
        });
    }
    for (int m : r.de11_mods) {
        add("sec6-d11", {m, 1, "1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::D);
            row.rhs = 2ll * m - 1;
            row.relation = "==";
        });
        add("sec6-e11", {m, 1, "1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::E);
            row.rhs = 2ll * m - 1;
            row.relation = "==";
        });
    }
    for (int m : r.c11_mods) {
        add("sec6-c11", {m, 1, "1", "1"}, [m](ConstantEngine& eng, ClaimResult& row) {
            ModuleSpec mod(m, 1);
            row.lhs = cert_value(eng, row, mod, WeightConfig::ones(mod, true), ConstantKind::C);
            row.rhs = static_cast<long long>(m) * m;
            row.relation = "==";
        });
    }
    return claims;
}

inline std::vector<ClaimResult> evaluate_claims(const std::vector<ClaimSpec>& claims,
                                                ConstantEngine& eng,
                                                std::uint64_t node_budget, int threads) {
    std::vector<ClaimResult> rows(claims.size());
    auto eval_one = [&](std::size_t i) {
        const auto& c = claims[i];
        auto& row = rows[i];
        row.claim_id = c.id;
        row.params = c.params;
        if (node_budget == 0) {
            row.status = "skipped";
            row.note = "node budget is zero";
            return;
        }
        try {
            c.eval(eng, row);
            finish_row(row, c.conjecture);
        } catch (const SearchIncomplete& e) {
            row.status = "skipped";
            row.note = std::string("search incomplete: ") + e.what();
        } catch (const std::exception& e) {
            row.status = "skipped";
            row.note = e.what();
        }
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < claims.size(); ++i) eval_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= claims.size()) return;
                    eval_one(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace detail

inline std::vector<ClaimResult> run_suite(const SuiteRanges& ranges, ConstantEngine& eng) {
    eng.options().node_budget = ranges.node_budget;
    auto claims = detail::build_claims(ranges);
    std::vector<detail::ClaimSpec> selected;
    for (auto& c : claims)
        if (detail::claim_selected(c.id, ranges.claim_filter)) selected.push_back(std::move(c));
    return detail::evaluate_claims(selected, eng, ranges.node_budget, ranges.threads);
}

// Evidence rows for the stated conjectures; never reports "verified".
inline std::vector<ClaimResult> scan_conjectures(const std::vector<int>& n_list,
                                                 ConstantEngine& eng,
                                                 std::uint64_t node_budget = 200'000'000,
                                                 int threads = 1) {
    std::vector<detail::ClaimSpec> claims;
    for (int n : n_list) {
        if (n >= 2 && (n & (n - 1)) == 0) {
            claims.push_back({"conj-d-pow2",
                              {n, 1, "+-1", "1"},
                              [n](ConstantEngine& e, ClaimResult& row) {
                                  ModuleSpec mod(n, 1);
                                  row.lhs = detail::cert_value(e, row, mod, WeightConfig::plus_minus_one(mod, true),
                                                    ConstantKind::D);
                                  row.rhs = detail::cert_value(e, row, mod, WeightConfig::plus_minus_one(mod, false),
                                                    ConstantKind::D) + 1;
                                  row.relation = "==";
                              },
                              true});
        }
        if (n % 2 == 0) {
            claims.push_back({"conj-e-even",
                              {n, 1, "+-1", "1"},
                              [n](ConstantEngine& e, ClaimResult& row) {
                                  ModuleSpec mod(n, 1);
                                  row.lhs = detail::cert_value(e, row, mod, WeightConfig::plus_minus_one(mod, true),
                                                    ConstantKind::E);
                                  row.rhs = detail::cert_value(e, row, mod, WeightConfig::plus_minus_one(mod, false),
                                                    ConstantKind::E);
                                  row.relation = "==";
                              },
                              true});
        }
    }
    return detail::evaluate_claims(claims, eng, node_budget, threads);
}

}  // namespace wzs
