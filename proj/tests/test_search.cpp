#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wzs/search.hpp"

using namespace wzs;

namespace {

WeightConfig pm1(const ModuleSpec& m, bool with_b = true) {
    return WeightConfig::plus_minus_one(m, with_b);
}

}  // namespace

TEST_CASE("is_free examples") {
    ModuleSpec z6(6, 1);
    CHECK(is_free(z6, {0, 1, 2, 4}, pm1(z6), ConstantKind::D));
    CHECK(!is_free(z6, {3, 3}, pm1(z6), ConstantKind::D));

    ModuleSpec z4(4, 1);
    CHECK(is_free(z4, {1, 2}, pm1(z4, false), ConstantKind::D));
    CHECK_THROWS_AS(is_free(z4, {}, pm1(z4), ConstantKind::D), EmptySequence);
}

TEST_CASE("max_free_length reference values") {
    ModuleSpec z6(6, 1);
    auto out = max_free_length(z6, pm1(z6), ConstantKind::D, 11);
    CHECK(out.length == 4);
    CHECK(out.exhaustive);
    CHECK(is_free(z6, out.witness, pm1(z6), ConstantKind::D));

    for (int r : {1, 2, 3}) {
        ModuleSpec m(2, r);
        auto cfg = WeightConfig::ones(m, true);
        auto o = max_free_length(m, cfg, ConstantKind::D, default_cap(m, ConstantKind::D));
        CHECK(o.length == r + 1);
        CHECK(o.exhaustive);
    }

    ModuleSpec z3(3, 1);
    auto oe = max_free_length(z3, pm1(z3), ConstantKind::E, 5);
    CHECK(oe.length == 4);
    CHECK(oe.exhaustive);

    CHECK_THROWS_AS(max_free_length(z3, pm1(z3), ConstantKind::E, 0), CapTooSmall);
}

TEST_CASE("compute_constant small values") {
    ModuleSpec z6(6, 1);
    CHECK(compute_constant(z6, pm1(z6), ConstantKind::D).value == 5);

    ModuleSpec z4(4, 1);
    auto d_ab = compute_constant(z4, pm1(z4), ConstantKind::D);
    auto d_a = compute_constant(z4, pm1(z4, false), ConstantKind::D);
    CHECK(d_ab.value == 4);
    CHECK(d_a.value == 3);
    CHECK(d_ab.value == d_a.value + 1);

    for (int n : {2, 3, 4}) {
        ModuleSpec m(n, 1);
        auto cfg = WeightConfig::ones(m, true);
        CHECK(compute_constant(m, cfg, ConstantKind::D).value == 2 * n - 1);
    }

    // {+-1} = {1} mod 2, so the configs agree kind by kind
    ModuleSpec z2(2, 1);
    for (auto kind : {ConstantKind::D, ConstantKind::C, ConstantKind::E}) {
        CHECK(compute_constant(z2, pm1(z2), kind).value ==
              compute_constant(z2, WeightConfig::ones(z2, true), kind).value);
    }
}

TEST_CASE("certificate invariants") {
    ModuleSpec z6(6, 1);
    auto cert = compute_constant(z6, pm1(z6), ConstantKind::D);
    CHECK(static_cast<int>(cert.extremal.size()) == cert.value - 1);
    CHECK(is_free(z6, cert.extremal, pm1(z6), ConstantKind::D));
    CHECK(cert.stats.exhaustive);
    CHECK(cert.stats.nodes_explored > 0);
}

TEST_CASE("symmetry reduction does not change the constant") {
    for (int m = 2; m <= 6; ++m) {
        ModuleSpec mod(m, 1);
        for (bool with_b : {true, false}) {
            auto cfg = pm1(mod, with_b);
            for (auto kind : {ConstantKind::D, ConstantKind::C}) {
                SearchOptions sym_on, sym_off;
                sym_off.symmetry_reduction = false;
                CHECK(compute_constant(mod, cfg, kind, sym_on).value ==
                      compute_constant(mod, cfg, kind, sym_off).value);
            }
        }
    }
}

TEST_CASE("threaded search matches single-threaded") {
    // classical mode has several root representatives, so work actually splits
    ModuleSpec z8(8, 1);
    SearchOptions seq, par;
    par.threads = 4;
    auto a = compute_constant(z8, pm1(z8, false), ConstantKind::E, seq);
    auto b = compute_constant(z8, pm1(z8, false), ConstantKind::E, par);
    CHECK(a.value == b.value);
    CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
    CHECK(a.extremal == b.extremal);
}

TEST_CASE("node budget yields SearchIncomplete") {
    ModuleSpec z6(6, 1);
    SearchOptions opts;
    opts.node_budget = 3;
    CHECK_THROWS_AS(compute_constant(z6, pm1(z6), ConstantKind::D, opts), SearchIncomplete);
}

TEST_CASE("hereditary pruning soundness samples") {
    std::mt19937 rng(9);
    ModuleSpec z6(6, 1);
    auto cfg = pm1(z6);
    std::uniform_int_distribution<int> elem_d(0, 5);
    int done = 0;
    while (done < 100) {
        Sequence s;
        for (int i = 0; i < 4; ++i) s.push_back(elem_d(rng));
        if (!is_free(z6, s, cfg, ConstantKind::D)) continue;
        std::uniform_int_distribution<unsigned long> mask_d(1, (1ul << s.size()) - 1);
        unsigned long mask = mask_d(rng);
        Sequence sub;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask & (1ul << i)) sub.push_back(s[i]);
        CHECK(is_free(z6, sub, cfg, ConstantKind::D));
        ++done;
    }

    // contiguous substrings of a consecutive-free sequence stay consecutive-free
    done = 0;
    while (done < 100) {
        Sequence s;
        for (int i = 0; i < 5; ++i) s.push_back(elem_d(rng));
        if (!is_free(z6, s, cfg, ConstantKind::C)) continue;
        std::uniform_int_distribution<int> start_d(0, 4);
        int start = start_d(rng);
        std::uniform_int_distribution<int> end_d(start, 4);
        int end = end_d(rng);
        Sequence sub(s.begin() + start, s.begin() + end + 1);
        CHECK(is_free(z6, sub, cfg, ConstantKind::C));
        ++done;
    }
}
