#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wzs/constructions.hpp"

using namespace wzs;

namespace {

WeightConfig pm1(const ModuleSpec& m, bool with_b = true) {
    return WeightConfig::plus_minus_one(m, with_b);
}

// All sequences over [0, card) of the given length, nondecreasing.
void for_each_multiset(int card, int len, const std::function<void(const Sequence&)>& f) {
    Sequence s(static_cast<std::size_t>(len), 0);
    std::function<void(int, Elem)> rec = [&](int pos, Elem lo) {
        if (pos == len) {
            f(s);
            return;
        }
        for (Elem e = lo; e < card; ++e) {
            s[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, e);
        }
    };
    rec(0, 0);
}

}  // namespace

TEST_CASE("binom_exceeds") {
    CHECK(!binom_exceeds(1));  // C(2,1) = 2 = 2^1, strict inequality fails
    CHECK(binom_exceeds(2));   // 6 > 4
    CHECK(binom_exceeds(10));  // 184756 > 1024
    for (int k = 2; k <= 30; ++k) CHECK(binom_exceeds(k));
    CHECK_THROWS_AS(binom_exceeds(31), Overflow);
    CHECK_THROWS_AS(binom_exceeds(0), PreconditionViolated);
}

TEST_CASE("build_interleaved") {
    ModuleSpec z2(2, 1);
    auto cfg2 = WeightConfig::ones(z2, true);
    CHECK(build_interleaved(z2, {1}, cfg2) == Sequence{0, 1, 0});

    ModuleSpec z4(4, 1);
    auto cfg4 = pm1(z4);
    auto base = max_free_length(z4, cfg4.classical(), ConstantKind::C,
                                default_cap(z4, ConstantKind::C));
    auto out = build_interleaved(z4, base.witness, cfg4);
    CHECK(out.size() == 2 * base.witness.size() + 1);
    CHECK(is_free(z4, out, cfg4, ConstantKind::C));

    CHECK_THROWS_AS(build_interleaved(z4, {0}, cfg4), InputNotFree);
}

TEST_CASE("build_appended") {
    ModuleSpec z4(4, 1);
    auto cfg = pm1(z4);
    auto out = build_appended(z4, {1, 2}, cfg);
    CHECK(out == Sequence{1, 2, 0});
    CHECK(is_free(z4, out, cfg, ConstantKind::D));

    ModuleSpec z2(2, 1);
    CHECK(build_appended(z2, {1}, WeightConfig::ones(z2, true)) == Sequence{1, 0});

    CHECK_THROWS_AS(build_appended(z4, {2, 2}, cfg), InputNotFree);
}

TEST_CASE("interleaved and appended sweep over small moduli") {
    for (int m = 2; m <= 8; ++m) {
        ModuleSpec mod(m, 1);
        auto cfg = pm1(mod);
        auto d_base = max_free_length(mod, cfg.classical(), ConstantKind::D,
                                      default_cap(mod, ConstantKind::D));
        if (d_base.length >= 1) {
            auto out = build_appended(mod, d_base.witness, cfg);
            CHECK(out.size() == d_base.witness.size() + 1);
            CHECK(is_free(mod, out, cfg, ConstantKind::D));
        }
        auto c_base = max_free_length(mod, cfg.classical(), ConstantKind::C,
                                      default_cap(mod, ConstantKind::C));
        if (c_base.length >= 1) {
            auto out = build_interleaved(mod, c_base.witness, cfg);
            CHECK(is_free(mod, out, cfg, ConstantKind::C));
        }
    }
}

TEST_CASE("pigeonhole witness") {
    ModuleSpec z8(8, 1);
    auto cfg = pm1(z8);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> elem_d(0, 7);
    for (int trial = 0; trial < 200; ++trial) {
        Sequence s;
        for (int i = 0; i < 6; ++i) s.push_back(elem_d(rng));
        auto w = pigeonhole_witness(z8, s, cfg);
        CHECK(witness_valid(z8, s, cfg, w));
    }

    // repeated terms give the minimal two-element collision
    Sequence rep{3, 3, 1, 5, 2, 6};
    auto w = pigeonhole_witness(z8, rep, cfg);
    CHECK(witness_valid(z8, rep, cfg, w));

    CHECK_THROWS_AS(pigeonhole_witness(z8, {1, 2, 3, 4}, cfg), PreconditionViolated);
    CHECK_THROWS_AS(pigeonhole_witness(z8, {1, 2, 3}, cfg), PreconditionViolated);
    ModuleSpec z4(4, 1);
    CHECK_THROWS_AS(pigeonhole_witness(z4, {1, 2, 3, 4}, pm1(z4, false)),
                    PreconditionViolated);
}

TEST_CASE("extract_even_length on Z_4, exhaustive") {
    ModuleSpec z4(4, 1);
    auto cfg = pm1(z4);
    const int d = compute_constant(z4, cfg, ConstantKind::D).value;
    REQUIRE(d == 4);
    const int len = 4 - 2 + d;  // 6
    for_each_multiset(4, len, [&](const Sequence& s) {
        auto w = extract_even_length(z4, s, cfg, 4, d);
        REQUIRE(w.indices.size() == 4);
        REQUIRE(witness_valid(z4, s, cfg, w));
    });

    CHECK_THROWS_AS(extract_even_length(z4, {0, 0}, cfg, 4, d), PreconditionViolated);
    ModuleSpec z5(5, 1);
    CHECK_THROWS_AS(extract_even_length(z5, {0, 0, 0, 0, 0, 0, 0},
                                        pm1(z5), 4, 4),
                    PreconditionViolated);
}

TEST_CASE("pairs-only branch of extract_even_length") {
    ModuleSpec z6(6, 1);
    auto cfg = pm1(z6);
    Sequence s{1, 1, 2, 2, 3, 3, 4, 4, 5};
    auto w = extract_even_length(z6, s, cfg, 6, 5);
    CHECK(w.indices.size() == 6);
    CHECK(witness_valid(z6, s, cfg, w));
    CHECK(w.indices.size() % 2 == 0);
}

TEST_CASE("extract_z2 exhaustive over Z_2^2") {
    ModuleSpec m(2, 2);
    auto cfg = WeightConfig::ones(m, true);
    const int d = compute_constant(m, WeightConfig::ones(m, false), ConstantKind::D).value;
    REQUIRE(d == 3);  // classical Davenport constant of Z_2^2 is r+1
    const int card = static_cast<int>(m.cardinality());
    Sequence s(4, 0);
    for (int a = 0; a < card; ++a)
        for (int b = 0; b < card; ++b)
            for (int c = 0; c < card; ++c)
                for (int e = 0; e < card; ++e) {
                    s = {a, b, c, e};
                    auto w = extract_z2(m, s, cfg, d);
                    REQUIRE(witness_valid(m, s, cfg, w));
                    REQUIRE(w.indices.size() % 2 == 0);
                }

    // a repeated term comes back as the pair
    auto w = extract_z2(m, {2, 2, 1, 3}, cfg, d);
    CHECK(witness_valid(m, {2, 2, 1, 3}, cfg, w));

    CHECK_THROWS_AS(extract_z2(m, {1, 2}, cfg, d), PreconditionViolated);
    ModuleSpec z4(4, 1);
    CHECK_THROWS_AS(extract_z2(z4, {1, 2, 3, 0}, pm1(z4), 3), PreconditionViolated);
}
