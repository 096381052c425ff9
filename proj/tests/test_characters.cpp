#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <set>

#include "eulermean/characters.hpp"
#include "oracles.hpp"

using namespace eulermean;

TEST_CASE("unit group decomposition of small moduli") {
    const auto d4 = decompose_unit_group(4);
    REQUIRE(d4.factors.size() == 1);
    CHECK(d4.factors[0].generator == 3);
    CHECK(d4.factors[0].order == 2);

    const auto d8 = decompose_unit_group(8);
    REQUIRE(d8.factors.size() == 2);
    CHECK(d8.factors[0].generator == 7); // -1 mod 8
    CHECK(d8.factors[0].order == 2);
    CHECK(d8.factors[1].generator == 5);
    CHECK(d8.factors[1].order == 2);

    const auto d15 = decompose_unit_group(15);
    uint64_t prod = 1;
    for (const auto& f : d15.factors) prod *= f.order;
    CHECK(prod == 8); // phi(15)

    CHECK_THROWS_AS(decompose_unit_group(0), std::domain_error);
}

TEST_CASE("decomposition covers every unit with a valid discrete log") {
    for (uint64_t k = 1; k <= 50; ++k) {
        const auto d = decompose_unit_group(k);
        CHECK(d.totient == oracles::totient_by_gcd_count(k));
        uint64_t units = 0;
        for (uint64_t a = 0; a < k; ++a) {
            const bool unit = (k == 1) || std::gcd(a, k) == 1;
            CHECK(d.is_unit(a) == unit);
            if (!unit) continue;
            ++units;
            uint64_t prod = 1 % k;
            for (size_t i = 0; i < d.rank(); ++i)
                for (uint32_t e = 0; e < d.exponent_of(a, i); ++e)
                    prod = (prod * d.factors[i].generator) % k;
            CHECK(prod == a);
        }
        CHECK(units == d.totient);
    }
}

TEST_CASE("character group basics") {
    const auto g1 = character_group(1);
    REQUIRE(g1.size() == 1);
    for (uint64_t n : {0ull, 1ull, 5ull, 12ull}) CHECK(g1[0].eval(n) == cplx{1.0, 0.0});

    const auto g4 = character_group(4);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0].is_principal());
    CHECK(g4[1].eval(3) == cplx{-1.0, 0.0});

    const auto g5 = character_group(5);
    REQUIRE(g5.size() == 4);
    std::multiset<int32_t> exps_at_2;
    for (const auto& chi : g5) exps_at_2.insert(chi.exp_at(2));
    // 2 generates (Z/5Z)*, so chi(2) runs over all 4th roots of unity
    CHECK(exps_at_2 == std::multiset<int32_t>{0, 1, 2, 3});
    CHECK(g5[0].value_order == 4);

    CHECK_THROWS_AS(character_group(0), std::domain_error);
    CHECK_THROWS_AS(character_group(10'001), std::domain_error);
}

TEST_CASE("eval_char examples") {
    const auto chi1 = character_by_index(1, 0);
    CHECK(eval_char(chi1, 0) == cplx{1.0, 0.0});

    const auto chi4 = character_by_index(4, 1);
    CHECK(eval_char(chi4, 7) == cplx{-1.0, 0.0});

    for (const auto& chi : character_group(6)) CHECK(eval_char(chi, 9) == cplx{0.0, 0.0});
}

TEST_CASE("character_by_index matches the enumerated group") {
    for (uint64_t k : {1ull, 2ull, 4ull, 5ull, 12ull, 36ull}) {
        const auto group = character_group(k);
        for (size_t i = 0; i < group.size(); ++i)
            CHECK(character_by_index(k, i) == group[i]);
    }
    CHECK_THROWS_AS(character_by_index(5, 4), std::domain_error);
}

TEST_CASE("char_square examples") {
    const auto g4 = character_group(4);
    CHECK(char_square(g4[1]) == g4[0]);
    CHECK(char_square(g4[0]) == g4[0]);

    const auto g5 = character_group(5);
    for (const auto& chi : g5)
        if (chi.order() == 4) CHECK(char_square(chi).order() == 2);
}

TEST_CASE("char_square commutes with evaluation") {
    for (uint64_t k = 1; k <= 30; ++k)
        for (const auto& chi : character_group(k)) {
            const auto sq = char_square(chi);
            for (uint64_t n = 0; n < k; ++n) {
                const cplx lhs = eval_char(sq, n);
                const cplx rhs = eval_char(chi, n) * eval_char(chi, n);
                CHECK(std::abs(lhs - rhs) < 1e-14);
            }
        }
}

TEST_CASE("character axioms hold exactly for k <= 60") {
    for (uint64_t k = 1; k <= 60; ++k) {
        const auto group = character_group(k);
        CHECK(group.size() == oracles::totient_by_gcd_count(k));
        CHECK(group[0].is_principal());
        const uint64_t lambda = oracles::carmichael_brute(k);

        std::set<std::vector<int32_t>> tables;
        for (const auto& chi : group) {
            tables.insert(chi.exps);
            CHECK(chi.exp_at(1 % k) == 0); // chi(1) = 1

            // multiplicativity on exponents: exact, all pairs
            const uint64_t L = chi.value_order;
            CHECK(lambda % L == 0);
            for (uint64_t a = 0; a < k; ++a)
                for (uint64_t b = 0; b < k; ++b) {
                    const int32_t ua = chi.exps[a], ub = chi.exps[b];
                    const int32_t uab = chi.exps[(a * b) % k];
                    if (ua < 0 || ub < 0)
                        CHECK(uab == -1);
                    else
                        CHECK(uab == static_cast<int32_t>((uint64_t(ua) + uint64_t(ub)) % L));
                }

            // vanishing exactly off the units
            for (uint64_t a = 0; a < k; ++a) {
                const bool unit = (k == 1) || std::gcd(a, k) == 1;
                CHECK((chi.exps[a] >= 0) == unit);
            }

            // periodicity through eval
            for (uint64_t n = 0; n < k; ++n) CHECK(eval_char(chi, n + k) == eval_char(chi, n));

            // orthogonality, root-of-unity exponent arithmetic: the value
            // multiset is uniform over the image subgroup, so the sum is 0
            // for non-principal chi and phi(k) for the principal one
            const uint64_t d = chi.order();
            std::vector<uint64_t> hist(L, 0);
            uint64_t units = 0;
            for (uint64_t a = 0; a < k; ++a)
                if (chi.exps[a] >= 0) {
                    ++units;
                    ++hist[chi.exps[a]];
                }
            for (uint64_t u = 0; u < L; ++u) {
                const bool in_image = (u * d) % L == 0;
                CHECK(hist[u] == (in_image ? units / d : 0));
            }
            if (chi.is_principal()) CHECK(d == 1);

            cplx float_sum{0.0, 0.0};
            for (uint64_t a = 0; a < k; ++a) float_sum += chi.values[a];
            if (chi.is_principal())
                CHECK(std::abs(float_sum - cplx(double(units), 0.0)) < 1e-10);
            else
                CHECK(std::abs(float_sum) < 1e-10);
        }
        CHECK(tables.size() == group.size()); // no duplicate characters
    }
}

TEST_CASE("real character detection") {
    CHECK(character_by_index(1, 0).is_real());
    CHECK(character_by_index(4, 1).is_real());
    const auto g5 = character_group(5);
    int real_count = 0;
    for (const auto& chi : g5) real_count += chi.is_real();
    CHECK(real_count == 2); // principal and the quadratic character
}
