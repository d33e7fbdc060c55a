#include <doctest.h>

#include <random>

#include "lnz/errors.hpp"
#include "lnz/factbuild.hpp"
#include "lnz/witness.hpp"

using namespace lnz;

TEST_CASE("prefix-power witnesses") {
    auto t = find_power_with_prefix(2, 10, 12, 100);
    CHECK(t.d == 7);
    CHECK(t.e == 1);
    CHECK(t.f == 8);
    CHECK(t.verify());

    auto u = find_power_with_prefix(3, 10, 2, 100);
    CHECK(u.d == 3);
    CHECK(u.e == 1);
    CHECK(u.f == 7);
    CHECK(u.verify());

    CHECK_THROWS_AS(find_power_with_prefix(2, 8, 3, 100), usage_error);
    CHECK_THROWS_AS(find_power_with_prefix(3, 9, 3, 100), usage_error);

    std::mt19937_64 rng(424242);
    int verified = 0;
    while (verified < 20) {
        std::uniform_int_distribution<std::uint64_t> cd(2, 12), bd(2, 12), ad(1, 200);
        std::uint64_t c = cd(rng), b = bd(rng), a = ad(rng);
        if (multiplicatively_dependent(b, c)) continue;
        auto w = find_power_with_prefix(c, b, a, 20000);
        CHECK(w.verify());
        // d is minimal: a is not a proper prefix of any smaller power.
        BigInt power = 1;
        auto prefix = to_digits_msd(BigInt(a), b);
        for (std::uint32_t d = 1; d < w.d; ++d) {
            power *= c;
            auto digits = to_digits_msd(power, b);
            bool proper = digits.size() > prefix.size() && is_digit_prefix(prefix, digits);
            if (proper) {
                BigInt be = 1;
                for (std::size_t i = prefix.size(); i < digits.size(); ++i) be *= b;
                CHECK(power - BigInt(a) * be == 0); // only excuse: remainder was zero
            }
        }
        ++verified;
    }
}

TEST_CASE("witness triple verification is exact") {
    WitnessTriple t{2, 10, 12, 7, 1, 8};
    CHECK(t.verify());
    WitnessTriple wrong = t;
    wrong.f = 9;
    CHECK_FALSE(wrong.verify());
    WitnessTriple zero_rem = t;
    zero_rem.f = 0;
    CHECK_FALSE(zero_rem.verify());
}

TEST_CASE("digit-sum set membership") {
    SetSpec spec{{2, 3}, 2};
    CHECK(set_membership(8, spec) == Membership::AMinus);
    CHECK(set_membership(31, spec) == Membership::APlus);
    CHECK(set_membership(15, spec) == Membership::Neither);

    // Mutual exclusion on a sweep.
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        auto m = set_membership(n, spec);
        BigInt s2 = digit_sum(BigInt(n), 2), s3 = digit_sum(BigInt(n), 3);
        BigInt mx = std::max(s2, s3);
        CHECK((m == Membership::AMinus) == (mx == s3));
        CHECK((m == Membership::APlus) == (mx - s3 >= 2));
        if (m == Membership::AMinus) CHECK(m != Membership::APlus);
    }

    CHECK_THROWS_AS(set_membership(0, spec), usage_error);
    CHECK_THROWS_AS(set_membership(5, SetSpec{{4}, 1}), usage_error);
    CHECK_THROWS_AS(set_membership(5, SetSpec{{}, 1}), usage_error);
}

TEST_CASE("prefix extensions reach digit-sum dominance") {
    CHECK(find_extension({2, 3}, 10, 1, 100) == 19682);

    // k a power of p: blocks of (p^t - 1) digits are appended.
    auto a9 = find_extension({2, 3}, 9, 1, 100);
    auto digits = to_digits_msd(a9, 9);
    REQUIRE(digits.size() >= 2);
    CHECK(digits[0] == 1);
    for (std::size_t i = 1; i < digits.size(); ++i) CHECK(digits[i] == 8);
    CHECK(digit_sum(a9, 3) >= digit_sum(a9, 2));

    // Single prime: dominance is trivial, prefix still checked.
    auto single = find_extension({3}, 10, 7, 100);
    auto sdig = to_digits_msd(single, 10);
    CHECK(sdig[0] == 7);

    for (std::uint64_t a : {1ull, 5ull, 12ull, 100ull}) {
        auto ext = find_extension({2, 5}, 10, a, 20000);
        auto prefix = to_digits_msd(BigInt(a), 10);
        auto whole = to_digits_msd(ext, 10);
        CHECK(is_digit_prefix(prefix, whole));
        CHECK(digit_sum(ext, 5) >= digit_sum(ext, 2));
    }
}

TEST_CASE("divisibility signals for the tie case") {
    CHECK(divisibility_signal(4, 12) == Signal::NotDivides);
    CHECK(divisibility_signal(63, 12) == Signal::Divides);
    CHECK(divisibility_signal(31, 12) == Signal::Unknown);
    CHECK(lnz_factorial(4, 12) == 2);
    CHECK(lnz_factorial(63, 12) % 3 == 0);

    CHECK_THROWS_AS(divisibility_signal(5, 10), usage_error);
    CHECK_THROWS_AS(divisibility_signal(5, 9), usage_error);

    // Soundness sweep: a non-UNKNOWN signal never contradicts the oracle.
    auto values = lnz_range(12, 1, 20000);
    for (std::uint64_t n = 1; n < 20000; ++n) {
        auto s = divisibility_signal(n, 12);
        bool divides = values[n - 1] % 3 == 0;
        if (s == Signal::Divides) CHECK(divides);
        if (s == Signal::NotDivides) CHECK_FALSE(divides);
    }
}

TEST_CASE("fooling reports defeat constant candidates") {
    for (std::uint32_t out : {0u, 1u}) {
        auto candidate = build_const(12, out);
        auto report = fooling_report(candidate, "const", 12);
        CHECK(verify_fooling_report(report, candidate));
        CHECK(report.output1 == out);
        CHECK(report.signal1 == Signal::NotDivides);
        CHECK(report.signal2 == Signal::Divides);
        CHECK(report.to_text().find("FOOLING CERTIFICATE") == 0);
        CHECK(report.to_csv().find("field,value\n") == 0);
    }
}

TEST_CASE("fooling reports defeat periodic predictors") {
    // Period-7 majority-vote predictor over alphabet 12.
    auto mod7 = build_n_mod(12, 7);
    std::vector<std::uint32_t> vote{1, 0, 0, 1, 0, 1, 0};
    auto candidate = map_output(mod7, vote);
    auto report = fooling_report(candidate, "periodic-7", 12);
    CHECK(verify_fooling_report(report, candidate));
}

TEST_CASE("fooling rejects non-tie bases") {
    auto candidate = build_const(10, 0);
    CHECK_THROWS_AS(fooling_report(candidate, "const", 10), usage_error);
}
