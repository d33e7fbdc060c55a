#include <doctest.h>

#include <random>
#include <sstream>

#include "lnz/dfao.hpp"
#include "lnz/errors.hpp"

using namespace lnz;

namespace {

// Random zero-robust automaton with <= max_states states over alphabet k.
Dfao random_dfao(std::mt19937_64& rng, std::uint32_t k, std::uint32_t max_states) {
    std::uniform_int_distribution<std::uint32_t> nd(1, max_states);
    const std::uint32_t n = nd(rng);
    std::uniform_int_distribution<std::uint32_t> sd(0, n - 1);
    std::uniform_int_distribution<std::uint32_t> od(0, 5);
    Dfao d;
    d.alphabet = k;
    d.initial = sd(rng);
    d.outputs.resize(n);
    d.transitions.resize(static_cast<std::size_t>(n) * k);
    for (auto& o : d.outputs) o = od(rng);
    for (auto& t : d.transitions) t = sd(rng);
    d.transitions[static_cast<std::size_t>(d.initial) * k] = d.initial;
    return d;
}

std::vector<Word> all_words(std::uint32_t k, std::size_t max_len) {
    std::vector<Word> out{Word{k, {}}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::uint32_t s = 0; s < k; ++s) {
                Word w = out[i];
                w.symbols.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

Word reversed(Word w) {
    std::reverse(w.symbols.begin(), w.symbols.end());
    return w;
}

} // namespace

TEST_CASE("primitive builders and canonical evaluation") {
    auto mod3 = build_n_mod(2, 3);
    CHECK(eval(mod3, 5) == 2);
    for (std::uint64_t n = 0; n <= 1000; ++n) CHECK(eval(mod3, n) == n % 3);

    auto thue_morse = build_digit_sum_mod(2, 2);
    std::vector<std::uint32_t> prefix;
    for (std::uint64_t n = 0; n < 6; ++n) prefix.push_back(eval(thue_morse, n));
    CHECK(prefix == std::vector<std::uint32_t>{0, 1, 1, 0, 1, 0});

    auto diff = build_n_minus_digit_sum_mod(3, 4);
    CHECK(eval(diff, 10) == 0);
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        std::uint64_t s = 0, m = n;
        while (m) {
            s += m % 3;
            m /= 3;
        }
        CHECK(eval(diff, n) == (n - s) % 4);
    }

    CHECK(eval(build_n_mod(2, 1), 12345) == 0);
    auto single = build_finite_set(10, {5});
    CHECK(eval(single, 5) == 1);
    CHECK(eval(single, 55) == 0);

    auto periodic = build_periodic(2, {4, 7, 9});
    for (std::uint64_t n = 0; n <= 100; ++n)
        CHECK(eval(periodic, n) == std::vector<std::uint32_t>{4, 7, 9}[n % 3]);

    CHECK_THROWS_AS(build_n_mod(2, 0), usage_error);
    CHECK_THROWS_AS(build_periodic(2, {}), usage_error);
}

TEST_CASE("all builders produce zero-robust automata") {
    for (const Dfao& d : {build_n_mod(2, 3), build_digit_sum_mod(2, 2),
                          build_n_minus_digit_sum_mod(3, 4), build_const(5, 2),
                          build_finite_set(10, {5, 17}), build_periodic(2, {4, 7, 9})}) {
        validate(d);
        CHECK(zero_robust(d));
    }
}

TEST_CASE("zero-robust automata ignore leading zeros") {
    auto d = build_n_mod(3, 7);
    auto words = all_words(3, 5);
    for (const auto& w : words) {
        Word padded{3, {0, 0, 0}};
        padded.symbols.insert(padded.symbols.end(), w.symbols.begin(), w.symbols.end());
        CHECK(eval_word(d, padded) == eval_word(d, w));
    }
}

TEST_CASE("reverse satisfies g(w) = f(reverse of w) on random automata") {
    std::mt19937_64 rng(911);
    auto words2 = all_words(2, 8);
    auto words3 = all_words(3, 6);
    auto words4 = all_words(4, 5);
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<std::uint32_t> kd(2, 4);
        const std::uint32_t k = kd(rng);
        auto d = random_dfao(rng, k, 6);
        auto g = reverse(d);
        CHECK(g.order != d.order);
        const auto& words = k == 2 ? words2 : k == 3 ? words3 : words4;
        for (const auto& w : words) CHECK(eval_word(g, w) == eval_word(d, reversed(w)));
        // Double reversal is behaviorally the identity.
        auto gg = reverse(g);
        CHECK(gg.order == d.order);
        for (const auto& w : words) CHECK(eval_word(gg, w) == eval_word(d, w));
    }

    auto constant = build_const(3, 9);
    auto rc = reverse(constant);
    for (std::uint64_t n = 0; n <= 200; ++n) CHECK(eval(rc, n) == 9);
}

TEST_CASE("product implements pointwise combination") {
    auto m2 = build_n_mod(2, 2);
    auto m3 = build_n_mod(2, 3);
    auto m6 = product(m2, m3, [](std::uint32_t a, std::uint32_t b) {
        // CRT: the unique residue mod 6 matching (a mod 2, b mod 3).
        for (std::uint32_t r = 0; r < 6; ++r)
            if (r % 2 == a && r % 3 == b) return r;
        return 0u;
    });
    for (std::uint64_t n = 0; n <= 10000; ++n) CHECK(eval(m6, n) == n % 6);
    CHECK_FALSE(equivalent(m6, build_n_mod(2, 6)).has_value());

    auto proj = product(m2, m3, [](std::uint32_t a, std::uint32_t) { return a; });
    CHECK_FALSE(equivalent(proj, m2).has_value());

    std::vector<std::uint32_t> identity{0, 1, 2};
    CHECK_FALSE(equivalent(map_output(m3, identity), m3).has_value());

    CHECK_THROWS_AS(product(m2, build_n_mod(3, 2), [](std::uint32_t a, std::uint32_t) { return a; }),
                    usage_error);
}

TEST_CASE("lift and lower change the alphabet without changing the function") {
    auto m3 = build_n_mod(2, 3);
    auto lifted = lift(m3, 2);
    CHECK(lifted.alphabet == 4);
    for (std::uint64_t n = 0; n <= 10000; ++n) CHECK(eval(lifted, n) == n % 3);
    CHECK(lift(m3, 1) == m3);

    auto lowered = lower(lifted, 2);
    CHECK(lowered.alphabet == 2);
    CHECK(zero_robust(lowered));
    CHECK_FALSE(equivalent(lowered, m3).has_value());

    // Round trips both ways.
    CHECK_FALSE(equivalent(lift(lower(lifted, 2), 2), lifted).has_value());
    auto m5 = build_digit_sum_mod(9, 5);
    CHECK_FALSE(equivalent(lower(m5, 3), lower(m5, 3)).has_value());
    CHECK_FALSE(equivalent(lift(lower(m5, 3), 2), m5).has_value());

    CHECK_THROWS_AS(lower(build_n_mod(6, 2), 4), usage_error);
}

TEST_CASE("minimize preserves behavior and is idempotent") {
    auto m6 = build_n_mod(2, 6);
    auto big = product(m6, m6, [](std::uint32_t a, std::uint32_t) { return a % 2; });
    auto small = minimize(big);
    CHECK(small.num_states() < big.num_states());
    CHECK_FALSE(equivalent(small, big).has_value());
    CHECK(minimize(small).num_states() == small.num_states());
    CHECK(zero_robust(small));
}

TEST_CASE("equivalence returns a shortest counterexample") {
    auto m2 = build_n_mod(2, 2);
    CHECK_FALSE(equivalent(m2, m2).has_value());

    auto m3 = build_n_mod(2, 3);
    auto counter = equivalent(m2, m3);
    REQUIRE(counter.has_value());
    CHECK(eval_word(m2, *counter) != eval_word(m3, *counter));
    // No shorter word separates them.
    for (const auto& w : all_words(2, counter->symbols.size() - 1))
        CHECK(eval_word(m2, w) == eval_word(m3, w));

    CHECK_THROWS_AS(equivalent(m2, build_n_mod(3, 2)), usage_error);
}

TEST_CASE("patch overrides finitely many points") {
    auto m3 = build_n_mod(10, 3);
    CHECK_FALSE(equivalent(patch(m3, {}), m3).has_value());

    auto patched = patch(m3, {{0, 9}});
    CHECK(eval(patched, 0) == 9);
    for (std::uint64_t n = 1; n <= 10000; ++n) CHECK(eval(patched, n) == n % 3);
    CHECK(zero_robust(patched));

    auto restored = patch(patched, {{0, 0}});
    CHECK_FALSE(equivalent(restored, m3).has_value());

    auto multi = patch(m3, {{7, 8}, {100, 9}, {1000, 7}});
    CHECK(eval(multi, 7) == 8);
    CHECK(eval(multi, 100) == 9);
    CHECK(eval(multi, 1000) == 7);
    CHECK(eval(multi, 10000) == 10000 % 3);
}

TEST_CASE("file format round trips exactly") {
    auto m6 = build_n_mod(4, 6);
    auto text = io_write(m6);
    auto back = io_read(text);
    CHECK(back == m6);
    CHECK(io_write(back) == text);

    auto rev = reverse(build_digit_sum_mod(3, 4));
    CHECK(io_read(io_write(rev)) == rev);
}

TEST_CASE("hand-written one-state file behaves as a constant") {
    const std::string text = "LNZDFAO 1\n"
                             "base 2\n"
                             "order msd\n"
                             "states 1\n"
                             "initial 0\n"
                             "outputs 7\n"
                             "transitions\n"
                             "0 0\n"
                             "end\n";
    auto d = io_read(text);
    for (std::uint64_t n = 0; n <= 100; ++n) CHECK(eval(d, n) == 7);
    CHECK(io_write(d) == text);
}

TEST_CASE("parser rejects malformed files with line numbers") {
    auto expect_line = [](const std::string& text, std::size_t line) {
        try {
            io_read(text);
            FAIL_CHECK("expected parse error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == line);
        }
    };

    expect_line("LNZDFAO 2\nbase 2\n", 1);                       // unknown version
    expect_line("LNZDFAO 1\nbase 1\n", 2);                       // bad base
    expect_line("LNZDFAO 1\nbase 2\norder up\n", 3);             // bad order
    expect_line("LNZDFAO 1\nbase 2\norder msd\nstates 0\n", 4);  // zero states
    const std::string good_head = "LNZDFAO 1\nbase 2\norder msd\nstates 1\ninitial 0\n"
                                  "outputs 7\ntransitions\n";
    expect_line(good_head + "0 1\nend\n", 8);      // transition out of range
    expect_line(good_head + "0\nend\n", 8);        // truncated row
    expect_line(good_head + "0 0\nend\nmore\n", 10); // trailing garbage
    expect_line("LNZDFAO 1\nbase 2\norder msd\nstates 2\ninitial 5\n", 5);
}
