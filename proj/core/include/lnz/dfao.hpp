#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lnz/digits.hpp"

namespace lnz {

// Deterministic finite automaton with output. States are dense indices,
// transitions a row-major N x k table, outputs one symbol per state.
//
// Every builder in this repository produces zero-robust automata:
// step(initial, 0) == initial, so leading zero padding of the input word
// never changes the result.
struct Dfao {
    std::uint32_t alphabet = 2;
    Order order = Order::MsdFirst;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> outputs;     // size N
    std::vector<std::uint32_t> transitions; // size N * alphabet

    std::uint32_t num_states() const { return static_cast<std::uint32_t>(outputs.size()); }

    std::uint32_t step(std::uint32_t state, std::uint32_t symbol) const {
        return transitions[static_cast<std::size_t>(state) * alphabet + symbol];
    }

    bool operator==(const Dfao&) const = default;
};

struct Word {
    std::uint32_t alphabet = 2;
    std::vector<std::uint32_t> symbols;

    bool operator==(const Word&) const = default;
};

// Validates table sizes, index ranges and symbol ranges.
void validate(const Dfao& d);
bool zero_robust(const Dfao& d);

// Runs the raw word function: rho from the initial state, then tau.
std::uint32_t eval_word(const Dfao& d, const Word& w);
// Canonical evaluation at an integer: base-k digits of n, MSD first,
// reversed when the automaton is LSD-first.
std::uint32_t eval(const Dfao& d, std::uint64_t n);
std::uint32_t eval(const Dfao& d, const BigInt& n);

// Word-reversal construction: the result g satisfies
// eval_word(g, w) == eval_word(d, reverse(w)); the order tag flips, so
// eval at integers is unchanged. Only states reachable from the output
// function are materialized.
Dfao reverse(const Dfao& d);

Dfao map_output(const Dfao& d, const std::vector<std::uint32_t>& table);

// Pairwise product; combine(out1, out2) gives the new output.
Dfao product(const Dfao& a, const Dfao& b,
             const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& combine);

// Alphabet change k -> k^m: one new symbol is m old digits.
Dfao lift(const Dfao& d, std::uint32_t m);

// Alphabet change k^m -> k. Inputs are implicitly padded with leading
// zeros to a multiple of m; the construction simulates all m paddings at
// once and selects by final length, so the result is zero-robust and
// needs no external padding convention.
Dfao lower(const Dfao& d, std::uint32_t k, std::size_t state_budget = 4'000'000);

// Moore-style partition refinement on reachable states.
Dfao minimize(const Dfao& d);

// Word-level equivalence. Returns a shortest word on which the two
// automata differ, or nullopt when none exists.
std::optional<Word> equivalent(const Dfao& a, const Dfao& b);

// Primitive builders (all MSD-first, all zero-robust).
Dfao build_n_mod(std::uint32_t k, std::uint64_t m);
Dfao build_digit_sum_mod(std::uint32_t k, std::uint64_t m);
// Computes (n - s_k(n)) mod m; tracks both residues in one state.
Dfao build_n_minus_digit_sum_mod(std::uint32_t k, std::uint64_t m);
Dfao build_const(std::uint32_t k, std::uint32_t c);
// Characteristic function of a finite set: 1 on members, 0 elsewhere.
Dfao build_finite_set(std::uint32_t k, const std::vector<std::uint64_t>& members);
Dfao build_periodic(std::uint32_t k, const std::vector<std::uint32_t>& pattern);

// Overrides eval at finitely many points, unchanged elsewhere.
Dfao patch(const Dfao& d, const std::map<std::uint64_t, std::uint32_t>& overrides);

// Text file format, bit-exact round trip.
std::string io_write(const Dfao& d);
void io_write_file(const Dfao& d, const std::string& path);
Dfao io_read(std::istream& in);
Dfao io_read(const std::string& text);
Dfao io_read_file(const std::string& path);

} // namespace lnz
