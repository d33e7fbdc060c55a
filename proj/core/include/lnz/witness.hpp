#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lnz/dfao.hpp"
#include "lnz/numkit.hpp"

namespace lnz {

// Certificate that c^d = a * b^e + f with 1 <= f < b^e, i.e. the base-b
// digits of c^d start with the digits of a.
struct WitnessTriple {
    std::uint64_t c = 2;
    std::uint64_t b = 10;
    std::uint64_t a = 1;
    std::uint32_t d = 0;
    std::uint64_t e = 0;
    BigInt f = 0;

    // Exact big-integer recomputation of the defining identity.
    bool verify() const;
};

// Smallest d <= d_max such that the base-b digits of a are a proper
// prefix of those of c^d, with at least one nonzero remainder digit.
// Requires b and c multiplicatively independent.
WitnessTriple find_power_with_prefix(std::uint64_t c, std::uint64_t b, std::uint64_t a,
                                     std::uint32_t d_max);

// The A-/A+ set parameters: a finite prime set, its maximum, and the
// digit-sum gap threshold.
struct SetSpec {
    std::vector<std::uint64_t> primes;
    std::uint64_t threshold = 1;

    std::uint64_t max_prime() const;
};

enum class Membership { AMinus, APlus, Neither };

Membership set_membership(const BigInt& n, const SetSpec& spec);

// Smallest extension a' of a (prefix in base k) whose largest digit sum
// over the prime set is attained at the maximal prime. Searches
// a' = p^d - 1 when k is not a power of p, a' = a*p^(td) + p^(td) - 1
// when k = p^t.
BigInt find_extension(const std::vector<std::uint64_t>& primes, std::uint64_t k, const BigInt& a,
                      std::uint32_t d_max);

enum class Signal { Divides, NotDivides, Unknown };

// Divisibility of l_b(n!) by the dominant-tie prime power, decided from
// digit sums alone. Only defined for bases whose top two keys tie.
Signal divisibility_signal(const BigInt& n, std::uint64_t b);

// A pair of inputs a candidate automaton cannot answer consistently:
// both reach the same state (hence the same output) while their
// divisibility signals differ.
struct FoolingReport {
    std::uint64_t base_b = 0;   // sequence base
    std::uint32_t alphabet = 0; // candidate input base k
    std::string candidate_id;
    std::uint64_t prime = 0; // p1 of the tie
    std::uint32_t exponent = 0;
    std::vector<std::uint64_t> primes; // the tied prime set P
    std::uint64_t threshold = 0;
    std::uint32_t exp_small = 0; // colliding exponents c_i < c_j
    std::uint32_t exp_large = 0;
    std::uint64_t suffix_len = 0; // e
    BigInt suffix_value = 0;      // f < k^e
    BigInt n1 = 0;                // p^{c_i} * k^e + f, in A-
    BigInt n2 = 0;                // p^{c_j} * k^e + f, in A+
    std::uint32_t output1 = 0;
    std::uint32_t output2 = 0;
    Signal signal1 = Signal::Unknown;
    Signal signal2 = Signal::Unknown;

    std::string to_text() const;
    std::string to_csv() const;
};

// Runs the pigeonhole-plus-suffix attack against a candidate automaton
// that claims to decide whether p1^a1 divides l_b(n!). Throws
// exhausted_error when no collision or no qualifying pump exists within
// the bounds.
FoolingReport fooling_report(const Dfao& candidate, const std::string& candidate_id,
                             std::uint64_t b, std::uint32_t c_max = 400,
                             std::uint32_t d_max = 5000);

// Re-derives every recorded fact of the report from scratch.
bool verify_fooling_report(const FoolingReport& r, const Dfao& candidate);

} // namespace lnz
