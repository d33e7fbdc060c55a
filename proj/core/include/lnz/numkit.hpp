#pragma once

#include <cstdint>
#include <vector>

#include "lnz/digits.hpp"

namespace lnz {

struct PrimePower {
    std::uint64_t prime = 2;
    std::uint32_t exponent = 1;

    // Sort key of the main classification: exponent * (prime - 1).
    std::uint64_t key() const { return exponent * (prime - 1); }
    std::uint64_t power() const;

    bool operator==(const PrimePower&) const = default;
};

// Prime-power decomposition sorted by key() descending, ties broken by
// larger prime first.
struct Factorization {
    std::uint64_t value = 1;
    std::vector<PrimePower> parts;
};

Factorization factorize(std::uint64_t b);

bool is_prime(std::uint64_t p);

// Exponent of p^a in n!, by the digit-sum form of Legendre's formula.
std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t p, std::uint32_t a);

// Exponent of p^a in n! by direct counting of multiples; test oracle.
std::uint64_t legendre_valuation_by_counting(std::uint64_t n, std::uint64_t p, std::uint32_t a);

// Largest t with b^t | n!.
std::uint64_t base_valuation_factorial(std::uint64_t n, std::uint64_t b);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t mod);
std::uint64_t euler_phi_prime_power(std::uint64_t p, std::uint32_t a);

// The (unit mod p^a, valuation mod L) image of a positive integer. Unlike
// last-nonzero-digit values these compose multiplicatively, which is what
// every incremental computation in this project is built on.
struct UnitValPair {
    std::uint64_t p = 2;
    std::uint32_t a = 1;
    std::uint64_t modulus = 2;     // p^a
    std::uint64_t exp_modulus = 1; // L, a multiple of a
    std::uint64_t unit = 1;        // coprime to p
    std::uint64_t val = 0;         // valuation mod L

    bool operator==(const UnitValPair&) const = default;
};

// Default exponent modulus: lcm(phi(p^a), a).
std::uint64_t exponent_modulus(std::uint64_t p, std::uint32_t a);

UnitValPair pair_identity(std::uint64_t p, std::uint32_t a, std::uint64_t L);
UnitValPair pair_of_int(std::uint64_t x, std::uint64_t p, std::uint32_t a, std::uint64_t L);
UnitValPair pair_of_int(const BigInt& x, std::uint64_t p, std::uint32_t a, std::uint64_t L);
UnitValPair pair_mul(const UnitValPair& x, const UnitValPair& y);
// Last nonzero digit in base p^a of any integer with this pair.
std::uint64_t pair_to_lnz(const UnitValPair& pr);

// Streaming last-nonzero-digit-of-n! oracle. Keeps, for each prime of the
// base, the exact prime valuation of n! and the unit of n!/p^v mod p^a,
// so a step is O(number of primes) and memory is O(1).
class LnzStream {
  public:
    explicit LnzStream(std::uint64_t base);

    std::uint64_t base() const { return base_; }
    std::uint64_t n() const { return n_; }
    // Last nonzero base-b digit of n!.
    std::uint64_t value() const;
    void advance();
    void advance_to(std::uint64_t n);

  private:
    struct PrimeState {
        std::uint64_t prime;
        std::uint32_t exponent;
        std::uint64_t modulus;      // p^a
        std::uint64_t cofactor_inv; // (b / p^a)^-1 mod p^a
        std::uint64_t valuation;    // exact v_p(n!)
        std::uint64_t unit;         // (n! / p^v) mod p^a
    };

    std::uint64_t base_;
    std::uint64_t n_ = 0;
    std::vector<PrimeState> primes_;
};

std::uint64_t lnz_factorial(std::uint64_t n, std::uint64_t base);
// Values of lnz_factorial for n in [n0, n1), streamed in one pass.
std::vector<std::uint32_t> lnz_range(std::uint64_t base, std::uint64_t n0, std::uint64_t n1);

// True iff b and c are powers of a common integer.
bool multiplicatively_dependent(std::uint64_t b, std::uint64_t c);

enum class VerdictKind { PrimePower, Automatic, NotAutomatic };

struct Verdict {
    VerdictKind kind = VerdictKind::NotAutomatic;
    std::uint64_t prime = 0;   // PrimePower / Automatic
    std::uint32_t exponent = 0; // PrimePower only

    bool operator==(const Verdict&) const = default;
};

} // namespace lnz
