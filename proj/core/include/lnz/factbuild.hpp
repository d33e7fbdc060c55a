#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lnz/dfao.hpp"
#include "lnz/numkit.hpp"

namespace lnz {

// m_i = last nonzero base-b digit of i!, for i < b.
struct MTable {
    std::uint64_t base = 2;
    std::vector<std::uint32_t> values;
};

MTable m_table(std::uint64_t b);

enum class PrimePowerMode {
    // Transcribes the published construction as written. Shipped for
    // side-by-side evaluation; carries no correctness guarantee.
    Literal,
    // Exact construction driven by the block identity
    // (bn)! = b^n * n! * prod_{k<n} prod_{j=1..b-1} (kb+j),
    // accumulating a unit/valuation pair of the running factorial.
    Sound,
};

// Automaton over alphabet p^a computing the last nonzero digit of n! in
// base p^a.
Dfao build_prime_power(std::uint64_t p, std::uint32_t a, PrimePowerMode mode);

// Automaton over alphabet p computing v_{p^a}(n!) mod m.
Dfao build_valuation_dfao(std::uint64_t p, std::uint32_t a, std::uint64_t m);

Verdict classify(std::uint64_t b);

struct DominantBuild {
    Dfao dfao; // over alphabet p1, patched
    std::uint64_t base = 0;
    std::uint64_t dominant_prime = 0;
    std::uint32_t dominant_exponent = 0;
    std::uint64_t cofactor = 0; // b / p1^a1
    // Points where v_{b'}(n!) > v_{p1^a1}(n!) fails; overridden with
    // oracle values.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> patches;
    std::uint64_t scan_limit = 0;
};

// Automaton over alphabet p1 for a base with a strictly dominant prime.
DominantBuild build_dominant_detailed(std::uint64_t b, std::uint64_t scan_limit = 1'000'000);
Dfao build_dominant(std::uint64_t b);

enum class VerifyTarget { FullValue, Divisibility };

struct Mismatch {
    std::uint64_t n;
    std::uint32_t got;
    std::uint32_t want;
};

struct VerifyReport {
    std::uint64_t base = 0;
    std::uint64_t from = 0;
    std::uint64_t to = 0; // exclusive
    VerifyTarget target = VerifyTarget::FullValue;
    std::uint64_t divisor_prime = 0;
    std::uint32_t divisor_exponent = 0;
    std::vector<Mismatch> mismatches;
    std::uint64_t checked = 0;
    double elapsed_ms = 0.0;

    bool clean() const { return mismatches.empty(); }
    std::string to_text(bool quiet = false) const;
    std::string to_csv() const;
};

// Pointwise comparison of an automaton against the streaming oracle on
// [from, to). With Divisibility the automaton output is read as a 0/1
// claim about p^a dividing the oracle value. jobs > 1 fans chunks out to
// worker threads; each worker recomputes its oracle prefix, and reports
// merge by n.
VerifyReport verify(const Dfao& d, std::uint64_t b, std::uint64_t from, std::uint64_t to,
                    VerifyTarget target = VerifyTarget::FullValue, std::uint64_t divisor_prime = 0,
                    std::uint32_t divisor_exponent = 0, unsigned jobs = 1);

struct InferResult {
    Dfao dfao;
    bool conjectural = true; // always; no claim beyond the train bound
    std::uint64_t train_bound = 0;
    std::uint32_t depth = 0;
};

// Empirical observation-table learner: states are distinct maps from
// suffix extensions (up to the given depth, within the train bound) to
// oracle values. The result agrees with the oracle on n <= train_bound;
// anything beyond is conjecture.
InferResult infer_dfao(std::uint64_t b, std::uint32_t k, std::uint64_t train_bound,
                       std::uint32_t depth = 3, std::size_t state_budget = 100'000);

} // namespace lnz
