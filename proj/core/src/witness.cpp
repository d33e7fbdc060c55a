#include "lnz/witness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lnz/errors.hpp"
#include "lnz/factbuild.hpp"

namespace lnz {

bool WitnessTriple::verify() const {
    if (e == 0 || f < 1) return false;
    BigInt be = 1;
    for (std::uint64_t i = 0; i < e; ++i) be *= b;
    if (f >= be) return false;
    BigInt power = 1;
    for (std::uint32_t i = 0; i < d; ++i) power *= c;
    return power == BigInt(a) * be + f;
}

WitnessTriple find_power_with_prefix(std::uint64_t c, std::uint64_t b, std::uint64_t a,
                                     std::uint32_t d_max) {
    if (a < 1) throw usage_error("find_power_with_prefix: prefix must be positive");
    if (multiplicatively_dependent(b, c))
        throw usage_error("find_power_with_prefix: " + std::to_string(b) + " and " +
                          std::to_string(c) + " are multiplicatively dependent");
    const auto prefix = to_digits_msd(BigInt(a), b);
    BigInt power = 1;
    for (std::uint32_t d = 1; d <= d_max; ++d) {
        power *= c;
        auto digits = to_digits_msd(power, b);
        if (digits.size() <= prefix.size() || !is_digit_prefix(prefix, digits)) continue;
        WitnessTriple t;
        t.c = c;
        t.b = b;
        t.a = a;
        t.d = d;
        t.e = digits.size() - prefix.size();
        BigInt be = 1;
        for (std::uint64_t i = 0; i < t.e; ++i) be *= b;
        t.f = power - BigInt(a) * be;
        if (t.f < 1) continue; // remainder digits all zero
        return t;
    }
    throw exhausted_error("find_power_with_prefix: no witness up to d_max=" +
                          std::to_string(d_max));
}

std::uint64_t SetSpec::max_prime() const {
    return *std::ranges::max_element(primes);
}

static void check_prime_set(const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw usage_error("prime set must be non-empty");
    for (auto p : primes)
        if (!is_prime(p)) throw usage_error("prime set contains non-prime " + std::to_string(p));
}

Membership set_membership(const BigInt& n, const SetSpec& spec) {
    check_prime_set(spec.primes);
    if (n < 1) throw usage_error("set_membership: n must be positive");
    const std::uint64_t p = spec.max_prime();
    BigInt max_sum = 0, p_sum = 0;
    for (auto q : spec.primes) {
        BigInt s = digit_sum(n, q);
        max_sum = std::max(max_sum, s);
        if (q == p) p_sum = s;
    }
    if (max_sum == p_sum) return Membership::AMinus;
    if (max_sum - p_sum >= spec.threshold) return Membership::APlus;
    return Membership::Neither;
}

BigInt find_extension(const std::vector<std::uint64_t>& primes, std::uint64_t k, const BigInt& a,
                      std::uint32_t d_max) {
    check_prime_set(primes);
    if (k < 2) throw usage_error("find_extension: base must be at least 2");
    if (a < 1) throw usage_error("find_extension: prefix must be positive");
    const std::uint64_t p = *std::ranges::max_element(primes);

    auto dominated_by_p = [&](const BigInt& x) {
        BigInt p_sum = digit_sum(x, p);
        return std::ranges::all_of(primes, [&](std::uint64_t q) { return digit_sum(x, q) <= p_sum; });
    };

    // Is k a power of p?
    std::uint32_t t = 0;
    {
        std::uint64_t x = k;
        while (x % p == 0 && x > 1) {
            x /= p;
            ++t;
        }
        if (x != 1) t = 0;
    }

    const auto prefix = to_digits_msd(a, k);
    if (t == 0) {
        BigInt power = 1;
        for (std::uint32_t d = 1; d <= d_max; ++d) {
            power *= p;
            BigInt cand = power - 1;
            auto digits = to_digits_msd(cand, k);
            if (digits.size() <= prefix.size() || !is_digit_prefix(prefix, digits)) continue;
            if (dominated_by_p(cand)) return cand;
        }
    } else {
        BigInt block = 1;
        for (std::uint32_t i = 0; i < t; ++i) block *= p;
        BigInt shift = 1;
        for (std::uint32_t d = 1; d <= d_max; ++d) {
            shift *= block; // p^(t*d)
            BigInt cand = a * shift + shift - 1;
            if (dominated_by_p(cand)) return cand;
        }
    }
    throw exhausted_error("find_extension: no extension up to d_max=" + std::to_string(d_max));
}

Signal divisibility_signal(const BigInt& n, std::uint64_t b) {
    if (n < 1) throw usage_error("divisibility_signal: n must be positive");
    if (classify(b).kind != VerdictKind::NotAutomatic)
        throw usage_error("divisibility_signal: base " + std::to_string(b) +
                          " has a dominant prime, signals are undefined");
    auto f = factorize(b);
    const std::uint64_t top_key = f.parts[0].key();
    const std::uint64_t p1 = f.parts[0].prime; // tie rule: the largest tied prime
    const std::uint64_t a1 = f.parts[0].exponent;

    BigInt max_sum = 0, p1_sum = digit_sum(n, p1);
    for (const auto& pp : f.parts) {
        if (pp.key() != top_key) continue;
        max_sum = std::max(max_sum, digit_sum(n, pp.prime));
    }
    if (max_sum == p1_sum) return Signal::NotDivides;
    if (max_sum > BigInt(a1 * (p1 - 1)) + p1_sum) return Signal::Divides;
    return Signal::Unknown;
}

namespace {

std::string render_base_k(const BigInt& n, std::uint64_t k) {
    std::ostringstream out;
    auto digits = to_digits_msd(n, k);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0) out << ".";
        out << digits[i];
    }
    return out.str();
}

const char* signal_name(Signal s) {
    switch (s) {
        case Signal::Divides: return "DIVIDES";
        case Signal::NotDivides: return "NOT_DIVIDES";
        default: return "UNKNOWN";
    }
}

} // namespace

std::string FoolingReport::to_text() const {
    std::ostringstream out;
    out << "FOOLING CERTIFICATE\n";
    out << "candidate " << candidate_id << " (alphabet " << alphabet << ")\n";
    out << "claim: decides " << prime << "^" << exponent << " | lnz(n!) in base " << base_b << "\n";
    out << "tied primes:";
    for (auto p : primes) out << " " << p;
    out << "\nthreshold " << threshold << "\n";
    out << "colliding exponents: " << prime << "^" << exp_small << " and " << prime << "^"
        << exp_large << " reach one state\n";
    out << "suffix: e=" << suffix_len << " f=" << render_base_k(suffix_value, alphabet)
        << " (base " << alphabet << " digits)\n";
    out << "n1 = " << render_base_k(n1, alphabet) << "\n";
    out << "n2 = " << render_base_k(n2, alphabet) << "\n";
    for (auto q : primes) {
        out << "digitsum p=" << q << ": n1=" << digit_sum(n1, q) << " n2=" << digit_sum(n2, q)
            << "\n";
    }
    out << "signal n1 = " << signal_name(signal1) << "\n";
    out << "signal n2 = " << signal_name(signal2) << "\n";
    out << "automaton output n1 = " << output1 << "\n";
    out << "automaton output n2 = " << output2 << "\n";
    out << "outputs agree, signals differ: candidate contradicted\n";
    return out.str();
}

std::string FoolingReport::to_csv() const {
    std::ostringstream out;
    out << "field,value\n";
    out << "candidate," << candidate_id << "\n";
    out << "base_b," << base_b << "\n";
    out << "alphabet," << alphabet << "\n";
    out << "prime," << prime << "\n";
    out << "exponent," << exponent << "\n";
    out << "threshold," << threshold << "\n";
    out << "exp_small," << exp_small << "\n";
    out << "exp_large," << exp_large << "\n";
    out << "suffix_len," << suffix_len << "\n";
    out << "suffix_value," << render_base_k(suffix_value, alphabet) << "\n";
    out << "n1," << render_base_k(n1, alphabet) << "\n";
    out << "n2," << render_base_k(n2, alphabet) << "\n";
    out << "output1," << output1 << "\n";
    out << "output2," << output2 << "\n";
    out << "signal1," << signal_name(signal1) << "\n";
    out << "signal2," << signal_name(signal2) << "\n";
    return out.str();
}

FoolingReport fooling_report(const Dfao& candidate, const std::string& candidate_id,
                             std::uint64_t b, std::uint32_t c_max, std::uint32_t d_max) {
    validate(candidate);
    if (candidate.order != Order::MsdFirst)
        throw usage_error("fooling_report: only MSD-first candidates supported");
    if (classify(b).kind != VerdictKind::NotAutomatic)
        throw usage_error("fooling_report: base " + std::to_string(b) + " is not a tie case");

    auto fac = factorize(b);
    const std::uint64_t top_key = fac.parts[0].key();
    const std::uint64_t p1 = fac.parts[0].prime;
    const std::uint32_t a1 = fac.parts[0].exponent;
    std::vector<std::uint64_t> tied;
    for (const auto& pp : fac.parts)
        if (pp.key() == top_key) tied.push_back(pp.prime);
    const std::uint64_t threshold = a1 * (p1 - 1) + 1;
    const std::uint32_t k = candidate.alphabet;

    // Pigeonhole: states reached by the powers of p1, grouped.
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_state;
    {
        BigInt power = 1;
        for (std::uint32_t c = 1; c <= c_max; ++c) {
            power *= p1;
            std::uint32_t q = candidate.initial;
            for (auto s : to_digits_msd(power, k)) q = candidate.step(q, s);
            by_state[q].push_back(c);
        }
    }

    std::vector<const std::vector<std::uint32_t>*> groups;
    for (const auto& [state, exps] : by_state)
        if (exps.size() >= 2) groups.push_back(&exps);
    std::ranges::sort(groups, [](auto* a, auto* b) { return a->front() < b->front(); });

    for (const auto* exps : groups) {
        const std::uint32_t c_small = exps->front();
        BigInt anchor = 1;
        for (std::uint32_t i = 0; i < c_small; ++i) anchor *= p1;
        BigInt extended;
        try {
            extended = find_extension(tied, k, anchor, d_max);
        } catch (const exhausted_error&) {
            continue;
        }
        const std::uint64_t e =
            to_digits_msd(extended, k).size() - to_digits_msd(anchor, k).size();
        BigInt ke = 1;
        for (std::uint64_t i = 0; i < e; ++i) ke *= k;
        BigInt f = extended - anchor * ke;
        if (e == 0) continue;

        SetSpec spec{tied, threshold};
        if (set_membership(extended, spec) != Membership::AMinus) continue;

        // Pump the exponent within the collision class until the big
        // element lands in A+.
        for (std::size_t i = 1; i < exps->size(); ++i) {
            const std::uint32_t c_large = (*exps)[i];
            BigInt pumped = 1;
            for (std::uint32_t j = 0; j < c_large; ++j) pumped *= p1;
            BigInt n2 = pumped * ke + f;
            if (set_membership(n2, spec) != Membership::APlus) continue;

            FoolingReport r;
            r.base_b = b;
            r.alphabet = k;
            r.candidate_id = candidate_id;
            r.prime = p1;
            r.exponent = a1;
            r.primes = tied;
            r.threshold = threshold;
            r.exp_small = c_small;
            r.exp_large = c_large;
            r.suffix_len = e;
            r.suffix_value = f;
            r.n1 = extended;
            r.n2 = n2;
            r.output1 = eval(candidate, r.n1);
            r.output2 = eval(candidate, r.n2);
            r.signal1 = divisibility_signal(r.n1, b);
            r.signal2 = divisibility_signal(r.n2, b);
            if (r.output1 != r.output2 || r.signal1 != Signal::NotDivides ||
                r.signal2 != Signal::Divides)
                continue; // should not happen; keep searching rather than lie
            return r;
        }
    }
    throw exhausted_error("fooling_report: no state collision with a qualifying pump within "
                          "c_max=" + std::to_string(c_max) + " d_max=" + std::to_string(d_max));
}

bool verify_fooling_report(const FoolingReport& r, const Dfao& candidate) {
    // Same final state and outputs.
    auto run = [&](const BigInt& n) {
        std::uint32_t q = candidate.initial;
        for (auto s : to_digits_msd(n, candidate.alphabet)) q = candidate.step(q, s);
        return q;
    };
    std::uint32_t q1 = run(r.n1), q2 = run(r.n2);
    if (q1 != q2) return false;
    if (candidate.outputs[q1] != r.output1 || candidate.outputs[q2] != r.output2) return false;
    if (r.output1 != r.output2) return false;

    // Structure: n1 and n2 are p^c * k^e + f.
    BigInt ke = 1;
    for (std::uint64_t i = 0; i < r.suffix_len; ++i) ke *= r.alphabet;
    if (r.suffix_value < 0 || r.suffix_value >= ke) return false;
    BigInt ps = 1, pl = 1;
    for (std::uint32_t i = 0; i < r.exp_small; ++i) ps *= r.prime;
    for (std::uint32_t i = 0; i < r.exp_large; ++i) pl *= r.prime;
    if (r.n1 != ps * ke + r.suffix_value || r.n2 != pl * ke + r.suffix_value) return false;

    // Divergent signals, recomputed from digit sums.
    if (divisibility_signal(r.n1, r.base_b) != Signal::NotDivides) return false;
    if (divisibility_signal(r.n2, r.base_b) != Signal::Divides) return false;
    if (r.signal1 != Signal::NotDivides || r.signal2 != Signal::Divides) return false;

    SetSpec spec{r.primes, r.threshold};
    return set_membership(r.n1, spec) == Membership::AMinus &&
           set_membership(r.n2, spec) == Membership::APlus;
}

} // namespace lnz
