#include "lnz/factbuild.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "lnz/errors.hpp"

namespace lnz {

MTable m_table(std::uint64_t b) {
    if (b < 2) throw usage_error("m_table: base must be at least 2");
    MTable t;
    t.base = b;
    LnzStream s(b);
    for (std::uint64_t i = 0; i < b; ++i) {
        t.values.push_back(static_cast<std::uint32_t>(s.value()));
        s.advance();
    }
    return t;
}

namespace {

// Last nonzero base-b digit of a plain integer.
std::uint64_t lnz_of_int(std::uint64_t x, std::uint64_t b) {
    while (x % b == 0) x /= b;
    return x % b;
}

std::uint64_t lnz_of_int(BigInt x, std::uint64_t b) {
    while (x % b == 0) x /= b;
    return static_cast<std::uint64_t>(x % b);
}

Dfao build_prime_power_literal(std::uint64_t p, std::uint32_t a) {
    const std::uint64_t b = PrimePower{p, a}.power();
    const std::uint64_t phi = euler_phi_prime_power(p, a);
    const std::uint64_t wmod = p - 1 == 0 ? 1 : p - 1;
    const std::uint64_t pam1 = b / p; // p^(a-1)
    const auto mt = m_table(b);

    const std::uint64_t nu = b - 1;
    auto state_index = [&](std::uint64_t u, std::uint64_t v, std::uint64_t w) {
        return static_cast<std::uint32_t>(((u - 1) * phi + v) * wmod + w);
    };

    Dfao d;
    d.alphabet = static_cast<std::uint32_t>(b);
    d.initial = state_index(1, 0, 0);
    for (std::uint64_t u = 1; u <= nu; ++u)
        for (std::uint64_t v = 0; v < phi; ++v)
            for (std::uint64_t w = 0; w < wmod; ++w) {
                BigInt power = 1;
                std::uint64_t e = v + pam1 * w;
                for (std::uint64_t i = 0; i < e; ++i) power *= mt.values[b - 1];
                d.outputs.push_back(static_cast<std::uint32_t>(lnz_of_int(BigInt(u) * power, b)));
                for (std::uint64_t s = 0; s < b; ++s)
                    d.transitions.push_back(state_index(lnz_of_int(u * mt.values[s], b),
                                                        (v + s) % phi, (w + v) % wmod));
            }
    return d;
}

Dfao build_prime_power_sound(std::uint64_t p, std::uint32_t a) {
    const std::uint64_t b = PrimePower{p, a}.power();
    const std::uint64_t phi = euler_phi_prime_power(p, a);
    const std::uint64_t zp = b / p; // p^(a-1), period of the block units
    const std::uint64_t z = std::lcm(zp * phi, static_cast<std::uint64_t>(a));

    auto vp = [&](std::uint64_t x) {
        std::uint32_t v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    auto ppow = [&](std::uint32_t e) {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) r *= p;
        return r;
    };

    // Unit factor of k*b + j mod p^a as a function of k mod p^(a-1).
    auto unit_factor = [&](std::uint64_t kmod, std::uint64_t j) {
        std::uint32_t v = vp(j);
        return (kmod % b * ppow(a - v) + j / ppow(v)) % b;
    };

    // Full blocks W(k) = prod_{j=1..b-1} (kb + j): unit part per residue
    // class of k, plus the constant valuation each block contributes.
    std::vector<std::uint64_t> unit_w(zp, 1);
    std::uint64_t val_w = 0;
    for (std::uint64_t j = 1; j < b; ++j) val_w += vp(j);
    for (std::uint64_t r = 0; r < zp; ++r)
        for (std::uint64_t j = 1; j < b; ++j) unit_w[r] = unit_w[r] * unit_factor(r, j) % b;

    std::vector<std::uint64_t> prefix_w(zp + 1, 1); // H[x] = prod_{r<x} unit_w[r]
    for (std::uint64_t r = 0; r < zp; ++r) prefix_w[r + 1] = prefix_w[r] * unit_w[r] % b;
    const std::uint64_t total_w = prefix_w[zp];

    // Trailing partial products prod_{j=1..s} (Nb + j) per N mod p^(a-1).
    std::vector<std::vector<std::uint64_t>> tail_unit(zp, std::vector<std::uint64_t>(b, 1));
    std::vector<std::uint64_t> tail_val(b, 0);
    for (std::uint64_t s = 1; s < b; ++s) {
        tail_val[s] = tail_val[s - 1] + vp(s);
        for (std::uint64_t r = 0; r < zp; ++r)
            tail_unit[r][s] = tail_unit[r][s - 1] * unit_factor(r, s) % b;
    }

    // State: (unit of n! mod p^a, v_p(n!) mod a, n mod z). Reading digit s
    // takes prefix N to bN + s and multiplies the pair by
    // b^N * prod_{k<N} W(k) * prod_{j<=s} (Nb + j).
    struct Conf {
        std::uint64_t unit, val, nmod;
    };
    auto key_of = [&](const Conf& c) { return (c.unit * a + c.val) * z + c.nmod; };

    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<Conf> states;
    auto intern = [&](Conf c) {
        auto [it, inserted] = index.try_emplace(key_of(c), static_cast<std::uint32_t>(states.size()));
        if (inserted) states.push_back(c);
        return it->second;
    };

    Dfao d;
    d.alphabet = static_cast<std::uint32_t>(b);
    d.initial = intern({1, 0, 0});
    for (std::uint32_t q = 0; q < states.size(); ++q) {
        const Conf cur = states[q];
        for (std::uint64_t s = 0; s < b; ++s) {
            const std::uint64_t nm = cur.nmod;
            const std::uint64_t blocks_exp = nm % (zp * phi) / zp; // floor(N/p^(a-1)) mod phi
            const std::uint64_t x = nm % zp;
            std::uint64_t mult = mod_pow(total_w, blocks_exp, b) * prefix_w[x] % b;
            mult = mult * tail_unit[x][s] % b;
            Conf next;
            next.unit = cur.unit * mult % b;
            next.val = (cur.val + val_w * (nm % a) + tail_val[s]) % a;
            next.nmod = (b * nm + s) % z;
            d.transitions.push_back(intern(next));
        }
        d.outputs.push_back(
            static_cast<std::uint32_t>(mod_pow(p, cur.val, b) * cur.unit % b));
    }
    return d;
}

} // namespace

Dfao build_prime_power(std::uint64_t p, std::uint32_t a, PrimePowerMode mode) {
    if (!is_prime(p)) throw usage_error("build_prime_power: p must be prime");
    if (a < 1) throw usage_error("build_prime_power: a must be positive");
    return mode == PrimePowerMode::Literal ? build_prime_power_literal(p, a)
                                           : build_prime_power_sound(p, a);
}

Dfao build_valuation_dfao(std::uint64_t p, std::uint32_t a, std::uint64_t m) {
    if (!is_prime(p)) throw usage_error("build_valuation_dfao: p must be prime");
    if (a < 1 || m < 1) throw usage_error("build_valuation_dfao: bad parameters");
    const std::uint64_t track = (p - 1) * a * m;
    Dfao base = build_n_minus_digit_sum_mod(static_cast<std::uint32_t>(p), track);
    // n - s_p(n) is (p-1) * v_p(n!); exact division then floor by a gives
    // the p^a valuation.
    std::vector<std::uint32_t> table(track);
    for (std::uint64_t diff = 0; diff < track; ++diff)
        table[diff] = static_cast<std::uint32_t>(diff / (p - 1) / a);
    return map_output(base, table);
}

Verdict classify(std::uint64_t b) {
    auto f = factorize(b);
    if (f.parts.size() == 1)
        return {VerdictKind::PrimePower, f.parts[0].prime, f.parts[0].exponent};
    if (f.parts[0].key() == f.parts[1].key()) return {VerdictKind::NotAutomatic, 0, 0};
    return {VerdictKind::Automatic, f.parts[0].prime, f.parts[0].exponent};
}

DominantBuild build_dominant_detailed(std::uint64_t b, std::uint64_t scan_limit) {
    auto f = factorize(b);
    auto verdict = classify(b);
    if (verdict.kind == VerdictKind::PrimePower)
        throw usage_error("build_dominant: " + std::to_string(b) + " is a prime power");
    if (verdict.kind == VerdictKind::NotAutomatic)
        throw usage_error("build_dominant: top keys tie for base " + std::to_string(b) + " (" +
                          std::to_string(f.parts[0].prime) + "^" +
                          std::to_string(f.parts[0].exponent) + " vs " +
                          std::to_string(f.parts[1].prime) + "^" +
                          std::to_string(f.parts[1].exponent) + "), no dominant prime");

    const std::uint64_t p1 = f.parts[0].prime;
    const std::uint32_t a1 = f.parts[0].exponent;
    const std::uint64_t pa = f.parts[0].power();
    const std::uint64_t cofactor = b / pa;
    const std::uint64_t phi = euler_phi_prime_power(p1, a1);
    const std::uint64_t inv_cof = mod_inverse(cofactor % pa, pa);

    Dfao unit_part = minimize(build_prime_power(p1, a1, PrimePowerMode::Sound));
    if (a1 > 1) unit_part = minimize(lower(unit_part, static_cast<std::uint32_t>(p1)));
    Dfao val_part = minimize(build_valuation_dfao(p1, a1, phi));

    // l_b(n!) = b' * t with t solving t * b'^(v+1) = l_{p^a}(n!) mod p^a.
    auto combine = [&](std::uint32_t lnz_pa, std::uint32_t v) {
        std::uint64_t t = lnz_pa * mod_pow(inv_cof, (v + 1ull) % phi, pa) % pa;
        return static_cast<std::uint32_t>(cofactor * t);
    };
    Dfao formula = minimize(product(unit_part, val_part, combine));

    // The formula needs v_{b'}(n!) > v_{p^a}(n!); scan out the finite set
    // of failures and override them with oracle values.
    DominantBuild out;
    out.base = b;
    out.dominant_prime = p1;
    out.dominant_exponent = a1;
    out.cofactor = cofactor;
    out.scan_limit = scan_limit;
    std::vector<std::uint64_t> failures;
    for (std::uint64_t n = 0; n <= scan_limit; ++n) {
        std::uint64_t v_rest = UINT64_MAX;
        for (std::size_t i = 1; i < f.parts.size(); ++i)
            v_rest = std::min(v_rest, legendre_valuation(n, f.parts[i].prime, f.parts[i].exponent));
        if (!(v_rest > legendre_valuation(n, p1, a1))) failures.push_back(n);
    }
    if (!failures.empty() && failures.back() > scan_limit / 2)
        throw exhausted_error("build_dominant: exception set not clearly finite within scan");

    std::map<std::uint64_t, std::uint32_t> overrides;
    if (!failures.empty()) {
        LnzStream s(b);
        for (auto n : failures) {
            s.advance_to(n);
            overrides[n] = static_cast<std::uint32_t>(s.value());
            out.patches.emplace_back(n, overrides[n]);
        }
    }
    out.dfao = patch(formula, overrides);
    return out;
}

Dfao build_dominant(std::uint64_t b) {
    return build_dominant_detailed(b).dfao;
}

namespace {

const char* target_name(VerifyTarget t) {
    return t == VerifyTarget::FullValue ? "FULL_VALUE" : "DIVISIBILITY";
}

} // namespace

std::string VerifyReport::to_text(bool quiet) const {
    std::ostringstream out;
    out << "verify base=" << base << " range=[" << from << "," << to << ") target="
        << target_name(target);
    if (target == VerifyTarget::Divisibility)
        out << " " << divisor_prime << "^" << divisor_exponent;
    out << "\n";
    for (const auto& m : mismatches)
        out << "MISMATCH n=" << m.n << " got=" << m.got << " want=" << m.want << "\n";
    out << "summary: checked=" << checked << " mismatches=" << mismatches.size();
    if (!quiet) out << " elapsed_ms=" << static_cast<std::uint64_t>(elapsed_ms);
    out << "\n";
    return out.str();
}

std::string VerifyReport::to_csv() const {
    std::ostringstream out;
    out << "n,got,want\n";
    for (const auto& m : mismatches) out << m.n << "," << m.got << "," << m.want << "\n";
    return out.str();
}

VerifyReport verify(const Dfao& d, std::uint64_t b, std::uint64_t from, std::uint64_t to,
                    VerifyTarget target, std::uint64_t divisor_prime,
                    std::uint32_t divisor_exponent, unsigned jobs) {
    validate(d);
    if (b < 2) throw usage_error("verify: base must be at least 2");
    if (target == VerifyTarget::Divisibility && divisor_prime < 2)
        throw usage_error("verify: divisibility target needs a prime power");
    if (jobs < 1) jobs = 1;

    VerifyReport report;
    report.base = b;
    report.from = from;
    report.to = to;
    report.target = target;
    report.divisor_prime = divisor_prime;
    report.divisor_exponent = divisor_exponent;

    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t total = to > from ? to - from : 0;
    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(total, 1)));
    std::vector<std::vector<Mismatch>> partial(workers);

    std::uint64_t divisor = 1;
    for (std::uint32_t i = 0; i < divisor_exponent; ++i) divisor *= divisor_prime;

    auto run_chunk = [&](unsigned w, std::uint64_t c0, std::uint64_t c1) {
        LnzStream s(b);
        s.advance_to(c0);
        for (std::uint64_t n = c0; n < c1; ++n) {
            std::uint32_t got = eval(d, n);
            std::uint32_t want;
            if (target == VerifyTarget::FullValue) {
                want = static_cast<std::uint32_t>(s.value());
            } else {
                want = s.value() % divisor == 0 ? 1 : 0;
                got = got != 0 ? 1 : 0;
            }
            if (got != want) partial[w].push_back({n, got, want});
            s.advance();
        }
    };

    if (workers == 1) {
        run_chunk(0, from, to);
    } else {
        std::vector<std::thread> threads;
        std::uint64_t chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t c0 = from + chunk * w;
            std::uint64_t c1 = w + 1 == workers ? to : c0 + chunk;
            threads.emplace_back(run_chunk, w, c0, c1);
        }
        for (auto& t : threads) t.join();
    }
    for (auto& part : partial)
        report.mismatches.insert(report.mismatches.end(), part.begin(), part.end());
    report.checked = total;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

// Growable oracle cache for the learner.
class OracleCache {
  public:
    OracleCache(std::uint64_t base, std::uint64_t cap) : stream_(base), cap_(cap) {}

    std::uint32_t at(std::uint64_t n) {
        if (n >= cap_) throw exhausted_error("infer_dfao: oracle query bound exceeded");
        while (values_.size() <= n) {
            values_.push_back(static_cast<std::uint32_t>(stream_.value()));
            stream_.advance();
        }
        return values_[n];
    }

  private:
    LnzStream stream_;
    std::uint64_t cap_;
    std::vector<std::uint32_t> values_;
};

struct SigHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = v.size();
        for (auto x : v) h ^= std::hash<std::uint32_t>{}(x) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace

InferResult infer_dfao(std::uint64_t b, std::uint32_t k, std::uint64_t train_bound,
                       std::uint32_t depth, std::size_t state_budget) {
    if (k < 2) throw usage_error("infer_dfao: alphabet must be at least 2");
    if (train_bound < 1 || depth < 1) throw usage_error("infer_dfao: bad parameters");

    const std::uint64_t query_cap = 200'000'000;
    OracleCache oracle(b, query_cap);

    for (std::uint32_t d_try = depth; d_try <= depth + 2; ++d_try) {
        auto signature = [&](std::uint64_t m) {
            std::vector<std::uint32_t> sig;
            unsigned __int128 shift = 1;
            for (std::uint32_t j = 0; j <= d_try; ++j) {
                unsigned __int128 lo = static_cast<unsigned __int128>(m) * shift;
                if (lo >= query_cap) throw exhausted_error("infer_dfao: oracle query bound exceeded");
                for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(shift); ++r)
                    sig.push_back(oracle.at(static_cast<std::uint64_t>(lo) + r));
                shift *= k;
            }
            return sig;
        };

        std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, SigHash> index;
        std::vector<std::uint64_t> reps;
        bool over_budget = false;
        auto intern = [&](std::uint64_t m) {
            auto sig = signature(m);
            auto [it, inserted] = index.try_emplace(std::move(sig), static_cast<std::uint32_t>(reps.size()));
            if (inserted) {
                reps.push_back(m);
                if (reps.size() > state_budget) over_budget = true;
            }
            return it->second;
        };

        Dfao d;
        d.alphabet = k;
        d.initial = intern(0);
        for (std::uint32_t q = 0; q < reps.size() && !over_budget; ++q) {
            const std::uint64_t m = reps[q];
            if (m > UINT64_MAX / k) throw exhausted_error("infer_dfao: prefix overflow");
            for (std::uint32_t s = 0; s < k; ++s) {
                d.transitions.push_back(intern(m * k + s));
                if (over_budget) break;
            }
            d.outputs.push_back(oracle.at(m));
        }
        if (over_budget)
            throw budget_error("infer_dfao: state budget of " + std::to_string(state_budget) +
                               " exceeded");

        bool ok = true;
        for (std::uint64_t n = 0; n <= train_bound && ok; ++n)
            if (eval(d, n) != oracle.at(n)) ok = false;
        if (ok) return {d, true, train_bound, d_try};
    }
    throw exhausted_error("infer_dfao: no consistent automaton at the tried depths");
}

} // namespace lnz
