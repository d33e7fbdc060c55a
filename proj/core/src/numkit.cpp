#include "lnz/numkit.hpp"

#include <algorithm>
#include <numeric>

#include "lnz/errors.hpp"

namespace lnz {

std::uint64_t PrimePower::power() const {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) r *= prime;
    return r;
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Factorization factorize(std::uint64_t b) {
    if (b < 2) throw usage_error("factorize: integer must be at least 2");
    Factorization f;
    f.value = b;
    std::uint64_t rest = b;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d != 0) continue;
        std::uint32_t e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        f.parts.push_back({d, e});
    }
    if (rest > 1) f.parts.push_back({rest, 1});
    std::ranges::sort(f.parts, [](const PrimePower& x, const PrimePower& y) {
        if (x.key() != y.key()) return x.key() > y.key();
        return x.prime > y.prime;
    });
    return f;
}

std::uint64_t legendre_valuation(std::uint64_t n, std::uint64_t p, std::uint32_t a) {
    if (!is_prime(p)) throw usage_error("legendre_valuation: p must be prime");
    if (a < 1) throw usage_error("legendre_valuation: a must be positive");
    return (n - digit_sum(n, p)) / (a * (p - 1));
}

std::uint64_t legendre_valuation_by_counting(std::uint64_t n, std::uint64_t p, std::uint32_t a) {
    if (!is_prime(p)) throw usage_error("legendre_valuation_by_counting: p must be prime");
    std::uint64_t v = 0;
    for (std::uint64_t q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break; // next q would overflow
    }
    return v / a;
}

std::uint64_t base_valuation_factorial(std::uint64_t n, std::uint64_t b) {
    auto f = factorize(b);
    std::uint64_t t = UINT64_MAX;
    for (const auto& pp : f.parts)
        t = std::min(t, legendre_valuation(n, pp.prime, pp.exponent));
    return t;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 r = 1;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t mod) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(x % mod);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
    }
    if (r != 1) throw usage_error("mod_inverse: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t euler_phi_prime_power(std::uint64_t p, std::uint32_t a) {
    std::uint64_t pa = PrimePower{p, a}.power();
    return pa - pa / p;
}

std::uint64_t exponent_modulus(std::uint64_t p, std::uint32_t a) {
    return std::lcm(euler_phi_prime_power(p, a), static_cast<std::uint64_t>(a));
}

static void check_pair_params(std::uint64_t p, std::uint32_t a, std::uint64_t L) {
    if (!is_prime(p)) throw usage_error("UnitValPair: p must be prime");
    if (a < 1) throw usage_error("UnitValPair: a must be positive");
    if (L < 1 || L % a != 0) throw usage_error("UnitValPair: L must be a positive multiple of a");
}

UnitValPair pair_identity(std::uint64_t p, std::uint32_t a, std::uint64_t L) {
    check_pair_params(p, a, L);
    return {p, a, PrimePower{p, a}.power(), L, 1, 0};
}

UnitValPair pair_of_int(std::uint64_t x, std::uint64_t p, std::uint32_t a, std::uint64_t L) {
    check_pair_params(p, a, L);
    if (x == 0) throw usage_error("pair_of_int: argument must be positive");
    UnitValPair pr = pair_identity(p, a, L);
    std::uint64_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    pr.unit = x % pr.modulus;
    pr.val = v % L;
    return pr;
}

UnitValPair pair_of_int(const BigInt& x, std::uint64_t p, std::uint32_t a, std::uint64_t L) {
    check_pair_params(p, a, L);
    if (x == 0) throw usage_error("pair_of_int: argument must be positive");
    UnitValPair pr = pair_identity(p, a, L);
    BigInt y = x;
    std::uint64_t v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    pr.unit = static_cast<std::uint64_t>(y % pr.modulus);
    pr.val = v % L;
    return pr;
}

UnitValPair pair_mul(const UnitValPair& x, const UnitValPair& y) {
    if (x.p != y.p || x.a != y.a || x.exp_modulus != y.exp_modulus)
        throw usage_error("pair_mul: mismatched pair parameters");
    UnitValPair r = x;
    r.unit = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(x.unit) * y.unit % x.modulus);
    r.val = (x.val + y.val) % x.exp_modulus;
    return r;
}

std::uint64_t pair_to_lnz(const UnitValPair& pr) {
    std::uint64_t e = pr.val % pr.a;
    return mod_pow(pr.p, e, pr.modulus) * pr.unit % pr.modulus;
}

LnzStream::LnzStream(std::uint64_t base) : base_(base) {
    auto f = factorize(base); // validates base >= 2
    for (const auto& pp : f.parts) {
        PrimeState st;
        st.prime = pp.prime;
        st.exponent = pp.exponent;
        st.modulus = pp.power();
        st.cofactor_inv = mod_inverse(base / st.modulus % st.modulus, st.modulus);
        st.valuation = 0;
        st.unit = 1;
        primes_.push_back(st);
    }
}

void LnzStream::advance() {
    std::uint64_t m = ++n_;
    // The unit of n! accumulates the full p-free part of each factor,
    // including the other primes of the base.
    for (auto& st : primes_) {
        std::uint64_t x = m;
        while (x % st.prime == 0) {
            x /= st.prime;
            ++st.valuation;
        }
        st.unit = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(st.unit) * (x % st.modulus) % st.modulus);
    }
}

void LnzStream::advance_to(std::uint64_t n) {
    if (n < n_) throw usage_error("LnzStream: cannot rewind");
    while (n_ < n) advance();
}

std::uint64_t LnzStream::value() const {
    // n! = b^t * m with b not dividing m; the result is m mod b by CRT.
    std::uint64_t t = UINT64_MAX;
    for (const auto& st : primes_) t = std::min(t, st.valuation / st.exponent);

    std::uint64_t crt_value = 0;
    std::uint64_t crt_modulus = 1;
    for (const auto& st : primes_) {
        std::uint64_t e = st.valuation - static_cast<std::uint64_t>(st.exponent) * t;
        std::uint64_t r = (e >= st.exponent) ? 0 : mod_pow(st.prime, e, st.modulus);
        r = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(r) * st.unit % st.modulus);
        r = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(r) * mod_pow(st.cofactor_inv, t, st.modulus) %
            st.modulus);
        // Merge into the running CRT solution.
        std::uint64_t diff = (r + st.modulus - crt_value % st.modulus) % st.modulus;
        std::uint64_t step = diff * mod_inverse(crt_modulus % st.modulus, st.modulus) % st.modulus;
        crt_value += crt_modulus * step;
        crt_modulus *= st.modulus;
    }
    return crt_value;
}

std::uint64_t lnz_factorial(std::uint64_t n, std::uint64_t base) {
    LnzStream s(base);
    s.advance_to(n);
    return s.value();
}

std::vector<std::uint32_t> lnz_range(std::uint64_t base, std::uint64_t n0, std::uint64_t n1) {
    LnzStream s(base);
    s.advance_to(n0);
    std::vector<std::uint32_t> out;
    out.reserve(n1 > n0 ? n1 - n0 : 0);
    for (std::uint64_t n = n0; n < n1; ++n) {
        out.push_back(static_cast<std::uint32_t>(s.value()));
        s.advance();
    }
    return out;
}

bool multiplicatively_dependent(std::uint64_t b, std::uint64_t c) {
    if (b < 2 || c < 2) throw usage_error("multiplicatively_dependent: arguments must be >= 2");
    // b and c are powers of a common integer iff their primitive roots match.
    auto primitive_root = [](std::uint64_t x) {
        auto f = factorize(x);
        std::uint64_t g = 0;
        for (const auto& pp : f.parts) g = std::gcd(g, static_cast<std::uint64_t>(pp.exponent));
        std::uint64_t root = 1;
        for (const auto& pp : f.parts)
            for (std::uint32_t i = 0; i < pp.exponent / g; ++i) root *= pp.prime;
        return root;
    };
    return primitive_root(b) == primitive_root(c);
}

} // namespace lnz
