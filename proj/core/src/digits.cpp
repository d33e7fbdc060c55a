#include "lnz/digits.hpp"

#include <algorithm>

#include "lnz/errors.hpp"

namespace lnz {

static void check_base(std::uint64_t base) {
    if (base < 2) throw usage_error("base must be at least 2");
}

DigitString to_digits(std::uint64_t n, std::uint64_t base, Order order) {
    check_base(base);
    DigitString s{base, order, {}};
    if (n == 0) {
        s.digits.push_back(0);
        return s;
    }
    while (n > 0) {
        s.digits.push_back(static_cast<std::uint32_t>(n % base));
        n /= base;
    }
    if (order == Order::MsdFirst) std::ranges::reverse(s.digits);
    return s;
}

std::uint64_t from_digits(const DigitString& s) {
    check_base(s.base);
    std::uint64_t n = 0;
    if (s.order == Order::MsdFirst) {
        for (auto d : s.digits) n = n * s.base + d;
    } else {
        for (auto it = s.digits.rbegin(); it != s.digits.rend(); ++it) n = n * s.base + *it;
    }
    return n;
}

std::vector<std::uint32_t> to_digits_msd(const BigInt& n, std::uint64_t base) {
    check_base(base);
    if (n == 0) return {0};
    std::vector<std::uint32_t> digits;
    BigInt x = n;
    while (x > 0) {
        digits.push_back(static_cast<std::uint32_t>(x % base));
        x /= base;
    }
    std::ranges::reverse(digits);
    return digits;
}

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t base) {
    check_base(base);
    std::uint64_t sum = 0;
    for (; n > 0; n /= base) sum += n % base;
    return sum;
}

BigInt digit_sum(const BigInt& n, std::uint64_t base) {
    check_base(base);
    BigInt sum = 0;
    BigInt x = n;
    while (x > 0) {
        sum += x % base;
        x /= base;
    }
    return sum;
}

bool is_digit_prefix(const std::vector<std::uint32_t>& prefix,
                     const std::vector<std::uint32_t>& word) {
    if (prefix.size() > word.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), word.begin());
}

} // namespace lnz
