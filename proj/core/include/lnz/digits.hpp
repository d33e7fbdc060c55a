#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lnz {

using BigInt = boost::multiprecision::cpp_int;

enum class Order { MsdFirst, LsdFirst };

// Positional representation of a non-negative integer. Canonical form has no
// leading (MsdFirst) or trailing (LsdFirst) zero, except the single digit "0".
struct DigitString {
    std::uint64_t base = 10;
    Order order = Order::MsdFirst;
    std::vector<std::uint32_t> digits;

    bool operator==(const DigitString&) const = default;
};

DigitString to_digits(std::uint64_t n, std::uint64_t base, Order order = Order::MsdFirst);
std::uint64_t from_digits(const DigitString& s);

// Most-significant-digit-first digits of an arbitrarily large integer.
std::vector<std::uint32_t> to_digits_msd(const BigInt& n, std::uint64_t base);

std::uint64_t digit_sum(std::uint64_t n, std::uint64_t base);
BigInt digit_sum(const BigInt& n, std::uint64_t base);

// True iff `prefix` equals the first prefix.size() digits of `word`.
bool is_digit_prefix(const std::vector<std::uint32_t>& prefix,
                     const std::vector<std::uint32_t>& word);

} // namespace lnz
