#pragma once

#include <cstdint>
#include <string>

namespace cayspec {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u128 uabs128(i128 x) { return x < 0 ? u128(-(x + 1)) + 1 : u128(x); }

inline u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string to_string(i128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    u128 v = uabs128(x);
    std::string digits;
    while (v != 0) {
        digits.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

}  // namespace cayspec
