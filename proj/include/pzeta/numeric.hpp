#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace pzeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy; the CLI maps these onto exit codes.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A mathematical statement the library checks internally came out false
// (e.g. a non-integer exponent in a closed form). Carries a witness string.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

inline std::uint64_t pow_u64_checked(std::uint64_t b, unsigned e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b)
            throw SizeError("power " + std::to_string(b) + "^" + std::to_string(e) +
                            " exceeds cap " + std::to_string(cap));
        r *= b;
    }
    return r;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            ps.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Base-p digit sum of a nonnegative integer.
inline std::uint64_t digit_sum(std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = 0;
    while (b) {
        s += b % p;
        b /= p;
    }
    return s;
}

inline Int v_p_int(Int n, std::uint64_t p) {
    if (n == 0) throw ValidationError("v_p of zero");
    if (n < 0) n = -n;
    Int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// v_p of a rational (may be negative).
inline Int v_p_rat(const Rat& r, std::uint64_t p) {
    return v_p_int(numerator(r), p) - v_p_int(denominator(r), p);
}

inline Int ceil_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (q * denominator(r) != numerator(r) && r > 0) ++q;
    return q;
}

// Optional<Rat> is used as "rational or +infinity" for valuations.
using OrdVal = std::optional<Rat>;

inline bool ord_geq(const OrdVal& v, const Rat& bound) {
    return !v.has_value() || *v >= bound;
}

inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline std::string ord_str(const OrdVal& v) { return v ? rat_str(*v) : "inf"; }

}  // namespace pzeta
