#pragma once

#include "pzeta/cyclo.hpp"
#include "pzeta/upoly.hpp"

#include <optional>

namespace pzeta {

struct DegreeCapError : SizeError {
    using SizeError::SizeError;
};
struct InsufficientTermsError : SizeError {
    using SizeError::SizeError;
};

// Rational function num/den with num(0) = den(0) = 1 and no common factor.
template <class K>
struct RatFnT {
    UPoly<K> num = up_const(K(1));
    UPoly<K> den = up_const(K(1));

    friend bool operator==(const RatFnT&, const RatFnT&) = default;
};

using RatFn = RatFnT<Rat>;
using RatFnC = RatFnT<CycloQ>;

// gamma-weight splitting of the minimal recurrence: each entry is a monic
// factor whose roots all carry the same integer weight (weight > 0 = pole
// multiplicity, < 0 = zero multiplicity of the generating function).
template <class K>
struct WeightSplit {
    std::vector<std::pair<UPoly<K>, long long>> parts;
};

// Berlekamp-Massey: minimal connection polynomial 1 + c_1 x + ... + c_L x^L
// with s[n] = -sum c_i s[n-i] for all n >= L.
template <class K>
UPoly<K> berlekamp_massey(const std::vector<K>& s) {
    UPoly<K> C = up_const(K(1)), B = up_const(K(1));
    unsigned L = 0, m = 1;
    K b(1);
    for (std::size_t n = 0; n < s.size(); ++n) {
        K d = s[n];
        for (unsigned i = 1; i <= L && i < C.size(); ++i) d = d + C[i] * s[n - i];
        if (k_is_zero(d)) {
            ++m;
        } else if (2 * L <= n) {
            UPoly<K> T = C;
            K coef = d / b;
            UPoly<K> shift(m, K(0));
            shift.push_back(K(1));
            C = up_sub(C, up_mul(up_scale(shift, coef), B));
            L = unsigned(n + 1 - L);
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            K coef = d / b;
            UPoly<K> shift(m, K(0));
            shift.push_back(K(1));
            C = up_sub(C, up_mul(up_scale(shift, coef), B));
            ++m;
        }
    }
    C.resize(L + 1, K(0));
    return C;
}

// Reconstructs the unique reduced rational function whose log-derivative
// sequence matches s (s_m = sum of pole reciprocal roots^m minus zeros^m),
// by minimal-recurrence detection followed by exact weight splitting.
// Requires at least `guard` terms beyond the 2L used for detection and
// verifies every supplied term against the result.
template <class K>
std::pair<RatFnT<K>, WeightSplit<K>> reconstruct_split(const std::vector<K>& s,
                                                       unsigned degree_cap, unsigned guard = 10) {
    bool all_zero = true;
    for (const auto& x : s)
        if (!k_is_zero(x)) {
            all_zero = false;
            break;
        }
    if (all_zero) return {RatFnT<K>{}, WeightSplit<K>{}};

    UPoly<K> conn = berlekamp_massey(s);
    const unsigned L = unsigned(up_deg(conn));
    if (L > 2 * degree_cap)
        throw DegreeCapError("minimal recurrence order " + std::to_string(L) +
                             " exceeds 2 * degree cap " + std::to_string(degree_cap));
    if (s.size() < 2 * std::size_t(L) + guard)
        throw InsufficientTermsError("need " + std::to_string(2 * L + guard) + " terms (" +
                                     std::to_string(2 * L) + " detection + " +
                                     std::to_string(guard) + " guard), have " +
                                     std::to_string(s.size()));

    // char poly C(x) = x^L + c_1 x^(L-1) + ... (reversal of the connection)
    UPoly<K> charpoly = up_reverse(conn);
    charpoly = up_monic(std::move(charpoly));
    if (charpoly.size() != L + 1 || k_is_zero(charpoly[0]))
        throw ConsistencyError("sequence is not a pure exponential sum (zero recurrence root)");
    if (up_deg(up_gcd(charpoly, up_derivative(charpoly))) != 0)
        throw ConsistencyError("repeated recurrence root; sequence is not an exponential sum");

    // Interpolate the weight function W on the roots: the Hankel system
    // sum_j W_j p_{m+j} = s_m is nonsingular for squarefree C with nonzero
    // roots, and W is constant on each equal-weight factor.
    auto psums = up_power_sums(charpoly, 2 * L);
    std::vector<std::vector<K>> H(L, std::vector<K>(L));
    std::vector<K> rhs(L);
    for (unsigned m = 1; m <= L; ++m) {
        for (unsigned j = 0; j < L; ++j) H[m - 1][j] = psums[m + j - 1];
        rhs[m - 1] = s[m - 1];
    }
    UPoly<K> W = solve_linear(H, rhs);
    up_trim(W);

    WeightSplit<K> split;
    UPoly<K> rest = charpoly;
    const long long t_max = 512;
    for (long long mag = 1; mag <= t_max && up_deg(rest) > 0; ++mag) {
        for (long long t : {mag, -mag}) {
            UPoly<K> shifted = up_sub(W, up_const(K(int(t))));
            UPoly<K> g = up_gcd(rest, shifted);
            if (up_deg(g) > 0) {
                split.parts.emplace_back(g, t);
                rest = up_div_exact(rest, g);
            }
        }
    }
    if (up_deg(rest) != 0)
        throw ConsistencyError("weight splitting incomplete: non-integer multiplicities");

    RatFnT<K> fn;
    for (const auto& [g, t] : split.parts) {
        UPoly<K> factor = up_reverse(g);  // monic g -> constant term 1
        if (t > 0)
            fn.den = up_mul(fn.den, up_pow(factor, unsigned(t)));
        else
            fn.num = up_mul(fn.num, up_pow(factor, unsigned(-t)));
    }
    if (unsigned(up_deg(fn.num)) > degree_cap || unsigned(up_deg(fn.den)) > degree_cap)
        throw DegreeCapError("reconstructed degrees " + std::to_string(up_deg(fn.num)) + "/" +
                             std::to_string(up_deg(fn.den)) + " exceed cap " +
                             std::to_string(degree_cap));

    // guard validation: every supplied term must be reproduced exactly
    std::vector<K> regen(s.size(), K(0));
    for (const auto& [g, t] : split.parts) {
        auto ps = up_power_sums(g, unsigned(s.size()));
        for (std::size_t m = 0; m < s.size(); ++m) regen[m] = regen[m] + K(int(t)) * ps[m];
    }
    for (std::size_t m = 0; m < s.size(); ++m)
        if (!(regen[m] == s[m]))
            throw ConsistencyError("guard mismatch at term " + std::to_string(m + 1));

    return {fn, split};
}

template <class K>
RatFnT<K> reconstruct(const std::vector<K>& s, unsigned degree_cap, unsigned guard = 10) {
    return reconstruct_split(s, degree_cap, guard).first;
}

// The sequence s_m (m = 1..count) generated by a rational function:
// power sums of den reciprocal roots minus those of num.
template <class K>
std::vector<K> ratfn_to_sequence(const RatFnT<K>& fn, unsigned count) {
    std::vector<K> out(count, K(0));
    auto accum = [&](const UPoly<K>& poly, int sign) {
        if (up_deg(poly) <= 0) return;
        UPoly<K> monic = up_monic(up_reverse(poly));
        auto ps = up_power_sums(monic, count);
        for (unsigned m = 0; m < count; ++m)
            out[m] = sign > 0 ? out[m] + ps[m] : out[m] - ps[m];
    };
    accum(fn.den, +1);
    accum(fn.num, -1);
    return out;
}

// Cancels common factors and rescales so num(0) = den(0) = 1; the input
// ratio must equal 1 at T = 0.
template <class K>
RatFnT<K> reduce_ratfn(UPoly<K> num, UPoly<K> den) {
    if (den.empty()) throw ValidationError("zero denominator");
    if (num.empty()) throw ValidationError("zero numerator");
    UPoly<K> g = up_gcd(num, den);
    if (up_deg(g) > 0) {
        num = up_div_exact(num, g);
        den = up_div_exact(den, g);
    }
    if (k_is_zero(num[0]) || k_is_zero(den[0]))
        throw ValidationError("function has a zero or pole at T = 0");
    if (!(num[0] == den[0])) throw ValidationError("function does not equal 1 at T = 0");
    K inv = K(1) / num[0];
    return RatFnT<K>{up_scale(num, inv), up_scale(den, inv)};
}

// Factored form over the integers: (1 - gamma T)^e entries plus leftover
// blocks that have no integer reciprocal root. Positive exponents come from
// the numerator, negative from the denominator.
struct Factored {
    std::vector<std::pair<Int, long long>> linear;
    std::vector<std::pair<UPoly<Rat>, long long>> blocks;
};

Factored factor_over_q(const RatFn& fn);

std::optional<RatFn> ratfn_to_rational(const RatFnC& fn);

}  // namespace pzeta
