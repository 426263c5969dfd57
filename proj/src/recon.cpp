#include "pzeta/recon.hpp"

#include <algorithm>

namespace pzeta {

namespace {

// All divisors of |n| (both signs appended by the caller); gives up past the
// cap so callers fall back to keeping an unfactored block.
std::optional<std::vector<Int>> divisors_of(Int n, std::size_t cap = 4096) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<Int, unsigned>> fact;
    Int rem = n;
    for (std::uint64_t f = 2; Int(f) * f <= rem && f <= 1000000; ++f) {
        if (rem % f == 0) {
            unsigned e = 0;
            while (rem % f == 0) {
                rem /= f;
                ++e;
            }
            fact.emplace_back(Int(f), e);
        }
    }
    if (rem > 1) fact.emplace_back(rem, 1);
    std::vector<Int> divs{1};
    for (const auto& [pf, e] : fact) {
        std::size_t base = divs.size();
        Int pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= pf;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pw);
                if (divs.size() > cap) return std::nullopt;
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Splits a constant-term-1 polynomial over Q into (1 - gamma T)^e factors
// with integer gamma plus a leftover block.
void split_linear(UPoly<Rat> poly, long long sign, Factored& out) {
    if (up_deg(poly) <= 0) return;
    // integer reciprocal roots divide lead/trail after clearing denominators
    Int denlcm = 1;
    for (const auto& c : poly) denlcm = lcm(denlcm, denominator(c));
    Int lead = numerator(poly.back() * Rat(denlcm));
    auto divs = divisors_of(lead);
    if (divs) {
        for (auto it = divs->rbegin(); it != divs->rend(); ++it) {
            for (Int gamma : {*it, -*it}) {
                UPoly<Rat> lin{Rat(1), Rat(-gamma)};  // 1 - gamma T
                long long mult = 0;
                while (up_deg(poly) >= 1) {
                    auto [q, r] = up_divrem(poly, lin);
                    if (!r.empty()) break;
                    poly = std::move(q);
                    ++mult;
                }
                if (mult) out.linear.emplace_back(gamma, sign * mult);
            }
        }
    }
    if (up_deg(poly) >= 1) out.blocks.emplace_back(std::move(poly), sign);
}

}  // namespace

Factored factor_over_q(const RatFn& fn) {
    Factored out;
    split_linear(fn.num, +1, out);
    split_linear(fn.den, -1, out);
    std::sort(out.linear.begin(), out.linear.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::optional<RatFn> ratfn_to_rational(const RatFnC& fn) {
    RatFn out;
    out.num.clear();
    out.den.clear();
    for (const auto& c : fn.num) {
        if (!c.is_rational()) return std::nullopt;
        out.num.push_back(c.rational_value());
    }
    for (const auto& c : fn.den) {
        if (!c.is_rational()) return std::nullopt;
        out.den.push_back(c.rational_value());
    }
    return out;
}

}  // namespace pzeta
