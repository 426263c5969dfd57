#pragma once

#include "pzeta/upoly.hpp"

namespace pzeta {

// Truncated power series with exact rational coefficients; c has length
// order + 1 and index = power of T.
struct SeriesQ {
    std::vector<Rat> c;

    unsigned order() const { return unsigned(c.size()) - 1; }
    static SeriesQ zero(unsigned order) { return SeriesQ{std::vector<Rat>(order + 1, Rat(0))}; }
};

inline SeriesQ series_mul(const SeriesQ& a, const SeriesQ& b) {
    if (a.c.size() != b.c.size()) throw ValidationError("series order mismatch");
    SeriesQ r = SeriesQ::zero(a.order());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; i + j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

// a / b with b(0) != 0.
inline SeriesQ series_div(const SeriesQ& a, const SeriesQ& b) {
    if (a.c.size() != b.c.size()) throw ValidationError("series order mismatch");
    if (b.c[0] == 0) throw ValidationError("series division by non-unit");
    SeriesQ q = SeriesQ::zero(a.order());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        Rat acc = a.c[i];
        for (std::size_t j = 1; j <= i; ++j) acc -= b.c[j] * q.c[i - j];
        q.c[i] = acc / b.c[0];
    }
    return q;
}

// exp of a series with zero constant term, computed from the differential
// recurrence (exp s)' = (exp s) * s'.
inline SeriesQ series_exp(const SeriesQ& s) {
    if (s.c.empty() || s.c[0] != 0)
        throw ValidationError("series_exp requires zero constant term");
    SeriesQ e = SeriesQ::zero(s.order());
    e.c[0] = 1;
    for (std::size_t n = 1; n < s.c.size(); ++n) {
        Rat acc(0);
        for (std::size_t j = 1; j <= n; ++j) acc += Rat(Int(j)) * s.c[j] * e.c[n - j];
        e.c[n] = acc / Rat(Int(n));
    }
    return e;
}

// Truncated series of num/den (den(0) != 0).
inline SeriesQ series_of_ratfn(const UPoly<Rat>& num, const UPoly<Rat>& den, unsigned order) {
    SeriesQ a = SeriesQ::zero(order), b = SeriesQ::zero(order);
    for (std::size_t i = 0; i < num.size() && i <= order; ++i) a.c[i] = num[i];
    for (std::size_t i = 0; i < den.size() && i <= order; ++i) b.c[i] = den[i];
    return series_div(a, b);
}

}  // namespace pzeta
