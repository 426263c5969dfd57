#pragma once

#include "pzeta/numeric.hpp"

#include <vector>

namespace pzeta {

// Dense univariate polynomial over a field K, coefficients ascending,
// normalized with no trailing zeros (empty vector = zero polynomial).
template <class K>
using UPoly = std::vector<K>;

template <class K>
bool k_is_zero(const K& x) {
    return x == K(0);
}

template <class K>
void up_trim(UPoly<K>& f) {
    while (!f.empty() && k_is_zero(f.back())) f.pop_back();
}

template <class K>
int up_deg(const UPoly<K>& f) {
    return int(f.size()) - 1;  // -1 for zero
}

template <class K>
UPoly<K> up_const(const K& c) {
    UPoly<K> f{c};
    up_trim(f);
    return f;
}

template <class K>
UPoly<K> up_add(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r(std::max(a.size(), b.size()), K(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    up_trim(r);
    return r;
}

template <class K>
UPoly<K> up_sub(const UPoly<K>& a, const UPoly<K>& b) {
    UPoly<K> r(std::max(a.size(), b.size()), K(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    up_trim(r);
    return r;
}

template <class K>
UPoly<K> up_mul(const UPoly<K>& a, const UPoly<K>& b) {
    if (a.empty() || b.empty()) return {};
    UPoly<K> r(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    up_trim(r);
    return r;
}

template <class K>
UPoly<K> up_scale(const UPoly<K>& a, const K& c) {
    UPoly<K> r = a;
    for (auto& x : r) x = x * c;
    up_trim(r);
    return r;
}

template <class K>
std::pair<UPoly<K>, UPoly<K>> up_divrem(const UPoly<K>& a, const UPoly<K>& b) {
    if (b.empty()) throw ValidationError("polynomial division by zero");
    UPoly<K> r = a, q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, K(0));
    const K& lead = b.back();
    while (r.size() >= b.size()) {
        K f = r.back() / lead;
        std::size_t shift = r.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - f * b[i];
        up_trim(r);
        if (r.size() > shift + b.size() - 1) throw ValidationError("division did not reduce");
    }
    up_trim(q);
    return {q, r};
}

// Exact division; throws if the remainder is nonzero.
template <class K>
UPoly<K> up_div_exact(const UPoly<K>& a, const UPoly<K>& b) {
    auto [q, r] = up_divrem(a, b);
    if (!r.empty()) throw ValidationError("inexact polynomial division");
    return q;
}

template <class K>
UPoly<K> up_monic(UPoly<K> f) {
    if (f.empty()) return f;
    K inv = K(1) / f.back();
    for (auto& c : f) c = c * inv;
    return f;
}

template <class K>
UPoly<K> up_gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.empty()) {
        auto r = up_divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return up_monic(std::move(a));
}

template <class K>
UPoly<K> up_derivative(const UPoly<K>& f) {
    UPoly<K> r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * K(int(i)));
    up_trim(r);
    return r;
}

template <class K>
K up_eval(const UPoly<K>& f, const K& x) {
    K acc(0);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

template <class K>
UPoly<K> up_pow(UPoly<K> base, unsigned e) {
    UPoly<K> acc = up_const(K(1));
    while (e) {
        if (e & 1) acc = up_mul(acc, base);
        e >>= 1;
        if (e) base = up_mul(base, base);
    }
    return acc;
}

// Coefficient reversal x^deg * f(1/x); for monic f this yields the
// constant-term-1 polynomial whose roots are the reciprocals.
template <class K>
UPoly<K> up_reverse(const UPoly<K>& f) {
    UPoly<K> r(f.rbegin(), f.rend());
    up_trim(r);
    return r;
}

// Power sums of the roots of a monic polynomial via Newton's identities;
// returns p_1..p_count.
template <class K>
std::vector<K> up_power_sums(const UPoly<K>& monic, unsigned count) {
    const int L = up_deg(monic);
    if (L < 0) throw ValidationError("power sums of zero polynomial");
    std::vector<K> c(L + 1, K(0));  // c[i] = coefficient of x^(L-i)
    for (int i = 0; i <= L; ++i) c[i] = monic[L - i];
    std::vector<K> p(count + 1, K(0));
    for (unsigned m = 1; m <= count; ++m) {
        K s(0);
        for (unsigned i = 1; i < m && int(i) <= L; ++i) s = s + c[i] * p[m - i];
        if (int(m) <= L)
            p[m] = K(0) - (K(int(m)) * c[m] + s);
        else
            p[m] = K(0) - s;
    }
    return std::vector<K>(p.begin() + 1, p.end());
}

// Solves M x = rhs by Gaussian elimination over K; M is square, row-major.
template <class K>
std::vector<K> solve_linear(std::vector<std::vector<K>> M, std::vector<K> rhs) {
    const std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && k_is_zero(M[piv][col])) ++piv;
        if (piv == n) throw ValidationError("singular linear system");
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        K inv = K(1) / M[col][col];
        for (auto& x : M[col]) x = x * inv;
        rhs[col] = rhs[col] * inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || k_is_zero(M[row][col])) continue;
            K f = M[row][col];
            for (std::size_t j = col; j < n; ++j) M[row][j] = M[row][j] - f * M[col][j];
            rhs[row] = rhs[row] - f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace pzeta
