#include "pzeta/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pzeta {

unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (unsigned f = 2; f * f <= n; ++f)
        if (n % f == 0) {
            r -= r / f;
            while (n % f == 0) n /= f;
        }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

// x^k - 1 divided by prod of Phi_j for proper divisors j, exactly over Z.
std::vector<Int> compute_cyclotomic(unsigned k, const std::map<unsigned, std::vector<Int>>& lower) {
    std::vector<Int> f(k + 1, 0);
    f[0] = -1;
    f[k] = 1;
    for (unsigned j = 1; j < k; ++j) {
        if (k % j != 0) continue;
        const auto& phi = lower.at(j);
        // exact division by monic phi
        std::vector<Int> q(f.size() - phi.size() + 1, 0);
        std::vector<Int> r = f;
        for (std::size_t s = q.size(); s-- > 0;) {
            Int c = r[s + phi.size() - 1];
            q[s] = c;
            if (c != 0)
                for (std::size_t i = 0; i < phi.size(); ++i) r[s + i] -= c * phi[i];
        }
        for (const auto& x : r)
            if (x != 0) throw ValidationError("cyclotomic division not exact");  // unreachable
        f = std::move(q);
    }
    return f;
}

const std::vector<Int>& cyclo_cached(unsigned k) {
    static std::map<unsigned, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    for (unsigned j = 1; j <= k; ++j)
        if (k % j == 0 && !cache.count(j)) cache.emplace(j, compute_cyclotomic(j, cache));
    return cache.at(k);
}

UPoly<Rat> phi_rat(unsigned k) {
    const auto& z = cyclo_cached(k);
    UPoly<Rat> f(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) f[i] = Rat(z[i]);
    return f;
}

std::vector<Rat> reduce_mod_phi(unsigned k, std::vector<Rat> v) {
    UPoly<Rat> f = std::move(v);
    up_trim(f);
    auto r = up_divrem(f, phi_rat(k)).second;
    r.resize(euler_phi(k), Rat(0));
    return r;
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(unsigned k) {
    if (k < 1) throw ValidationError("cyclotomic index must be >= 1");
    return cyclo_cached(k);
}

CycloQ CycloQ::scalar(unsigned k, const Rat& v) {
    CycloQ out;
    out.k = k;
    out.c.assign(k == 0 ? 1 : euler_phi(k), Rat(0));
    out.c[0] = v;
    return out;
}

CycloQ CycloQ::zeta_pow(unsigned k, long long i) {
    if (k == 0) throw ValidationError("zeta power needs a conductor");
    long long r = i % (long long)k;
    if (r < 0) r += k;
    std::vector<Rat> v(std::size_t(r) + 1, Rat(0));
    v[std::size_t(r)] = 1;
    CycloQ out;
    out.k = k;
    out.c = reduce_mod_phi(k, std::move(v));
    return out;
}

CycloQ CycloQ::from_coords(unsigned k, std::vector<Rat> coords) {
    CycloQ out;
    out.k = k;
    out.c = reduce_mod_phi(k, std::move(coords));
    return out;
}

bool CycloQ::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

bool CycloQ::is_rational() const {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    return true;
}

bool CycloQ::is_integer() const { return is_rational() && denominator(c[0]) == 1; }

const Rat& CycloQ::rational_value() const {
    if (!is_rational()) throw ValidationError("element is not rational");
    return c[0];
}

CycloQ CycloQ::galois(std::uint64_t t) const {
    if (k == 0) return *this;
    std::uint64_t tm = t % k;
    if (std::gcd(tm, std::uint64_t(k)) != 1)
        throw ValidationError("galois exponent not coprime to conductor");
    std::vector<Rat> v(k, Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) v[(i * tm) % k] += c[i];
    return from_coords(k, std::move(v));
}

std::string CycloQ::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << rat_str(c[i]);
    }
    os << "]@" << k;
    return os.str();
}

namespace {

// Coerce a scalar (k = 0) to the other operand's conductor.
std::pair<CycloQ, CycloQ> align(const CycloQ& a, const CycloQ& b) {
    if (a.k == b.k) return {a, b};
    if (a.k == 0) return {CycloQ::scalar(b.k, a.c[0]), b};
    if (b.k == 0) return {a, CycloQ::scalar(a.k, b.c[0])};
    throw ValidationError("conductor mismatch in cyclotomic arithmetic");
}

}  // namespace

CycloQ operator+(const CycloQ& a, const CycloQ& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < y.c.size(); ++i) x.c[i] += y.c[i];
    return x;
}

CycloQ operator-(const CycloQ& a, const CycloQ& b) {
    auto [x, y] = align(a, b);
    for (std::size_t i = 0; i < y.c.size(); ++i) x.c[i] -= y.c[i];
    return x;
}

CycloQ operator*(const CycloQ& a, const CycloQ& b) {
    auto [x, y] = align(a, b);
    if (x.k == 0) return CycloQ(x.c[0] * y.c[0]);
    std::vector<Rat> prod(2 * x.c.size(), Rat(0));
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (x.c[i] == 0) continue;
        for (std::size_t j = 0; j < y.c.size(); ++j) prod[i + j] += x.c[i] * y.c[j];
    }
    return CycloQ::from_coords(x.k, std::move(prod));
}

CycloQ operator/(const CycloQ& a, const CycloQ& b) {
    auto [x, y] = align(a, b);
    if (y.is_zero()) throw ValidationError("division by zero cyclotomic element");
    if (x.k == 0) return CycloQ(x.c[0] / y.c[0]);
    // invert y mod Phi_k by the extended Euclidean algorithm over Q[x]
    UPoly<Rat> r0 = phi_rat(x.k), r1 = y.c;
    up_trim(r1);
    UPoly<Rat> t0, t1 = up_const(Rat(1));
    while (!r1.empty()) {
        auto [q, r] = up_divrem(r0, r1);
        UPoly<Rat> t2 = up_sub(t0, up_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd (nonzero constant since Phi_k is irreducible and y != 0)
    if (up_deg(r0) != 0) throw ValidationError("cyclotomic inverse failed");
    UPoly<Rat> inv = up_scale(t0, Rat(1) / r0[0]);
    inv.resize(euler_phi(x.k), Rat(0));
    CycloQ yi = CycloQ::from_coords(x.k, inv);
    return x * yi;
}

bool operator==(const CycloQ& a, const CycloQ& b) {
    if (a.k != b.k) {
        if (a.k == 0 || b.k == 0) {
            auto [x, y] = align(a, b);
            return x == y;
        }
        return false;
    }
    return a.c == b.c;
}

}  // namespace pzeta
