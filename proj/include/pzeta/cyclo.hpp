#pragma once

#include "pzeta/upoly.hpp"

namespace pzeta {

// k-th cyclotomic polynomial over Z, ascending coefficients; computed by
// dividing x^k - 1 by the lower cyclotomic factors and memoized.
const std::vector<Int>& cyclotomic_poly(unsigned k);

unsigned euler_phi(unsigned n);

// Element of Q(zeta_k) = Q[x]/Phi_k(x), reduced to degree < phi(k).
// Conductor 0 marks a plain rational scalar; it coerces on arithmetic so the
// generic polynomial code can construct zeros and ones without a conductor.
struct CycloQ {
    unsigned k = 0;
    std::vector<Rat> c{Rat(0)};

    CycloQ() = default;
    CycloQ(int v) : c{Rat(v)} {}
    CycloQ(const Rat& v) : c{v} {}
    static CycloQ scalar(unsigned k, const Rat& v);
    // zeta_k^i, reduced
    static CycloQ zeta_pow(unsigned k, long long i);
    static CycloQ from_coords(unsigned k, std::vector<Rat> coords);

    bool is_zero() const;
    bool is_rational() const;  // lies in Q
    bool is_integer() const;   // lies in Z
    const Rat& rational_value() const;

    // Galois action zeta -> zeta^t for t coprime to k.
    CycloQ galois(std::uint64_t t) const;

    std::string str() const;

    friend CycloQ operator+(const CycloQ& a, const CycloQ& b);
    friend CycloQ operator-(const CycloQ& a, const CycloQ& b);
    friend CycloQ operator*(const CycloQ& a, const CycloQ& b);
    friend CycloQ operator/(const CycloQ& a, const CycloQ& b);
    friend bool operator==(const CycloQ& a, const CycloQ& b);
};

}  // namespace pzeta
