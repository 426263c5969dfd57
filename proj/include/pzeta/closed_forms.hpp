#pragma once

#include "pzeta/recon.hpp"

namespace pzeta {

// The curve y = x^n with x over F_{q^{d1}}, y over F_{q^{d2}}, q = p^a.
struct CurveSpec {
    unsigned n = 1;
    std::uint64_t p = 2;
    unsigned a = 1;
    unsigned d1 = 1, d2 = 1;

    std::uint64_t q() const { return pow_u64_checked(p, a, ~std::uint64_t(0)); }
    unsigned c() const { return std::gcd(d1, d2); }
    void validate() const;
};

// gcd(n, M_m) with M_m = (q1^m - 1)/(q^cm - 1), computed mod n via the
// geometric-sum form so no large powers appear.
std::uint64_t curve_gcd_term(const CurveSpec& curve, std::uint64_t m);
// Same for the decoupled conjecture parameters: M_i = (base^(d*i)-1)/(base^i-1).
std::uint64_t conjecture_gcd_term(unsigned n, std::uint64_t base, unsigned d, std::uint64_t i);

// (1/phi(n)) sum_i gcd(n, M_i) zeta_k^i, evaluated exactly in Q(zeta_k) and
// asserted to be a rational integer (k | phi(n)).
Int a_k_exponent(const CurveSpec& curve, unsigned k);
Int a_k_conjecture(unsigned n, std::uint64_t base, unsigned d, unsigned k);

// 1/(1 - q^(d1+..+dn) T)
RatFn affine_space_zeta(const std::vector<unsigned>& d_list, std::uint64_t q);

// 1/(1 - q^c T) with the inclusion-exclusion gcd exponent; needs n >= 2.
RatFn hyperplane_zeta(const std::vector<unsigned>& d_list, std::uint64_t q);
long long hyperplane_exponent(const std::vector<unsigned>& d_list);

// (1/(1-T)) * prod over k | phi(n) of (B_k(T)/B_k(q^c T))^(a_k), with each
// cyclotomic block scaled to constant term 1, expanded and reduced.
RatFn curve_zeta_closed_form(const CurveSpec& curve);

struct GaloisCheck {
    bool consistent = true;
    std::string witness;  // set when consistent is false
};

// S_j = sum_i gcd(n, M_i) zeta^(-ij): equal within additive-order classes
// mod phi(n), and each S_j/phi(n) a rational integer.
GaloisCheck galois_consistency(const CurveSpec& curve);

struct SweepEntry {
    unsigned n, d, k;
    std::uint64_t base;
    bool integral;
    std::string value;  // decimal integer, or the cyclotomic witness
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    unsigned violations = 0;
};

SweepReport conjecture_sweep(unsigned n_max, std::uint64_t a_max, unsigned d_max);

// deg num + deg den of the reduced closed form is <= 1 + 2n^2
bool degree_bound_check(const CurveSpec& curve);

}  // namespace pzeta
