#pragma once

#include "pzeta/counting.hpp"

namespace pzeta {

// max over monomials of the summed base-p digit sums of the exponent vector
unsigned p_weight(const MultiPoly& f, std::uint64_t p);

// omega = max(0, ceil(a * ((d_1+..+d_n) - d * sum w_p(F_i)) / max_i w_p(F_i)))
long long omega_bound(const PolySystem& system);

struct BoundReport {
    Rat bound;     // required divisibility exponent or valuation bound
    OrdVal value;  // attained valuation (nullopt = infinite)
    bool pass = false;
    bool vacuous = false;
    Int n1 = 0;  // for divisibility reports
};

// Counts N_1 and checks p^omega | N_1 (Theorem-of-Katz territory: a failure
// is an artifact bug, not a mathematical event).
BoundReport verify_divisibility(const PolySystem& system, const EnumLimits& limits = {},
                                unsigned threads = 1);

// Exact element of Z[zeta_p], coordinates on 1, zeta, .., zeta^(p-2).
struct CycloZ {
    std::uint64_t p = 2;
    std::vector<Int> c;

    static CycloZ zero(std::uint64_t p) { return {p, std::vector<Int>(p - 1, 0)}; }
    static CycloZ from_integer(std::uint64_t p, const Int& v);
    // sum of counts[e] * zeta^e over e in [0, p)
    static CycloZ from_histogram(std::uint64_t p, const std::vector<Int>& counts);

    bool is_zero() const;
    CycloZ galois(std::uint64_t t) const;  // zeta -> zeta^t
    CycloQ to_cyclo_q() const;
    std::string str() const;

    friend CycloZ operator+(const CycloZ& a, const CycloZ& b);
    friend CycloZ operator-(const CycloZ& a, const CycloZ& b);
    friend CycloZ operator*(const CycloZ& a, const CycloZ& b);
    friend bool operator==(const CycloZ& a, const CycloZ& b) = default;
};

// ord_p via exact division by pi = 1 - zeta_p: v_pi(z)/(p-1); nullopt for 0.
OrdVal pi_adic_valuation(const CycloZ& z);
// ord_p of an element of Q(zeta_p) (clears denominators first).
OrdVal pi_adic_valuation_q(const CycloQ& z, std::uint64_t p);

// Truncated unramified ring (Z/p^K)[y]/(Fhat), Fhat the integer lift of a
// tower's defining polynomial. Elements are coefficient vectors mod p^K.
class PadicRing {
  public:
    using Elt = std::vector<Int>;

    PadicRing(std::uint64_t p, unsigned K, std::vector<std::uint8_t> defining_poly);

    std::uint64_t p() const { return p_; }
    unsigned precision() const { return K_; }
    unsigned degree() const { return deg_; }
    const Int& modulus() const { return mod_; }

    Elt zero() const { return Elt(deg_, 0); }
    Elt one() const;
    Elt from_int(const Int& v) const;
    Elt from_residue(const std::vector<std::uint8_t>& coeffs) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt scale(const Elt& a, const Int& c) const;
    Elt pow(Elt base, Int e) const;
    // inverse of an integer unit mod p^K
    Int unit_inverse(const Int& u) const;

    bool is_zero(const Elt& a) const;
    // min coordinate valuation; nullopt when the element is 0 mod p^K
    std::optional<unsigned> val_p(const Elt& a) const;

  private:
    std::uint64_t p_;
    unsigned K_;
    unsigned deg_;
    Int mod_;
    std::vector<Int> fhat_;
};

// The ramified layer R[w]/Phi_p(w); coordinates on w^0..w^(p-2).
class PadicCyclo {
  public:
    using Elt = std::vector<PadicRing::Elt>;

    explicit PadicCyclo(const PadicRing& ring) : R_(&ring) {}

    const PadicRing& ring() const { return *R_; }
    Elt zero() const;
    // add r * zeta^e in place, reducing zeta^(p-1) = -(1 + .. + zeta^(p-2))
    void add_zeta_multiple(Elt& acc, std::uint64_t e, const PadicRing::Elt& r) const;
    Elt scale(const Elt& a, const Int& c) const;
    bool is_zero(const Elt& a) const;

    // ord_p read off the pi = 1 - zeta basis: min_t v_p(b_t) + t/(p-1).
    // nullopt when the element vanishes at this precision (escalate K).
    OrdVal ord_p(const Elt& a) const;

  private:
    const PadicRing* R_;
};

// Unique root-of-unity (or zero) lift with x^(p^deg) = x, by fixed-point
// iteration from the residue representative.
PadicRing::Elt teichmuller_lift(const FieldTower& tower, Fe x, const PadicRing& ring);

struct GaussCoefficient {
    std::uint64_t m;
    Rat ord_q;          // computed valuation
    Rat stickelberger;  // sigma_p(m) / (a (p-1))
    unsigned precision; // K actually used
};

// c_0 = 1, c_{q^d-1} = -q^d/(q^d-1), otherwise g_m/(q^d-1) with g_m the Gauss
// sum over the Teichmueller points; asserts the Stickelberger valuation.
GaussCoefficient gauss_coefficient(std::uint64_t m, const FieldTower& tower, unsigned K = 0);

// Lower convex hull of (i, ord coefficient_i); returns (slope, multiplicity)
// in ascending slope order. vals[0] must be finite (no zero constant term).
std::vector<std::pair<Rat, unsigned>> newton_polygon(const std::vector<OrdVal>& vals);

std::vector<std::pair<Rat, unsigned>> newton_slopes(const UPoly<Rat>& poly, std::uint64_t p,
                                                    unsigned a);
std::vector<std::pair<Rat, unsigned>> newton_slopes(const UPoly<CycloQ>& poly, std::uint64_t p,
                                                    unsigned a);

}  // namespace pzeta
