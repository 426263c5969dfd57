#pragma once

#include "pzeta/numeric.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace pzeta {

// Ambient-field element, packed as the base-p encoding of its coefficient
// vector relative to the tower's defining polynomial. Code order is the
// canonical element order used everywhere determinism matters.
struct Fe {
    std::uint32_t code = 0;
    friend bool operator==(Fe, Fe) = default;
    friend auto operator<=>(Fe, Fe) = default;
};

// d_list entries are relative degrees over F_q; the ambient field at level m
// is F_{p^{a*d*m}} with d = lcm(d_list).
struct TowerSpec {
    std::uint64_t p = 2;
    unsigned a = 1;
    std::vector<unsigned> d_list;
    unsigned m = 1;

    unsigned lcm_d() const;
    unsigned ambient_degree() const { return a * lcm_d() * m; }  // over F_p
    void validate() const;
};

struct EnumLimits {
    std::uint64_t ambient_cap = std::uint64_t(1) << 22;  // max ambient field size
    std::uint64_t work_cap = std::uint64_t(1) << 26;     // max enumerated points per call
};

// One constructed field F_{p^D} with full exp/log/Zech tables, a fixed
// generator, and per-variable subfield indices. Immutable after build.
class FieldTower {
  public:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    FieldTower(const TowerSpec& spec, const EnumLimits& limits = {});

    const TowerSpec& spec() const { return spec_; }
    unsigned degree() const { return degree_; }           // D = a*d*m over F_p
    std::uint64_t order() const { return order_; }        // p^D
    std::uint64_t unit_order() const { return order_ - 1; }
    std::uint64_t p() const { return spec_.p; }
    Fe generator() const { return Fe{gen_}; }
    const std::vector<std::uint8_t>& defining_poly() const { return def_poly_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{one_}; }
    Fe from_int(Int c) const;  // canonical Z -> F_p subfield
    Fe pow_g(std::uint64_t k) const { return Fe{exp_[k % unit_order()]}; }

    Fe add(Fe x, Fe y) const {
        if (x.code == 0) return y;
        if (y.code == 0) return x;
        std::uint32_t lx = log_[x.code], ly = log_[y.code];
        std::uint32_t dz = ly >= lx ? ly - lx : std::uint32_t(ly + unit_order_32_ - lx);
        std::uint32_t z = zech_[dz];
        if (z == kNone) return Fe{0};
        std::uint32_t l = lx + z;
        if (l >= unit_order_32_) l -= unit_order_32_;
        return Fe{exp_[l]};
    }
    Fe neg(Fe x) const {
        if (x.code == 0 || spec_.p == 2) return x;
        std::uint32_t l = log_[x.code] + half_;
        if (l >= unit_order_32_) l -= unit_order_32_;
        return Fe{exp_[l]};
    }
    Fe sub(Fe x, Fe y) const { return add(x, neg(y)); }
    Fe mul(Fe x, Fe y) const {
        if (x.code == 0 || y.code == 0) return Fe{0};
        std::uint32_t l = log_[x.code] + log_[y.code];
        if (l >= unit_order_32_) l -= unit_order_32_;
        return Fe{exp_[l]};
    }
    Fe inv(Fe x) const {
        if (x.code == 0) throw ValidationError("inverse of zero");
        std::uint32_t l = log_[x.code];
        return Fe{exp_[l == 0 ? 0 : unit_order_32_ - l]};
    }
    Fe pow(Fe x, std::uint64_t e) const {
        if (x.code == 0) return e == 0 ? one() : Fe{0};
        return Fe{exp_[mulmod_u64(log_[x.code], e % unit_order(), unit_order())]};
    }

    std::uint64_t discrete_log(Fe x) const {
        if (x.code == 0) throw ValidationError("discrete log of zero");
        return log_[x.code];
    }

    // x^(p^k), the k-th Frobenius power.
    Fe frobenius(Fe x, unsigned k = 1) const {
        if (x.code == 0) return x;
        return Fe{exp_[mulmod_u64(log_[x.code], powmod_u64(spec_.p, k, unit_order()), unit_order())]};
    }

    // Membership in the fixed field of x -> x^(p^k); k must divide D.
    bool is_in_subfield(Fe x, unsigned k) const;

    // Sum of x^(p^to)^j over j < from/to. x must lie in F_{p^from}.
    Fe trace(Fe x, unsigned from_degree, unsigned to_degree) const;
    // Absolute trace to F_p, returned as an integer in [0, p).
    std::uint64_t abs_trace(Fe x) const;

    std::vector<std::uint8_t> coeffs_of(Fe x) const;
    Fe from_coeffs(const std::vector<std::uint8_t>& c) const;

    // Index e = (p^D - 1)/(p^k - 1); units of the degree-k subfield are g^(e*t).
    std::uint64_t subfield_index(unsigned k) const;
    std::uint64_t subfield_order(unsigned k) const { return pow_u64_checked(spec_.p, k, ~std::uint64_t(0)); }
    // Per-variable subfield degree over F_p: a * d_i * m.
    unsigned variable_degree(unsigned i) const;

    // Deterministic random-access stream over a subfield: slot 0 is zero,
    // slot t >= 1 is g^(e*(t-1)). Supports range partitioning.
    struct SubfieldStream {
        const FieldTower* tower;
        std::uint64_t size;   // p^k
        std::uint64_t index;  // e
        Fe at(std::uint64_t t) const {
            if (t == 0) return Fe{0};
            return Fe{tower->exp_[mulmod_u64(t - 1, index, tower->unit_order())]};
        }
        // Discrete log of slot t (t >= 1).
        std::uint64_t log_at(std::uint64_t t) const {
            return mulmod_u64(t - 1, index, tower->unit_order());
        }
    };
    SubfieldStream subfield_stream(unsigned k) const {
        return SubfieldStream{this, subfield_order(k), subfield_index(k)};
    }
    SubfieldStream variable_stream(unsigned i) const { return subfield_stream(variable_degree(i)); }

    // Least root in code order of a degree-`deg` polynomial over F_p (coeffs
    // ascending) inside this field; used to re-embed level-1 coefficients.
    Fe least_root_of(const std::vector<std::uint8_t>& poly_fp) const;

    std::uint32_t exp_at(std::uint64_t k) const { return exp_[k]; }

  private:
    TowerSpec spec_;
    unsigned degree_ = 1;
    std::uint64_t order_ = 2;
    std::uint32_t unit_order_32_ = 1;
    std::uint32_t half_ = 0;  // log of -1 for odd p
    std::uint32_t gen_ = 1;
    std::uint32_t one_ = 1;
    std::vector<std::uint8_t> def_poly_;  // monic, ascending, length D+1
    std::vector<std::uint32_t> exp_;      // size p^D - 1
    std::vector<std::uint32_t> log_;      // size p^D (log_[0] = kNone)
    std::vector<std::uint32_t> zech_;     // size p^D - 1

    friend struct SubfieldStream;
};

// Lexicographically least monic irreducible of the given degree over F_p,
// found by trial division against all lower-degree monic irreducibles.
std::vector<std::uint8_t> least_irreducible_poly(std::uint64_t p, unsigned degree);

std::shared_ptr<const FieldTower> build_tower(const TowerSpec& spec, const EnumLimits& limits = {});

}  // namespace pzeta
