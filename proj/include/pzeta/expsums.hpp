#pragma once

#include "pzeta/padics.hpp"

namespace pzeta {

// psi_b(t) = zeta_p^AbsTr(b t); multiplicative part given by exponents
// e_1..e_r acting through Teichmueller powers x_i^(e_i).
struct CharacterSpec {
    Fe twist{1};                            // b, nonzero
    std::vector<std::uint64_t> exponents;   // e_i in [1, q_i - 1], i <= r

    unsigned r() const { return unsigned(exponents.size()); }
};

// The summand: a single polynomial f over the system's level-1 field.
// S_m = sum over x_i in F_{q_i^m} of zeta_p^AbsTr(b f(x)), exact in Z[zeta_p].
CycloZ partial_exp_sum(const PolySystem& f_sys, unsigned m, Fe twist,
                       const EnumLimits& limits = {}, unsigned threads = 1);

struct SumSequence {
    PolySystem system;
    std::vector<CycloZ> values;  // S_1..S_M
};

SumSequence sum_sequence(const PolySystem& f_sys, unsigned M, Fe twist,
                         const EnumLimits& limits = {}, unsigned threads = 1);

struct MixedSumResult {
    OrdVal ord_q;        // nullopt: sum vanishes to the working precision
    unsigned precision;  // K actually used
    bool determined;     // false: indeterminate even after escalation (treat
                         // the valuation as >= precision/a, likely infinite)
};

// S(chi, d, f) over Teichmueller points, x_i in T_i^x for i <= r; valuation
// by truncated p-adic arithmetic with precision escalation. A sum that stays
// zero through the escalation cap is reported undetermined rather than
// raising, since exact zeros never resolve at finite precision.
MixedSumResult mixed_char_sum(const PolySystem& f_sys, const CharacterSpec& chi, unsigned K = 0,
                              const EnumLimits& limits = {});

// L(d, f, T) = exp(sum S_m T^m / m), reconstructed over Q(zeta_p).
RatFnC l_function(const PolySystem& f_sys, unsigned M, unsigned degree_cap, unsigned guard = 10,
                  Fe twist = Fe{1}, const EnumLimits& limits = {}, unsigned threads = 1);

struct LBoundReport {
    Rat bound;        // (sum d_i)/w_p(f) for the untwisted sum
    OrdVal ord_s1;
    bool pass = false;
};

LBoundReport verify_l_bound(const PolySystem& f_sys, Fe twist = Fe{1},
                            const EnumLimits& limits = {}, unsigned threads = 1);

// Theorem bound for a twisted sum: (1/w_p(f)) (sum d_i - sum sigma_p(e_i)/(a(p-1))).
Rat mixed_sum_bound(const PolySystem& f_sys, const CharacterSpec& chi);

}  // namespace pzeta
