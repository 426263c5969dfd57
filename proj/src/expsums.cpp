#include "pzeta/expsums.hpp"

namespace pzeta {

namespace {

const MultiPoly& single_poly(const PolySystem& sys) {
    if (sys.polys.size() != 1)
        throw ValidationError("exponential sums take exactly one polynomial");
    return sys.polys[0];
}

}  // namespace

CycloZ partial_exp_sum(const PolySystem& f_sys, unsigned m, Fe twist, const EnumLimits& limits,
                       unsigned threads) {
    const MultiPoly& f = single_poly(f_sys);
    auto hist = abs_trace_histogram(f_sys, f, twist, m, limits, threads);
    return CycloZ::from_histogram(f_sys.spec.p, hist);
}

SumSequence sum_sequence(const PolySystem& f_sys, unsigned M, Fe twist, const EnumLimits& limits,
                         unsigned threads) {
    SumSequence seq{f_sys, {}};
    for (unsigned m = 1; m <= M; ++m)
        seq.values.push_back(partial_exp_sum(f_sys, m, twist, limits, threads));
    return seq;
}

MixedSumResult mixed_char_sum(const PolySystem& f_sys, const CharacterSpec& chi, unsigned K,
                              const EnumLimits& limits) {
    const MultiPoly& f = single_poly(f_sys);
    const FieldTower& T = *f_sys.tower;
    const std::uint64_t p = T.p();
    const unsigned n = f_sys.nvars();
    const unsigned r = chi.r();
    if (r > n) throw ValidationError("more multiplicative characters than variables");
    if (chi.twist.code == 0) throw ValidationError("additive twist must be nonzero");
    for (unsigned i = 0; i < r; ++i) {
        std::uint64_t qi = T.subfield_order(T.variable_degree(i));
        if (chi.exponents[i] < 1 || chi.exponents[i] > qi - 1)
            throw ValidationError("character exponent e_" + std::to_string(i + 1) +
                                  " out of range");
    }

    // work estimate: product over restricted streams
    Int work = 1;
    for (unsigned i = 0; i < n; ++i) {
        std::uint64_t s = T.subfield_order(T.variable_degree(i));
        work *= (i < r) ? s - 1 : s;
    }
    if (work > limits.work_cap) throw SizeError("mixed sum enumeration exceeds work cap");

    // scale f by the twist
    MultiPoly scaled = f;
    for (auto& t : scaled.terms) t.coeff = T.mul(t.coeff, chi.twist);
    scaled.normalize(T);

    const std::uint64_t M = T.unit_order();
    unsigned K_eff = K ? K : T.degree() + 10;
    const unsigned K_cap = 160;

    while (true) {
        PadicRing R(p, K_eff, T.defining_poly());
        PadicCyclo A(R);
        PadicRing::Elt omega = teichmuller_lift(T, T.generator(), R);
        std::vector<PadicRing::Elt> pow_table(M, R.one());
        for (std::uint64_t t = 1; t < M; ++t) pow_table[t] = R.mul(pow_table[t - 1], omega);

        PadicCyclo::Elt sum = A.zero();
        std::vector<FieldTower::SubfieldStream> streams;
        for (unsigned i = 0; i < n; ++i) streams.push_back(T.variable_stream(i));
        std::vector<std::uint64_t> slot(n, 0);
        for (unsigned i = 0; i < r; ++i) slot[i] = 1;  // skip zero for twisted coords

        bool done = false;
        while (!done) {
            // Teichmueller power index and additive character value
            std::uint64_t tpow = 0;
            for (unsigned i = 0; i < r; ++i)
                tpow = (tpow + mulmod_u64(chi.exponents[i], streams[i].log_at(slot[i]), M)) % M;
            Fe val{0};
            for (const auto& term : scaled.terms) {
                Fe v = term.coeff;
                for (unsigned i = 0; i < n; ++i)
                    if (term.exp[i] > 0) v = T.mul(v, T.pow(streams[i].at(slot[i]), term.exp[i]));
                val = T.add(val, v);
            }
            A.add_zeta_multiple(sum, T.abs_trace(val), pow_table[tpow]);

            // odometer
            unsigned lvl = n;
            while (lvl-- > 0) {
                ++slot[lvl];
                if (slot[lvl] < streams[lvl].size) break;
                slot[lvl] = (lvl < r) ? 1 : 0;
                if (lvl == 0) done = true;
            }
            if (n == 0) done = true;
        }

        OrdVal ord_p_val = A.ord_p(sum);
        if (ord_p_val)
            return MixedSumResult{*ord_p_val / Rat(Int(f_sys.spec.a)), K_eff, true};
        if (K_eff >= K_cap) return MixedSumResult{std::nullopt, K_eff, false};
        K_eff *= 2;
    }
}

RatFnC l_function(const PolySystem& f_sys, unsigned M, unsigned degree_cap, unsigned guard,
                  Fe twist, const EnumLimits& limits, unsigned threads) {
    SumSequence seq = sum_sequence(f_sys, M, twist, limits, threads);
    std::vector<CycloQ> s;
    s.reserve(M);
    for (const auto& z : seq.values) s.push_back(z.to_cyclo_q());
    return reconstruct(s, degree_cap, guard);
}

LBoundReport verify_l_bound(const PolySystem& f_sys, Fe twist, const EnumLimits& limits,
                            unsigned threads) {
    const MultiPoly& f = single_poly(f_sys);
    unsigned w = p_weight(f, f_sys.spec.p);
    if (w == 0) throw ValidationError("p-weight zero: bound undefined");
    long long sum_d = 0;
    for (unsigned di : f_sys.spec.d_list) sum_d += di;
    LBoundReport rep;
    rep.bound = Rat(Int(sum_d), Int(w));
    CycloZ s1 = partial_exp_sum(f_sys, 1, twist, limits, threads);
    OrdVal v = pi_adic_valuation(s1);
    rep.ord_s1 = v ? OrdVal(*v / Rat(Int(f_sys.spec.a))) : v;
    rep.pass = ord_geq(rep.ord_s1, rep.bound);
    return rep;
}

Rat mixed_sum_bound(const PolySystem& f_sys, const CharacterSpec& chi) {
    const MultiPoly& f = single_poly(f_sys);
    unsigned w = p_weight(f, f_sys.spec.p);
    if (w == 0) throw ValidationError("p-weight zero: bound undefined");
    Rat sum_d(0);
    for (unsigned di : f_sys.spec.d_list) sum_d += di;
    Rat sig(0);
    for (auto e : chi.exponents) sig += Rat(Int(digit_sum(e, f_sys.spec.p)));
    return (sum_d - sig / (Rat(Int(f_sys.spec.a)) * Rat(Int(f_sys.spec.p - 1)))) / Rat(Int(w));
}

}  // namespace pzeta
