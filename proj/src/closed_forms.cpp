#include "pzeta/closed_forms.hpp"

namespace pzeta {

void CurveSpec::validate() const {
    if (n < 1) throw ValidationError("curve exponent n must be >= 1");
    if (!is_prime_u64(p)) throw ValidationError("p must be prime");
    if (a < 1 || d1 < 1 || d2 < 1) throw ValidationError("a, d1, d2 must be >= 1");
}

namespace {

// sum_{j<count} r^j mod n
std::uint64_t geometric_mod(std::uint64_t r, std::uint64_t count, std::uint64_t n) {
    std::uint64_t acc = 0, pw = 1 % n;
    for (std::uint64_t j = 0; j < count; ++j) {
        acc = (acc + pw) % n;
        pw = mulmod_u64(pw, r, n);
    }
    return acc;
}

std::uint64_t gcd_with_geometric(std::uint64_t n, std::uint64_t r, std::uint64_t count) {
    if (n == 1) return 1;
    std::uint64_t mm = geometric_mod(r % n, count, n);
    return mm == 0 ? n : std::gcd(n, mm);
}

Int a_k_from_terms(unsigned n, unsigned k, const std::vector<std::uint64_t>& delta) {
    const unsigned phi = euler_phi(n);
    if (k == 0 || phi % k != 0) throw ValidationError("k must divide phi(n)");
    CycloQ sum = CycloQ::scalar(k, 0);
    for (unsigned i = 1; i <= phi; ++i)
        sum = sum + CycloQ::scalar(k, Rat(Int(delta[i - 1]))) * CycloQ::zeta_pow(k, i);
    CycloQ val = sum / CycloQ::scalar(k, Rat(Int(phi)));
    if (!val.is_integer())
        throw ConsistencyError("a_" + std::to_string(k) + " is not an integer: " + val.str());
    return numerator(val.rational_value());
}

}  // namespace

std::uint64_t curve_gcd_term(const CurveSpec& curve, std::uint64_t m) {
    curve.validate();
    // M_m = sum_{i < d1/c} q^{cmi} mod n
    std::uint64_t r = powmod_u64(curve.q() % curve.n, (std::uint64_t)curve.c() * m, curve.n);
    return gcd_with_geometric(curve.n, r, curve.d1 / curve.c());
}

std::uint64_t conjecture_gcd_term(unsigned n, std::uint64_t base, unsigned d, std::uint64_t i) {
    // M_i = sum_{j<d} base^(ij) mod n
    if (n == 1) return 1;
    std::uint64_t r = powmod_u64(base % n, i, n);
    return gcd_with_geometric(n, r, d);
}

Int a_k_exponent(const CurveSpec& curve, unsigned k) {
    curve.validate();
    const unsigned phi = euler_phi(curve.n);
    std::vector<std::uint64_t> delta(phi);
    for (unsigned i = 1; i <= phi; ++i) delta[i - 1] = curve_gcd_term(curve, i);
    return a_k_from_terms(curve.n, k, delta);
}

Int a_k_conjecture(unsigned n, std::uint64_t base, unsigned d, unsigned k) {
    const unsigned phi = euler_phi(n);
    std::vector<std::uint64_t> delta(phi);
    for (unsigned i = 1; i <= phi; ++i) delta[i - 1] = conjecture_gcd_term(n, base, d, i);
    return a_k_from_terms(n, k, delta);
}

RatFn affine_space_zeta(const std::vector<unsigned>& d_list, std::uint64_t q) {
    Int qs = 1;
    for (unsigned di : d_list)
        for (unsigned j = 0; j < di; ++j) qs *= q;
    return RatFn{up_const(Rat(1)), UPoly<Rat>{Rat(1), Rat(-qs)}};
}

long long hyperplane_exponent(const std::vector<unsigned>& d_list) {
    const unsigned n = unsigned(d_list.size());
    if (n < 2) throw ValidationError("hyperplane needs at least two variables");
    long long c = 0;
    // alternating sum over subsets of size >= 2 of gcds
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        unsigned bits = unsigned(__builtin_popcount(mask));
        if (bits < 2) continue;
        unsigned g = 0;
        for (unsigned i = 0; i < n; ++i)
            if (mask & (1u << i)) g = std::gcd(g, d_list[i]);
        c += (bits % 2 == 0) ? (long long)g : -(long long)g;
    }
    return c;
}

RatFn hyperplane_zeta(const std::vector<unsigned>& d_list, std::uint64_t q) {
    long long c = hyperplane_exponent(d_list);
    if (c < 0) throw ValidationError("negative hyperplane exponent");
    Int qc = 1;
    for (long long j = 0; j < c; ++j) qc *= q;
    return RatFn{up_const(Rat(1)), UPoly<Rat>{Rat(1), Rat(-qc)}};
}

namespace {

// prod over primitive k-th roots of (1 - zeta s T): the reversed cyclotomic,
// which equals Phi_k itself for k >= 2 and 1 - sT for k = 1.
UPoly<Rat> cyclo_block(unsigned k, const Int& s) {
    UPoly<Rat> f;
    if (k == 1) {
        f = {Rat(1), Rat(-s)};
    } else {
        const auto& phi = cyclotomic_poly(k);
        Int pw = 1;
        f.resize(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) {
            f[j] = Rat(phi[j] * pw);
            pw *= s;
        }
    }
    return f;
}

}  // namespace

RatFn curve_zeta_closed_form(const CurveSpec& curve) {
    curve.validate();
    const unsigned phi = euler_phi(curve.n);
    Int qc = 1;
    for (unsigned j = 0; j < curve.c(); ++j) qc *= curve.q();

    UPoly<Rat> num = up_const(Rat(1));
    UPoly<Rat> den = UPoly<Rat>{Rat(1), Rat(-1)};  // the 1/(1-T) prefactor
    for (unsigned k = 1; k <= phi; ++k) {
        if (phi % k != 0) continue;
        Int ak = a_k_exponent(curve, k);
        if (ak == 0) continue;
        UPoly<Rat> top = cyclo_block(k, 1);
        UPoly<Rat> bot = cyclo_block(k, qc);
        unsigned e = ak > 0 ? unsigned(ak.convert_to<long long>())
                            : unsigned(-ak.convert_to<long long>());
        if (ak > 0) {
            num = up_mul(num, up_pow(top, e));
            den = up_mul(den, up_pow(bot, e));
        } else {
            num = up_mul(num, up_pow(bot, e));
            den = up_mul(den, up_pow(top, e));
        }
    }
    return reduce_ratfn(std::move(num), std::move(den));
}

GaloisCheck galois_consistency(const CurveSpec& curve) {
    curve.validate();
    const unsigned phi = euler_phi(curve.n);
    std::vector<std::uint64_t> delta(phi);
    for (unsigned i = 1; i <= phi; ++i) delta[i - 1] = curve_gcd_term(curve, i);

    std::vector<CycloQ> S(phi + 1, CycloQ::scalar(phi, 0));
    for (unsigned j = 1; j <= phi; ++j)
        for (unsigned i = 1; i <= phi; ++i)
            S[j] = S[j] + CycloQ::scalar(phi, Rat(Int(delta[i - 1]))) *
                              CycloQ::zeta_pow(phi, -(long long)(std::uint64_t(i) * j));

    auto additive_order = [&](unsigned j) { return phi / std::gcd(j, phi); };
    for (unsigned j = 1; j <= phi; ++j) {
        CycloQ ratio = S[j] / CycloQ::scalar(phi, Rat(Int(phi)));
        if (!ratio.is_integer())
            return {false, "S_" + std::to_string(j) + "/phi not an integer: " + S[j].str()};
        for (unsigned j2 = j + 1; j2 <= phi; ++j2)
            if (additive_order(j) == additive_order(j2) && !(S[j] == S[j2]))
                return {false, "S_" + std::to_string(j) + " != S_" + std::to_string(j2) +
                                   " at equal additive order"};
    }
    return {};
}

SweepReport conjecture_sweep(unsigned n_max, std::uint64_t a_max, unsigned d_max) {
    SweepReport rep;
    for (unsigned n = 1; n <= n_max; ++n) {
        const unsigned phi = euler_phi(n);
        for (std::uint64_t base = 1; base <= a_max; ++base)
            for (unsigned d = 1; d <= d_max; ++d)
                for (unsigned k = 1; k <= phi; ++k) {
                    if (phi % k != 0) continue;
                    SweepEntry e{n, d, k, base, true, ""};
                    try {
                        e.value = a_k_conjecture(n, base, d, k).str();
                    } catch (const ConsistencyError& err) {
                        e.integral = false;
                        e.value = err.what();
                        ++rep.violations;
                    }
                    rep.entries.push_back(std::move(e));
                }
    }
    return rep;
}

bool degree_bound_check(const CurveSpec& curve) {
    RatFn z = curve_zeta_closed_form(curve);
    long long total = up_deg(z.num) + up_deg(z.den);
    return total <= 1 + 2ll * curve.n * curve.n;
}

}  // namespace pzeta
