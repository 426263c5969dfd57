#include "pzeta/padics.hpp"

#include <algorithm>

namespace pzeta {

unsigned p_weight(const MultiPoly& f, std::uint64_t p) {
    if (f.is_zero()) throw ValidationError("p-weight of the zero polynomial");
    unsigned w = 0;
    for (const auto& t : f.terms) {
        unsigned s = 0;
        for (auto u : t.exp) s += unsigned(digit_sum(u, p));
        w = std::max(w, s);
    }
    return w;
}

long long omega_bound(const PolySystem& system) {
    system.validate();
    const std::uint64_t p = system.spec.p;
    long long sum_d = 0;
    for (unsigned di : system.spec.d_list) sum_d += di;
    long long d = system.spec.lcm_d();
    long long sum_w = 0, max_w = 0;
    for (const auto& f : system.polys) {
        long long w = p_weight(f, p);
        sum_w += w;
        max_w = std::max(max_w, w);
    }
    if (max_w == 0)
        throw ValidationError("all p-weights are zero; the bound is undefined");
    Rat omega = Rat(Int(system.spec.a) * (sum_d - d * sum_w), Int(max_w));
    Int ceil = ceil_rat(omega);
    if (ceil < 0) return 0;
    return ceil.convert_to<long long>();
}

BoundReport verify_divisibility(const PolySystem& system, const EnumLimits& limits,
                                unsigned threads) {
    long long omega = omega_bound(system);
    Int n1 = count_points(system, 1, limits, threads);
    BoundReport rep;
    rep.bound = omega;
    rep.n1 = n1;
    rep.vacuous = (omega == 0);
    if (n1 == 0) {
        rep.value = std::nullopt;  // 0 is divisible by every power
        rep.pass = true;
    } else {
        Int v = v_p_int(n1, system.spec.p);
        rep.value = Rat(v);
        rep.pass = v >= omega;
    }
    return rep;
}

CycloZ CycloZ::from_integer(std::uint64_t p, const Int& v) {
    CycloZ z = zero(p);
    z.c[0] = v;
    return z;
}

CycloZ CycloZ::from_histogram(std::uint64_t p, const std::vector<Int>& counts) {
    if (counts.size() != p) throw ValidationError("histogram must have p buckets");
    CycloZ z = zero(p);
    for (std::uint64_t e = 0; e + 1 < p; ++e) z.c[e] = counts[e];
    // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    for (auto& x : z.c) x -= counts[p - 1];
    return z;
}

bool CycloZ::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

CycloZ CycloZ::galois(std::uint64_t t) const {
    if (std::gcd(t % p, p) != 1) throw ValidationError("galois exponent divisible by p");
    std::vector<Int> counts(p, 0);
    for (std::uint64_t e = 0; e + 1 < p; ++e) counts[(e * (t % p)) % p] += c[e];
    return from_histogram(p, counts);
}

CycloQ CycloZ::to_cyclo_q() const {
    std::vector<Rat> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = Rat(c[i]);
    return CycloQ::from_coords(unsigned(p), std::move(v));
}

std::string CycloZ::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += c[i].str();
    }
    return s + "]";
}

CycloZ operator+(const CycloZ& a, const CycloZ& b) {
    if (a.p != b.p) throw ValidationError("conductor mismatch");
    CycloZ r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

CycloZ operator-(const CycloZ& a, const CycloZ& b) {
    if (a.p != b.p) throw ValidationError("conductor mismatch");
    CycloZ r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

CycloZ operator*(const CycloZ& a, const CycloZ& b) {
    if (a.p != b.p) throw ValidationError("conductor mismatch");
    std::vector<Int> prod(2 * a.c.size(), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) prod[i + j] += a.c[i] * b.c[j];
    }
    // reduce powers >= p-1 via zeta^(p-1) = -(1 + .. + zeta^(p-2)), twice is
    // enough since the product degree is < 2(p-1)
    CycloZ r = CycloZ::zero(a.p);
    std::vector<Int> counts(a.p, 0);
    for (std::size_t e = 0; e < prod.size(); ++e) counts[e % a.p] += prod[e];
    for (std::uint64_t e = 0; e + 1 < a.p; ++e) r.c[e] = counts[e];
    for (auto& x : r.c) x -= counts[a.p - 1];
    return r;
}

OrdVal pi_adic_valuation(const CycloZ& z) {
    if (z.is_zero()) return std::nullopt;
    const std::uint64_t p = z.p;
    // division by pi = 1 - zeta as a rational inverse, kept while integral
    CycloQ cur = z.to_cyclo_q();
    CycloQ pi = CycloQ::scalar(unsigned(p), 1) - CycloQ::zeta_pow(unsigned(p), 1);
    unsigned v = 0;
    while (true) {
        CycloQ next = cur / pi;
        bool integral = true;
        for (const auto& x : next.c)
            if (denominator(x) != 1) {
                integral = false;
                break;
            }
        if (!integral) break;
        cur = std::move(next);
        ++v;
    }
    return Rat(Int(v), Int(p - 1));
}

OrdVal pi_adic_valuation_q(const CycloQ& z, std::uint64_t p) {
    if (z.is_zero()) return std::nullopt;
    Int den = 1;
    for (const auto& x : z.c) den = lcm(den, denominator(x));
    std::vector<Int> scaled(z.c.size());
    for (std::size_t i = 0; i < z.c.size(); ++i)
        scaled[i] = numerator(z.c[i]) * (den / denominator(z.c[i]));
    CycloZ zz{p, std::move(scaled)};
    OrdVal v = pi_adic_valuation(zz);
    return *v - Rat(v_p_int(den, p));
}

PadicRing::PadicRing(std::uint64_t p, unsigned K, std::vector<std::uint8_t> defining_poly)
    : p_(p), K_(K), deg_(unsigned(defining_poly.size()) - 1) {
    if (K_ < 1) throw ValidationError("precision must be >= 1");
    mod_ = 1;
    for (unsigned i = 0; i < K_; ++i) mod_ *= p_;
    fhat_.assign(defining_poly.begin(), defining_poly.end());
}

PadicRing::Elt PadicRing::one() const {
    Elt e = zero();
    e[0] = 1;
    return e;
}

PadicRing::Elt PadicRing::from_int(const Int& v) const {
    Elt e = zero();
    e[0] = v % mod_;
    if (e[0] < 0) e[0] += mod_;
    return e;
}

PadicRing::Elt PadicRing::from_residue(const std::vector<std::uint8_t>& coeffs) const {
    Elt e = zero();
    for (unsigned i = 0; i < deg_ && i < coeffs.size(); ++i) e[i] = coeffs[i];
    return e;
}

PadicRing::Elt PadicRing::add(const Elt& a, const Elt& b) const {
    Elt r(deg_);
    for (unsigned i = 0; i < deg_; ++i) {
        r[i] = a[i] + b[i];
        if (r[i] >= mod_) r[i] -= mod_;
    }
    return r;
}

PadicRing::Elt PadicRing::sub(const Elt& a, const Elt& b) const {
    Elt r(deg_);
    for (unsigned i = 0; i < deg_; ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) r[i] += mod_;
    }
    return r;
}

PadicRing::Elt PadicRing::mul(const Elt& a, const Elt& b) const {
    std::vector<Int> prod(2 * deg_, 0);
    for (unsigned i = 0; i < deg_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < deg_; ++j) prod[i + j] += a[i] * b[j];
    }
    // reduce by the monic lift of the defining polynomial
    for (unsigned k = 2 * deg_; k-- > deg_;) {
        Int c = prod[k] % mod_;
        prod[k] = 0;
        if (c == 0) continue;
        for (unsigned j = 0; j < deg_; ++j) prod[k - deg_ + j] -= c * fhat_[j];
    }
    Elt r(deg_);
    for (unsigned i = 0; i < deg_; ++i) {
        r[i] = prod[i] % mod_;
        if (r[i] < 0) r[i] += mod_;
    }
    return r;
}

PadicRing::Elt PadicRing::scale(const Elt& a, const Int& c) const {
    Elt r(deg_);
    Int cm = c % mod_;
    if (cm < 0) cm += mod_;
    for (unsigned i = 0; i < deg_; ++i) r[i] = a[i] * cm % mod_;
    return r;
}

PadicRing::Elt PadicRing::pow(Elt base, Int e) const {
    Elt acc = one();
    while (e > 0) {
        if ((e & 1) != 0) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

Int PadicRing::unit_inverse(const Int& u) const {
    Int a = u % mod_, b = mod_, x0 = 1, x1 = 0;
    if (a < 0) a += mod_;
    Int aa = a, bb = b;
    while (bb != 0) {
        Int q = aa / bb;
        Int t = aa - q * bb;
        aa = bb;
        bb = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (aa != 1) throw ValidationError("not a unit modulo p^K");
    x0 %= mod_;
    if (x0 < 0) x0 += mod_;
    return x0;
}

bool PadicRing::is_zero(const Elt& a) const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

std::optional<unsigned> PadicRing::val_p(const Elt& a) const {
    std::optional<unsigned> best;
    for (const auto& x : a) {
        if (x == 0) continue;
        unsigned v = unsigned(v_p_int(x, p_).convert_to<std::uint64_t>());
        if (!best || v < *best) best = v;
    }
    return best;
}

PadicCyclo::Elt PadicCyclo::zero() const {
    return Elt(R_->p() - 1, R_->zero());
}

void PadicCyclo::add_zeta_multiple(Elt& acc, std::uint64_t e, const PadicRing::Elt& r) const {
    const std::uint64_t p = R_->p();
    e %= p;
    if (e + 1 < p) {
        acc[e] = R_->add(acc[e], r);
    } else {
        for (auto& slot : acc) slot = R_->sub(slot, r);
    }
}

PadicCyclo::Elt PadicCyclo::scale(const Elt& a, const Int& c) const {
    Elt r = a;
    for (auto& slot : r) slot = R_->scale(slot, c);
    return r;
}

bool PadicCyclo::is_zero(const Elt& a) const {
    for (const auto& slot : a)
        if (!R_->is_zero(slot)) return false;
    return true;
}

OrdVal PadicCyclo::ord_p(const Elt& a) const {
    const std::uint64_t p = R_->p();
    // rewrite sum a_j w^j with w = 1 - pi: b_t = sum_j C(j,t) (-1)^t a_j.
    // The pi-basis coordinates have distinct fractional valuations, so the
    // minimum over t of v_p(b_t) + t/(p-1) is exact once any b_t is nonzero.
    OrdVal best;
    for (std::uint64_t t = 0; t + 1 < p; ++t) {
        PadicRing::Elt bt = R_->zero();
        Int binom = 1;  // C(t,t)
        for (std::uint64_t j = t; j + 1 < p; ++j) {
            if (j > t) binom = binom * Int(j) / Int(j - t);
            bt = R_->add(bt, R_->scale(a[j], binom));
        }
        if (t % 2 == 1) bt = R_->sub(R_->zero(), bt);
        auto v = R_->val_p(bt);
        if (!v) continue;
        Rat ord = Rat(Int(*v)) + Rat(Int(t), Int(p - 1));
        if (!best || ord < *best) best = ord;
    }
    return best;  // nullopt: zero at this precision
}

PadicRing::Elt teichmuller_lift(const FieldTower& tower, Fe x, const PadicRing& ring) {
    if (ring.degree() != tower.degree())
        throw ValidationError("ring degree does not match tower");
    PadicRing::Elt t = ring.from_residue(tower.coeffs_of(x));
    Int q = 1;
    for (unsigned i = 0; i < tower.degree(); ++i) q *= tower.p();
    // one Frobenius application gains one digit of agreement
    for (unsigned it = 0; it < ring.precision() + 4; ++it) {
        PadicRing::Elt next = ring.pow(t, q);
        if (next == t) return t;
        t = std::move(next);
    }
    throw PrecisionError("Teichmueller iteration did not converge");
}

GaussCoefficient gauss_coefficient(std::uint64_t m, const FieldTower& tower, unsigned K) {
    const std::uint64_t p = tower.p();
    const unsigned a = tower.spec().a;
    const std::uint64_t N = tower.order();
    if (m > N - 1) throw ValidationError("gauss coefficient index out of range");
    Rat expected = Rat(Int(digit_sum(m, p)), Int(a) * Int(p - 1));
    unsigned K_eff = K ? K : tower.degree() + 10;
    const unsigned K_cap = 400;

    while (true) {
        PadicRing R(p, K_eff, tower.defining_poly());
        PadicCyclo A(R);
        OrdVal ord_p_val;
        if (m == 0) {
            ord_p_val = Rat(0);
        } else if (m == N - 1) {
            // c = -q^d / (q^d - 1); the denominator is a unit
            Int qd = 1;
            for (unsigned i = 0; i < tower.degree(); ++i) qd *= p;
            Int c = (R.modulus() - qd % R.modulus()) * R.unit_inverse(Int(N - 1)) % R.modulus();
            auto v = R.val_p(R.from_int(c));
            if (v) ord_p_val = Rat(Int(*v));
        } else {
            PadicRing::Elt omega = teichmuller_lift(tower, tower.generator(), R);
            // power table for omega^t
            std::vector<PadicRing::Elt> pow_table(N - 1, R.one());
            for (std::uint64_t t = 1; t < N - 1; ++t)
                pow_table[t] = R.mul(pow_table[t - 1], omega);
            PadicCyclo::Elt sum = A.zero();
            for (std::uint64_t t = 0; t < N - 1; ++t) {
                std::uint64_t idx = mulmod_u64(m % (N - 1), (N - 1 - t) % (N - 1), N - 1);
                std::uint64_t tr = tower.abs_trace(tower.pow_g(t));
                A.add_zeta_multiple(sum, tr, pow_table[idx]);
            }
            sum = A.scale(sum, R.unit_inverse(Int(N - 1)));
            ord_p_val = A.ord_p(sum);
        }
        if (ord_p_val) {
            Rat ord_q = *ord_p_val / Rat(Int(a));
            if (ord_q != expected)
                throw ConsistencyError("Stickelberger mismatch: ord_q c_" + std::to_string(m) +
                                       " = " + rat_str(ord_q) + ", expected " + rat_str(expected));
            return GaussCoefficient{m, ord_q, expected, K_eff};
        }
        if (K_eff >= K_cap)
            throw PrecisionError("gauss coefficient valuation not determined at precision " +
                                 std::to_string(K_eff));
        K_eff *= 2;
    }
}

std::vector<std::pair<Rat, unsigned>> newton_polygon(const std::vector<OrdVal>& vals) {
    if (vals.empty() || !vals[0])
        throw ValidationError("newton polygon requires a nonzero constant term");
    std::vector<std::pair<long long, Rat>> pts;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i]) pts.emplace_back((long long)i, *vals[i]);
    if (pts.size() < 2) return {};
    // lower convex hull, left to right
    std::vector<std::pair<long long, Rat>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            // keep if pt is strictly above the line x1->x2 extended
            if ((y2 - y1) * Rat(Int(pt.first - x1)) <= (pt.second - y1) * Rat(Int(x2 - x1)))
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    std::vector<std::pair<Rat, unsigned>> slopes;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        Rat slope = (hull[i].second - hull[i - 1].second) / Rat(Int(hull[i].first - hull[i - 1].first));
        unsigned mult = unsigned(hull[i].first - hull[i - 1].first);
        if (!slopes.empty() && slopes.back().first == slope)
            slopes.back().second += mult;
        else
            slopes.emplace_back(slope, mult);
    }
    return slopes;
}

std::vector<std::pair<Rat, unsigned>> newton_slopes(const UPoly<Rat>& poly, std::uint64_t p,
                                                    unsigned a) {
    std::vector<OrdVal> vals;
    for (const auto& c : poly) {
        if (c == 0)
            vals.push_back(std::nullopt);
        else
            vals.push_back(Rat(v_p_rat(c, p)) / Rat(Int(a)));
    }
    return newton_polygon(vals);
}

std::vector<std::pair<Rat, unsigned>> newton_slopes(const UPoly<CycloQ>& poly, std::uint64_t p,
                                                    unsigned a) {
    std::vector<OrdVal> vals;
    for (const auto& c : poly) {
        OrdVal v = pi_adic_valuation_q(c, p);
        if (v)
            vals.push_back(*v / Rat(Int(a)));
        else
            vals.push_back(std::nullopt);
    }
    return newton_polygon(vals);
}

}  // namespace pzeta
