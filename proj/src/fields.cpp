#include "pzeta/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace pzeta {

unsigned TowerSpec::lcm_d() const {
    unsigned l = 1;
    for (unsigned di : d_list) l = std::lcm(l, di);
    return l;
}

void TowerSpec::validate() const {
    if (!is_prime_u64(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
    if (a < 1) throw ValidationError("extension degree a must be >= 1");
    if (m < 1) throw ValidationError("tower level m must be >= 1");
    if (d_list.empty()) throw ValidationError("d_list must be nonempty");
    for (unsigned di : d_list)
        if (di < 1) throw ValidationError("all d_i must be >= 1");
}

namespace {

// Dense F_p polynomial helpers on coefficient vectors (ascending).
using FpPoly = std::vector<std::uint8_t>;

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a by b (b monic-led), in place on a copy.
FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
    fp_trim(a);
    const unsigned db = unsigned(b.size()) - 1;
    // inverse of leading coefficient
    std::uint64_t lead_inv = powmod_u64(b[db], p - 2, p);
    while (a.size() >= b.size()) {
        std::uint64_t q = mulmod_u64(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        if (q != 0)
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t v = a[shift + i] + p - mulmod_u64(q, b[i], p);
                a[shift + i] = std::uint8_t(v % p);
            }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

bool fp_divides(const FpPoly& d, const FpPoly& f, std::uint64_t p) {
    return fp_rem(f, d, p).empty();
}

// All monic irreducibles of exactly the given degree, in code order.
// Memoized per (p, degree); built by trial division as in the tower rules.
const std::vector<FpPoly>& irreducibles(std::uint64_t p, unsigned degree) {
    static std::map<std::pair<std::uint64_t, unsigned>, std::vector<FpPoly>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<FpPoly> out;
    std::vector<const std::vector<FpPoly>*> lower;
    for (unsigned k = 1; k + k <= degree; ++k) lower.push_back(&irreducibles(p, k));

    std::uint64_t total = pow_u64_checked(p, degree, ~std::uint64_t(0));
    for (std::uint64_t code = 0; code < total; ++code) {
        FpPoly f(degree + 1);
        std::uint64_t c = code;
        for (unsigned j = 0; j < degree; ++j) {
            f[j] = std::uint8_t(c % p);
            c /= p;
        }
        f[degree] = 1;
        if (degree > 1 && f[0] == 0) continue;  // divisible by x
        bool irred = true;
        for (auto* set : lower) {
            for (const auto& d : *set)
                if (fp_divides(d, f, p)) {
                    irred = false;
                    break;
                }
            if (!irred) break;
        }
        if (irred) out.push_back(std::move(f));
    }
    return cache.emplace(key, std::move(out)).first->second;
}

// Raw (table-free) arithmetic used during construction.
struct RawField {
    std::uint64_t p;
    unsigned D;
    FpPoly mod;  // monic degree D

    std::vector<std::uint8_t> decode(std::uint64_t code) const {
        std::vector<std::uint8_t> v(D);
        for (unsigned i = 0; i < D; ++i) {
            v[i] = std::uint8_t(code % p);
            code /= p;
        }
        return v;
    }
    std::uint64_t encode(const std::vector<std::uint8_t>& v) const {
        std::uint64_t code = 0;
        for (unsigned i = D; i-- > 0;) code = code * p + (i < v.size() ? v[i] : 0);
        return code;
    }
    std::vector<std::uint8_t> mul(const std::vector<std::uint8_t>& x,
                                  const std::vector<std::uint8_t>& y) const {
        std::vector<std::uint32_t> prod(2 * D, 0);
        for (unsigned i = 0; i < D; ++i) {
            if (!x[i]) continue;
            for (unsigned j = 0; j < D; ++j)
                if (y[j]) prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(x[i]) * y[j]) % p);
        }
        // reduce by monic mod
        for (unsigned k = 2 * D; k-- > D;) {
            std::uint32_t c = prod[k];
            if (!c) continue;
            prod[k] = 0;
            for (unsigned j = 0; j < D; ++j)
                prod[k - D + j] =
                    std::uint32_t((prod[k - D + j] + std::uint64_t(c) * (p - mod[j])) % p);
        }
        std::vector<std::uint8_t> out(D);
        for (unsigned i = 0; i < D; ++i) out[i] = std::uint8_t(prod[i]);
        return out;
    }
    std::uint64_t powmod_code(std::uint64_t base_code, std::uint64_t e) const {
        auto acc = decode(1);
        auto b = decode(base_code);
        while (e) {
            if (e & 1) acc = mul(acc, b);
            b = mul(b, b);
            e >>= 1;
        }
        return encode(acc);
    }
};

}  // namespace

std::vector<std::uint8_t> least_irreducible_poly(std::uint64_t p, unsigned degree) {
    if (degree == 1) return irreducibles(p, 1).front();  // x + 0
    std::vector<const std::vector<FpPoly>*> lower;
    for (unsigned k = 1; k + k <= degree; ++k) lower.push_back(&irreducibles(p, k));
    std::uint64_t total = pow_u64_checked(p, degree, ~std::uint64_t(0));
    for (std::uint64_t code = 0; code < total; ++code) {
        FpPoly f(degree + 1);
        std::uint64_t c = code;
        for (unsigned j = 0; j < degree; ++j) {
            f[j] = std::uint8_t(c % p);
            c /= p;
        }
        f[degree] = 1;
        if (f[0] == 0) continue;
        bool irred = true;
        for (auto* set : lower) {
            for (const auto& d : *set)
                if (fp_divides(d, f, p)) {
                    irred = false;
                    break;
                }
            if (!irred) break;
        }
        if (irred) return f;
    }
    throw ValidationError("no irreducible polynomial found");  // unreachable
}

FieldTower::FieldTower(const TowerSpec& spec, const EnumLimits& limits) : spec_(spec) {
    spec_.validate();
    degree_ = spec_.ambient_degree();
    if (degree_ > 63) throw SizeError("ambient degree too large");
    order_ = 1;
    for (unsigned i = 0; i < degree_; ++i) {
        if (order_ > limits.ambient_cap / spec_.p)
            throw SizeError("ambient field size p^" + std::to_string(degree_) +
                            " exceeds enumeration cap " + std::to_string(limits.ambient_cap));
        order_ *= spec_.p;
    }
    if (order_ > limits.ambient_cap)
        throw SizeError("ambient field size exceeds enumeration cap");

    def_poly_ = least_irreducible_poly(spec_.p, degree_);
    RawField raw{spec_.p, degree_, def_poly_};
    const std::uint64_t M = order_ - 1;
    unit_order_32_ = std::uint32_t(M);
    one_ = 1;

    // Least element (code order) of multiplicative order M.
    auto factors = prime_factors_u64(M);
    std::uint64_t g = 0;
    for (std::uint64_t cand = 1; cand < order_; ++cand) {
        bool ok = true;
        for (std::uint64_t ell : factors)
            if (raw.powmod_code(cand, M / ell) == 1) {
                ok = false;
                break;
            }
        if (ok && raw.powmod_code(cand, M) == 1) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw ValidationError("no primitive element found");  // unreachable
    gen_ = std::uint32_t(g);

    exp_.resize(M);
    log_.assign(order_, kNone);
    auto cur = raw.decode(1);
    auto gv = raw.decode(g);
    for (std::uint64_t k = 0; k < M; ++k) {
        std::uint64_t code = raw.encode(cur);
        exp_[k] = std::uint32_t(code);
        log_[code] = std::uint32_t(k);
        cur = raw.mul(cur, gv);
    }
    if (raw.encode(cur) != 1) throw ValidationError("generator order mismatch");  // unreachable

    // Zech logarithms: zech_[k] = log(1 + g^k). Adding the field's one only
    // touches digit 0 of the code.
    zech_.assign(M, kNone);
    const std::uint64_t p = spec_.p;
    for (std::uint64_t k = 0; k < M; ++k) {
        std::uint64_t code = exp_[k];
        std::uint64_t d0 = code % p;
        std::uint64_t code1 = code - d0 + ((d0 + 1) % p);
        zech_[k] = code1 == 0 ? kNone : log_[code1];
    }
    half_ = (p == 2) ? 0 : std::uint32_t(M / 2);
}

Fe FieldTower::from_int(Int c) const {
    Int r = c % Int(spec_.p);
    if (r < 0) r += spec_.p;
    return Fe{std::uint32_t(r.convert_to<std::uint64_t>())};
}

bool FieldTower::is_in_subfield(Fe x, unsigned k) const {
    if (degree_ % k != 0) throw ValidationError("subfield degree must divide ambient degree");
    if (x.code == 0) return true;
    return log_[x.code] % subfield_index(k) == 0;
}

Fe FieldTower::trace(Fe x, unsigned from_degree, unsigned to_degree) const {
    if (from_degree % to_degree != 0)
        throw ValidationError("trace: target degree must divide source degree");
    if (degree_ % from_degree != 0)
        throw ValidationError("trace: source degree must divide ambient degree");
    if (!is_in_subfield(x, from_degree))
        throw ValidationError("trace: element outside source subfield");
    Fe acc{0};
    Fe t = x;
    unsigned steps = from_degree / to_degree;
    for (unsigned j = 0; j < steps; ++j) {
        acc = add(acc, t);
        t = frobenius(t, to_degree);
    }
    return acc;
}

std::uint64_t FieldTower::abs_trace(Fe x) const {
    return trace(x, degree_, 1).code;  // elements of F_p are coded as integers
}

std::vector<std::uint8_t> FieldTower::coeffs_of(Fe x) const {
    std::vector<std::uint8_t> v(degree_);
    std::uint64_t code = x.code;
    for (unsigned i = 0; i < degree_; ++i) {
        v[i] = std::uint8_t(code % spec_.p);
        code /= spec_.p;
    }
    return v;
}

Fe FieldTower::from_coeffs(const std::vector<std::uint8_t>& c) const {
    std::uint64_t code = 0;
    for (unsigned i = degree_; i-- > 0;) code = code * spec_.p + (i < c.size() ? c[i] % spec_.p : 0);
    return Fe{std::uint32_t(code)};
}

std::uint64_t FieldTower::subfield_index(unsigned k) const {
    if (k == 0 || degree_ % k != 0) throw ValidationError("invalid subfield degree");
    std::uint64_t sub = pow_u64_checked(spec_.p, k, order_);
    return (order_ - 1) / (sub - 1);
}

unsigned FieldTower::variable_degree(unsigned i) const {
    if (i >= spec_.d_list.size()) throw ValidationError("variable index out of range");
    return spec_.a * spec_.d_list[i] * spec_.m;
}

Fe FieldTower::least_root_of(const std::vector<std::uint8_t>& poly_fp) const {
    unsigned deg = unsigned(poly_fp.size()) - 1;
    if (degree_ % deg != 0) throw ValidationError("root search: degree does not divide ambient");
    auto stream = subfield_stream(deg);
    Fe best{kNone};
    for (std::uint64_t t = 0; t < stream.size; ++t) {
        Fe x = stream.at(t);
        Fe acc{0};
        for (unsigned j = unsigned(poly_fp.size()); j-- > 0;)
            acc = add(mul(acc, x), Fe{poly_fp[j]});
        if (acc.code == 0 && x.code < best.code) best = x;
    }
    if (best.code == kNone) throw ValidationError("defining polynomial has no root in subfield");
    return best;
}

std::shared_ptr<const FieldTower> build_tower(const TowerSpec& spec, const EnumLimits& limits) {
    return std::make_shared<const FieldTower>(spec, limits);
}

}  // namespace pzeta
