#include "pzeta/counting.hpp"

#include <map>

namespace pzeta {

namespace {

// Polynomial in the z_{ij} variables with ambient-field coefficients,
// used while expanding the change of variables x_i = sum_j z_{ij} mu_{ij}.
struct ZPoly {
    unsigned nvars;
    std::map<std::vector<std::uint32_t>, Fe> terms;

    void add_term(const FieldTower& T, std::vector<std::uint32_t> e, Fe c) {
        if (c.code == 0) return;
        auto it = terms.find(e);
        if (it == terms.end())
            terms.emplace(std::move(e), c);
        else {
            it->second = T.add(it->second, c);
            if (it->second.code == 0) terms.erase(it);
        }
    }
};

ZPoly zmul(const FieldTower& T, const ZPoly& a, const ZPoly& b) {
    ZPoly out{a.nvars, {}};
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<std::uint32_t> e(a.nvars);
            for (unsigned i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            out.add_term(T, std::move(e), T.mul(ca, cb));
        }
    return out;
}

// Least element (code order) of the degree-k subfield whose multiplicative
// order is exactly p^k - 1; its powers form the subfield's power basis.
Fe least_primitive_in_subfield(const FieldTower& T, unsigned k) {
    std::uint64_t sub_units = T.subfield_order(k) - 1;
    const std::uint64_t M = T.unit_order();
    auto stream = T.subfield_stream(k);
    Fe best{FieldTower::kNone};
    for (std::uint64_t t = 1; t < stream.size; ++t) {
        Fe x = stream.at(t);
        std::uint64_t ord = M / std::gcd(stream.log_at(t), M);
        if (ord == sub_units && x.code < best.code) best = x;
    }
    if (best.code == FieldTower::kNone)
        throw ValidationError("no primitive element in subfield");  // unreachable
    return best;
}

// Inverse of the change-of-basis matrix whose columns are the F_p coefficient
// vectors of g^0..g^(D-1).
std::vector<std::vector<std::uint8_t>> basis_inverse(const FieldTower& T) {
    const unsigned D = T.degree();
    const std::uint64_t p = T.p();
    // augmented [B | I], rows indexed by coefficient slot
    std::vector<std::vector<std::uint64_t>> m(D, std::vector<std::uint64_t>(2 * D, 0));
    Fe gp = T.one();
    for (unsigned col = 0; col < D; ++col) {
        auto v = T.coeffs_of(gp);
        for (unsigned row = 0; row < D; ++row) m[row][col] = v[row];
        gp = T.mul(gp, T.generator());
    }
    for (unsigned i = 0; i < D; ++i) m[i][D + i] = 1;
    for (unsigned col = 0; col < D; ++col) {
        unsigned piv = col;
        while (piv < D && m[piv][col] == 0) ++piv;
        if (piv == D) throw ValidationError("generator powers are not a basis");  // unreachable
        std::swap(m[piv], m[col]);
        std::uint64_t inv = powmod_u64(m[col][col], p - 2, p);
        for (auto& x : m[col]) x = mulmod_u64(x, inv, p);
        for (unsigned row = 0; row < D; ++row) {
            if (row == col || m[row][col] == 0) continue;
            std::uint64_t f = m[row][col];
            for (unsigned j = 0; j < 2 * D; ++j)
                m[row][j] = (m[row][j] + (p - f) * m[col][j]) % p;
        }
    }
    std::vector<std::vector<std::uint8_t>> inv(D, std::vector<std::uint8_t>(D));
    for (unsigned i = 0; i < D; ++i)
        for (unsigned j = 0; j < D; ++j) inv[i][j] = std::uint8_t(m[i][D + j]);
    return inv;
}

}  // namespace

PolySystem restrict_scalars(const PolySystem& system) {
    system.validate();
    const FieldTower& T = *system.tower;
    const std::uint64_t p = T.p();
    const unsigned n = system.nvars();
    const unsigned D = T.degree();  // a*d

    std::vector<unsigned> deg_i(n), offset(n + 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        deg_i[i] = T.variable_degree(i);  // a*d_i
        offset[i + 1] = offset[i] + deg_i[i];
    }
    const unsigned nz = offset[n];

    // power basis of each variable's subfield
    std::vector<std::vector<Fe>> basis(n);
    for (unsigned i = 0; i < n; ++i) {
        Fe beta = least_primitive_in_subfield(T, deg_i[i]);
        Fe cur = T.one();
        for (unsigned j = 0; j < deg_i[i]; ++j) {
            basis[i].push_back(cur);
            cur = T.mul(cur, beta);
        }
    }
    auto binv = basis_inverse(T);

    TowerSpec out_spec{p, 1, std::vector<unsigned>(nz, 1), 1};
    auto out_tower = build_tower(out_spec);

    std::vector<MultiPoly> out_polys;
    for (const auto& F : system.polys) {
        ZPoly total{nz, {}};
        for (const auto& term : F.terms) {
            ZPoly prod{nz, {}};
            prod.add_term(T, std::vector<std::uint32_t>(nz, 0), term.coeff);
            for (unsigned i = 0; i < n; ++i) {
                std::uint32_t u = term.exp[i];
                unsigned tshift = 0;
                while (u) {
                    std::uint32_t a_t = std::uint32_t(u % p);
                    u = std::uint32_t(u / p);
                    if (a_t) {
                        // (sum_j z_ij mu_ij^(p^t))^(a_t): base-p splitting keeps
                        // the z-degree at the digit sum
                        ZPoly lin{nz, {}};
                        for (unsigned j = 0; j < deg_i[i]; ++j) {
                            std::vector<std::uint32_t> e(nz, 0);
                            e[offset[i] + j] = 1;
                            lin.add_term(T, std::move(e), T.frobenius(basis[i][j], tshift));
                        }
                        for (std::uint32_t rep = 0; rep < a_t; ++rep) prod = zmul(T, prod, lin);
                    }
                    ++tshift;
                }
            }
            for (const auto& [e, c] : prod.terms) total.add_term(T, e, c);
        }
        // split on the ambient basis g^l
        std::vector<MultiPoly> G(D);
        for (auto& g : G) g.nvars = nz;
        for (const auto& [e, c] : total.terms) {
            auto v = T.coeffs_of(c);
            for (unsigned l = 0; l < D; ++l) {
                std::uint64_t coord = 0;
                for (unsigned j = 0; j < D; ++j) coord = (coord + std::uint64_t(binv[l][j]) * v[j]) % p;
                if (coord) G[l].terms.push_back({e, Fe{std::uint32_t(coord)}});
            }
        }
        for (auto& g : G) {
            g.normalize(*out_tower);
            out_polys.push_back(std::move(g));
        }
    }

    PolySystem out{out_spec, out_tower, std::move(out_polys)};
    out.validate();
    return out;
}

}  // namespace pzeta
