#pragma once

#include "pzeta/fields.hpp"

#include <string>
#include <vector>

namespace pzeta {

// Sparse multivariate polynomial over the level-1 ambient field F_{q^d}.
// Terms are kept in descending lexicographic exponent order with nonzero
// coefficients and distinct exponent vectors.
struct MultiPoly {
    struct Term {
        std::vector<std::uint32_t> exp;  // length nvars
        Fe coeff;
    };
    unsigned nvars = 0;
    std::vector<Term> terms;

    void normalize(const FieldTower& tower);
    bool is_zero() const { return terms.empty(); }
    unsigned total_degree() const;
};

// A system F_1..F_r over F_{q^d} together with its level-1 tower.
struct PolySystem {
    TowerSpec spec;  // m = 1
    std::shared_ptr<const FieldTower> tower;
    std::vector<MultiPoly> polys;

    unsigned nvars() const { return unsigned(spec.d_list.size()); }
    void validate() const;
};

PolySystem make_system(const TowerSpec& spec, std::vector<MultiPoly> polys,
                       const EnumLimits& limits = {});

// Grammar: variables x1..xn (x, y, z aliases when n <= 3), integer
// coefficients, `g` the ambient primitive element (g^k powers), operators
// + - * ^ and parentheses. Errors carry the offending position.
MultiPoly parse_poly(const std::string& text, unsigned nvars, const FieldTower& tower);

std::string print_poly(const MultiPoly& f, const FieldTower& tower);
std::string print_coeff(Fe c, const FieldTower& tower);

}  // namespace pzeta
