#include "pzeta/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace pzeta {

void MultiPoly::normalize(const FieldTower& tower) {
    std::map<std::vector<std::uint32_t>, Fe, std::greater<>> acc;
    for (auto& t : terms) {
        if (t.exp.size() != nvars) throw ValidationError("exponent vector length mismatch");
        auto it = acc.find(t.exp);
        if (it == acc.end())
            acc.emplace(t.exp, t.coeff);
        else
            it->second = tower.add(it->second, t.coeff);
    }
    terms.clear();
    for (auto& [e, c] : acc)
        if (c.code != 0) terms.push_back({e, c});
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms) {
        unsigned s = 0;
        for (auto e : t.exp) s += e;
        d = std::max(d, s);
    }
    return d;
}

void PolySystem::validate() const {
    if (spec.m != 1) throw ValidationError("polynomial systems are defined at level m = 1");
    for (const auto& f : polys)
        if (f.nvars != nvars()) throw ValidationError("polynomial variable count mismatch");
}

PolySystem make_system(const TowerSpec& spec_in, std::vector<MultiPoly> polys,
                       const EnumLimits& limits) {
    TowerSpec spec = spec_in;
    spec.m = 1;
    PolySystem sys{spec, build_tower(spec, limits), std::move(polys)};
    for (auto& f : sys.polys) f.normalize(*sys.tower);
    sys.validate();
    return sys;
}

namespace {

// Recursive-descent parser producing a term map; all arithmetic is exact in
// the ambient field, exponents are bounded to keep evaluation sane.
struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    unsigned nvars;
    const FieldTower& tower;

    static constexpr std::uint32_t kMaxExp = 1u << 20;

    using TermMap = std::map<std::vector<std::uint32_t>, Fe>;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("parse error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Int parse_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return Int(s.substr(start, pos - start));
    }

    TermMap constant(Fe c) const {
        TermMap m;
        if (c.code != 0) m.emplace(std::vector<std::uint32_t>(nvars, 0), c);
        return m;
    }

    TermMap add(TermMap a, const TermMap& b) const {
        for (const auto& [e, c] : b) {
            auto it = a.find(e);
            if (it == a.end())
                a.emplace(e, c);
            else {
                it->second = tower.add(it->second, c);
                if (it->second.code == 0) a.erase(it);
            }
        }
        return a;
    }

    TermMap negate(TermMap a) const {
        for (auto& [e, c] : a) c = tower.neg(c);
        return a;
    }

    TermMap mul(const TermMap& a, const TermMap& b) const {
        TermMap out;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::vector<std::uint32_t> e(nvars);
                for (unsigned i = 0; i < nvars; ++i) {
                    std::uint64_t v = std::uint64_t(ea[i]) + eb[i];
                    if (v > kMaxExp) throw ValidationError("exponent too large");
                    e[i] = std::uint32_t(v);
                }
                Fe c = tower.mul(ca, cb);
                if (c.code == 0) continue;
                auto it = out.find(e);
                if (it == out.end())
                    out.emplace(std::move(e), c);
                else {
                    it->second = tower.add(it->second, c);
                    if (it->second.code == 0) out.erase(it);
                }
            }
        return out;
    }

    TermMap pow(TermMap base, Int e) const {
        if (e < 0) throw ValidationError("negative exponent");
        if (e > kMaxExp) throw ValidationError("exponent too large");
        TermMap acc = constant(tower.one());
        std::uint64_t k = e.convert_to<std::uint64_t>();
        while (k) {
            if (k & 1) acc = mul(acc, base);
            k >>= 1;
            if (k) base = mul(base, base);
        }
        return acc;
    }

    int variable_index(const std::string& name) const {
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int idx = std::stoi(name.substr(1)) - 1;
            if (idx < 0 || unsigned(idx) >= nvars) return -2;
            return idx;
        }
        if (nvars <= 3 && name.size() == 1) {
            if (name[0] == 'x') return nvars >= 1 ? 0 : -2;
            if (name[0] == 'y') return nvars >= 2 ? 1 : -2;
            if (name[0] == 'z') return nvars >= 3 ? 2 : -2;
        }
        return -1;
    }

    TermMap parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            TermMap e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return constant(tower.from_int(parse_int()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   std::isalnum(static_cast<unsigned char>(s[pos])))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "g") return constant(tower.generator());
            int idx = variable_index(name);
            if (idx == -1) {
                pos = start;
                fail("unknown symbol '" + name + "'");
            }
            if (idx == -2) {
                pos = start;
                fail("variable '" + name + "' out of range for " + std::to_string(nvars) +
                     " variables");
            }
            TermMap m;
            std::vector<std::uint32_t> e(nvars, 0);
            e[idx] = 1;
            m.emplace(std::move(e), tower.one());
            return m;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    TermMap parse_factor() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        TermMap base = parse_primary();
        if (eat('^')) {
            skip_ws();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("malformed exponent");
            base = pow(std::move(base), parse_int());
        }
        return neg ? negate(std::move(base)) : base;
    }

    TermMap parse_term() {
        TermMap acc = parse_factor();
        while (eat('*')) acc = mul(acc, parse_factor());
        return acc;
    }

    TermMap parse_expr() {
        TermMap acc = parse_term();
        while (true) {
            if (eat('+'))
                acc = add(std::move(acc), parse_term());
            else if (eat('-'))
                acc = add(std::move(acc), negate(parse_term()));
            else
                break;
        }
        return acc;
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, unsigned nvars, const FieldTower& tower) {
    Parser p{text, 0, nvars, tower};
    auto terms = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    MultiPoly f;
    f.nvars = nvars;
    for (auto& [e, c] : terms) f.terms.push_back({e, c});
    f.normalize(tower);
    return f;
}

std::string print_coeff(Fe c, const FieldTower& tower) {
    if (c.code < tower.p()) return std::to_string(c.code);
    std::uint64_t k = tower.discrete_log(c);
    return k == 1 ? "g" : "g^" + std::to_string(k);
}

std::string print_poly(const MultiPoly& f, const FieldTower& tower) {
    if (f.terms.empty()) return "0";
    auto var_name = [&](unsigned i) {
        if (f.nvars <= 3) return std::string(1, "xyz"[i]);
        return "x" + std::to_string(i + 1);
    };
    std::string out;
    for (const auto& t : f.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (unsigned i = 0; i < f.nvars; ++i) {
            if (t.exp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i);
            if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
        }
        if (mono.empty())
            out += print_coeff(t.coeff, tower);
        else if (t.coeff == tower.one())
            out += mono;
        else
            out += print_coeff(t.coeff, tower) + "*" + mono;
    }
    return out;
}

}  // namespace pzeta
