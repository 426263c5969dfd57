#include "pzeta/counting.hpp"

#include <algorithm>
#include <thread>

namespace pzeta {

namespace {

// Enumeration state for one system over one tower. Terms are grouped by the
// highest variable they mention; values of the group's polynomial accumulate
// level by level so the innermost loop touches only innermost terms, with
// logarithms stepped incrementally along the generator-power stream.
class Enumerator {
  public:
    Enumerator(const FieldTower& T, const std::vector<MultiPoly>& polys) : T_(T) {
        npolys_ = unsigned(polys.size());
        nvars_ = polys.empty() ? 0 : polys[0].nvars;
        streams_.reserve(nvars_);
        for (unsigned i = 0; i < nvars_; ++i) streams_.push_back(T.variable_stream(i));
        terms_at_.resize(nvars_ + 1);
        base_acc_.assign(npolys_, Fe{0});
        for (unsigned j = 0; j < npolys_; ++j) {
            for (const auto& t : polys[j].terms) {
                unsigned top = 0;
                for (unsigned i = nvars_; i-- > 0;)
                    if (t.exp[i] > 0) {
                        top = i + 1;
                        break;
                    }
                if (top == 0)
                    base_acc_[j] = T.add(base_acc_[j], t.coeff);
                else
                    terms_at_[top].push_back({j, t.coeff, t.exp});
            }
        }
    }

    std::uint64_t outer_size() const { return nvars_ == 0 ? 1 : streams_[0].size; }

    Int total_work() const {
        Int w = 1;
        for (const auto& s : streams_) w *= s.size;
        return w;
    }

    // Visits every point with the outermost coordinate slot in [lo, hi);
    // body(vals) receives the r evaluated polynomial values.
    template <class Body>
    void run(std::uint64_t lo, std::uint64_t hi, Body&& body) const {
        if (nvars_ == 0) {
            if (lo == 0 && hi >= 1) body(base_acc_);
            return;
        }
        std::vector<Fe> cur(nvars_ + 1, Fe{0});
        std::vector<std::vector<Fe>> acc(nvars_ + 1, base_acc_);
        recurse(1, lo, hi, cur, acc, body);
    }

  private:
    struct TermRef {
        unsigned poly;
        Fe coeff;
        std::vector<std::uint32_t> exp;
    };

    template <class Body>
    void recurse(unsigned level, std::uint64_t lo, std::uint64_t hi, std::vector<Fe>& cur,
                 std::vector<std::vector<Fe>>& acc, Body&& body) const {
        const auto& stream = streams_[level - 1];
        const auto& terms = terms_at_[level];
        const std::uint64_t M = T_.unit_order();

        // Prefactor of each level term under the fixed lower coordinates:
        // coeff * prod_{i<level} x_i^{u_i}, kept as a log (kNone = zero).
        struct Prep {
            unsigned poly;
            std::uint64_t pf_log;
            std::uint64_t step;  // u_level * e mod M
            std::uint64_t cur_log;
        };
        std::vector<Prep> prep;
        prep.reserve(terms.size());
        const std::uint64_t first_unit = std::max<std::uint64_t>(lo, 1);
        for (const auto& t : terms) {
            Fe pf = t.coeff;
            for (unsigned i = 0; i + 1 < level; ++i)
                if (t.exp[i] > 0) pf = T_.mul(pf, T_.pow(cur[i + 1], t.exp[i]));
            if (pf.code == 0) continue;
            std::uint64_t step = mulmod_u64(t.exp[level - 1] % M, stream.index, M);
            prep.push_back({t.poly, T_.discrete_log(pf), step,
                            mulmod_u64(first_unit - 1, step, M)});
        }

        const std::vector<Fe>& below = acc[level - 1];
        std::vector<Fe>& here = acc[level];

        for (std::uint64_t t = lo; t < hi; ++t) {
            if (t == 0) {
                // zero coordinate: every level term vanishes (u_level > 0)
                here = below;
                cur[level] = Fe{0};
            } else {
                here = below;
                cur[level] = Fe{T_.exp_at(stream.log_at(t))};
                for (auto& pr : prep) {
                    std::uint64_t l = pr.pf_log + pr.cur_log;
                    if (l >= M) l -= M;
                    here[pr.poly] = T_.add(here[pr.poly], Fe{T_.exp_at(l)});
                    pr.cur_log += pr.step;
                    if (pr.cur_log >= M) pr.cur_log -= M;
                }
            }
            if (level == nvars_)
                body(here);
            else
                recurse(level + 1, 0, streams_[level].size, cur, acc, body);
        }
    }

    const FieldTower& T_;
    unsigned npolys_ = 0;
    unsigned nvars_ = 0;
    std::vector<FieldTower::SubfieldStream> streams_;
    std::vector<std::vector<TermRef>> terms_at_;
    std::vector<Fe> base_acc_;
};

// Splits [0, n) into contiguous chunks, runs `work` per chunk (possibly on
// threads), and combines results in chunk order.
template <class R, class Work>
std::vector<R> run_chunked(std::uint64_t n, unsigned threads, Work&& work) {
    if (threads <= 1 || n < 2) {
        std::vector<R> out;
        out.push_back(work(0, n));
        return out;
    }
    unsigned T = unsigned(std::min<std::uint64_t>(threads, n));
    std::vector<R> results(T);
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < T; ++i) {
        std::uint64_t lo = n * i / T, hi = n * (i + 1) / T;
        pool.emplace_back([&, i, lo, hi] { results[i] = work(lo, hi); });
    }
    for (auto& th : pool) th.join();
    return results;
}

Int product_count(const PolySystem& system, unsigned m) {
    Int w = 1;
    for (unsigned di : system.spec.d_list) {
        Int qi = 1;
        for (unsigned j = 0; j < system.spec.a * di * m; ++j) qi *= system.spec.p;
        w *= qi;
    }
    return w;
}

void check_work(const Int& work, const EnumLimits& limits) {
    if (work > limits.work_cap)
        throw SizeError("enumeration domain of " + work.str() + " points exceeds work cap " +
                        std::to_string(limits.work_cap));
}

}  // namespace

LevelContext embed_system(const PolySystem& system, unsigned m, const EnumLimits& limits,
                          std::optional<Fe> root) {
    system.validate();
    if (m == 1 && !root) return {system.tower, system.polys};
    TowerSpec spec_m = system.spec;
    spec_m.m = m;
    auto tower_m = build_tower(spec_m, limits);
    Fe rho = root ? *root : tower_m->least_root_of(system.tower->defining_poly());
    // powers of the chosen root give the image of the level-1 power basis
    std::vector<Fe> rho_pow(system.tower->degree());
    Fe cur = tower_m->one();
    for (auto& rp : rho_pow) {
        rp = cur;
        cur = tower_m->mul(cur, rho);
    }
    auto embed = [&](Fe c) {
        auto digits = system.tower->coeffs_of(c);
        Fe out{0};
        for (unsigned j = 0; j < digits.size(); ++j)
            if (digits[j]) out = tower_m->add(out, tower_m->mul(Fe{digits[j]}, rho_pow[j]));
        return out;
    };
    std::vector<MultiPoly> polys = system.polys;
    for (auto& f : polys) {
        for (auto& t : f.terms) t.coeff = embed(t.coeff);
        f.normalize(*tower_m);
    }
    return {tower_m, std::move(polys)};
}

Int enumeration_work(const PolySystem& system, unsigned m) {
    Int w = 1;
    for (unsigned i = 0; i < system.nvars(); ++i) {
        Int qi = 1;
        for (unsigned j = 0; j < system.spec.a * system.spec.d_list[i] * m; ++j)
            qi *= system.spec.p;
        w *= qi;
    }
    return w;
}

Int count_points(const PolySystem& system, unsigned m, const EnumLimits& limits, unsigned threads) {
    system.validate();
    std::vector<MultiPoly> active;
    for (const auto& f : system.polys)
        if (!f.is_zero()) active.push_back(f);
    if (active.empty()) return product_count(system, m);

    check_work(enumeration_work(system, m), limits);
    PolySystem sys = system;
    sys.polys = std::move(active);
    LevelContext ctx = embed_system(sys, m, limits);
    Enumerator en(*ctx.tower, ctx.polys);

    auto chunks = run_chunked<std::uint64_t>(
        en.outer_size(), threads, [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t cnt = 0;
            en.run(lo, hi, [&](const std::vector<Fe>& vals) {
                for (Fe v : vals)
                    if (v.code != 0) return;
                ++cnt;
            });
            return cnt;
        });
    Int total = 0;
    for (auto c : chunks) total += c;
    return total;
}

CountSequence count_sequence(const PolySystem& system, unsigned M, const EnumLimits& limits,
                             unsigned threads) {
    CountSequence seq{system, {}};
    seq.values.reserve(M);
    for (unsigned m = 1; m <= M; ++m) seq.values.push_back(count_points(system, m, limits, threads));
    return seq;
}

std::vector<Int> abs_trace_histogram(const PolySystem& system, const MultiPoly& f, Fe twist,
                                     unsigned m, const EnumLimits& limits, unsigned threads) {
    system.validate();
    if (twist.code == 0) throw ValidationError("additive character twist must be nonzero");
    check_work(enumeration_work(system, m), limits);

    // psi_b(f) = psi(b*f): scale at level 1, then embed once.
    PolySystem sys = system;
    MultiPoly scaled = f;
    for (auto& t : scaled.terms) t.coeff = system.tower->mul(t.coeff, twist);
    scaled.normalize(*system.tower);
    sys.polys = {std::move(scaled)};
    LevelContext ctx = embed_system(sys, m, limits);
    const FieldTower& T = *ctx.tower;

    // absolute-trace lookup per ambient code
    std::vector<std::uint8_t> tr(T.order());
    for (std::uint64_t c = 0; c < T.order(); ++c)
        tr[c] = std::uint8_t(T.abs_trace(Fe{std::uint32_t(c)}));

    Enumerator en(T, ctx.polys);
    const std::uint64_t p = T.p();
    auto chunks = run_chunked<std::vector<std::uint64_t>>(
        en.outer_size(), threads, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::uint64_t> hist(p, 0);
            en.run(lo, hi, [&](const std::vector<Fe>& vals) { ++hist[tr[vals[0].code]]; });
            return hist;
        });
    std::vector<Int> hist(p, 0);
    for (const auto& h : chunks)
        for (std::uint64_t c = 0; c < p; ++c) hist[c] += h[c];
    return hist;
}

}  // namespace pzeta
