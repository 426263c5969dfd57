#pragma once

#include "pzeta/poly.hpp"

#include <functional>

namespace pzeta {

// A system re-based at tower level m: coefficients embedded into the level-m
// ambient field, ready for enumeration.
struct LevelContext {
    std::shared_ptr<const FieldTower> tower;
    std::vector<MultiPoly> polys;
};

// Re-embeds level-1 coefficients via the given root of the level-1 defining
// polynomial (least root when absent). Counts are invariant under the choice.
LevelContext embed_system(const PolySystem& system, unsigned m, const EnumLimits& limits = {},
                          std::optional<Fe> root = std::nullopt);

struct CountSequence {
    PolySystem system;
    std::vector<Int> values;  // N_1..N_M
};

// Exact number of solutions with x_i ranging over F_{q_i^m}. Enumerates the
// product of subfield streams; the product size is checked against the work
// cap, the level-m ambient field against the ambient cap.
Int count_points(const PolySystem& system, unsigned m, const EnumLimits& limits = {},
                 unsigned threads = 1);

CountSequence count_sequence(const PolySystem& system, unsigned M, const EnumLimits& limits = {},
                             unsigned threads = 1);

// Number of points the enumeration for level m would visit.
Int enumeration_work(const PolySystem& system, unsigned m);

// Restriction of scalars: rewrites the system over F_p in a*(d_1+...+d_n)
// variables via power bases of the subfields; the F_p solution count equals
// N_1 of the input. Each output polynomial has degree <= w_p of its source.
PolySystem restrict_scalars(const PolySystem& system);

// Histogram over F_p of the absolute trace of b*f(x), x over the level-m
// subfield product. Used by the exponential-sum module.
std::vector<Int> abs_trace_histogram(const PolySystem& system, const MultiPoly& f, Fe twist,
                                     unsigned m, const EnumLimits& limits = {},
                                     unsigned threads = 1);

}  // namespace pzeta
