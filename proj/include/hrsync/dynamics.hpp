#pragma once

#include <array>
#include <cstddef>

#include "hrsync/grid.hpp"
#include "hrsync/model.hpp"

namespace hrsync {

/// Component order shared by PairState, rates and OdePoint.
enum Component : std::size_t { kU1 = 0, kV1, kW1, kU2, kV2, kW2 };
inline constexpr std::size_t kComponents = 6;

/// Six scalar values at one node (or a spatially homogeneous state).
using OdePoint = std::array<double, kComponents>;

/// (u1, v1, w1, u2, v2, w2) sampled on one grid. Rates use the same shape.
struct PairState {
    std::array<ScalarField, kComponents> fields;

    PairState() = default;
    explicit PairState(const Grid& grid, double fill = 0.0);

    const Grid& grid() const { return fields[0].grid; }
    std::size_t point_count() const { return fields[0].size(); }

    ScalarField& operator[](std::size_t c) { return fields[c]; }
    const ScalarField& operator[](std::size_t c) const { return fields[c]; }

    OdePoint at(std::size_t node) const;
    void set(std::size_t node, const OdePoint& y);

    bool all_finite() const;
    bool operator==(const PairState& other) const;
};

/// Every node carries the same six values.
PairState uniform_state(const Grid& grid, const OdePoint& y);

/// Exchanges neuron 1 and neuron 2.
PairState swap_neurons(const PairState& s);

/// U = u1 − u2, V = v1 − v2, W = w1 − w2.
struct DifferenceState {
    ScalarField U, V, W;
};
DifferenceState difference_state(const PairState& s);

/// Pointwise HR kinetics of both neurons without diffusion or coupling:
/// (a u² − b u³ + v − w + J, α − v − β u², q (u − c) − r w).
OdePoint reaction_rates(const Parameters& params, const OdePoint& y);

/// (p (u2 − u1), 0, 0, p (u1 − u2), 0, 0).
OdePoint coupling_rates(const Parameters& params, const OdePoint& y);

/// reaction_rates + coupling_rates: the right-hand side of the spatially
/// homogeneous six-dimensional ODE.
OdePoint local_rates(const Parameters& params, const OdePoint& y);

PairState reaction_rhs(const Parameters& params, const PairState& s);
PairState coupling_rhs(const Parameters& params, const PairState& s);

/// d Δ_h on the u-components plus reaction and coupling.
PairState full_rhs(const Grid& grid, const Parameters& params,
                   const PairState& s);

/// L² norms of the residuals of the difference equations for (U, V, W),
/// together with the sum of the norms of the terms in each equation so
/// callers can form a relative residual.
struct DifferenceResidual {
    double rU = 0.0, rV = 0.0, rW = 0.0;
    double scaleU = 0.0, scaleV = 0.0, scaleW = 0.0;

    /// max over equations of residual / term scale (0 when all terms vanish).
    double relative() const;
};

DifferenceResidual difference_residual(const Grid& grid,
                                       const Parameters& params,
                                       const PairState& s,
                                       const PairState& ds_dt);

}  // namespace hrsync
