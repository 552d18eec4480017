#include "hrsync/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace hrsync {

PairState::PairState(const Grid& grid, double fill)
{
    for (auto& f : fields) f = ScalarField(grid, fill);
}

OdePoint PairState::at(std::size_t node) const
{
    OdePoint y;
    for (std::size_t c = 0; c < kComponents; ++c) y[c] = fields[c][node];
    return y;
}

void PairState::set(std::size_t node, const OdePoint& y)
{
    for (std::size_t c = 0; c < kComponents; ++c) fields[c][node] = y[c];
}

bool PairState::all_finite() const
{
    return std::all_of(fields.begin(), fields.end(),
                       [](const ScalarField& f) { return f.all_finite(); });
}

bool PairState::operator==(const PairState& other) const
{
    for (std::size_t c = 0; c < kComponents; ++c) {
        if (!(fields[c].grid == other.fields[c].grid) ||
            fields[c].values != other.fields[c].values)
            return false;
    }
    return true;
}

PairState uniform_state(const Grid& grid, const OdePoint& y)
{
    PairState s;
    for (std::size_t c = 0; c < kComponents; ++c)
        s.fields[c] = ScalarField(grid, y[c]);
    return s;
}

PairState swap_neurons(const PairState& s)
{
    PairState out = s;
    for (std::size_t c = 0; c < 3; ++c) std::swap(out.fields[c], out.fields[c + 3]);
    return out;
}

DifferenceState difference_state(const PairState& s)
{
    const Grid& grid = s.grid();
    DifferenceState d{ScalarField(grid), ScalarField(grid), ScalarField(grid)};
    for (std::size_t k = 0; k < s.point_count(); ++k) {
        d.U[k] = s[kU1][k] - s[kU2][k];
        d.V[k] = s[kV1][k] - s[kV2][k];
        d.W[k] = s[kW1][k] - s[kW2][k];
    }
    return d;
}

OdePoint reaction_rates(const Parameters& P, const OdePoint& y)
{
    OdePoint rate;
    for (std::size_t n = 0; n < kComponents; n += 3) {
        const double u = y[n], v = y[n + 1], w = y[n + 2];
        rate[n] = P.a * u * u - P.b * u * u * u + v - w + P.J;
        rate[n + 1] = P.alpha - v - P.beta * u * u;
        rate[n + 2] = P.q * (u - P.c) - P.r * w;
    }
    return rate;
}

OdePoint coupling_rates(const Parameters& P, const OdePoint& y)
{
    const double exchange = P.p * (y[kU2] - y[kU1]);
    return {exchange, 0.0, 0.0, -exchange, 0.0, 0.0};
}

OdePoint local_rates(const Parameters& params, const OdePoint& y)
{
    OdePoint rate = reaction_rates(params, y);
    const OdePoint coupling = coupling_rates(params, y);
    rate[kU1] += coupling[kU1];
    rate[kU2] += coupling[kU2];
    return rate;
}

namespace {

template <typename Pointwise>
PairState map_nodes(const PairState& s, Pointwise&& fn)
{
    PairState out(s.grid());
    for (std::size_t k = 0; k < s.point_count(); ++k) out.set(k, fn(s.at(k)));
    return out;
}

}  // namespace

PairState reaction_rhs(const Parameters& params, const PairState& s)
{
    return map_nodes(s, [&](const OdePoint& y) { return reaction_rates(params, y); });
}

PairState coupling_rhs(const Parameters& params, const PairState& s)
{
    return map_nodes(s, [&](const OdePoint& y) { return coupling_rates(params, y); });
}

PairState full_rhs(const Grid& grid, const Parameters& params,
                   const PairState& s)
{
    for (const auto& f : s.fields) require_same_grid(grid, f);
    PairState rate =
        map_nodes(s, [&](const OdePoint& y) { return local_rates(params, y); });
    for (std::size_t c : {kU1, kU2}) {
        const ScalarField lap = laplacian_apply(grid, s[c]);
        for (std::size_t k = 0; k < lap.size(); ++k)
            rate[c][k] += params.d * lap[k];
    }
    return rate;
}

double DifferenceResidual::relative() const
{
    auto ratio = [](double r, double scale) {
        return scale > 0.0 ? r / scale : r;
    };
    return std::max({ratio(rU, scaleU), ratio(rV, scaleV), ratio(rW, scaleW)});
}

DifferenceResidual difference_residual(const Grid& grid,
                                       const Parameters& P,
                                       const PairState& s,
                                       const PairState& ds_dt)
{
    for (const auto& f : s.fields) require_same_grid(grid, f);
    for (const auto& f : ds_dt.fields) require_same_grid(grid, f);

    const DifferenceState diff = difference_state(s);
    const DifferenceState rate = difference_state(ds_dt);
    const ScalarField lapU = laplacian_apply(grid, diff.U);

    const std::size_t n = s.point_count();
    // Residual fields and one field per term, so each term's norm feeds the scale.
    ScalarField resU(grid), resV(grid), resW(grid);
    std::array<ScalarField, 7> termsU;
    std::array<ScalarField, 3> termsV, termsW;
    for (auto& t : termsU) t = ScalarField(grid);
    for (auto& t : termsV) t = ScalarField(grid);
    for (auto& t : termsW) t = ScalarField(grid);

    for (std::size_t k = 0; k < n; ++k) {
        const double u1 = s[kU1][k], u2 = s[kU2][k];
        const double U = diff.U[k], V = diff.V[k], W = diff.W[k];

        termsU[0][k] = rate.U[k];
        termsU[1][k] = -P.d * lapU[k];
        termsU[2][k] = -P.a * (u1 + u2) * U;
        termsU[3][k] = P.b * (u1 * u1 + u1 * u2 + u2 * u2) * U;
        termsU[4][k] = -V;
        termsU[5][k] = W;
        termsU[6][k] = 2.0 * P.p * U;

        termsV[0][k] = rate.V[k];
        termsV[1][k] = V;
        termsV[2][k] = P.beta * (u1 + u2) * U;

        termsW[0][k] = rate.W[k];
        termsW[1][k] = -P.q * U;
        termsW[2][k] = P.r * W;

        double sum = 0.0;
        for (const auto& t : termsU) sum += t[k];
        resU[k] = sum;
        resV[k] = termsV[0][k] + termsV[1][k] + termsV[2][k];
        resW[k] = termsW[0][k] + termsW[1][k] + termsW[2][k];
    }

    auto norm = [&](const ScalarField& f) { return std::sqrt(l2_norm_sq(grid, f)); };
    DifferenceResidual out;
    out.rU = norm(resU);
    out.rV = norm(resV);
    out.rW = norm(resW);
    for (const auto& t : termsU) out.scaleU += norm(t);
    for (const auto& t : termsV) out.scaleV += norm(t);
    for (const auto& t : termsW) out.scaleW += norm(t);
    return out;
}

}  // namespace hrsync
