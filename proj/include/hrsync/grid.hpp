#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace hrsync {

/// Node-centred uniform mesh on [0, L]^dimension with boundary nodes
/// included. Node (i, j) sits at (i h, j h); storage is x-fastest.
class Grid {
public:
    Grid() : Grid(1, 3, 1.0) {}
    Grid(int dimension, int points_per_axis, double length_per_axis);

    int dimension() const { return dimension_; }
    int points_per_axis() const { return points_; }
    double length() const { return length_; }
    double spacing() const { return spacing_; }
    std::size_t point_count() const;
    double area() const;

    /// Trapezoidal quadrature weight of a node (half per boundary axis).
    double weight(std::size_t index) const;
    const std::vector<double>& weights() const { return *weights_; }

    /// Coordinate of a node along one axis.
    double coordinate(std::size_t index, int axis) const;

    bool operator==(const Grid& other) const
    {
        return dimension_ == other.dimension_ && points_ == other.points_ &&
               length_ == other.length_;
    }

private:
    int dimension_ = 1;
    int points_ = 3;
    double length_ = 1.0;
    double spacing_ = 0.5;
    std::shared_ptr<const std::vector<double>> weights_;
};

/// Throws std::invalid_argument for points < 3, non-positive length, or a
/// dimension other than 1 or 2.
Grid make_grid(int dimension, int points_per_axis, double length_per_axis);

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One scalar per grid node.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), values(g.point_count(), fill)
    {
    }
    ScalarField(const Grid& g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool all_finite() const;
};

/// Samples fn(x, y) at every node (y = 0 in 1D).
ScalarField sample_field(const Grid& grid,
                         const std::function<double(double, double)>& fn);

void require_same_grid(const Grid& expected, const ScalarField& f);

/// Second-order central differences with mirror ghost nodes at the
/// boundary; rows sum to zero.
ScalarField laplacian_apply(const Grid& grid, const ScalarField& f);

/// Thrown when the iterative Helmholtz solve hits its iteration cap.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), achieved_residual(residual),
          iterations(iterations)
    {
    }
    double achieved_residual;
    int iterations;
};

/// Relative residual target of helmholtz_solve.
inline constexpr double kHelmholtzTolerance = 1e-10;

/// Solves (I − γ Δ_h) x = rhs. Direct tridiagonal elimination in 1D,
/// conjugate gradients in the quadrature inner product in 2D.
ScalarField helmholtz_solve(const Grid& grid, double gamma,
                            const ScalarField& rhs);

/// Trapezoidal quadrature of f g over the domain.
double l2_inner(const Grid& grid, const ScalarField& f, const ScalarField& g);
double l2_norm_sq(const Grid& grid, const ScalarField& f);

/// Quadrature of |∇f|², centred differences inside, one-sided on the
/// boundary.
double h1_seminorm_sq(const Grid& grid, const ScalarField& f);

/// Solves a tridiagonal system; `lower[0]` and `upper[n-1]` are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

}  // namespace hrsync
