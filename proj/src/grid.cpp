#include "hrsync/grid.hpp"

#include <cmath>
#include <string>

namespace hrsync {

Grid::Grid(int dimension, int points_per_axis, double length_per_axis)
    : dimension_(dimension), points_(points_per_axis), length_(length_per_axis)
{
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("grid dimension must be 1 or 2");
    if (points_per_axis < 3)
        throw std::invalid_argument("grid needs at least 3 points per axis");
    if (!(length_per_axis > 0.0) || !std::isfinite(length_per_axis))
        throw std::invalid_argument("grid length must be positive");
    spacing_ = length_ / (points_ - 1);

    std::vector<double> axis(points_, spacing_);
    axis.front() = axis.back() = 0.5 * spacing_;
    if (dimension_ == 1) {
        weights_ = std::make_shared<const std::vector<double>>(std::move(axis));
    } else {
        std::vector<double> w(point_count());
        for (int j = 0; j < points_; ++j)
            for (int i = 0; i < points_; ++i)
                w[j * points_ + i] = axis[i] * axis[j];
        weights_ = std::make_shared<const std::vector<double>>(std::move(w));
    }
}

std::size_t Grid::point_count() const
{
    const auto n = static_cast<std::size_t>(points_);
    return dimension_ == 1 ? n : n * n;
}

double Grid::area() const
{
    return dimension_ == 1 ? length_ : length_ * length_;
}

double Grid::weight(std::size_t index) const { return weights_->at(index); }

double Grid::coordinate(std::size_t index, int axis) const
{
    const auto n = static_cast<std::size_t>(points_);
    const std::size_t i = axis == 0 ? index % n : index / n;
    return static_cast<double>(i) * spacing_;
}

Grid make_grid(int dimension, int points_per_axis, double length_per_axis)
{
    return Grid(dimension, points_per_axis, length_per_axis);
}

ScalarField::ScalarField(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v))
{
    if (values.size() != grid.point_count())
        throw GridMismatch("field length " + std::to_string(values.size()) +
                           " does not match grid point count " +
                           std::to_string(grid.point_count()));
}

bool ScalarField::all_finite() const
{
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

ScalarField sample_field(const Grid& grid,
                         const std::function<double(double, double)>& fn)
{
    ScalarField f(grid);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double x = grid.coordinate(k, 0);
        const double y = grid.dimension() == 2 ? grid.coordinate(k, 1) : 0.0;
        f[k] = fn(x, y);
    }
    return f;
}

void require_same_grid(const Grid& expected, const ScalarField& f)
{
    if (!(f.grid == expected) || f.size() != expected.point_count())
        throw GridMismatch("field is not defined on the expected grid");
}

namespace {

// Mirror-ghost second difference along one axis; `stride` steps between
// neighbouring nodes on that axis and `pos` is the node's index along it.
inline double second_difference(const double* f, int pos, int n,
                                std::size_t stride)
{
    const double centre = f[0];
    if (pos == 0) return 2.0 * (f[stride] - centre);
    if (pos == n - 1) return 2.0 * (*(f - stride) - centre);
    return f[stride] - 2.0 * centre + *(f - stride);
}

inline double one_sided_or_centred(const double* f, int pos, int n,
                                   std::size_t stride, double h)
{
    if (pos == 0) return (f[stride] - f[0]) / h;
    if (pos == n - 1) return (f[0] - *(f - stride)) / h;
    return (f[stride] - *(f - stride)) / (2.0 * h);
}

}  // namespace

ScalarField laplacian_apply(const Grid& grid, const ScalarField& f)
{
    require_same_grid(grid, f);
    const int n = grid.points_per_axis();
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    ScalarField out(grid);
    const double* src = f.values.data();
    if (grid.dimension() == 1) {
        for (int i = 0; i < n; ++i)
            out[i] = second_difference(src + i, i, n, 1) * inv_h2;
    } else {
        const auto row = static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const std::size_t k = j * row + i;
                out[k] = (second_difference(src + k, i, n, 1) +
                          second_difference(src + k, j, n, row)) *
                         inv_h2;
            }
        }
    }
    return out;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs)
{
    const std::size_t n = diag.size();
    std::vector<double> c_prime(n);
    std::vector<double> x(n);

    c_prime[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = 1.0 / (diag[i] - lower[i] * c_prime[i - 1]);
        c_prime[i] = i + 1 < n ? upper[i] * m : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) * m;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] -= c_prime[i] * x[i + 1];
    return x;
}

namespace {

ScalarField apply_helmholtz(const Grid& grid, double gamma,
                            const ScalarField& x)
{
    ScalarField out = laplacian_apply(grid, x);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = x[k] - gamma * out[k];
    return out;
}

ScalarField solve_1d(const Grid& grid, double gamma, const ScalarField& rhs)
{
    const int n = grid.points_per_axis();
    const double s = gamma / (grid.spacing() * grid.spacing());
    std::vector<double> lower(n, -s), diag(n, 1.0 + 2.0 * s), upper(n, -s);
    upper[0] = -2.0 * s;
    lower[n - 1] = -2.0 * s;
    return ScalarField(grid, solve_tridiagonal(lower, diag, upper, rhs.values));
}

ScalarField solve_cg(const Grid& grid, double gamma, const ScalarField& rhs)
{
    // (I − γΔ_h) is self-adjoint and positive definite in the quadrature
    // inner product, so CG runs in that inner product.
    const double rhs_norm = std::sqrt(l2_norm_sq(grid, rhs));
    ScalarField x(grid, 0.0);
    if (rhs_norm == 0.0) return x;

    ScalarField residual = rhs;
    ScalarField direction = rhs;
    double rr = rhs_norm * rhs_norm;
    const double target = kHelmholtzTolerance * rhs_norm;
    const int max_iter = 10 * static_cast<int>(grid.point_count());

    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::sqrt(rr) <= target) return x;
        const ScalarField Ad = apply_helmholtz(grid, gamma, direction);
        const double step = rr / l2_inner(grid, direction, Ad);
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] += step * direction[k];
            residual[k] -= step * Ad[k];
        }
        const double rr_next = l2_norm_sq(grid, residual);
        const double beta = rr_next / rr;
        for (std::size_t k = 0; k < x.size(); ++k)
            direction[k] = residual[k] + beta * direction[k];
        rr = rr_next;
    }
    if (std::sqrt(rr) <= target) return x;
    throw SolverError("Helmholtz CG did not converge: relative residual " +
                          std::to_string(std::sqrt(rr) / rhs_norm),
                      std::sqrt(rr) / rhs_norm, max_iter);
}

}  // namespace

ScalarField helmholtz_solve(const Grid& grid, double gamma,
                            const ScalarField& rhs)
{
    require_same_grid(grid, rhs);
    if (gamma < 0.0) throw std::invalid_argument("gamma must be non-negative");
    if (gamma == 0.0) return rhs;
    if (grid.dimension() == 1) return solve_1d(grid, gamma, rhs);
    return solve_cg(grid, gamma, rhs);
}

double l2_inner(const Grid& grid, const ScalarField& f, const ScalarField& g)
{
    require_same_grid(grid, f);
    require_same_grid(grid, g);
    const auto& w = grid.weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) sum += w[k] * f[k] * g[k];
    return sum;
}

double l2_norm_sq(const Grid& grid, const ScalarField& f)
{
    return l2_inner(grid, f, f);
}

double h1_seminorm_sq(const Grid& grid, const ScalarField& f)
{
    require_same_grid(grid, f);
    const int n = grid.points_per_axis();
    const double h = grid.spacing();
    const auto& w = grid.weights();
    const double* src = f.values.data();
    double sum = 0.0;
    if (grid.dimension() == 1) {
        for (int i = 0; i < n; ++i) {
            const double dx = one_sided_or_centred(src + i, i, n, 1, h);
            sum += w[i] * dx * dx;
        }
    } else {
        const auto row = static_cast<std::size_t>(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const std::size_t k = j * row + i;
                const double dx = one_sided_or_centred(src + k, i, n, 1, h);
                const double dy = one_sided_or_centred(src + k, j, n, row, h);
                sum += w[k] * (dx * dx + dy * dy);
            }
        }
    }
    return sum;
}

}  // namespace hrsync
