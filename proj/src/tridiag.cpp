#include "heatlab/tridiag.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

constexpr double kMinPivot = 1e-300;

void check_pivot(double pivot, std::size_t row) {
    if (!(std::abs(pivot) >= kMinPivot)) {
        throw SingularSystemError("zero pivot in tridiagonal elimination at row " + std::to_string(row));
    }
}

}  // namespace

std::vector<double> thomas_solve(const TridiagonalSystem& system, ThomasStats* stats) {
    const std::size_t m = system.diag.size();
    if (m == 0) throw std::invalid_argument("tridiagonal system must have at least one row");
    if (system.rhs.size() != m || system.lower.size() != m - 1 || system.upper.size() != m - 1) {
        throw std::invalid_argument("tridiagonal system has inconsistent band lengths");
    }

    // Modified superdiagonal and right-hand side.
    std::vector<double> c(m > 1 ? m - 1 : 0);
    std::vector<double> d(m);

    double pivot = system.diag[0];
    check_pivot(pivot, 0);
    if (m > 1) c[0] = system.upper[0] / pivot;
    d[0] = system.rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        pivot = system.diag[i] - system.lower[i - 1] * c[i - 1];
        check_pivot(pivot, i);
        if (i + 1 < m) c[i] = system.upper[i] / pivot;
        d[i] = (system.rhs[i] - system.lower[i - 1] * d[i - 1]) / pivot;
        if (stats) ++stats->eliminated_rows;
    }

    std::vector<double> x(m);
    x[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
        if (stats) ++stats->substituted_rows;
    }
    return x;
}

}  // namespace heatlab
