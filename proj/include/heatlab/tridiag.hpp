#pragma once

#include <cstddef>
#include <vector>

namespace heatlab {

/// lower[i] multiplies x[i] in row i+1, upper[i] multiplies x[i+1] in row i.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    std::size_t size() const { return diag.size(); }
};

/// Per-call work counters, filled when a pointer is passed to thomas_solve.
struct ThomasStats {
    std::size_t eliminated_rows = 0;
    std::size_t substituted_rows = 0;
};

/// Forward elimination + back substitution, no pivoting.
/// Throws SingularSystemError when |pivot| < 1e-300 and std::invalid_argument
/// on inconsistent lengths.
std::vector<double> thomas_solve(const TridiagonalSystem& system, ThomasStats* stats = nullptr);

}  // namespace heatlab
