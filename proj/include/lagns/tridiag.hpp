#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lagns {

class SingularSystemError : public std::runtime_error {
public:
    explicit SingularSystemError(std::size_t row);
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

// Thomas algorithm for A x = rhs with A tridiagonal. diag and rhs have length
// n >= 1, lower and upper length n - 1. No pivoting: callers assemble
// diagonally dominant systems. A vanishing pivot raises SingularSystemError
// naming the row.
std::vector<double> tridiagonal_solve(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

}  // namespace lagns
