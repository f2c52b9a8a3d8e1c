#include "lagns/tridiag.hpp"

#include <string>

namespace lagns {

SingularSystemError::SingularSystemError(std::size_t row)
    : std::runtime_error("tridiagonal_solve: zero pivot at row " + std::to_string(row)),
      row_(row) {}

std::vector<double> tridiagonal_solve(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("tridiagonal_solve: empty diagonal");
    if (rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n) {
        throw std::invalid_argument("tridiagonal_solve: band length mismatch");
    }

    std::vector<double> c_prime(n - 1 > 0 ? n - 1 : 0);
    std::vector<double> d_prime(n);

    double pivot = diag[0];
    if (pivot == 0.0) throw SingularSystemError(0);
    if (n > 1) c_prime[0] = upper[0] / pivot;
    d_prime[0] = rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i - 1] * c_prime[i - 1];
        if (pivot == 0.0) throw SingularSystemError(i);
        if (i + 1 < n) c_prime[i] = upper[i] / pivot;
        d_prime[i] = (rhs[i] - lower[i - 1] * d_prime[i - 1]) / pivot;
    }

    std::vector<double> x(n);
    x[n - 1] = d_prime[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d_prime[i] - c_prime[i] * x[i + 1];
    }
    return x;
}

}  // namespace lagns
