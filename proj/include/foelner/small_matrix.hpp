#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace foelner {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Sized for compressions eUe, so k
// stays small (the SVD accepts k <= 256).
class SmallMatrix {
public:
    SmallMatrix() = default;
    explicit SmallMatrix(std::size_t k) : k_(k), data_(k * k) {}

    static SmallMatrix identity(std::size_t k);

    std::size_t size() const noexcept { return k_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * k_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * k_ + col]; }

    SmallMatrix adjoint() const;
    SmallMatrix operator*(const SmallMatrix& rhs) const;
    SmallMatrix operator-(const SmallMatrix& rhs) const;

    // (1/k) Tr
    Complex normalized_trace() const;
    // sum |a_ij|^2 = Tr(A*A)
    double frobenius_squared() const;
    // ||A||_{tau_k} = sqrt((1/k) Tr(A*A))
    double tau_norm() const;

    double max_abs_diff(const SmallMatrix& other) const;

private:
    std::size_t k_ = 0;
    std::vector<Complex> data_;
};

struct Svd {
    SmallMatrix left;
    std::vector<double> singular_values;  // descending
    SmallMatrix right;
    int sweeps = 0;
};

inline constexpr std::size_t kSvdMaxSize = 256;
inline constexpr int kSvdMaxSweeps = 200;

// Cyclic one-sided Jacobi. A = left * diag(singular_values) * right^*.
// Both factors are unitary even when A is rank deficient.
Svd svd_small(const SmallMatrix& a);

struct NearestUnitary {
    SmallMatrix unitary;
    double distance = 0.0;  // ||A - W||_{tau_k}
};

// Polar factor of A: the unitary minimizing ||A - W||_{tau_k}.
NearestUnitary nearest_unitary(const SmallMatrix& a);

}  // namespace foelner
