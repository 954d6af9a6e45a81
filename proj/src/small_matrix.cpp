#include "foelner/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "foelner/errors.hpp"

namespace foelner {

SmallMatrix SmallMatrix::identity(std::size_t k) {
    SmallMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
    return m;
}

SmallMatrix SmallMatrix::adjoint() const {
    SmallMatrix out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& rhs) const {
    if (rhs.k_ != k_) throw PreconditionError("matrix size mismatch");
    SmallMatrix out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t l = 0; l < k_; ++l) {
            const Complex a = (*this)(i, l);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < k_; ++j) out(i, j) += a * rhs(l, j);
        }
    }
    return out;
}

SmallMatrix SmallMatrix::operator-(const SmallMatrix& rhs) const {
    if (rhs.k_ != k_) throw PreconditionError("matrix size mismatch");
    SmallMatrix out(k_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

Complex SmallMatrix::normalized_trace() const {
    Complex t{};
    for (std::size_t i = 0; i < k_; ++i) t += (*this)(i, i);
    return k_ == 0 ? t : t / static_cast<double>(k_);
}

double SmallMatrix::frobenius_squared() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return s;
}

double SmallMatrix::tau_norm() const {
    return k_ == 0 ? 0.0 : std::sqrt(frobenius_squared() / static_cast<double>(k_));
}

double SmallMatrix::max_abs_diff(const SmallMatrix& other) const {
    if (other.k_ != k_) throw PreconditionError("matrix size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

namespace {

double column_norm_squared(const SmallMatrix& m, std::size_t col) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += std::norm(m(i, col));
    return s;
}

// Fill the columns flagged in `missing` with an orthonormal completion built
// from the standard basis.
void complete_columns(SmallMatrix& u, const std::vector<bool>& missing) {
    const std::size_t k = u.size();
    std::size_t candidate = 0;
    for (std::size_t col = 0; col < k; ++col) {
        if (!missing[col]) continue;
        while (candidate < k) {
            std::vector<Complex> v(k);
            v[candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < k; ++j) {
                    if (missing[j] && j >= col) continue;
                    Complex dot{};
                    for (std::size_t i = 0; i < k; ++i) dot += std::conj(u(i, j)) * v[i];
                    for (std::size_t i = 0; i < k; ++i) v[i] -= dot * u(i, j);
                }
            }
            double n = 0.0;
            for (const Complex& z : v) n += std::norm(z);
            n = std::sqrt(n);
            if (n > 0.5) {
                for (std::size_t i = 0; i < k; ++i) u(i, col) = v[i] / n;
                break;
            }
        }
    }
}

}  // namespace

Svd svd_small(const SmallMatrix& a) {
    const std::size_t k = a.size();
    if (k == 0) throw PreconditionError("svd of an empty matrix");
    if (k > kSvdMaxSize) throw PreconditionError("svd_small accepts k <= 256");

    SmallMatrix b = a;
    SmallMatrix v = SmallMatrix::identity(k);
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol = eps * static_cast<double>(k);
    // Columns below this squared norm are numerically zero and never rotated.
    const double floor2 = std::pow(eps * std::sqrt(a.frobenius_squared()), 2);

    int sweep = 0;
    for (bool rotated = true; rotated; ++sweep) {
        if (sweep >= kSvdMaxSweeps) throw ConvergenceError("one-sided Jacobi did not converge");
        rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t i = 0; i < k; ++i) {
                    alpha += std::norm(b(i, p));
                    beta += std::norm(b(i, q));
                    gamma += std::conj(b(i, p)) * b(i, q);
                }
                const double g = std::abs(gamma);
                if (alpha <= floor2 || beta <= floor2 || g <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;

                const Complex phase = std::conj(gamma) / g;  // e^{-i arg gamma}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                auto rotate = [&](SmallMatrix& m) {
                    for (std::size_t i = 0; i < k; ++i) {
                        const Complex xp = m(i, p);
                        const Complex xq = m(i, q) * phase;
                        m(i, p) = c * xp - s * xq;
                        m(i, q) = s * xp + c * xq;
                    }
                };
                rotate(b);
                rotate(v);
            }
        }
    }

    std::vector<double> sigma(k);
    for (std::size_t j = 0; j < k; ++j) sigma[j] = std::sqrt(column_norm_squared(b, j));
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd out{SmallMatrix(k), std::vector<double>(k), SmallMatrix(k), sweep};
    const double cutoff = 1e-13 * std::max(1.0, sigma[order[0]]);
    std::vector<bool> missing(k, false);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = sigma[src];
        for (std::size_t i = 0; i < k; ++i) out.right(i, j) = v(i, src);
        if (sigma[src] > cutoff) {
            for (std::size_t i = 0; i < k; ++i) out.left(i, j) = b(i, src) / sigma[src];
        } else {
            missing[j] = true;
        }
    }
    if (std::find(missing.begin(), missing.end(), true) != missing.end()) {
        complete_columns(out.left, missing);
    }
    return out;
}

NearestUnitary nearest_unitary(const SmallMatrix& a) {
    Svd s = svd_small(a);
    NearestUnitary out;
    out.unitary = s.left * s.right.adjoint();
    double d = 0.0;
    for (double sv : s.singular_values) d += (1.0 - sv) * (1.0 - sv);
    out.distance = std::sqrt(d / static_cast<double>(a.size()));
    return out;
}

}  // namespace foelner
