#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "foelner/small_matrix.hpp"
#include "foelner/word.hpp"

namespace foelner {

struct L2Tolerances {
    double prune = 1e-15;  // amplitudes below this modulus are dropped
    double gram = 1e-10;   // entrywise Gram-vs-identity tolerance for frames
    double independence = 1e-8;
};

inline constexpr L2Tolerances kDefaultTolerances{};

// Finitely supported vector in l2(G). Entries are kept in shortlex order of
// their words, without zeros.
class L2Vec {
public:
    using Entry = std::pair<Word, Complex>;

    explicit L2Vec(GroupDescriptor descriptor) : descriptor_(descriptor) {}

    static L2Vec delta(const Word& w, Complex amplitude = 1.0);
    // Duplicate words are summed.
    static L2Vec from_entries(GroupDescriptor descriptor, std::vector<Entry> entries,
                              double prune = kDefaultTolerances.prune);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    std::size_t support_radius() const noexcept { return support_radius_; }
    bool is_zero() const noexcept { return entries_.empty(); }

    Complex amplitude(const Word& w) const;
    double norm_squared() const;
    double norm() const;

    L2Vec scaled(Complex factor) const;
    // this + factor * other
    L2Vec plus(const L2Vec& other, Complex factor = 1.0) const;

private:
    GroupDescriptor descriptor_;
    std::vector<Entry> entries_;
    std::size_t support_radius_ = 0;
};

// <u, v> = sum_w u(w) conj(v(w)); linear in u.
Complex inner_product(const L2Vec& u, const L2Vec& v);

// Finite linear combination sum_g c_g L_g of left translations.
class GroupAlgebraElement {
public:
    using Term = std::pair<Word, Complex>;

    GroupAlgebraElement(GroupDescriptor descriptor, std::vector<Term> terms);

    static GroupAlgebraElement translation(const Word& g, Complex coefficient = 1.0);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t operator_radius() const noexcept { return operator_radius_; }

    // Exactly one coefficient, of modulus 1: the operator is a unitary c*L_g.
    bool is_single_unitary() const;
    // tau(x): the coefficient of the identity word.
    Complex identity_coefficient() const;

    GroupAlgebraElement adjoint() const;

private:
    GroupDescriptor descriptor_;
    std::vector<Term> terms_;
    std::size_t operator_radius_ = 0;
};

// Left action on a vector. Refuses (HeadroomError) when the image could
// leave ball(ambient_radius); nothing is ever clipped.
L2Vec apply(const GroupAlgebraElement& op, const L2Vec& v, std::size_t ambient_radius);

// Ordered orthonormal columns spanning the range of a finite-rank
// projection e. Every column is supported in ball(ambient_radius - 1).
class Frame {
public:
    // Validates orthonormality and the support headroom.
    Frame(std::vector<L2Vec> columns, std::size_t ambient_radius,
          const L2Tolerances& tol = kDefaultTolerances);

    const GroupDescriptor& descriptor() const noexcept { return columns_.front().descriptor(); }
    const std::vector<L2Vec>& columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return columns_.size(); }
    std::size_t ambient_radius() const noexcept { return ambient_radius_; }
    std::size_t support_radius() const;

private:
    std::vector<L2Vec> columns_;
    std::size_t ambient_radius_;
};

SmallMatrix gram_matrix(std::span<const L2Vec> columns);

// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
// RankDeficiencyError naming the first dependent column.
Frame gram_schmidt(std::vector<L2Vec> raw, std::size_t ambient_radius,
                   const L2Tolerances& tol = kDefaultTolerances);

// A[q][p] = <U xi_p, xi_q>
SmallMatrix compress(const GroupAlgebraElement& u, const Frame& e);

struct CommutatorRatio {
    // ||Ue - eU||_HS / ||e||_HS from the rank-one expansion of Ue - eU in
    // the group basis.
    double direct = 0.0;
    // sqrt(2) sqrt(1 - tau_k(A^*A)), A = eUe; valid for unitary U only.
    double closed_form = 0.0;
};

CommutatorRatio commutator_ratio(const GroupAlgebraElement& u, const Frame& e);

// Closed form only, from an existing compression.
double commutator_ratio_from_compression(const SmallMatrix& a);

// |tau(U) - tau_k(eUe)|
double trace_defect(const GroupAlgebraElement& u, const Frame& e);
double trace_defect_from_compression(const GroupAlgebraElement& u, const SmallMatrix& a);

}  // namespace foelner
