#include "foelner/l2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foelner/errors.hpp"

namespace foelner {

namespace {

void require_same(const GroupDescriptor& a, const GroupDescriptor& b) {
    if (!(a == b)) {
        throw PreconditionError("descriptor mismatch: " + a.to_string() + " vs " + b.to_string());
    }
}

template <class Pair>
void sort_and_merge(std::vector<Pair>& items, double prune) {
    std::stable_sort(items.begin(), items.end(),
                     [](const Pair& x, const Pair& y) { return shortlex_less(x.first, y.first); });
    std::vector<Pair> merged;
    merged.reserve(items.size());
    for (auto& item : items) {
        if (!merged.empty() && merged.back().first == item.first) {
            merged.back().second += item.second;
        } else {
            merged.push_back(std::move(item));
        }
    }
    std::erase_if(merged, [prune](const Pair& p) { return std::abs(p.second) < prune; });
    items = std::move(merged);
}

}  // namespace

L2Vec L2Vec::delta(const Word& w, Complex amplitude) {
    return from_entries(w.descriptor(), {{w, amplitude}});
}

L2Vec L2Vec::from_entries(GroupDescriptor descriptor, std::vector<Entry> entries, double prune) {
    for (const auto& [w, a] : entries) require_same(descriptor, w.descriptor());
    sort_and_merge(entries, prune);
    L2Vec v(descriptor);
    v.entries_ = std::move(entries);
    for (const auto& [w, a] : v.entries_) v.support_radius_ = std::max(v.support_radius_, w.length());
    return v;
}

Complex L2Vec::amplitude(const Word& w) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                               [](const Entry& e, const Word& key) { return shortlex_less(e.first, key); });
    if (it != entries_.end() && it->first == w) return it->second;
    return {};
}

double L2Vec::norm_squared() const {
    double s = 0.0;
    for (const auto& [w, a] : entries_) s += std::norm(a);
    return s;
}

double L2Vec::norm() const { return std::sqrt(norm_squared()); }

L2Vec L2Vec::scaled(Complex factor) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [w, a] : entries_) out.emplace_back(w, a * factor);
    return from_entries(descriptor_, std::move(out));
}

L2Vec L2Vec::plus(const L2Vec& other, Complex factor) const {
    require_same(descriptor_, other.descriptor_);
    std::vector<Entry> out = entries_;
    out.reserve(entries_.size() + other.entries_.size());
    for (const auto& [w, a] : other.entries_) out.emplace_back(w, a * factor);
    return from_entries(descriptor_, std::move(out));
}

Complex inner_product(const L2Vec& u, const L2Vec& v) {
    require_same(u.descriptor(), v.descriptor());
    Complex s{};
    auto i = u.entries().begin();
    auto j = v.entries().begin();
    while (i != u.entries().end() && j != v.entries().end()) {
        if (shortlex_less(i->first, j->first)) {
            ++i;
        } else if (shortlex_less(j->first, i->first)) {
            ++j;
        } else {
            s += i->second * std::conj(j->second);
            ++i;
            ++j;
        }
    }
    return s;
}

GroupAlgebraElement::GroupAlgebraElement(GroupDescriptor descriptor, std::vector<Term> terms)
    : descriptor_(descriptor), terms_(std::move(terms)) {
    for (const auto& [g, c] : terms_) require_same(descriptor_, g.descriptor());
    sort_and_merge(terms_, 0.0);
    std::erase_if(terms_, [](const Term& t) { return t.second == Complex{}; });
    for (const auto& [g, c] : terms_) operator_radius_ = std::max(operator_radius_, g.length());
}

GroupAlgebraElement GroupAlgebraElement::translation(const Word& g, Complex coefficient) {
    return GroupAlgebraElement(g.descriptor(), {{g, coefficient}});
}

bool GroupAlgebraElement::is_single_unitary() const {
    return terms_.size() == 1 && std::abs(std::abs(terms_.front().second) - 1.0) < 1e-12;
}

Complex GroupAlgebraElement::identity_coefficient() const {
    for (const auto& [g, c] : terms_) {
        if (g.is_identity()) return c;
    }
    return {};
}

GroupAlgebraElement GroupAlgebraElement::adjoint() const {
    std::vector<Term> out;
    for (const auto& [g, c] : terms_) out.emplace_back(g.inverse(), std::conj(c));
    return GroupAlgebraElement(descriptor_, std::move(out));
}

L2Vec apply(const GroupAlgebraElement& op, const L2Vec& v, std::size_t ambient_radius) {
    require_same(op.descriptor(), v.descriptor());
    if (v.support_radius() + op.operator_radius() > ambient_radius) {
        throw HeadroomError("support radius " + std::to_string(v.support_radius()) +
                            " + operator radius " + std::to_string(op.operator_radius()) +
                            " exceeds ambient radius " + std::to_string(ambient_radius));
    }
    std::vector<L2Vec::Entry> out;
    out.reserve(op.terms().size() * v.support_size());
    for (const auto& [g, c] : op.terms()) {
        for (const auto& [w, a] : v.entries()) out.emplace_back(multiply(g, w), c * a);
    }
    return L2Vec::from_entries(v.descriptor(), std::move(out));
}

SmallMatrix gram_matrix(std::span<const L2Vec> columns) {
    SmallMatrix g(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) g(i, j) = inner_product(columns[j], columns[i]);
    }
    return g;
}

Frame::Frame(std::vector<L2Vec> columns, std::size_t ambient_radius, const L2Tolerances& tol)
    : columns_(std::move(columns)), ambient_radius_(ambient_radius) {
    if (columns_.empty()) throw PreconditionError("a frame needs at least one column");
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        require_same(columns_.front().descriptor(), columns_[i].descriptor());
        if (columns_[i].support_radius() + 1 > ambient_radius_) {
            throw HeadroomError("frame column " + std::to_string(i) + " has support radius " +
                                std::to_string(columns_[i].support_radius()) +
                                ", ambient radius " + std::to_string(ambient_radius_) +
                                " leaves no headroom");
        }
    }
    const SmallMatrix g = gram_matrix(columns_);
    const double dev = g.max_abs_diff(SmallMatrix::identity(columns_.size()));
    if (dev > tol.gram) {
        throw PreconditionError("frame columns are not orthonormal (max Gram deviation " +
                                std::to_string(dev) + ")");
    }
}

std::size_t Frame::support_radius() const {
    std::size_t r = 0;
    for (const auto& c : columns_) r = std::max(r, c.support_radius());
    return r;
}

Frame gram_schmidt(std::vector<L2Vec> raw, std::size_t ambient_radius, const L2Tolerances& tol) {
    std::vector<L2Vec> basis;
    basis.reserve(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        L2Vec v = std::move(raw[j]);
        const double original = v.norm();
        if (original == 0.0) {
            throw RankDeficiencyError(j, "column " + std::to_string(j) + " is zero");
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const L2Vec& q : basis) v = v.plus(q, -inner_product(v, q));
        }
        const double residual = v.norm();
        if (residual <= tol.independence * original) {
            throw RankDeficiencyError(j, "column " + std::to_string(j) +
                                             " is linearly dependent on the preceding columns");
        }
        basis.push_back(v.scaled(1.0 / residual));
    }
    return Frame(std::move(basis), ambient_radius, tol);
}

SmallMatrix compress(const GroupAlgebraElement& u, const Frame& e) {
    require_same(u.descriptor(), e.descriptor());
    const std::size_t k = e.rank();
    SmallMatrix a(k);
    for (std::size_t p = 0; p < k; ++p) {
        const L2Vec image = apply(u, e.columns()[p], e.ambient_radius());
        for (std::size_t q = 0; q < k; ++q) a(q, p) = inner_product(image, e.columns()[q]);
    }
    return a;
}

double commutator_ratio_from_compression(const SmallMatrix& a) {
    const double tau = a.frobenius_squared() / static_cast<double>(a.size());
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - tau)));
}

CommutatorRatio commutator_ratio(const GroupAlgebraElement& u, const Frame& e) {
    if (!u.is_single_unitary()) {
        throw PreconditionError("commutator ratio identity needs a single unitary c*L_g");
    }
    require_same(u.descriptor(), e.descriptor());
    const std::size_t k = e.rank();
    const std::size_t r = e.ambient_radius();
    const GroupAlgebraElement u_star = u.adjoint();

    // Ue - eU = sum_p (U xi_p) xi_p^* - xi_p (U^* xi_p)^* = sum_a left_a right_a^*
    std::vector<L2Vec> left, right;
    left.reserve(2 * k);
    right.reserve(2 * k);
    for (const L2Vec& xi : e.columns()) {
        left.push_back(apply(u, xi, r));
        right.push_back(xi);
    }
    for (const L2Vec& xi : e.columns()) {
        left.push_back(xi.scaled(-1.0));
        right.push_back(apply(u_star, xi, r));
    }
    // ||sum_a x_a y_a^*||_HS^2 = sum_{a,b} <x_a, x_b> <y_b, y_a>
    double hs2 = 0.0;
    for (std::size_t a = 0; a < 2 * k; ++a) {
        for (std::size_t b = 0; b < 2 * k; ++b) {
            hs2 += (inner_product(left[a], left[b]) * inner_product(right[b], right[a])).real();
        }
    }
    CommutatorRatio out;
    out.direct = std::sqrt(std::max(0.0, hs2) / static_cast<double>(k));
    out.closed_form = commutator_ratio_from_compression(compress(u, e));
    return out;
}

double trace_defect_from_compression(const GroupAlgebraElement& u, const SmallMatrix& a) {
    return std::abs(u.identity_coefficient() - a.normalized_trace());
}

double trace_defect(const GroupAlgebraElement& u, const Frame& e) {
    return trace_defect_from_compression(u, compress(u, e));
}

}  // namespace foelner
