#include "foelner/paradox.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "foelner/errors.hpp"

namespace foelner {

PrefixSet::PrefixSet(GroupDescriptor descriptor, Kind kind, std::string label)
    : descriptor_(descriptor), kind_(kind), label_(std::move(label)) {
    if (!descriptor_.is_free()) throw PreconditionError("prefix sets live in free groups");
}

PrefixSet PrefixSet::identity(GroupDescriptor descriptor) {
    return PrefixSet(descriptor, Kind::Identity, "{e}");
}

PrefixSet PrefixSet::begins_with(GroupDescriptor descriptor, Letter letter) {
    const Word w = Word::generator(descriptor, letter.generator, letter.sign);
    PrefixSet s(descriptor, Kind::Prefix, "S_" + w.to_string());
    s.letter_ = letter;
    return s;
}

PrefixSet PrefixSet::translate(const Word& g, const PrefixSet& base) {
    if (!(g.descriptor() == base.descriptor_)) throw PreconditionError("translate: descriptor mismatch");
    PrefixSet s(base.descriptor_, Kind::Translate, g.to_string() + "*" + base.label_);
    s.shift_ = std::make_shared<const Word>(g.inverse());
    s.base_ = std::make_shared<const PrefixSet>(base);
    return s;
}

PrefixSet PrefixSet::complement(const PrefixSet& base) {
    PrefixSet s(base.descriptor_, Kind::Complement, "~" + base.label_);
    s.base_ = std::make_shared<const PrefixSet>(base);
    return s;
}

bool PrefixSet::contains(const Word& w) const {
    switch (kind_) {
        case Kind::Identity:
            return w.is_identity();
        case Kind::Prefix:
            return foelner::begins_with(w, letter_);
        case Kind::Translate:
            return base_->contains(multiply(*shift_, w));
        case Kind::Complement:
            return !base_->contains(w);
    }
    return false;
}

ElementSet PrefixSet::realize(int radius) const {
    const Ball b(descriptor_, radius);
    std::vector<Word> members;
    for (const Word& w : b.elements()) {
        if (contains(w)) members.push_back(w);
    }
    return ElementSet(descriptor_, std::move(members));
}

double restriction_norm_squared(const L2Vec& eta, const PrefixSet& s, std::size_t realization_radius) {
    if (eta.support_radius() > realization_radius) {
        throw PreconditionError("vector support radius " + std::to_string(eta.support_radius()) +
                                " escapes realization radius " + std::to_string(realization_radius));
    }
    double total = 0.0;
    for (const auto& [w, amp] : eta.entries()) {
        if (s.contains(w)) total += std::norm(amp);
    }
    return total;
}

double c_value(const Frame& e, const PrefixSet& s) {
    double total = 0.0;
    for (const L2Vec& xi : e.columns()) total += restriction_norm_squared(xi, s, e.ambient_radius());
    return total / static_cast<double>(e.rank());
}

SetIdentityReport verify_set_identities(int radius) {
    if (radius < 2) throw PreconditionError("set identities need radius >= 2");
    const GroupDescriptor d = GroupDescriptor::free(2);
    const Word a = Word::generator(d, 1);
    const Word b = Word::generator(d, 2);
    const Ball outer(d, radius);
    const Ball inner(d, radius - 1);

    SetIdentityReport rep;
    rep.radius = radius;
    rep.ball_size = inner.size();

    const PrefixSet s_sym = PrefixSet::begins_with(d, {1, -1});
    const ElementSet s_outer = s_sym.realize(radius);

    rep.realization_matches_begins_with = true;
    for (const Word& w : outer.elements()) {
        if (s_outer.contains(w) != foelner::begins_with(w, {1, -1})) rep.realization_matches_begins_with = false;
    }

    using WordSet = std::unordered_set<Word, WordHash>;
    auto translate_into_inner = [&](const Word& g) {
        WordSet out;
        for (const Word& w : s_outer.members()) {
            Word t = multiply(g, w);
            if (inner.contains(t)) out.insert(std::move(t));
        }
        return out;
    };
    WordSet s_inner;
    for (const Word& w : s_outer.members()) {
        if (inner.contains(w)) s_inner.insert(w);
    }
    const WordSet b_s = translate_into_inner(b);
    const WordSet binv_s = translate_into_inner(b.inverse());
    const WordSet a_s = translate_into_inner(a);

    auto disjoint = [](const WordSet& x, const WordSet& y) {
        return std::none_of(x.begin(), x.end(), [&](const Word& w) { return y.count(w) != 0; });
    };
    rep.translates_disjoint = disjoint(s_inner, b_s) && disjoint(s_inner, binv_s) && disjoint(b_s, binv_s);

    const ElementSet s_a = PrefixSet::begins_with(d, {1, 1}).realize(radius - 1);
    WordSet s_a_set(s_a.members().begin(), s_a.members().end());
    bool covered = true;
    for (const Word& w : inner.elements()) {
        if ((s_a_set.count(w) != 0) == (a_s.count(w) != 0)) covered = false;  // exactly one
    }
    rep.corrected_cover_exact = covered && disjoint(s_a_set, a_s);

    WordSet gap;
    for (const Word& w : inner.elements()) {
        if (s_inner.count(w) == 0 && a_s.count(w) == 0) gap.insert(w);
    }
    rep.literal_uncovered = gap.size();
    rep.literal_cover_exact = gap.empty();
    rep.literal_gap_is_prefix_a = gap == s_a_set;
    return rep;
}

DisplacementBound displacement_bound(const Frame& e, const GroupAlgebraElement& u, const PrefixSet& s) {
    if (!u.is_single_unitary()) throw PreconditionError("displacement bound needs a single unitary");
    if (!(u.descriptor() == e.descriptor())) throw PreconditionError("descriptor mismatch");
    const Word& g = u.terms().front().first;

    DisplacementBound out;
    const double c_s = c_value(e, s);
    out.inverse_shift = std::abs(c_value(e, PrefixSet::translate(g.inverse(), s)) - c_s);
    out.forward_shift = std::abs(c_s - c_value(e, PrefixSet::translate(g, s)));
    out.measured = std::max(out.inverse_shift, out.forward_shift);

    const SmallMatrix a = compress(u, e);
    const NearestUnitary w = nearest_unitary(a);
    out.unitary_distance = w.distance;

    // ||Ue - W||_{tau_k}^2 = (1/k) sum_p ||U xi_p - sum_q W_qp xi_q||^2
    const std::size_t k = e.rank();
    double total = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
        L2Vec diff = apply(u, e.columns()[p], e.ambient_radius());
        for (std::size_t q = 0; q < k; ++q) diff = diff.plus(e.columns()[q], -w.unitary(q, p));
        total += diff.norm_squared();
    }
    out.certified = 2.0 * std::sqrt(total / static_cast<double>(k));
    const double tau = a.frobenius_squared() / static_cast<double>(k);
    out.triangle_bound = 2.0 * (std::sqrt(std::max(0.0, 1.0 - tau)) + w.distance);
    out.holds = out.measured <= out.certified + 1e-12;
    return out;
}

ContradictionThreshold contradiction_threshold() {
    // Pincer needs B_a + B_b < 1/6 with B = 2 ||Ue - W|| -> 2 eps / sqrt(2).
    ContradictionThreshold t;
    t.derived = 1.0 / (6.0 * 2.0 * std::sqrt(2.0));
    t.literal = 1.0 / 7.0;
    t.discrepancy = t.derived < t.literal;
    return t;
}

std::string to_string(ChainVerdict v) {
    switch (v) {
        case ChainVerdict::Contradiction:
            return "contradiction";
        case ChainVerdict::Consistent:
            return "consistent";
        case ChainVerdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

LiteralModeTrace literal_mode_trace() {
    LiteralModeTrace t;
    const Rational bound(4, 49);
    t.lower = Rational(1, 2) - bound;
    t.upper = Rational(1, 3) + bound;
    t.pivot = Rational(5, 12);
    t.lower_exceeds_pivot = t.lower > t.pivot;
    t.upper_below_pivot = t.upper < t.pivot;
    return t;
}

ParadoxReport chain_audit(const Frame& e) {
    const GroupDescriptor d = e.descriptor();
    if (!(d == GroupDescriptor::free(2))) throw PreconditionError("chain audit runs in free:2");
    const Word a = Word::generator(d, 1);
    const Word b = Word::generator(d, 2);
    const auto la = GroupAlgebraElement::translation(a);
    const auto lb = GroupAlgebraElement::translation(b);

    ParadoxReport rep;
    const PrefixSet s_a = PrefixSet::begins_with(d, {1, 1});
    const PrefixSet s = PrefixSet::begins_with(d, {1, -1});
    for (const PrefixSet& p : {PrefixSet::identity(d), s_a, s, PrefixSet::begins_with(d, {2, 1}),
                               PrefixSet::begins_with(d, {2, -1})}) {
        rep.partition.push_back({p.label(), c_value(e, p)});
        rep.partition_sum += rep.partition.back().value;
    }
    const double c_s = c_value(e, s);
    const double c_as = c_value(e, PrefixSet::translate(a, s));
    const double c_ainv_s = c_value(e, PrefixSet::translate(a.inverse(), s));
    const double c_bs = c_value(e, PrefixSet::translate(b, s));
    const double c_binv_s = c_value(e, PrefixSet::translate(b.inverse(), s));
    rep.translates = {{"a1*S_A1", c_as}, {"A1*S_A1", c_ainv_s}, {"a2*S_A1", c_bs}, {"A2*S_A1", c_binv_s}};

    rep.ratio_a = commutator_ratio(la, e).closed_form;
    rep.ratio_b = commutator_ratio(lb, e).closed_form;
    rep.displacement_a = displacement_bound(e, la, s);
    rep.displacement_b = displacement_bound(e, lb, s);
    const double ba = rep.displacement_a.certified;
    const double bb = rep.displacement_b.certified;

    rep.pincer_lower = 0.5 - ba;
    rep.pincer_upper = 1.0 / 3.0 + bb;
    const double c_sa = rep.partition[1].value;
    rep.cover_branch = c_as >= c_sa ? "a1*S_A1" : "S_a1";
    const double triple_min = std::min({c_s, c_bs, c_binv_s});
    rep.triple_branch = triple_min == c_s ? "S_A1" : (triple_min == c_bs ? "a2*S_A1" : "A2*S_A1");

    constexpr double kSlack = 1e-12;
    const bool observed_ok = rep.displacement_a.holds && rep.displacement_b.holds &&
                             std::abs(rep.partition_sum - 1.0) <= 1e-9 &&
                             std::abs(c_s - c_as) <= ba + kSlack &&
                             std::abs(c_s - c_bs) <= bb + kSlack &&
                             std::abs(c_s - c_binv_s) <= bb + kSlack;
    if (!observed_ok) {
        rep.verdict = ChainVerdict::Inconclusive;
    } else if (ba + bb < 1.0 / 6.0) {
        rep.verdict = ChainVerdict::Contradiction;
    } else {
        rep.verdict = ChainVerdict::Consistent;
    }
    rep.literal = literal_mode_trace();
    return rep;
}

std::vector<ParadoxReport> chain_audit_batch(const std::vector<Frame>& frames, Execution exec) {
    std::vector<ParadoxReport> out(frames.size());
    for_each_index(frames.size(), exec, [&](std::size_t i) { out[i] = chain_audit(frames[i]); });
    return out;
}

}  // namespace foelner
