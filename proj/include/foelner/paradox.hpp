#pragma once

#include <memory>
#include <string>
#include <vector>

#include "foelner/connes.hpp"
#include "foelner/foelner_sets.hpp"
#include "foelner/l2.hpp"

namespace foelner {

// Symbolic subset of a free group built from prefix sets S_x (words that
// begin with the letter x), {e}, left translates and complements.
class PrefixSet {
public:
    static PrefixSet identity(GroupDescriptor descriptor);
    static PrefixSet begins_with(GroupDescriptor descriptor, Letter letter);
    static PrefixSet translate(const Word& g, const PrefixSet& base);
    static PrefixSet complement(const PrefixSet& base);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::string& label() const noexcept { return label_; }

    bool contains(const Word& w) const;

    // Members of ball(radius) that lie in the set.
    ElementSet realize(int radius) const;

private:
    enum class Kind { Identity, Prefix, Translate, Complement };

    PrefixSet(GroupDescriptor descriptor, Kind kind, std::string label);

    GroupDescriptor descriptor_;
    Kind kind_;
    std::string label_;
    Letter letter_{};
    std::shared_ptr<const Word> shift_;
    std::shared_ptr<const PrefixSet> base_;
};

// sum over g in S of |eta(g)|^2. The support of eta must lie in
// ball(realization_radius).
double restriction_norm_squared(const L2Vec& eta, const PrefixSet& s, std::size_t realization_radius);

// (1/k) sum_i ||xi_i||_S^2, realized inside the frame's ambient ball.
double c_value(const Frame& e, const PrefixSet& s);

struct SetIdentityReport {
    int radius = 0;
    std::size_t ball_size = 0;  // |ball(radius - 1)|
    bool translates_disjoint = false;
    bool corrected_cover_exact = false;
    bool literal_cover_exact = false;
    std::size_t literal_uncovered = 0;
    bool literal_gap_is_prefix_a = false;
    bool realization_matches_begins_with = false;
};

// Finite checks on ball(r - 1) with S = S_{a^-1} realized on ball(r):
// S, bS, b^-1 S pairwise disjoint; S_a and aS partition the ball; and the
// literal union S u aS, whose gap is reported.
SetIdentityReport verify_set_identities(int radius);

struct DisplacementBound {
    double inverse_shift = 0.0;  // |c_{g^-1 S} - c_S|
    double forward_shift = 0.0;  // |c_S - c_{g S}|
    double measured = 0.0;       // max of the two
    double certified = 0.0;      // 2 ||Ue - W||_{tau_k}
    double triangle_bound = 0.0; // 2 (sqrt(1 - tau_k(A^*A)) + ||A - W||_{tau_k})
    double unitary_distance = 0.0;
    bool holds = false;
};

DisplacementBound displacement_bound(const Frame& e, const GroupAlgebraElement& u, const PrefixSet& s);

struct ContradictionThreshold {
    double derived = 0.0;  // sqrt(2)/24
    double literal = 0.0;    // 1/7
    bool discrepancy = false;
};

// Largest epsilon for which both commutator ratios <= epsilon force the
// pincer c_S >= 1/2 - B_a, c_S <= 1/3 + B_b to be infeasible, with the
// displacement bounds taken honestly (B = sqrt(2) epsilon in the limit).
ContradictionThreshold contradiction_threshold();

enum class ChainVerdict { Contradiction, Consistent, Inconclusive };
std::string to_string(ChainVerdict v);

struct LiteralModeTrace {
    Rational lower;   // 1/2 - 4/49
    Rational upper;   // 1/3 + 4/49
    Rational pivot;   // 5/12
    bool lower_exceeds_pivot = false;
    bool upper_below_pivot = false;
};

LiteralModeTrace literal_mode_trace();

struct ParadoxReport {
    struct Entry {
        std::string label;
        double value = 0.0;
    };

    std::vector<Entry> partition;   // {e}, S_a, S_A, S_b, S_B
    std::vector<Entry> translates;  // aS, a^-1S, bS, b^-1S for S = S_{a^-1}
    double partition_sum = 0.0;

    double ratio_a = 0.0;
    double ratio_b = 0.0;
    DisplacementBound displacement_a;
    DisplacementBound displacement_b;

    // Honest pincer on c_S: lower = 1/2 - B_a, upper = 1/3 + B_b.
    double pincer_lower = 0.0;
    double pincer_upper = 0.0;
    std::string cover_branch;   // which of S_a, aS carries >= 1/2
    std::string triple_branch;  // which of S, bS, b^-1S carries <= 1/3

    ChainVerdict verdict = ChainVerdict::Inconclusive;
    LiteralModeTrace literal;
};

// Audits the paradoxical-decomposition argument on one frame in l2(F_2)
// for X = {L_a, L_b}.
ParadoxReport chain_audit(const Frame& e);

std::vector<ParadoxReport> chain_audit_batch(const std::vector<Frame>& frames,
                                             Execution exec = Execution::Parallel);

}  // namespace foelner
