#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include <boost/rational.hpp>

#include "foelner/parallel.hpp"
#include "foelner/word.hpp"

namespace foelner {

using Rational = boost::rational<long long>;

// Finite subset of a marked group, kept sorted in shortlex order.
class ElementSet {
public:
    ElementSet(GroupDescriptor descriptor, std::vector<Word> members);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::vector<Word>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(const Word& w) const { return lookup_.count(w) != 0; }

    friend bool operator==(const ElementSet& a, const ElementSet& b) {
        return a.descriptor_ == b.descriptor_ && a.members_ == b.members_;
    }

private:
    GroupDescriptor descriptor_;
    std::vector<Word> members_;
    std::unordered_set<Word, WordHash> lookup_;
};

class GeneratingSet {
public:
    GeneratingSet(GroupDescriptor descriptor, std::vector<Word> generators);

    static GeneratingSet standard(GroupDescriptor descriptor);

    const GroupDescriptor& descriptor() const noexcept { return descriptor_; }
    const std::vector<Word>& generators() const noexcept { return generators_; }

    // X together with X^-1, duplicates removed, shortlex order.
    const std::vector<Word>& symmetric() const noexcept { return symmetric_; }

private:
    GroupDescriptor descriptor_;
    std::vector<Word> generators_;
    std::vector<Word> symmetric_;
};

struct BoundaryReport {
    std::size_t set_size = 0;
    std::size_t boundary_size = 0;
    Rational ratio;

    double ratio_float() const { return boost::rational_cast<double>(ratio); }
};

// Members a of A with a*x outside A for some x in X^{+-1}.
ElementSet interior_boundary(const ElementSet& a, const GeneratingSet& x);

BoundaryReport boundary_ratio(const ElementSet& a, const GeneratingSet& x);

struct SearchResult {
    struct Step {
        std::int64_t iteration = 0;
        std::size_t set_size = 0;
        std::size_t boundary_size = 0;
        Rational ratio;
    };

    ElementSet best;
    BoundaryReport report;
    std::vector<Step> history;
};

// Largest ball the exhaustive search accepts (2^22 candidate subsets).
inline constexpr std::size_t kExhaustiveCap = 22;

// Exact minimum of the boundary ratio over every non-empty subset of
// ball(radius). Ties go to the smaller set, then to the shortlex-first
// membership list.
SearchResult exhaustive_min_ratio(GroupDescriptor descriptor, const GeneratingSet& x, int radius,
                                  Execution exec = Execution::Parallel);

// Ratios of ball(1), ..., ball(r_max) by enumeration.
std::vector<BoundaryReport> ball_family_ratios(GroupDescriptor descriptor, const GeneratingSet& x,
                                               int r_max);

// Sphere/ball ratio for a free group of rank >= 1 with standard generators,
// from closed-form counts. Needs no enumeration, so r can be large.
Rational free_ball_ratio_closed_form(int rank, int radius);

struct LocalSearchConfig {
    int radius = 1;
    std::uint64_t seed = 0;
    std::int64_t iterations = 10000;
    // Temperature is measured in boundary cells: a move that changes the ratio
    // by d is weighed as d * |A|.
    double initial_temperature = 1.0;
    // Per-iteration factor. 0 picks the factor that ends at initial / 100.
    double decay = 0.0;
    // Defaults to {e} when empty.
    std::vector<Word> initial;
};

// Simulated annealing over subsets of ball(radius) by single-element insert
// and delete moves. Never empties the set. Deterministic for a fixed seed.
SearchResult local_search_min_ratio(GroupDescriptor descriptor, const GeneratingSet& x,
                                    const LocalSearchConfig& config);

}  // namespace foelner
