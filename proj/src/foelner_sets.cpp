#include "foelner/foelner_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "foelner/errors.hpp"

namespace foelner {

namespace {

// Right-multiplication neighbours of each ball element; -1 marks a neighbour
// outside the ball.
struct Adjacency {
    std::vector<std::vector<long>> neighbors;
};

Adjacency build_adjacency(const Ball& b, const GeneratingSet& x) {
    Adjacency adj;
    adj.neighbors.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (const Word& s : x.symmetric()) {
            auto j = b.index_of(multiply(b.elements()[i], s));
            adj.neighbors[i].push_back(j ? static_cast<long>(*j) : -1L);
        }
    }
    return adj;
}

struct MaskTable {
    std::vector<std::uint32_t> neighbor_mask;
    std::vector<bool> escapes;
};

MaskTable build_masks(const Adjacency& adj) {
    MaskTable t;
    t.neighbor_mask.assign(adj.neighbors.size(), 0);
    t.escapes.assign(adj.neighbors.size(), false);
    for (std::size_t i = 0; i < adj.neighbors.size(); ++i) {
        for (long j : adj.neighbors[i]) {
            if (j < 0) {
                t.escapes[i] = true;
            } else {
                t.neighbor_mask[i] |= std::uint32_t{1} << j;
            }
        }
    }
    return t;
}

std::uint32_t boundary_count(const MaskTable& t, std::uint32_t mask) {
    std::uint32_t count = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        auto i = static_cast<std::size_t>(std::countr_zero(rest));
        if (t.escapes[i] || (t.neighbor_mask[i] & ~mask) != 0) ++count;
    }
    return count;
}

struct Candidate {
    std::uint32_t mask = 0;
    std::uint32_t boundary = 0;
    std::uint32_t size = 0;
};

// Membership lists are sorted ball indices; compare them lexicographically.
bool membership_less(std::uint32_t a, std::uint32_t b) {
    while (a != 0 && b != 0) {
        int ia = std::countr_zero(a);
        int ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// Total order: ratio, then size, then membership.
bool better(const Candidate& a, const Candidate& b) {
    if (b.size == 0) return a.size != 0;
    if (a.size == 0) return false;
    auto lhs = static_cast<std::uint64_t>(a.boundary) * b.size;
    auto rhs = static_cast<std::uint64_t>(b.boundary) * a.size;
    if (lhs != rhs) return lhs < rhs;
    if (a.size != b.size) return a.size < b.size;
    return membership_less(a.mask, b.mask);
}

Candidate scan_range(const MaskTable& t, std::uint64_t begin, std::uint64_t end) {
    Candidate best;
    for (std::uint64_t m = begin; m < end; ++m) {
        Candidate c{static_cast<std::uint32_t>(m), 0,
                    static_cast<std::uint32_t>(std::popcount(static_cast<std::uint32_t>(m)))};
        c.boundary = boundary_count(t, c.mask);
        if (better(c, best)) best = c;
    }
    return best;
}

Candidate scan_parallel(const MaskTable& t, std::uint64_t total) {
    const int workers = worker_count();
    std::vector<Candidate> partial(static_cast<std::size_t>(workers));
#pragma omp parallel for num_threads(workers) schedule(static)
    for (int w = 0; w < workers; ++w) {
        std::uint64_t begin = 1 + (total - 1) * static_cast<std::uint64_t>(w) / workers;
        std::uint64_t end = 1 + (total - 1) * static_cast<std::uint64_t>(w + 1) / workers;
        partial[static_cast<std::size_t>(w)] = scan_range(t, begin, end);
    }
    Candidate best;
    for (const auto& c : partial) {
        if (better(c, best)) best = c;
    }
    return best;
}

}  // namespace

ElementSet::ElementSet(GroupDescriptor descriptor, std::vector<Word> members)
    : descriptor_(descriptor), members_(std::move(members)) {
    for (const Word& w : members_) {
        if (!(w.descriptor() == descriptor_)) {
            throw PreconditionError("element " + w.to_string() + " does not belong to " +
                                    descriptor_.to_string());
        }
    }
    std::sort(members_.begin(), members_.end(), ShortlexLess{});
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    lookup_.insert(members_.begin(), members_.end());
}

GeneratingSet::GeneratingSet(GroupDescriptor descriptor, std::vector<Word> generators)
    : descriptor_(descriptor), generators_(std::move(generators)) {
    if (generators_.empty()) throw PreconditionError("generating set must be non-empty");
    for (const Word& g : generators_) {
        if (!(g.descriptor() == descriptor_)) {
            throw PreconditionError("generator " + g.to_string() + " does not belong to " +
                                    descriptor_.to_string());
        }
        symmetric_.push_back(g);
        symmetric_.push_back(g.inverse());
    }
    std::sort(symmetric_.begin(), symmetric_.end(), ShortlexLess{});
    symmetric_.erase(std::unique(symmetric_.begin(), symmetric_.end()), symmetric_.end());
}

GeneratingSet GeneratingSet::standard(GroupDescriptor descriptor) {
    return GeneratingSet(descriptor, standard_generators(descriptor));
}

ElementSet interior_boundary(const ElementSet& a, const GeneratingSet& x) {
    if (!(a.descriptor() == x.descriptor())) {
        throw PreconditionError("set and generating set live in different groups");
    }
    std::vector<Word> out;
    for (const Word& m : a.members()) {
        for (const Word& s : x.symmetric()) {
            if (!a.contains(multiply(m, s))) {
                out.push_back(m);
                break;
            }
        }
    }
    return ElementSet(a.descriptor(), std::move(out));
}

BoundaryReport boundary_ratio(const ElementSet& a, const GeneratingSet& x) {
    if (a.empty()) throw PreconditionError("boundary ratio of an empty set is undefined");
    BoundaryReport r;
    r.set_size = a.size();
    r.boundary_size = interior_boundary(a, x).size();
    r.ratio = Rational(static_cast<long long>(r.boundary_size), static_cast<long long>(r.set_size));
    return r;
}

SearchResult exhaustive_min_ratio(GroupDescriptor descriptor, const GeneratingSet& x, int radius,
                                  Execution exec) {
    if (!(descriptor == x.descriptor())) {
        throw PreconditionError("generating set lives in a different group");
    }
    Ball b(descriptor, radius);
    if (b.size() > kExhaustiveCap) {
        throw PreconditionError("exhaustive search over ball of size " + std::to_string(b.size()) +
                                " exceeds the cap of " + std::to_string(kExhaustiveCap));
    }
    const MaskTable table = build_masks(build_adjacency(b, x));
    const std::uint64_t total = std::uint64_t{1} << b.size();
    const Candidate best =
        exec == Execution::Serial ? scan_range(table, 1, total) : scan_parallel(table, total);

    std::vector<Word> members;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (best.mask & (std::uint32_t{1} << i)) members.push_back(b.elements()[i]);
    }
    SearchResult result{ElementSet(descriptor, std::move(members)), {}, {}};
    result.report.set_size = best.size;
    result.report.boundary_size = best.boundary;
    result.report.ratio = Rational(best.boundary, best.size);
    return result;
}

std::vector<BoundaryReport> ball_family_ratios(GroupDescriptor descriptor, const GeneratingSet& x,
                                               int r_max) {
    if (r_max < 1) throw PreconditionError("r_max must be >= 1");
    std::vector<BoundaryReport> out;
    for (int r = 1; r <= r_max; ++r) {
        Ball b(descriptor, r);
        out.push_back(boundary_ratio(ElementSet(descriptor, b.elements()), x));
    }
    return out;
}

Rational free_ball_ratio_closed_form(int rank, int radius) {
    if (rank < 1 || radius < 0) throw PreconditionError("need rank >= 1 and radius >= 0");
    if (radius == 0) return Rational(1);
    return Rational(free_sphere_size(rank, radius), free_ball_size(rank, radius));
}

SearchResult local_search_min_ratio(GroupDescriptor descriptor, const GeneratingSet& x,
                                    const LocalSearchConfig& config) {
    if (!(descriptor == x.descriptor())) {
        throw PreconditionError("generating set lives in a different group");
    }
    Ball b(descriptor, config.radius);
    const Adjacency adj = build_adjacency(b, x);
    const std::size_t n = b.size();

    std::vector<char> in_set(n, 0);
    std::vector<char> interior(n, 0);
    std::vector<std::size_t> members;
    std::vector<std::size_t> position(n, 0);
    std::size_t interior_count = 0;

    auto is_interior = [&](std::size_t i) {
        if (!in_set[i]) return false;
        for (long j : adj.neighbors[i]) {
            if (j < 0 || !in_set[static_cast<std::size_t>(j)]) return false;
        }
        return true;
    };
    auto refresh = [&](std::size_t i) {
        bool now = is_interior(i);
        if (now != static_cast<bool>(interior[i])) {
            interior[i] = now;
            if (now) {
                ++interior_count;
            } else {
                --interior_count;
            }
        }
    };
    auto toggle = [&](std::size_t i) {
        if (in_set[i]) {
            in_set[i] = 0;
            std::size_t p = position[i];
            members[p] = members.back();
            position[members[p]] = p;
            members.pop_back();
        } else {
            in_set[i] = 1;
            position[i] = members.size();
            members.push_back(i);
        }
        refresh(i);
        for (long j : adj.neighbors[i]) {
            if (j >= 0) refresh(static_cast<std::size_t>(j));
        }
    };
    auto boundary = [&] { return members.size() - interior_count; };

    std::vector<Word> start = config.initial;
    if (start.empty()) start.push_back(Word(descriptor));
    const ElementSet initial(descriptor, std::move(start));
    for (const Word& w : initial.members()) {
        auto idx = b.index_of(w);
        if (!idx) throw PreconditionError("initial element " + w.to_string() + " outside ball");
        toggle(*idx);
    }

    std::mt19937_64 rng(config.seed);
    auto uniform01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    SearchResult result{ElementSet(descriptor, {}), {}, {}};
    auto snapshot_best = [&] {
        std::vector<Word> ws;
        for (std::size_t i : members) ws.push_back(b.elements()[i]);
        result.best = ElementSet(descriptor, std::move(ws));
        result.report.set_size = members.size();
        result.report.boundary_size = boundary();
        result.report.ratio =
            Rational(static_cast<long long>(boundary()), static_cast<long long>(members.size()));
    };
    snapshot_best();
    result.history.push_back({0, members.size(), boundary(), result.report.ratio});

    double temperature = config.initial_temperature;
    const double decay = config.decay > 0.0 ? config.decay
                         : config.iterations > 0 ? std::pow(0.01, 1.0 / static_cast<double>(config.iterations))
                                                 : 1.0;
    const std::size_t nsym = x.symmetric().size();
    for (std::int64_t it = 1; it <= config.iterations; ++it, temperature *= decay) {
        const double before =
            static_cast<double>(boundary()) / static_cast<double>(members.size());
        std::size_t target = 0;
        if (rng() & 1) {
            // Walk from a random member in a random direction to the first cell outside.
            const std::size_t dir = pick(nsym);
            long j = adj.neighbors[members[pick(members.size())]][dir];
            while (j >= 0 && in_set[static_cast<std::size_t>(j)]) j = adj.neighbors[static_cast<std::size_t>(j)][dir];
            if (j < 0) continue;
            target = static_cast<std::size_t>(j);
        } else {
            if (members.size() <= 1) continue;
            target = members[pick(members.size())];
        }
        toggle(target);
        const double after = static_cast<double>(boundary()) / static_cast<double>(members.size());
        // Ratio changes shrink like 1/|A|; the temperature is in boundary-cell units.
        const double scaled = (after - before) * static_cast<double>(members.size());
        const bool accept = after <= before ||
                            (temperature > 0 && uniform01() < std::exp(-scaled / temperature));
        if (!accept) {
            toggle(target);
            continue;
        }
        Rational ratio(static_cast<long long>(boundary()), static_cast<long long>(members.size()));
        result.history.push_back({it, members.size(), boundary(), ratio});
        if (ratio < result.report.ratio ||
            (ratio == result.report.ratio && members.size() < result.report.set_size)) {
            snapshot_best();
        }
    }
    return result;
}

}  // namespace foelner
