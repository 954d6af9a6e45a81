#include <doctest.h>

#include <algorithm>
#include <vector>

#include "foelner/errors.hpp"
#include "foelner/foelner_sets.hpp"
#include "support.hpp"

using namespace foelner;
using namespace foelner::testing;

namespace {

ElementSet ball_set(GroupDescriptor d, int r) { return ElementSet(d, Ball(d, r).elements()); }

ElementSet interval(int lo, int hi) {
    std::vector<Word> ws;
    for (int i = lo; i <= hi; ++i) ws.push_back(Word::from_exponents(kZ1, {i}));
    return ElementSet(kZ1, ws);
}

ElementSet box(int l) {
    std::vector<Word> ws;
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) ws.push_back(Word::from_exponents(kZ2, {i, j}));
    }
    return ElementSet(kZ2, ws);
}

// Oracle written straight from the definition.
std::size_t oracle_boundary(const std::vector<Word>& a, const std::vector<Word>& gens) {
    std::size_t count = 0;
    for (const Word& x : a) {
        bool escapes = false;
        for (const Word& g : gens) {
            for (const Word& s : {g, g.inverse()}) {
                const Word y = multiply(x, s);
                if (std::find(a.begin(), a.end(), y) == a.end()) escapes = true;
            }
        }
        if (escapes) ++count;
    }
    return count;
}

// Brute-force minimum over all non-empty subsets of ball(r), oracle arithmetic.
Rational oracle_min(GroupDescriptor d, const GeneratingSet& x, int r) {
    const std::vector<Word> elems = Ball(d, r).elements();
    Rational best(2);
    for (unsigned long mask = 1; mask < (1UL << elems.size()); ++mask) {
        std::vector<Word> a;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (mask >> i & 1UL) a.push_back(elems[i]);
        }
        best = std::min(best, Rational(static_cast<long long>(oracle_boundary(a, x.generators())),
                                       static_cast<long long>(a.size())));
    }
    return best;
}

}  // namespace

TEST_CASE("interior boundary examples") {
    const auto x = GeneratingSet::standard(kF2);
    const ElementSet b2 = ball_set(kF2, 2);
    const ElementSet bd = interior_boundary(b2, x);
    CHECK(bd.size() == 12);
    for (const Word& w : bd.members()) CHECK(w.length() == 2);

    const ElementSet iv = interior_boundary(interval(0, 9), GeneratingSet::standard(kZ1));
    CHECK(iv.members() == std::vector<Word>{Word::from_exponents(kZ1, {0}), Word::from_exponents(kZ1, {9})});

    const ElementSet single(kF2, {Word(kF2)});
    CHECK(interior_boundary(single, x) == single);
}

TEST_CASE("boundary ratio examples") {
    CHECK(boundary_ratio(ball_set(kF2, 2), GeneratingSet::standard(kF2)).ratio == Rational(12, 17));
    CHECK(boundary_ratio(interval(0, 9), GeneratingSet::standard(kZ1)).ratio == Rational(1, 5));
    CHECK(boundary_ratio(box(5), GeneratingSet::standard(kZ2)).ratio == Rational(16, 25));
    CHECK_THROWS_AS(boundary_ratio(ElementSet(kF2, {}), GeneratingSet::standard(kF2)), PreconditionError);
}

TEST_CASE("boundary agrees with the definition oracle") {
    for (GroupDescriptor d : {kF2, kZ2, GroupDescriptor::free(3)}) {
        const auto x = GeneratingSet::standard(d);
        const std::vector<Word> elems = Ball(d, 2).elements();
        for (std::size_t stride = 1; stride <= 4; ++stride) {
            std::vector<Word> a;
            for (std::size_t i = 0; i < elems.size(); i += stride) a.push_back(elems[i]);
            const ElementSet s(d, a);
            const ElementSet bd = interior_boundary(s, x);
            CHECK(bd.size() == oracle_boundary(a, x.generators()));
            for (const Word& w : bd.members()) CHECK(s.contains(w));
            CHECK_FALSE(bd.empty());
        }
    }
}

TEST_CASE("exhaustive search examples") {
    const auto x = GeneratingSet::standard(kF2);
    const SearchResult r1 = exhaustive_min_ratio(kF2, x, 1);
    CHECK(r1.report.ratio == Rational(4, 5));
    CHECK(r1.best.size() == 5);

    const SearchResult z = exhaustive_min_ratio(kZ1, GeneratingSet::standard(kZ1), 3);
    CHECK(z.report.ratio == Rational(2, 7));
    CHECK(z.best == interval(-3, 3));

    CHECK(oracle_min(kF2, x, 1) == r1.report.ratio);
    CHECK(oracle_min(kZ2, GeneratingSet::standard(kZ2), 2) ==
          exhaustive_min_ratio(kZ2, GeneratingSet::standard(kZ2), 2).report.ratio);
}

TEST_CASE("exhaustive minimum on ball(F2, 2) respects the free-group floor") {
    const SearchResult r = exhaustive_min_ratio(kF2, GeneratingSet::standard(kF2), 2);
    CHECK(r.report.ratio >= Rational(2, 3));
    CHECK(boundary_ratio(r.best, GeneratingSet::standard(kF2)).ratio == r.report.ratio);
}

TEST_CASE("serial and parallel exhaustive kernels agree") {
    for (GroupDescriptor d : {kF2, kZ2, kZ1}) {
        const auto x = GeneratingSet::standard(d);
        for (int r = 1; r <= 2; ++r) {
            const SearchResult s = exhaustive_min_ratio(d, x, r, Execution::Serial);
            const SearchResult p = exhaustive_min_ratio(d, x, r, Execution::Parallel);
            CHECK(s.report.ratio == p.report.ratio);
            CHECK(s.best == p.best);
        }
    }
}

TEST_CASE("exhaustive minimum is non-increasing in radius") {
    const auto x = GeneratingSet::standard(kZ1);
    Rational prev(2);
    for (int r = 1; r <= 8; ++r) {
        const Rational cur = exhaustive_min_ratio(kZ1, x, r).report.ratio;
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("exhaustive search rejects balls beyond the cap") {
    CHECK_THROWS_AS(exhaustive_min_ratio(kF2, GeneratingSet::standard(kF2), 3), PreconditionError);
}

TEST_CASE("monotone in the generating set") {
    const GeneratingSet small(kF2, {w2("a1")});
    const GeneratingSet large(kF2, {w2("a1"), w2("a2")});
    const std::vector<Word> elems = Ball(kF2, 2).elements();
    for (std::size_t stride = 1; stride <= 5; ++stride) {
        std::vector<Word> a;
        for (std::size_t i = 0; i < elems.size(); i += stride) a.push_back(elems[i]);
        const ElementSet s(kF2, a);
        const ElementSet bs = interior_boundary(s, small);
        const ElementSet bl = interior_boundary(s, large);
        for (const Word& w : bs.members()) CHECK(bl.contains(w));
        CHECK(boundary_ratio(s, small).ratio <= boundary_ratio(s, large).ratio);
    }
}

TEST_CASE("ball family") {
    const auto fam = ball_family_ratios(kF2, GeneratingSet::standard(kF2), 6);
    REQUIRE(fam.size() == 6);
    CHECK(fam[1].ratio == Rational(12, 17));
    for (int n = 1; n <= 3; ++n) {
        const GroupDescriptor d = GroupDescriptor::free(n);
        const auto f = ball_family_ratios(d, GeneratingSet::standard(d), n == 3 ? 5 : 6);
        for (std::size_t r = 0; r < f.size(); ++r) {
            CHECK(f[r].ratio == free_ball_ratio_closed_form(n, static_cast<int>(r) + 1));
            if (n >= 2) CHECK(f[r].ratio >= Rational(2 * n - 2, 2 * n - 1));
        }
    }
    CHECK(std::abs(boost::rational_cast<double>(free_ball_ratio_closed_form(2, 12)) - 2.0 / 3.0) < 1e-6);
    CHECK(std::abs(boost::rational_cast<double>(free_ball_ratio_closed_form(3, 12)) - 4.0 / 5.0) < 1e-6);

    const auto z = ball_family_ratios(kZ2, GeneratingSet::standard(kZ2), 20);
    CHECK(z.back().ratio_float() < 0.2);
    for (std::size_t r = 1; r < z.size(); ++r) CHECK(z[r].ratio < z[r - 1].ratio);
}

TEST_CASE("local search") {
    const auto x = GeneratingSet::standard(kZ2);
    LocalSearchConfig cfg;
    cfg.radius = 12;
    cfg.seed = 42;
    cfg.iterations = 10000;
    const SearchResult r = local_search_min_ratio(kZ2, x, cfg);
    REQUIRE_FALSE(r.history.empty());
    CHECK(r.history.front().ratio == Rational(1));
    CHECK(r.report.ratio <= Rational(16, 25));
    CHECK(boundary_ratio(r.best, x).ratio == r.report.ratio);

    const SearchResult again = local_search_min_ratio(kZ2, x, cfg);
    CHECK(again.best == r.best);
    CHECK(again.history.size() == r.history.size());

    LocalSearchConfig f;
    f.radius = 5;
    f.seed = 7;
    f.iterations = 10000;
    const SearchResult fr = local_search_min_ratio(kF2, GeneratingSet::standard(kF2), f);
    CHECK(fr.report.ratio >= Rational(2, 3));
    for (const auto& step : fr.history) CHECK(step.set_size >= 1);
}
