#include <doctest.h>

#include <cmath>
#include <vector>

#include "foelner/connes.hpp"
#include "foelner/errors.hpp"
#include "foelner/paradox.hpp"
#include "support.hpp"

using namespace foelner;
using namespace foelner::testing;

namespace {

const PrefixSet kS = PrefixSet::begins_with(kF2, {1, -1});

L2Vec d2(std::string_view w) { return L2Vec::delta(w2(w)); }

}  // namespace

TEST_CASE("restriction norm") {
    CHECK(restriction_norm_squared(d2("A1"), kS, 3) == 1.0);
    CHECK(restriction_norm_squared(d2("e"), kS, 3) == 0.0);
    const L2Vec mix = d2("A1").plus(d2("a2")).scaled(1.0 / std::sqrt(2.0));
    CHECK(restriction_norm_squared(mix, kS, 3) == doctest::Approx(0.5));
    CHECK_THROWS_AS(restriction_norm_squared(d2("a1.a1.a1"), kS, 2), PreconditionError);
}

TEST_CASE("restriction and complement add up") {
    const Frame f = random_frame(kF2, 4, 4, 21);
    const PrefixSet comp = PrefixSet::complement(kS);
    for (const L2Vec& v : f.columns()) {
        CHECK(restriction_norm_squared(v, kS, 4) + restriction_norm_squared(v, comp, 4) ==
              doctest::Approx(v.norm_squared()).epsilon(1e-14));
    }
}

TEST_CASE("c values") {
    const Frame de({d2("e")}, 2);
    CHECK(c_value(de, kS) == 0.0);
    CHECK(c_value(de, PrefixSet::translate(w2("a1"), kS)) == 1.0);
    const Frame two({d2("A1"), d2("a2")}, 2);
    CHECK(c_value(two, kS) == doctest::Approx(0.5));
    CHECK(PrefixSet::translate(w2("a1"), kS).label() == "a1*S_A1");
}

TEST_CASE("set identities at radius 6") {
    const SetIdentityReport r = verify_set_identities(6);
    CHECK(r.translates_disjoint);
    CHECK(r.corrected_cover_exact);
    CHECK_FALSE(r.literal_cover_exact);
    CHECK(r.literal_gap_is_prefix_a);
    CHECK(r.literal_uncovered == static_cast<std::size_t>(free_ball_size(2, 5) - 1) / 4);
    CHECK(r.realization_matches_begins_with);
    for (int radius = 2; radius <= 5; ++radius) {
        const SetIdentityReport s = verify_set_identities(radius);
        CHECK(s.translates_disjoint);
        CHECK(s.corrected_cover_exact);
        CHECK(s.literal_gap_is_prefix_a);
    }
}

TEST_CASE("partition sums to one") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Frame f = random_frame(kF2, 1 + seed % 8, 2 + seed % 4, seed);
        const ParadoxReport r = chain_audit(f);
        CHECK(std::abs(r.partition_sum - 1.0) < 1e-12);
        CHECK(r.partition.size() == 5);
    }
}

TEST_CASE("displacement bound") {
    const Frame f = random_frame(kF2, 3, 3, 2);
    const DisplacementBound id = displacement_bound(f, GroupAlgebraElement::translation(Word(kF2)), kS);
    CHECK(id.measured == 0.0);
    CHECK(id.certified < 1e-7);

    const Frame w = build_witness_frame({2, 8, 6});
    const DisplacementBound b = displacement_bound(w, GroupAlgebraElement::translation(w2("a1")), kS);
    CHECK(b.holds);
    CHECK(b.measured <= b.certified);
    CHECK(b.certified <= b.triangle_bound + 1e-12);

    const Frame de({d2("e")}, 2);
    const DisplacementBound e = displacement_bound(de, GroupAlgebraElement::translation(w2("a1")), kS);
    CHECK(e.measured == 1.0);
    CHECK(e.certified == doctest::Approx(2.0 * std::sqrt(2.0)));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Frame g = random_frame(kF2, 1 + seed % 8, 3 + seed % 3, seed + 100);
        for (std::string_view u : {"a1", "a2", "A1", "A2"}) {
            for (const PrefixSet& s : {kS, PrefixSet::begins_with(kF2, {2, 1})}) {
                CHECK(displacement_bound(g, GroupAlgebraElement::translation(w2(u)), s).holds);
            }
        }
    }
}

TEST_CASE("thresholds and paper-mode replay") {
    const ContradictionThreshold t = contradiction_threshold();
    CHECK(t.derived == doctest::Approx(std::sqrt(2.0) / 24.0));
    CHECK(t.literal == doctest::Approx(1.0 / 7.0));
    CHECK(t.discrepancy);

    const LiteralModeTrace p = literal_mode_trace();
    CHECK(p.lower == Rational(41, 98));
    CHECK(p.upper == Rational(61, 147));
    CHECK(p.pivot == Rational(5, 12));
    CHECK(p.lower_exceeds_pivot);
    CHECK(p.upper_below_pivot);
}

TEST_CASE("chain audit") {
    const ParadoxReport w = chain_audit(build_witness_frame({2, 8, 6}));
    CHECK(w.verdict == ChainVerdict::Consistent);
    CHECK(std::abs(w.ratio_a - 1.25) < 1e-12);
    CHECK(to_string(w.verdict) == "consistent");
    CHECK_THROWS_AS(chain_audit(build_witness_frame({3, 2, 1})), PreconditionError);

    std::vector<Frame> frames;
    for (std::uint64_t s = 0; s < 16; ++s) frames.push_back(random_frame(kF2, 8, 4, s));
    const auto serial = chain_audit_batch(frames, Execution::Serial);
    const auto parallel = chain_audit_batch(frames, Execution::Parallel);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        CHECK(serial[i].verdict == parallel[i].verdict);
        CHECK(serial[i].partition_sum == parallel[i].partition_sum);
        CHECK(serial[i].verdict != ChainVerdict::Contradiction);
    }
}
