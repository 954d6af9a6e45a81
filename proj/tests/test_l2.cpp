#include <doctest.h>

#include <cmath>
#include <vector>

#include "foelner/connes.hpp"
#include "foelner/errors.hpp"
#include "foelner/io.hpp"
#include "foelner/l2.hpp"
#include "foelner/random.hpp"
#include "support.hpp"

using namespace foelner;
using namespace foelner::testing;

namespace {

L2Vec d2(std::string_view w) { return L2Vec::delta(w2(w)); }
GroupAlgebraElement L(std::string_view w) { return GroupAlgebraElement::translation(w2(w)); }

Frame frame_of(std::vector<L2Vec> cols, std::size_t radius = 3) { return Frame(std::move(cols), radius); }

}  // namespace

TEST_CASE("inner product") {
    CHECK(inner_product(d2("a1"), d2("a1")) == Complex(1.0));
    CHECK(inner_product(d2("a1"), d2("a2")) == Complex(0.0));
    const L2Vec v = d2("a1").plus(d2("a2")).scaled(1.0 / std::sqrt(2.0));
    CHECK(std::abs(inner_product(v, d2("a1")) - 1.0 / std::sqrt(2.0)) < 1e-15);
    const L2Vec z = L2Vec::delta(w2("a1"), Complex(0, 1));
    CHECK(inner_product(z, d2("a1")) == Complex(0, 1));
    CHECK(inner_product(d2("a1"), z) == Complex(0, -1));
}

TEST_CASE("apply") {
    auto close = [](const L2Vec& x, const L2Vec& y) { return x.plus(y, -1.0).norm() < 1e-15; };
    CHECK(close(apply(L("a1"), d2("A1.a2"), 3), d2("a2")));
    CHECK(close(apply(L("a1"), d2("e"), 3), d2("a1")));
    const GroupAlgebraElement mix(kF2, {{w2("e"), 0.5}, {w2("a1"), 0.5}});
    CHECK(close(apply(mix, d2("e"), 3), d2("e").scaled(0.5).plus(d2("a1"), 0.5)));
    CHECK_THROWS_AS(apply(L("a1"), d2("a2.a2"), 2), HeadroomError);
    CHECK_NOTHROW(apply(L("a1"), d2("a2.a2"), 3));
}

TEST_CASE("gram schmidt") {
    const Frame f = gram_schmidt({d2("e"), d2("a1")}, 2);
    CHECK(f.columns()[0].plus(d2("e"), -1.0).norm() < 1e-15);
    CHECK(f.columns()[1].plus(d2("a1"), -1.0).norm() < 1e-15);

    const Frame g = gram_schmidt({d2("e"), d2("e").plus(d2("a1"))}, 2);
    CHECK(g.columns()[1].plus(d2("a1"), -1.0).norm() < 1e-15);

    try {
        gram_schmidt({d2("e"), d2("e").scaled(1.0 + 1e-12)}, 2);
        FAIL("expected rank deficiency");
    } catch (const RankDeficiencyError& err) {
        CHECK(err.column() == 1);
    }
}

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(Frame({d2("e"), d2("e")}, 2), PreconditionError);
    CHECK_THROWS_AS(Frame({d2("a1.a1")}, 2), HeadroomError);
    CHECK_NOTHROW(Frame({d2("a1")}, 2));
}

TEST_CASE("compress") {
    const SmallMatrix a = compress(L("a1"), frame_of({d2("e")}));
    CHECK(a.size() == 1);
    CHECK(a(0, 0) == Complex(0.0));

    const Frame f = random_frame(kF2, 4, 4, 11);
    CHECK(compress(L("e"), f).max_abs_diff(SmallMatrix::identity(4)) < 1e-12);

    const SmallMatrix b = compress(L("a1"), frame_of({d2("e"), d2("a1")}));
    CHECK(b.max_abs_diff([] {
        SmallMatrix m(2);
        m(1, 0) = 1.0;
        return m;
    }()) < 1e-15);
}

TEST_CASE("commutator ratio and trace defect examples") {
    const Frame de = frame_of({d2("e")});
    const CommutatorRatio r = commutator_ratio(L("a1"), de);
    CHECK(r.closed_form == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r.direct == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(trace_defect(L("a1"), de) == 0.0);

    const Frame f = random_frame(kF2, 5, 4, 3);
    CHECK(commutator_ratio(L("e"), f).closed_form < 1e-7);
    CHECK(commutator_ratio(L("e"), f).direct < 1e-7);
    CHECK(trace_defect(L("e"), f) < 1e-12);

    const Frame w = build_witness_frame({2, 8, 6});
    const CommutatorRatio rw = commutator_ratio(L("a1"), w);
    CHECK(std::abs(rw.closed_form - 1.25) <= 1e-12);
    CHECK(std::abs(rw.direct - 1.25) <= 1e-12);
    CHECK(trace_defect(L("a1"), w) < 1e-15);
    CHECK_THROWS_AS(commutator_ratio(GroupAlgebraElement(kF2, {{w2("e"), 0.5}, {w2("a1"), 0.5}}), de),
                    PreconditionError);
}

TEST_CASE("isometry and composition of translations") {
    Rng rng(5);
    const Ball pool(kF2, 2);
    for (int t = 0; t < 50; ++t) {
        std::vector<L2Vec::Entry> entries;
        for (int j = 0; j < 6; ++j) entries.emplace_back(pool.elements()[rng.below(pool.size())], rng.complex_gaussian());
        const L2Vec v = L2Vec::from_entries(kF2, entries);
        const Word g = pool.elements()[rng.below(5)];
        const Word h = pool.elements()[rng.below(5)];
        const auto lg = GroupAlgebraElement::translation(g);
        const auto lh = GroupAlgebraElement::translation(h);
        CHECK(std::abs(apply(lg, v, 4).norm() - v.norm()) < 1e-12);
        const L2Vec two_step = apply(lg, apply(lh, v, 4), 4);
        const L2Vec one_step = apply(GroupAlgebraElement::translation(multiply(g, h)), v, 4);
        CHECK(two_step.plus(one_step, -1.0).norm() < 1e-12);
    }
}

TEST_CASE("HS identity, ranges and adjoint compression on random frames") {
    const std::vector<std::string_view> names{"a1", "a2", "A1"};
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed);
        const std::size_t radius = 2 + rng.below(4);
        const std::size_t rank = 1 + rng.below(radius == 2 ? 5 : 8);
        const Frame f = random_frame(kF2, rank, radius, rng.next());
        for (auto name : names) {
            const auto u = L(name);
            const CommutatorRatio r = commutator_ratio(u, f);
            CHECK(std::abs(r.direct - r.closed_form) < 1e-9);
            CHECK(r.closed_form >= 0.0);
            CHECK(r.closed_form <= std::sqrt(2.0) + 1e-12);
            const double defect = trace_defect(u, f);
            CHECK(defect >= 0.0);
            CHECK(defect <= 2.0);

            const SmallMatrix a = compress(u, f);
            const SmallMatrix back = compress(GroupAlgebraElement::translation(w2(name).inverse()), f);
            CHECK(back.max_abs_diff(a.adjoint()) < 1e-10);
            CHECK(a.frobenius_squared() / static_cast<double>(rank) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("tau(A*A) = 1 exactly when the compression is unitary") {
    const Frame f = random_frame(kF2, 3, 3, 9);
    const SmallMatrix a = compress(L("e"), f);
    CHECK(a.frobenius_squared() / 3.0 == doctest::Approx(1.0).epsilon(1e-12));
    const SmallMatrix b = compress(L("a1"), f);
    CHECK(b.frobenius_squared() / 3.0 < 1.0);
}

TEST_CASE("json round trip") {
    const L2Vec v = d2("a1").plus(L2Vec::delta(w2("A2.a1"), Complex(0.25, -0.5)));
    const L2Vec back = l2vec_from_json(kF2, to_json(v));
    CHECK(back.plus(v, -1.0).norm() == 0.0);
    SmallMatrix m(2);
    m(0, 1) = Complex(1, 2);
    m(1, 0) = 3.0;
    CHECK(small_matrix_from_json(to_json(m)).max_abs_diff(m) == 0.0);
    const Frame f = random_frame(kF2, 2, 3, 1);
    CHECK(fingerprint(f) == fingerprint(random_frame(kF2, 2, 3, 1)));
    CHECK(fingerprint(f) != fingerprint(random_frame(kF2, 2, 3, 2)));
    CHECK(fingerprint(f).size() == 16);
}
