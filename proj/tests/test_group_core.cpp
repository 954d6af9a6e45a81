#include <doctest.h>

#include <set>
#include <vector>

#include "foelner/errors.hpp"
#include "foelner/word.hpp"
#include "support.hpp"

using namespace foelner;
using namespace foelner::testing;

namespace {

Word reduce_letters(std::vector<Letter> letters) { return reduce(kF2, letters); }

constexpr Letter a{1, 1}, A{1, -1}, b{2, 1}, B{2, -1};

// Independent ball oracle: BFS over the Cayley graph, no ordering assumptions.
std::set<std::vector<int>> bfs_ball(GroupDescriptor d, int r) {
    std::vector<Word> gens;
    for (int i = 1; i <= d.rank; ++i) {
        gens.push_back(Word::generator(d, i, 1));
        gens.push_back(Word::generator(d, i, -1));
    }
    std::set<std::vector<int>> seen{Word(d).codes()};
    std::vector<Word> frontier{Word(d)};
    for (int step = 0; step < r; ++step) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (const Word& g : gens) {
                Word v = multiply(w, g);
                if (seen.insert(v.codes()).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
    CHECK(reduce_letters({a, A}).is_identity());
    CHECK(reduce_letters({a, b, B, a}) == reduce_letters({a, a}));
    CHECK(reduce_letters({a, b, B, a}).length() == 2);
    CHECK(reduce_letters({A, a, a}) == Word::generator(kF2, 1));
    CHECK(reduce_letters({a, b, A, a, B, A}).is_identity());
}

TEST_CASE("multiply") {
    CHECK(multiply(w2("a1.a2"), w2("A2.a1")) == w2("a1.a1"));
    CHECK(multiply(Word(kF2), w2("A1.a2.a2")) == w2("A1.a2.a2"));
    const Word u = Word::from_exponents(kZ2, {2, -1});
    const Word v = Word::from_exponents(kZ2, {-2, 3});
    CHECK(multiply(u, v) == Word::from_exponents(kZ2, {0, 2}));
    CHECK(multiply(u, v).length() == 2);
}

TEST_CASE("ball sizes") {
    CHECK(Ball(kF2, 2).size() == 17);
    CHECK(Ball(kF2, 0).size() == 1);
    CHECK(Ball(kF2, 0).elements().front().is_identity());
    CHECK(Ball(kZ2, 1).size() == 5);
    CHECK(Ball(kZ2, 3).size() == 25);
    CHECK(Ball(kZ1, 3).size() == 7);
}

TEST_CASE("free ball closed form matches enumeration for n <= 3, r <= 6") {
    for (int n = 1; n <= 3; ++n) {
        for (int r = 0; r <= (n == 3 ? 5 : 6); ++r) {
            const Ball ball(GroupDescriptor::free(n), r);
            CAPTURE(n);
            CAPTURE(r);
            CHECK(static_cast<long long>(ball.size()) == free_ball_size(n, r));
            if (r <= 4) CHECK(bfs_ball(GroupDescriptor::free(n), r).size() == ball.size());
        }
    }
    CHECK(free_ball_size(3, 6) == 1 + 6 * (15625 - 1) / 4);
}

TEST_CASE("ball is shortlex sorted and reproducible") {
    for (GroupDescriptor d : {kF2, GroupDescriptor::free(3), kZ2}) {
        const Ball ball(d, 3);
        for (std::size_t i = 1; i < ball.size(); ++i) {
            CHECK(shortlex_less(ball.elements()[i - 1], ball.elements()[i]));
            CHECK_FALSE(shortlex_less(ball.elements()[i], ball.elements()[i - 1]));
        }
        const Ball again(d, 3);
        for (std::size_t i = 0; i < ball.size(); ++i) {
            CHECK(ball.elements()[i].to_string() == again.elements()[i].to_string());
            CHECK(ball.index_of(ball.elements()[i]) == i);
        }
    }
    const Ball b1(kF2, 1);
    std::vector<std::string> names;
    for (const Word& w : b1.elements()) names.push_back(w.to_string());
    CHECK(names == std::vector<std::string>{"e", "a1", "A1", "a2", "A2"});
}

TEST_CASE("group axioms on ball(3)") {
    for (GroupDescriptor d : {kF2, kZ2}) {
        const Ball ball(d, d.is_free() ? 2 : 3);
        const Word e(d);
        for (const Word& u : ball.elements()) {
            CHECK(multiply(e, u) == u);
            CHECK(multiply(u, e) == u);
            CHECK(multiply(u, u.inverse()).is_identity());
            CHECK(multiply(u.inverse(), u).is_identity());
            for (const Word& v : ball.elements()) {
                const Word uv = multiply(u, v);
                CHECK(uv.length() <= u.length() + v.length());
                for (const Word& w : ball.elements()) {
                    if (multiply(uv, w) != multiply(u, multiply(v, w))) FAIL("associativity");
                }
            }
        }
    }
    // Associativity on all of ball(F2, 3), sampled against a stride to keep it fast.
    const Ball big(kF2, 3);
    for (std::size_t i = 0; i < big.size(); i += 3) {
        for (std::size_t j = 0; j < big.size(); j += 5) {
            for (std::size_t k = 0; k < big.size(); k += 7) {
                const Word& u = big.elements()[i];
                const Word& v = big.elements()[j];
                const Word& w = big.elements()[k];
                if (multiply(multiply(u, v), w) != multiply(u, multiply(v, w))) FAIL("associativity");
            }
        }
    }
}

TEST_CASE("begins_with") {
    CHECK(begins_with(w2("A1.a2"), A));
    CHECK_FALSE(begins_with(Word(kF2), a));
    CHECK_FALSE(begins_with(w2("a1.a2"), A));
    CHECK(begins_with(w2("a1.a2"), a));
}

TEST_CASE("parsing and printing") {
    CHECK(w2("e").is_identity());
    CHECK(w2("a1.A2").to_string() == "a1.A2");
    CHECK(w2("a1.A1.a2") == w2("a2"));
    CHECK(parse_word(kZ2, "(2,-1)") == Word::from_exponents(kZ2, {2, -1}));
    CHECK(Word::from_exponents(kZ2, {2, -1}).to_string() == "(2,-1)");
    CHECK(GroupDescriptor::parse("free:3") == GroupDescriptor::free(3));
    CHECK(GroupDescriptor::parse("abelian:2") == kZ2);
    CHECK(GroupDescriptor::parse("abelian:2").to_string() == "abelian:2");
    CHECK(parse_generator_list(kF2, "a1,a2").size() == 2);
    CHECK_THROWS_AS(parse_word(kF2, "a3"), PreconditionError);
    CHECK_THROWS_AS(parse_word(kF2, "x"), PreconditionError);
    CHECK_THROWS_AS(GroupDescriptor::parse("free:0"), PreconditionError);
    CHECK_THROWS_AS(GroupDescriptor::parse("cyclic:2"), PreconditionError);
    CHECK_THROWS_AS(Ball(kF2, -1), PreconditionError);
}

TEST_CASE("abelian order is by l1 length then exponent vector") {
    const Ball ball(kZ2, 1);
    CHECK(ball.elements().front().is_identity());
    for (std::size_t i = 1; i < ball.size(); ++i) CHECK(ball.elements()[i].length() == 1);
    CHECK(shortlex_less(Word::from_exponents(kZ2, {0, 5}), Word::from_exponents(kZ2, {3, 3})));
}

TEST_CASE("generator lists") {
    CHECK(parse_generator_list(kF2, "a1,a2") == std::vector<Word>{w2("a1"), w2("a2")});
    CHECK(parse_generator_list(kF2, "a1.a2,A1") == std::vector<Word>{w2("a1.a2"), w2("A1")});
    CHECK(parse_generator_list(kZ2, "(1,0),(0,1)") ==
          std::vector<Word>{Word::from_exponents(kZ2, {1, 0}), Word::from_exponents(kZ2, {0, 1})});
    CHECK_THROWS_AS(parse_generator_list(kF2, ""), PreconditionError);
    CHECK_THROWS_AS(parse_generator_list(kF2, "a1,,a2"), PreconditionError);
    CHECK_THROWS_AS(parse_generator_list(kF2, "a1,e"), PreconditionError);
}
