#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ncode/transform.hpp"
#include "oracles.hpp"

using namespace ncode;

namespace {

Code load(const std::string& name) {
    std::ifstream in(std::string(NCODE_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return Code::parse(buf.str());
}

} // namespace

TEST_CASE("transform construction and application") {
    Transform id = Transform::identity(3);
    CHECK(id.size() == 3);
    CHECK(id.sigma() == std::vector<int>{1, 2, 3});
    CHECK(id.flip_positions().empty());
    CHECK(id.apply(Word::parse("01*")).str() == "01*");

    Transform flip1({1, 2, 3}, {true, false, false});
    Code two = Code::from_strings({"00*", "*11"});
    Code image = apply_transform(two, flip1);
    CHECK(image.word(0).str() == "10*");
    CHECK(image.word(1).str() == "*11");

    Transform rev({3, 2, 1}, {false, false, false});
    image = apply_transform(two, rev);
    CHECK(image.word(0).str() == "*00");
    CHECK(image.word(1).str() == "11*");

    CHECK_THROWS_AS(Transform({1, 1}, {false, false}), Error);
    CHECK_THROWS_AS(Transform({0, 2}, {false, false}), Error);
    CHECK_THROWS_AS(Transform({1, 2}, {false}), Error);
    CHECK_THROWS_AS(Transform({}, {}), Error);
    CHECK_THROWS_AS(id.apply(Word::parse("01")), Error);
    CHECK_THROWS_AS(apply_transform(two, Transform::identity(4)), Error);
}

TEST_CASE("transform algebra") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Transform a = oracles::random_transform(rng, 5);
        Transform b = oracles::random_transform(rng, 5);
        Word w = oracles::random_word(rng, 5);

        CHECK(compose(a, b).apply(w) == a.apply(b.apply(w)));
        CHECK(a.inverse().apply(a.apply(w)) == w);
        CHECK(a.apply(a.inverse().apply(w)) == w);
        CHECK(compose(a, a.inverse()) == Transform::identity(5));
        CHECK(a.inverse().inverse() == a);
    }
    CHECK_THROWS_AS(
        compose(Transform::identity(2), Transform::identity(3)), Error);
}

TEST_CASE("transform text form") {
    CHECK(Transform::identity(3).str() == "sigma: 1,2,3; flips:");
    Transform t({2, 1, 3}, {false, true, true});
    CHECK(t.str() == "sigma: 2,1,3; flips: 2,3");
    CHECK(Transform::parse(t.str()) == t);
    CHECK(Transform::parse("sigma: 1,2,3; flips:") == Transform::identity(3));
    CHECK(Transform::parse(" sigma: 2,1,3 ; flips: 3 ") ==
          Transform({2, 1, 3}, {false, false, true}));

    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        Transform a = oracles::random_transform(rng, 6);
        CHECK(Transform::parse(a.str()) == a);
    }

    CHECK_THROWS_AS(Transform::parse("nonsense"), ParseError);
    CHECK_THROWS_AS(Transform::parse("sigma: 1,2; flips: 3"), ParseError);
    CHECK_THROWS_AS(Transform::parse("sigma: 1,x; flips:"), ParseError);
    CHECK_THROWS_AS(Transform::parse("sigma: 1,1; flips:"), Error);
}

TEST_CASE("pair invariants under transforms") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        Word u = oracles::random_word(rng, 5);
        Word v = oracles::random_word(rng, 5);
        if (u == v)
            continue;
        Transform t = oracles::random_transform(rng, 5);
        PairClass before = classify_pair(u, v);
        PairClass after = classify_pair(t.apply(u), t.apply(v));
        CHECK(before.kind == after.kind);
        // Dichotomy positions relabel through sigma.
        std::vector<int> relabeled;
        for (int i = 1; i <= 5; ++i)
            if (std::find(before.positions.begin(), before.positions.end(),
                          t.sigma()[static_cast<std::size_t>(i - 1)]) !=
                before.positions.end())
                relabeled.push_back(i);
        CHECK(after.positions == relabeled);
        CHECK(t.apply(u).weight() == u.weight());
    }
}

TEST_CASE("isomorphism search") {
    Code u = Code::from_strings({"00*", "*11"});
    Code w = Code::from_strings({"0*0", "*11"});
    auto t = are_isomorphic(u, w);
    REQUIRE(t.has_value());
    CHECK(t->sigma() == std::vector<int>{1, 3, 2});
    CHECK(t->flip_positions().empty());
    CHECK(apply_transform(u, *t).same_words(w));

    auto f = are_isomorphic(Code::from_strings({"00*"}),
                            Code::from_strings({"01*"}));
    REQUIRE(f.has_value());
    CHECK(f->flip_positions() == std::vector<int>{2});
    CHECK(apply_transform(Code::from_strings({"00*"}), *f)
              .same_words(Code::from_strings({"01*"})));

    // Twin counts differ: no transform can exist.
    CHECK_FALSE(are_isomorphic(Code::from_strings({"00*", "1*0"}),
                               Code::from_strings({"00*", "01*"}))
                    .has_value());
    // Star counts per word are preserved, so these cannot match either.
    CHECK_FALSE(are_isomorphic(Code::from_strings({"0*"}),
                               Code::from_strings({"01"}))
                    .has_value());

    CHECK_THROWS_AS(are_isomorphic(Code::from_strings({"00*"}),
                                   Code::from_strings({"00"})),
                    Error);
    CHECK_THROWS_AS(are_isomorphic(Code::from_strings({"00*"}),
                                   Code::from_strings({"00*", "1*0"})),
                    Error);

    // Any random image must be recognized, and the returned transform must
    // actually carry one code to the other.
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        Code c = oracles::random_neighborly_mixed(rng, 5, 4);
        Transform r = oracles::random_transform(rng, 5);
        Code image = apply_transform(c, r);
        auto found = are_isomorphic(c, image);
        REQUIRE(found.has_value());
        CHECK(apply_transform(c, *found).same_words(image));
    }
}

TEST_CASE("canonical form") {
    Code two = Code::from_strings({"00*", "*11"});
    CanonicalResult canon = canonical_form(two);
    CHECK(canon.code.str() == "00*\n1*0\n");
    CHECK(apply_transform(two, canon.transform).same_words(canon.code));
    CHECK_FALSE(is_canonical(two));
    CHECK(is_canonical(canon.code));

    // Idempotence.
    CHECK(canonical_form(canon.code).code.str() == canon.code.str());

    // Row order of the input is irrelevant.
    Code rev = Code::from_strings({"*11", "00*"});
    CHECK(canonical_form(rev).code.str() == canon.code.str());

    // Scale guard.
    Code wide(25, {Word(std::vector<Letter>(25, Letter::One))});
    CHECK_THROWS_AS(canonical_form(wide), Error);
    CHECK_THROWS_AS(is_canonical(wide), Error);
    CHECK_THROWS_AS(canonical_form(two, 2), Error);

    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        Code c = oracles::random_neighborly_mixed(rng, 4, 3);

        CanonicalResult got = canonical_form(c);
        CHECK(apply_transform(c, got.transform).same_words(got.code));
        CHECK(got.code.sorted_words() == got.code.words());

        // Full-enumeration oracle agreement.
        CanonicalResult brute = oracles::brute_canonical(c);
        CHECK(got.code.same_words(brute.code));

        // Constant on the orbit.
        Transform r = oracles::random_transform(rng, 4);
        Code image = apply_transform(c, r);
        CHECK(canonical_form(image).code.str() == got.code.str());
        CHECK(is_canonical(got.code));
    }
}

TEST_CASE("standard form of the seven-word code") {
    Code std7 = load("standard7.code");
    auto [out, info] = standardize(std7);
    CHECK(out.str() == std7.str());
    CHECK(info.transform == Transform::identity(6));
    CHECK(info.s == 4);
    CHECK(info.r == 5);
    CHECK(info.size_zero == 4);
    CHECK(info.size_one == 2);
    CHECK(info.size_star == 1);
    CHECK(in_standard_form(out));

    Partition p = partition_at(out, 1);
    CHECK(p.c0 == std::vector<int>{2, 3, 4});
    CHECK(p.c1 == std::vector<int>{5});
    CHECK(p.d == std::vector<int>{6});
}

TEST_CASE("standardize undoes a flipped first column") {
    Code std7 = load("standard7.code");
    Transform flip1({1, 2, 3, 4, 5, 6},
                    {true, false, false, false, false, false});
    Code flipped = apply_transform(std7, flip1);
    CHECK_FALSE(in_standard_form(flipped));

    auto [out, info] = standardize(flipped);
    CHECK(out.str() == std7.str());
    CHECK(info.transform == flip1);
    CHECK(info.s == 4);
    CHECK(info.r == 5);
    // C-block sizes (|C0|,|C1|,|D|) = (3,1,1).
    Partition p = partition_at(out, 1);
    CHECK(p.c0.size() == 3);
    CHECK(p.c1.size() == 1);
    CHECK(p.d.size() == 1);
}

TEST_CASE("standardize preconditions") {
    try {
        standardize(Code::from_strings({"00*", "*11"}));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SliceTooSmall);
    }
    CHECK_THROWS_AS(standardize(load("witness2.code")), Error);
    CHECK_THROWS_AS(standardize(Code::from_strings({"00", "11", "01"})),
                    Error);
}

// The argmax slice (smallest column, 0 before 1, strict improvements only)
// and whether it pairs with an opposite slice of size >= 2.
bool argmax_pair_feasible(const Code& v) {
    std::size_t best = 0, opposite = 0;
    for (int j = 1; j <= v.length(); ++j) {
        std::size_t cnt[2] = {slice(v, j, Letter::Zero).size(),
                              slice(v, j, Letter::One).size()};
        for (int e = 0; e < 2; ++e)
            if (cnt[e] > best) {
                best = cnt[e];
                opposite = cnt[1 - e];
            }
    }
    return best >= 2 && opposite >= 2;
}

TEST_CASE("standardize on transformed inputs") {
    Code std7 = load("standard7.code");
    std::mt19937_64 rng(36);
    int standardized = 0, rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Transform r = oracles::random_transform(rng, 6);
        Code scrambled = apply_transform(std7, r);

        // The scramble can move the second size-4 slice (opposite size 1)
        // ahead of the feasible one; then the precondition fails.
        if (!argmax_pair_feasible(scrambled)) {
            try {
                standardize(scrambled);
                FAIL("expected SliceTooSmall");
            } catch (const Error& e) {
                CHECK(e.code() == Errc::SliceTooSmall);
            }
            ++rejected;
            continue;
        }
        ++standardized;
        auto [out, info] = standardize(scrambled);

        std::string why;
        CHECK(in_standard_form(out, &why));
        CHECK(apply_transform(scrambled, info.transform).same_words(out));
        CHECK(are_isomorphic(out, std7).has_value());

        Partition p = partition_at(out, 1);
        CHECK(p.c0.front() == 2);
        CHECK(p.c0.back() == info.s);
        if (!p.c1.empty()) {
            CHECK(p.c1.front() == info.s + 1);
            CHECK(p.c1.back() == info.r);
        }
    }
    CHECK(standardized > 5);
    CHECK(rejected > 5);
}

TEST_CASE("standard form recognition") {
    Code std7 = load("standard7.code");
    CHECK(in_standard_form(std7));

    std::string why;
    CHECK_FALSE(in_standard_form(load("witness2.code"), &why));
    CHECK(why == "C^1_0 is empty");

    Transform flip1({1, 2, 3, 4, 5, 6},
                    {true, false, false, false, false, false});
    CHECK_FALSE(in_standard_form(apply_transform(std7, flip1), &why));
    CHECK(why.find("slice maximum") != std::string::npos);

    CHECK_FALSE(in_standard_form(Code::from_strings({"00", "11", "01"}), &why));
    CHECK(why == "not a neighborly code");
}
