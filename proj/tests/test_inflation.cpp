#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ncode/inflation.hpp"
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

bool contains_code(const std::vector<Code>& list, const Code& c) {
    return std::any_of(list.begin(), list.end(),
                       [&](const Code& x) { return x.same_words(c); });
}

} // namespace

TEST_CASE("slice state") {
    Code two = Code::from_strings({"00*", "*11"});

    SliceState st = slice_state(two, 2);
    CHECK(st.position == 2);
    CHECK(st.vol0 == 2);
    CHECK(st.vol1 == 2);
    CHECK(st.state == AdvantageState::Balanced);

    st = slice_state(two, 3);
    CHECK(st.vol0 == 0);
    CHECK(st.vol1 == 2);
    CHECK(st.state == AdvantageState::OneAdvantage);

    st = slice_state(two, 1);
    CHECK(st.vol0 == 2);
    CHECK(st.vol1 == 0);
    CHECK(st.state == AdvantageState::ZeroAdvantage);

    CHECK_THROWS_AS(slice_state(two, 0), Error);
    CHECK_THROWS_AS(slice_state(two, 4), Error);

    CHECK(std::string(advantage_name(AdvantageState::ZeroAdvantage)) ==
          "0-advantage");
    CHECK(std::string(advantage_name(AdvantageState::OneAdvantage)) ==
          "1-advantage");
    CHECK(std::string(advantage_name(AdvantageState::Balanced)) == "balanced");
}

TEST_CASE("single inflation step") {
    Code two = Code::from_strings({"00*", "*11"});

    CHECK(inflate_at(two, 2, 0).str() == "0**\n");
    CHECK(inflate_at(two, 2, 1).str() == "**1\n");
    CHECK(inflate_at(two, 3, 1).str() == "00*\n*1*\n");

    try {
        inflate_at(two, 3, 0);
        FAIL("no throw");
    } catch (const InvalidChoiceError& e) {
        CHECK(e.code() == Errc::InvalidChoice);
        CHECK(e.position() == 3);
        CHECK(e.bit() == 0);
        CHECK(e.vol0() == 0);
        CHECK(e.vol1() == 2);
        CHECK(e.step() == 0);
    }

    CHECK_THROWS_AS(inflate_at(two, 0, 0), Error);
    CHECK_THROWS_AS(inflate_at(two, 2, 2), Error);

    // Volume never drops; it doubles the kept slice.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Code c = oracles::random_plain_code(rng, 5, 4);
        BigInt before = volume_unchecked(c);
        for (int i = 1; i <= c.length(); ++i) {
            SliceState st = slice_state(c, i);
            for (int bit = 0; bit < 2; ++bit) {
                const BigInt& kept = bit == 0 ? st.vol0 : st.vol1;
                const BigInt& dropped = bit == 0 ? st.vol1 : st.vol0;
                if (dropped > kept)
                    continue;
                Code next = inflate_at(c, i, bit);
                CHECK(volume_unchecked(next) >= before);
                CHECK(volume_unchecked(next) == before - dropped + kept);
                CHECK(oracles::raw_is_code(next) == oracles::raw_is_code(c));
            }
        }
    }
}

TEST_CASE("inflation runs on the seven-word code") {
    Code std7 = load("standard7.code");

    InflationResult a = inflate(std7, {1, 2, 3}, std::vector<int>{1, 0, 0});
    CHECK(a.code.str() == "****00\n****1*\n***001\n");
    CHECK(a.trace.step_states ==
          std::vector<AdvantageState>{AdvantageState::OneAdvantage,
                                      AdvantageState::Balanced,
                                      AdvantageState::Balanced});
    CHECK(a.trace.realized_delta == std::vector<int>{1, 0, 0});

    // Auto mode realizes the same deltas: advantage at step 1, then the
    // balanced tie-break default 0.
    InflationResult auto_run = inflate(std7, {1, 2, 3});
    CHECK(auto_run.code.str() == a.code.str());
    CHECK(auto_run.trace.realized_delta == std::vector<int>{1, 0, 0});

    InflationResult b = inflate(std7, {3, 2, 1}, std::vector<int>{0, 0, 0});
    CHECK(b.code.str() == "***1**\n***0*0\n***001\n");
    CHECK(b.trace.step_states ==
          std::vector<AdvantageState>{AdvantageState::ZeroAdvantage,
                                      AdvantageState::ZeroAdvantage,
                                      AdvantageState::Balanced});

    InflationResult c = inflate(std7, {3, 2, 1}, std::vector<int>{0, 0, 1});
    CHECK(c.code.same_words(a.code));

    // Per-word fates of the (3,2,1)/(0,0,0) run.
    const auto& fates = b.trace.fates;
    REQUIRE(fates.size() == 7);
    CHECK(fates[0].kind == WordFate::Kind::Removed);
    CHECK(fates[0].removed_step == 1);
    CHECK_FALSE(fates[0].modified_before_removal);
    CHECK(fates[0].final_word->str() == "0*1**0");

    CHECK(fates[1].kind == WordFate::Kind::Removed);
    CHECK(fates[1].removed_step == 2);
    CHECK(fates[1].modified_before_removal);
    CHECK(fates[1].final_word->str() == "01***0");

    CHECK(fates[2].kind == WordFate::Kind::Modified);
    CHECK(fates[2].final_word->str() == "***1**");
    CHECK(fates[3].kind == WordFate::Kind::Modified);
    CHECK(fates[3].final_word->str() == "***0*0");

    CHECK(fates[4].kind == WordFate::Kind::Removed);
    CHECK(fates[4].removed_step == 3);
    CHECK_FALSE(fates[4].modified_before_removal);
    CHECK(fates[5].kind == WordFate::Kind::Removed);
    CHECK(fates[5].removed_step == 3);

    CHECK(fates[6].kind == WordFate::Kind::Unmodified);
    CHECK(fates[6].final_word->str() == "***001");

    // A rejected step reports its 1-based index.
    try {
        inflate(std7, {1, 2, 3}, std::vector<int>{0, 0, 0});
        FAIL("no throw");
    } catch (const InvalidChoiceError& e) {
        CHECK(e.position() == 1);
        CHECK(e.step() == 1);
        CHECK(e.vol0() == 18);
        CHECK(e.vol1() == 24);
    }
}

TEST_CASE("inflation argument checking") {
    Code std7 = load("standard7.code");
    CHECK_THROWS_AS(inflate(std7, {1, 1}), Error);
    CHECK_THROWS_AS(inflate(std7, {0}), Error);
    CHECK_THROWS_AS(inflate(std7, {7}), Error);
    CHECK_THROWS_AS(inflate(std7, {1, 2}, std::vector<int>{0}), Error);
    CHECK_THROWS_AS(inflate(std7, {1}, std::vector<int>{2}), Error);
    InflateOptions bad;
    bad.balanced_tie_break = 2;
    CHECK_THROWS_AS(inflate(std7, {1}, std::nullopt, bad), Error);

    InflateOptions one;
    one.balanced_tie_break = 1;
    Code two = Code::from_strings({"00*", "*11"});
    CHECK(inflate(two, {2}, std::nullopt, one).code.str() == "**1\n");
    CHECK(inflate(two, {2}).code.str() == "0**\n");
}

TEST_CASE("auto traces replay exactly") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        Code c = oracles::random_neighborly_mixed(rng, 5, 4);
        std::vector<int> order{1, 2, 3, 4, 5};
        std::shuffle(order.begin(), order.end(), rng);
        order.resize(1 + rng() % 4);

        InflationResult first = inflate(c, order);
        InflationResult replay = inflate(c, order, first.trace.realized_delta);
        CHECK(replay.code.str() == first.code.str());
        CHECK(replay.trace.step_states == first.trace.step_states);

        // Fate bookkeeping is consistent with the output.
        std::size_t survivors = 0;
        for (std::size_t r = 0; r < c.size(); ++r) {
            const WordFate& f = first.trace.fates[r];
            if (f.kind == WordFate::Kind::Removed) {
                CHECK(f.removed_step.has_value());
                continue;
            }
            ++survivors;
            REQUIRE(f.final_word.has_value());
            CHECK(first.code.contains(*f.final_word));
            if (f.kind == WordFate::Kind::Unmodified)
                CHECK(*f.final_word == c.word(r));
            else
                CHECK_FALSE(*f.final_word == c.word(r));
        }
        CHECK(survivors == first.code.size());
        CHECK(volume_unchecked(first.code) >= volume_unchecked(c));
    }
}

TEST_CASE("inflation preserves neighborliness (exhaustive, small)") {
    oracles::for_each_neighborly_code(3, 3, [&](const Code& c) {
        for (unsigned mask = 1; mask < 8; ++mask) {
            std::vector<int> positions;
            for (int i = 0; i < 3; ++i)
                if (mask & (1u << i))
                    positions.push_back(i + 1);
            for (const Code& outcome : inflate_all(c, positions)) {
                CHECK(oracles::raw_is_code(outcome));
                CHECK(oracles::raw_is_neighborly(outcome));
                CHECK(volume_unchecked(outcome) >= volume_unchecked(c));
            }
        }
    });
}

TEST_CASE("inflation outcome enumeration") {
    Code two = Code::from_strings({"00*", "*11"});
    auto outcomes = inflate_all(two, {2});
    REQUIRE(outcomes.size() == 2);
    CHECK(contains_code(outcomes, Code::from_strings({"0**"})));
    CHECK(contains_code(outcomes, Code::from_strings({"**1"})));

    // Positions that are everywhere starred leave the code untouched.
    Code stars = Code::from_strings({"0**", "**1"});
    outcomes = inflate_all(stars, {2});
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].same_words(stars));

    // Both named runs over {1,2,3} appear among the outcomes and differ.
    Code std7 = load("standard7.code");
    outcomes = inflate_all(std7, {1, 2, 3});
    Code run1 = Code::from_strings({"****00", "****1*", "***001"});
    Code run2 = Code::from_strings({"***1**", "***0*0", "***001"});
    CHECK(contains_code(outcomes, run1));
    CHECK(contains_code(outcomes, run2));
    CHECK_FALSE(run1.same_words(run2));

    outcomes = inflate_all(std7, {2, 3, 4});
    CHECK(outcomes.size() >= 2);
    Code expected = Code::from_strings({"0*****", "1***00", "1***1*"});
    CHECK(contains_code(outcomes, expected));

    CHECK_THROWS_AS(inflate_all(std7, {1, 2}, 1), Error);
    CHECK_THROWS_AS(inflate_all(std7, {1, 1}), Error);
    CHECK_THROWS_AS(inflate_all(std7, {9}), Error);
}

TEST_CASE("structure corollary hypotheses") {
    Code std7 = load("standard7.code");
    CorollaryReport rep = verify_structure_corollary(std7);
    CHECK_FALSE(rep.hypotheses_met);
    CHECK(rep.unmet == std::vector<std::string>{"not a d-code"});
    CHECK(rep.inflation_set == std::vector<int>{2, 3, 4});
    CHECK_FALSE(rep.enumerated);
    CHECK_FALSE(rep.conclusions_hold);

    Code w2 = load("witness2.code");
    rep = verify_structure_corollary(w2);
    CHECK_FALSE(rep.hypotheses_met);
    CHECK(rep.unmet ==
          std::vector<std::string>{
              "not in standard form (C^1_0 is empty)", "M < 2"});
    CHECK(rep.d == 2);
    CHECK(rep.slack == 1);
    CHECK_FALSE(rep.enumerated);

    // With M >= 2 the slice-size hypothesis gets checked and fails.
    rep = verify_structure_corollary(Code::from_strings({"00*", "1*0"}));
    CHECK(rep.slack == 2);
    CHECK(std::find(rep.unmet.begin(), rep.unmet.end(), "|V^{1,0}| <= 9M") !=
          rep.unmet.end());

    rep = verify_structure_corollary(Code::from_strings({"00*", "01*"}));
    CHECK(std::find(rep.unmet.begin(), rep.unmet.end(), "has twin pairs") !=
          rep.unmet.end());

    rep = verify_structure_corollary(Code::from_strings({"00", "11", "01"}));
    CHECK(std::find(rep.unmet.begin(), rep.unmet.end(), "not neighborly") !=
          rep.unmet.end());
}

TEST_CASE("structure corollary forced enumeration") {
    Code std7 = load("standard7.code");
    CorollaryReport rep = verify_structure_corollary(std7, true);
    CHECK_FALSE(rep.hypotheses_met);
    CHECK(rep.enumerated);
    CHECK(rep.outcome_count >= 2);
    CHECK_FALSE(rep.all_outcomes_match);
    REQUIRE(rep.counterexample.has_value());
    Code expected = Code::from_strings({"0*****", "1***00", "1***1*"});
    CHECK_FALSE(rep.counterexample->same_words(expected));
    CHECK(rep.star_slice_nonempty);
    CHECK(rep.vol_strictly_increases);
    CHECK_FALSE(rep.conclusions_hold);

    // Forcing does nothing when the code is not even structurally standard.
    rep = verify_structure_corollary(load("witness2.code"), true);
    CHECK_FALSE(rep.enumerated);

    CHECK_THROWS_AS(verify_structure_corollary(std7, true, 2), Error);
}
