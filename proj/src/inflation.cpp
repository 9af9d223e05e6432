#include "ncode/inflation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ncode/transform.hpp"

namespace ncode {

const char* advantage_name(AdvantageState s) {
    switch (s) {
    case AdvantageState::ZeroAdvantage: return "0-advantage";
    case AdvantageState::OneAdvantage: return "1-advantage";
    case AdvantageState::Balanced: return "balanced";
    }
    return "unknown";
}

SliceState slice_state(const Code& v, int i) {
    if (i < 1 || i > v.length())
        throw Error(Errc::BadPosition,
                    "position " + std::to_string(i) + " outside [1," +
                        std::to_string(v.length()) + "]");
    SliceState st;
    st.position = i;
    st.vol0 = 0;
    st.vol1 = 0;
    for (const auto& w : v.words()) {
        if (w.at(i) == Letter::Zero)
            st.vol0 += w.weight();
        else if (w.at(i) == Letter::One)
            st.vol1 += w.weight();
    }
    st.state = st.vol0 > st.vol1   ? AdvantageState::ZeroAdvantage
               : st.vol1 > st.vol0 ? AdvantageState::OneAdvantage
                                   : AdvantageState::Balanced;
    return st;
}

InvalidChoiceError::InvalidChoiceError(int position, int bit, BigInt vol0,
                                       BigInt vol1, int step)
    : Error(Errc::InvalidChoice,
            "delta=" + std::to_string(bit) + " at position " +
                std::to_string(position) +
                (step ? " (step " + std::to_string(step) + ")" : "") +
                " is not an inflation choice: vol0=" + vol0.str() +
                ", vol1=" + vol1.str()),
      position_(position), bit_(bit), step_(step),
      vol0_(std::move(vol0)), vol1_(std::move(vol1)) {}

namespace {

void require_bit(int b) {
    if (b != 0 && b != 1)
        throw Error(Errc::BadParameters,
                    "delta entry must be 0 or 1, got " + std::to_string(b));
}

void check_choice(const SliceState& st, int delta_bit, int step) {
    const BigInt& kept = delta_bit == 0 ? st.vol0 : st.vol1;
    const BigInt& dropped = delta_bit == 0 ? st.vol1 : st.vol0;
    if (dropped > kept)
        throw InvalidChoiceError(st.position, delta_bit, st.vol0, st.vol1,
                                 step);
}

} // namespace

Code inflate_at(const Code& v, int i, int delta_bit) {
    require_bit(delta_bit);
    auto st = slice_state(v, i); // BadPosition
    check_choice(st, delta_bit, 0);
    Letter keep = delta_bit == 0 ? Letter::Zero : Letter::One;
    std::vector<Word> out;
    for (const auto& w : v.words()) {
        if (w.at(i) == keep)
            out.push_back(w.with_letter(i, Letter::Star));
        else if (w.at(i) == Letter::Star)
            out.push_back(w);
    }
    return Code(v.length(), std::move(out));
}

InflationResult inflate(const Code& v, const std::vector<int>& order,
                        const std::optional<std::vector<int>>& delta,
                        const InflateOptions& opts) {
    for (int i : order)
        if (i < 1 || i > v.length())
            throw Error(Errc::BadPosition,
                        "position " + std::to_string(i) + " outside [1," +
                            std::to_string(v.length()) + "]");
    {
        std::set<int> distinct(order.begin(), order.end());
        if (distinct.size() != order.size())
            throw Error(Errc::BadParameters, "order has repeated positions");
    }
    if (delta) {
        if (delta->size() != order.size())
            throw Error(Errc::LengthMismatch,
                        "delta length " + std::to_string(delta->size()) +
                            " differs from order length " +
                            std::to_string(order.size()));
        for (int b : *delta)
            require_bit(b);
    }
    require_bit(opts.balanced_tie_break);

    InflationResult res{Code(v.length(), {}), {}};
    res.trace.order = order;
    res.trace.fates.assign(v.size(), {});

    // Current form of each original word; nullopt once removed.
    std::vector<std::optional<Word>> cur;
    cur.reserve(v.size());
    for (const auto& w : v.words())
        cur.emplace_back(w);

    for (std::size_t t = 0; t < order.size(); ++t) {
        int i = order[t];
        SliceState st;
        st.position = i;
        st.vol0 = 0;
        st.vol1 = 0;
        for (const auto& w : cur) {
            if (!w)
                continue;
            if (w->at(i) == Letter::Zero)
                st.vol0 += w->weight();
            else if (w->at(i) == Letter::One)
                st.vol1 += w->weight();
        }
        st.state = st.vol0 > st.vol1   ? AdvantageState::ZeroAdvantage
                   : st.vol1 > st.vol0 ? AdvantageState::OneAdvantage
                                       : AdvantageState::Balanced;
        int bit;
        if (delta) {
            bit = (*delta)[t];
            check_choice(st, bit, static_cast<int>(t) + 1);
        } else {
            switch (st.state) {
            case AdvantageState::ZeroAdvantage: bit = 0; break;
            case AdvantageState::OneAdvantage: bit = 1; break;
            default: bit = opts.balanced_tie_break; break;
            }
        }
        res.trace.realized_delta.push_back(bit);
        res.trace.step_states.push_back(st.state);

        Letter keep = bit == 0 ? Letter::Zero : Letter::One;
        Letter drop = flip(keep);
        for (std::size_t r = 0; r < cur.size(); ++r) {
            if (!cur[r])
                continue;
            Letter a = cur[r]->at(i);
            if (a == keep) {
                cur[r] = cur[r]->with_letter(i, Letter::Star);
            } else if (a == drop) {
                auto& fate = res.trace.fates[r];
                fate.kind = WordFate::Kind::Removed;
                fate.removed_step = static_cast<int>(t) + 1;
                fate.modified_before_removal = !(*cur[r] == v.word(r));
                fate.final_word = *cur[r];
                cur[r] = std::nullopt;
            }
        }
    }

    std::vector<Word> out;
    for (std::size_t r = 0; r < cur.size(); ++r) {
        if (!cur[r])
            continue;
        out.push_back(*cur[r]);
        auto& fate = res.trace.fates[r];
        if (*cur[r] == v.word(r)) {
            fate.kind = WordFate::Kind::Unmodified;
        } else {
            fate.kind = WordFate::Kind::Modified;
        }
        fate.final_word = *cur[r];
    }
    res.code = Code(v.length(), std::move(out));
    return res;
}

std::vector<Code> inflate_all(const Code& v, const std::vector<int>& positions,
                              std::size_t limit) {
    for (int i : positions)
        if (i < 1 || i > v.length())
            throw Error(Errc::BadPosition,
                        "position " + std::to_string(i) + " outside [1," +
                            std::to_string(v.length()) + "]");
    std::set<int> distinct(positions.begin(), positions.end());
    if (distinct.size() != positions.size())
        throw Error(Errc::BadParameters, "position set has repeated entries");
    if (positions.size() > limit)
        throw Error(Errc::TooLarge,
                    std::to_string(positions.size()) +
                        " positions exceed the enumeration limit " +
                        std::to_string(limit));

    std::vector<int> pos(distinct.begin(), distinct.end());
    const std::size_t k = pos.size();

    auto key_of = [](const Code& c) {
        std::string key;
        for (const auto& w : c.sorted_words()) {
            key += w.str();
            key += '\n';
        }
        return key;
    };

    std::set<std::pair<std::string, unsigned>> visited;
    std::map<std::string, Code> outcomes;

    std::function<void(const Code&, unsigned)> walk = [&](const Code& cur,
                                                          unsigned remaining) {
        if (!visited.emplace(key_of(cur), remaining).second)
            return;
        if (remaining == 0) {
            outcomes.emplace(key_of(cur), cur);
            return;
        }
        for (std::size_t idx = 0; idx < k; ++idx) {
            if (!(remaining & (1u << idx)))
                continue;
            auto st = slice_state(cur, pos[idx]);
            unsigned next = remaining & ~(1u << idx);
            if (st.vol1 <= st.vol0)
                walk(inflate_at(cur, pos[idx], 0), next);
            if (st.vol0 <= st.vol1)
                walk(inflate_at(cur, pos[idx], 1), next);
        }
    };

    walk(v, k == 0 ? 0u : (1u << k) - 1u);

    std::vector<Code> out;
    out.reserve(outcomes.size());
    for (auto& [key, code] : outcomes)
        out.push_back(std::move(code));
    return out;
}

CorollaryReport verify_structure_corollary(const Code& v,
                                           bool force_enumeration,
                                           std::size_t limit) {
    CorollaryReport rep;
    auto val = validate(v);

    if (!val.is_neighborly)
        rep.unmet.push_back("not neighborly");

    bool d_known = false;
    if (val.is_code && val.uniform_prop) {
        rep.d = *val.uniform_prop;
        d_known = true;
    } else {
        rep.unmet.push_back("not a d-code");
    }

    std::string why;
    bool standard = val.is_neighborly && in_standard_form(v, &why);
    if (!standard)
        rep.unmet.push_back("not in standard form" +
                            (why.empty() ? "" : " (" + why + ")"));

    if (!val.twin_free())
        rep.unmet.push_back("has twin pairs");

    if (d_known) {
        rep.slack = (BigInt(1) << rep.d) - BigInt(v.size());
        if (rep.slack < 2)
            rep.unmet.push_back("M < 2");
    }

    std::size_t cnt[3] = {0, 0, 0};
    for (const auto& w : v.words())
        ++cnt[static_cast<int>(w.at(1))];

    if (d_known && rep.slack >= 2 && BigInt(cnt[0]) <= 9 * rep.slack)
        rep.unmet.push_back("|V^{1,0}| <= 9M");

    rep.hypotheses_met = rep.unmet.empty();

    if (standard) {
        Partition part = partition_at(v, 1, false);
        rep.inflation_set = part.c0;
    }

    if (!(rep.hypotheses_met || (force_enumeration && standard && val.is_code)))
        return rep;

    auto outcomes = inflate_all(v, rep.inflation_set, limit);
    rep.enumerated = true;
    rep.outcome_count = outcomes.size();

    // Expected conclusion: {0*...*} union V^{1,1}.
    std::vector<Word> expected_words;
    {
        std::vector<Letter> letters(static_cast<std::size_t>(v.length()),
                                    Letter::Star);
        letters[0] = Letter::Zero;
        expected_words.emplace_back(std::move(letters));
    }
    for (const auto& w : v.words())
        if (w.at(1) == Letter::One)
            expected_words.push_back(w);
    Code expected(v.length(), std::move(expected_words));

    rep.all_outcomes_match = true;
    BigInt base_vol = volume_unchecked(v);
    rep.vol_strictly_increases = true;
    for (const auto& outcome : outcomes) {
        if (!outcome.same_words(expected)) {
            rep.all_outcomes_match = false;
            if (!rep.counterexample)
                rep.counterexample = outcome;
        }
        if (volume_unchecked(outcome) <= base_vol)
            rep.vol_strictly_increases = false;
    }

    rep.star_slice_nonempty = cnt[2] > 0;
    if (d_known) {
        BigInt half = BigInt(1) << (rep.d - 1);
        rep.star_slice_small = BigInt(cnt[2]) < rep.slack;
        rep.zero_slice_large = BigInt(cnt[0]) > half - rep.slack;
        rep.one_slice_large = BigInt(cnt[1]) > half - rep.slack;
    }

    rep.conclusions_hold =
        rep.all_outcomes_match &&
        (!rep.star_slice_nonempty ||
         (rep.vol_strictly_increases &&
          (!d_known || (rep.star_slice_small && rep.zero_slice_large &&
                        rep.one_slice_large))));
    return rep;
}

} // namespace ncode
