#include "ncode/code.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ncode {

Code::Code(int n, std::vector<Word> words) : n_(n), words_(std::move(words)) {
    if (n_ < 1)
        throw Error(Errc::BadParameters, "word length must be >= 1");
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k].length() != n_)
            throw ParseError(Errc::LengthMismatch,
                             "word " + std::to_string(k + 1) + " has length " +
                                 std::to_string(words_[k].length()) +
                                 ", expected " + std::to_string(n_),
                             k + 1);
    std::map<Word, std::size_t> seen;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        auto [it, fresh] = seen.emplace(words_[k], k);
        if (!fresh)
            throw ParseError(Errc::DuplicateWord,
                             "duplicate word '" + words_[k].str() + "' (rows " +
                                 std::to_string(it->second + 1) + " and " +
                                 std::to_string(k + 1) + ")",
                             k + 1);
    }
}

Code Code::parse(std::string_view text) {
    std::vector<Word> words;
    std::vector<std::size_t> lines; // source line of each word
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty())
            continue;

        try {
            words.push_back(Word::parse(line));
        } catch (const ParseError& e) {
            throw ParseError(e.code(),
                             "line " + std::to_string(line_no) + ": " + e.what(),
                             line_no, e.column());
        }
        lines.push_back(line_no);
    }
    if (words.empty())
        throw ParseError(Errc::EmptyInput, "no words in input");
    int n = words.front().length();
    for (std::size_t k = 0; k < words.size(); ++k)
        if (words[k].length() != n)
            throw ParseError(Errc::LengthMismatch,
                             "line " + std::to_string(lines[k]) +
                                 ": word length " +
                                 std::to_string(words[k].length()) +
                                 " differs from first word's " +
                                 std::to_string(n),
                             lines[k]);
    std::map<Word, std::size_t> seen;
    for (std::size_t k = 0; k < words.size(); ++k) {
        auto [it, fresh] = seen.emplace(words[k], k);
        if (!fresh)
            throw ParseError(Errc::DuplicateWord,
                             "duplicate word '" + words[k].str() + "' (lines " +
                                 std::to_string(lines[it->second]) + " and " +
                                 std::to_string(lines[k]) + ")",
                             lines[k]);
    }
    return Code(n, std::move(words));
}

Code Code::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<Word> words;
    words.reserve(rows.size());
    for (auto r : rows)
        words.push_back(Word::parse(r));
    if (words.empty())
        throw ParseError(Errc::EmptyInput, "no words given");
    int n = words.front().length();
    return Code(n, std::move(words));
}

Code Code::from_strings(const std::vector<std::string>& rows) {
    std::vector<Word> words;
    words.reserve(rows.size());
    for (const auto& r : rows)
        words.push_back(Word::parse(r));
    if (words.empty())
        throw ParseError(Errc::EmptyInput, "no words given");
    int n = words.front().length();
    return Code(n, std::move(words));
}

bool Code::contains(const Word& w) const {
    return std::find(words_.begin(), words_.end(), w) != words_.end();
}

std::string Code::str() const {
    std::string out;
    for (const auto& w : words_) {
        out += w.str();
        out += '\n';
    }
    return out;
}

std::vector<Word> Code::sorted_words() const {
    auto ws = words_;
    std::sort(ws.begin(), ws.end());
    return ws;
}

bool Code::same_words(const Code& other) const {
    return n_ == other.n_ && sorted_words() == other.sorted_words();
}

ValidationReport validate(const Code& v) {
    ValidationReport rep;
    rep.is_code = true;
    rep.is_neighborly = true;

    if (!v.empty()) {
        int p0 = v.word(0).prop_count();
        bool uniform = true;
        for (const auto& w : v.words())
            if (w.prop_count() != p0) {
                uniform = false;
                break;
            }
        if (uniform)
            rep.uniform_prop = p0;
    }

    const std::size_t m = v.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            auto cls = classify_pair(v.word(a), v.word(b));
            int ra = static_cast<int>(a) + 1, rb = static_cast<int>(b) + 1;
            switch (cls.kind) {
            case PairClass::Kind::NotDichotomous:
                if (rep.is_code) {
                    rep.is_code = false;
                    rep.not_code_witness = {ra, rb};
                }
                if (rep.is_neighborly) {
                    rep.is_neighborly = false;
                    rep.not_neighborly_witness = {ra, rb};
                }
                break;
            case PairClass::Kind::MultiDichotomous:
                if (rep.is_neighborly) {
                    rep.is_neighborly = false;
                    rep.not_neighborly_witness = {ra, rb};
                }
                break;
            case PairClass::Kind::TwinPair:
                ++rep.twin_pair_count;
                if (rep.twin_pairs.size() < ValidationReport::kTwinPairCap)
                    rep.twin_pairs.emplace_back(ra, rb);
                break;
            case PairClass::Kind::Neighborly:
                break;
            }
        }
    }
    return rep;
}

bool meets(const ValidationReport& report, const Requirements& req,
           std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why)
            *why = reason;
        return false;
    };
    if (!report.is_code)
        return fail("not a code");
    if (req.d && !report.is_d_code(*req.d))
        return fail("not a " + std::to_string(*req.d) + "-code");
    if (req.neighborly && !report.is_neighborly)
        return fail("not neighborly");
    if (req.twin_free && !report.twin_free())
        return fail("has " + std::to_string(report.twin_pair_count) +
                    " twin pair(s)");
    return true;
}

BigInt volume_unchecked(const Code& v) {
    BigInt total = 0;
    for (const auto& w : v.words())
        total += w.weight();
    return total;
}

BigInt volume(const Code& v) {
    const std::size_t m = v.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (dichotomy_positions(v.word(a), v.word(b)).empty())
                throw PairError(Errc::NotACode,
                                "volume requires a code; rows " +
                                    std::to_string(a + 1) + " and " +
                                    std::to_string(b + 1) +
                                    " are not dichotomous",
                                static_cast<int>(a) + 1,
                                static_cast<int>(b) + 1);
    return volume_unchecked(v);
}

static void require_position(const Code& v, int j) {
    if (j < 1 || j > v.length())
        throw Error(Errc::BadPosition,
                    "position " + std::to_string(j) + " outside [1," +
                        std::to_string(v.length()) + "]");
}

Code slice(const Code& v, int j, Letter a) {
    require_position(v, j);
    std::vector<Word> out;
    for (const auto& w : v.words())
        if (w.at(j) == a)
            out.push_back(w);
    return Code(v.length(), std::move(out));
}

Partition partition_at(const Code& v, int j, bool check_neighborly) {
    require_position(v, j);
    if (check_neighborly) {
        auto rep = validate(v);
        if (!rep.is_neighborly) {
            auto [ra, rb] = *rep.not_neighborly_witness;
            throw PairError(Errc::NotNeighborly,
                            "rows " + std::to_string(ra) + " and " +
                                std::to_string(rb) + " are not neighborly",
                            ra, rb);
        }
    }

    // Row indices of the three slices at j.
    std::vector<std::size_t> rows0, rows1;
    for (std::size_t k = 0; k < v.size(); ++k) {
        Letter a = v.word(k).at(j);
        if (a == Letter::Zero)
            rows0.push_back(k);
        else if (a == Letter::One)
            rows1.push_back(k);
    }

    auto clash_columns = [&](const std::vector<std::size_t>& rows) {
        std::set<int> cols;
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = a + 1; b < rows.size(); ++b)
                for (int k = 1; k <= v.length(); ++k)
                    if (k != j && opposite(v.word(rows[a]).at(k),
                                           v.word(rows[b]).at(k)))
                        cols.insert(k);
        return cols;
    };

    std::set<int> c0 = clash_columns(rows0);
    std::set<int> c1 = clash_columns(rows1);

    // Clash-split clauses; a failure here means the input was not a
    // neighborly code despite the caller's claim.
    for (int k : c0)
        if (c1.count(k))
            throw Error(Errc::LemmaViolation,
                        "C0 and C1 both contain column " + std::to_string(k));
    for (int k : c0)
        for (std::size_t r : rows1)
            if (v.word(r).at(k) != Letter::Star)
                throw PairError(Errc::LemmaViolation,
                                "row " + std::to_string(r + 1) +
                                    " in the 1-slice is proper at C0 column " +
                                    std::to_string(k),
                                static_cast<int>(r) + 1, 0);
    for (int k : c1)
        for (std::size_t r : rows0)
            if (v.word(r).at(k) != Letter::Star)
                throw PairError(Errc::LemmaViolation,
                                "row " + std::to_string(r + 1) +
                                    " in the 0-slice is proper at C1 column " +
                                    std::to_string(k),
                                static_cast<int>(r) + 1, 0);
    if (rows0.size() >= 2 && c0.empty())
        throw Error(Errc::LemmaViolation,
                    "0-slice has >= 2 words but no clash column");
    if (rows1.size() >= 2 && c1.empty())
        throw Error(Errc::LemmaViolation,
                    "1-slice has >= 2 words but no clash column");

    Partition p;
    p.pivot = j;
    p.c0.assign(c0.begin(), c0.end());
    p.c1.assign(c1.begin(), c1.end());
    for (int k = 1; k <= v.length(); ++k)
        if (k != j && !c0.count(k) && !c1.count(k))
            p.d.push_back(k);
    return p;
}

OpposingUnionReport opposing_union(const Code& v, const Word& member) {
    const std::size_t m = v.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (dichotomy_positions(v.word(a), v.word(b)).empty())
                throw PairError(Errc::NotACode,
                                "rows " + std::to_string(a + 1) + " and " +
                                    std::to_string(b + 1) +
                                    " are not dichotomous",
                                static_cast<int>(a) + 1,
                                static_cast<int>(b) + 1);
    if (!v.contains(member))
        throw Error(Errc::WordNotInCode,
                    "word '" + member.str() + "' not in the code");

    OpposingUnionReport rep;
    auto props = member.prop();

    // Which slice(s) each other word falls into.
    std::vector<int> hits(v.size(), 0);
    std::size_t best_count = 0;
    std::optional<int> best_pos;
    for (int j : props) {
        Letter want = flip(member.at(j));
        std::size_t count = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v.word(k).at(j) == want) {
                ++hits[k];
                ++count;
            }
        if (count > best_count || (!best_pos && count > 0)) {
            best_count = count;
            best_pos = j;
        }
    }

    rep.cover_holds = true;
    rep.slices_disjoint = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v.word(k) == member)
            continue;
        if (hits[k] == 0)
            rep.cover_holds = false;
        if (hits[k] > 1)
            rep.slices_disjoint = false;
    }

    rep.argmax_position = best_pos;
    rep.argmax_count = best_count;
    // (es): max count * d >= |V| - 1, with d = |prop(member)|.
    rep.bound_holds =
        v.size() == 0 ||
        best_count * props.size() >= v.size() - 1;
    return rep;
}

Code mirror_slice(const Code& v, int j, Letter eps) {
    require_position(v, j);
    if (!is_proper(eps))
        throw Error(Errc::BadParameters, "mirror letter must be 0 or 1");
    std::vector<Word> out;
    for (const auto& w : v.words())
        if (w.at(j) == eps)
            out.push_back(w.with_letter(j, flip(eps)));
    return Code(v.length(), std::move(out));
}

Code mirror_slice_combined(const Code& v, int j, Letter eps) {
    Code mirrored = mirror_slice(v, j, eps);
    std::vector<Word> out;
    for (const auto& w : v.words())
        if (w.at(j) == eps || w.at(j) == Letter::Star)
            out.push_back(w);
    for (const auto& w : mirrored.words())
        out.push_back(w);
    Code combined(v.length(), std::move(out));
    auto rep = validate(combined);
    if (!rep.is_code)
        throw Error(Errc::InternalLemmaViolation,
                    "mirror union is not a code; the input was not a code");
    return combined;
}

SliceBoundReport slice_bound_check(const Code& v, int d) {
    if (d < 1)
        throw Error(Errc::BadParameters, "d must be >= 1");
    auto rep = validate(v);
    if (!rep.is_code || !rep.is_d_code(d))
        throw Error(Errc::NotADCode,
                    "input is not a " + std::to_string(d) + "-code");
    SliceBoundReport out;
    out.slack = (BigInt(1) << d) - BigInt(v.size()); // M >= 0 since |V| <= 2^d

    for (int j = 1; j <= v.length(); ++j) {
        std::size_t sizes[2] = {slice(v, j, Letter::Zero).size(),
                                slice(v, j, Letter::One).size()};
        for (int e = 0; e < 2; ++e) {
            Letter eps = e == 0 ? Letter::Zero : Letter::One;
            // Build the mirror union; its cardinality obeys the 2^d cap,
            // which yields |V^{j,eps'}| >= |V^{j,eps}| - M.
            Code combined = mirror_slice_combined(v, j, eps);
            bool holds = BigInt(combined.size()) <= (BigInt(1) << d) &&
                         BigInt(sizes[1 - e]) + out.slack >= BigInt(sizes[e]);
            out.entries.push_back({j, eps, sizes[e], sizes[1 - e], holds});
            if (!holds)
                out.all_hold = false;
        }
    }
    return out;
}

} // namespace ncode
