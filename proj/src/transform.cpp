#include "ncode/transform.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace ncode {

Transform::Transform(std::vector<int> sigma, std::vector<bool> flips)
    : sigma_(std::move(sigma)), flips_(std::move(flips)) {
    int n = static_cast<int>(sigma_.size());
    if (n == 0)
        throw Error(Errc::BadPermutation, "empty permutation");
    if (flips_.size() != sigma_.size())
        throw Error(Errc::SizeMismatch,
                    "flips length " + std::to_string(flips_.size()) +
                        " differs from sigma length " + std::to_string(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x : sigma_) {
        if (x < 1 || x > n || seen[static_cast<std::size_t>(x - 1)])
            throw Error(Errc::BadPermutation,
                        "sigma is not a permutation of 1.." + std::to_string(n));
        seen[static_cast<std::size_t>(x - 1)] = true;
    }
}

Transform Transform::identity(int n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    return Transform(std::move(sigma), std::vector<bool>(static_cast<std::size_t>(n), false));
}

std::vector<int> Transform::flip_positions() const {
    std::vector<int> out;
    for (int i = 1; i <= size(); ++i)
        if (flips_[static_cast<std::size_t>(i - 1)])
            out.push_back(i);
    return out;
}

Word Transform::apply(const Word& v) const {
    if (v.length() != size())
        throw Error(Errc::SizeMismatch,
                    "transform size " + std::to_string(size()) +
                        " differs from word length " +
                        std::to_string(v.length()));
    std::vector<Letter> out(static_cast<std::size_t>(size()));
    for (int i = 1; i <= size(); ++i) {
        Letter a = v.at(sigma_[static_cast<std::size_t>(i - 1)]);
        out[static_cast<std::size_t>(i - 1)] =
            flips_[static_cast<std::size_t>(i - 1)] ? flip(a) : a;
    }
    return Word(std::move(out));
}

Transform Transform::inverse() const {
    int n = size();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::vector<bool> flips(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        sigma[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(i)] - 1)] = i + 1;
        flips[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(i)] - 1)] =
            flips_[static_cast<std::size_t>(i)];
    }
    return Transform(std::move(sigma), std::move(flips));
}

std::string Transform::str() const {
    std::string out = "sigma: ";
    for (int i = 0; i < size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(sigma_[static_cast<std::size_t>(i)]);
    }
    out += "; flips:";
    auto fp = flip_positions();
    for (std::size_t k = 0; k < fp.size(); ++k) {
        out += k ? "," : " ";
        out += std::to_string(fp[k]);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                          s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

std::vector<int> parse_int_list(std::string_view s, const char* what) {
    std::vector<int> out;
    s = trim(s);
    if (s.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string_view tok = trim(
            s.substr(pos, comma == std::string_view::npos ? s.size() - pos
                                                          : comma - pos));
        if (tok.empty())
            throw ParseError(Errc::ParseFailure,
                             std::string("empty entry in ") + what + " list");
        int value = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw ParseError(Errc::ParseFailure,
                                 std::string("bad integer in ") + what +
                                     " list: '" + std::string(tok) + "'");
            value = value * 10 + (c - '0');
            if (value > 1'000'000)
                throw ParseError(Errc::ParseFailure,
                                 std::string("integer too large in ") + what +
                                     " list");
        }
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

Transform Transform::parse(std::string_view text) {
    std::size_t semi = text.find(';');
    if (semi == std::string_view::npos)
        throw ParseError(Errc::ParseFailure,
                         "expected 'sigma: ...; flips: ...'");
    std::string_view head = trim(text.substr(0, semi));
    std::string_view tail = trim(text.substr(semi + 1));
    if (head.substr(0, 6) != "sigma:" || tail.substr(0, 6) != "flips:")
        throw ParseError(Errc::ParseFailure,
                         "expected 'sigma: ...; flips: ...'");
    auto sigma = parse_int_list(head.substr(6), "sigma");
    auto fp = parse_int_list(tail.substr(6), "flips");
    int n = static_cast<int>(sigma.size());
    std::vector<bool> flips(sigma.size(), false);
    for (int j : fp) {
        if (j < 1 || j > n)
            throw ParseError(Errc::ParseFailure,
                             "flip position " + std::to_string(j) +
                                 " outside [1," + std::to_string(n) + "]");
        flips[static_cast<std::size_t>(j - 1)] = true;
    }
    return Transform(std::move(sigma), std::move(flips));
}

Transform compose(const Transform& outer, const Transform& inner) {
    if (outer.size() != inner.size())
        throw Error(Errc::SizeMismatch, "composing transforms of different size");
    int n = outer.size();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::vector<bool> flips(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int mid = outer.sigma()[static_cast<std::size_t>(i)];
        sigma[static_cast<std::size_t>(i)] =
            inner.sigma()[static_cast<std::size_t>(mid - 1)];
        flips[static_cast<std::size_t>(i)] =
            outer.flips()[static_cast<std::size_t>(i)] ^
            inner.flips()[static_cast<std::size_t>(mid - 1)];
    }
    return Transform(std::move(sigma), std::move(flips));
}

Code apply_transform(const Code& v, const Transform& t) {
    if (t.size() != v.length())
        throw Error(Errc::SizeMismatch,
                    "transform size " + std::to_string(t.size()) +
                        " differs from code length " +
                        std::to_string(v.length()));
    std::vector<Word> out;
    out.reserve(v.size());
    for (const auto& w : v.words())
        out.push_back(t.apply(w));
    return Code(v.length(), std::move(out));
}

namespace {

// Letters of column j (0-based) over all rows, in row order.
std::vector<std::vector<Letter>> columns_of(const Code& v) {
    std::vector<std::vector<Letter>> cols(
        static_cast<std::size_t>(v.length()),
        std::vector<Letter>(v.size()));
    for (std::size_t r = 0; r < v.size(); ++r)
        for (int j = 0; j < v.length(); ++j)
            cols[static_cast<std::size_t>(j)][r] = v.word(r).at(j + 1);
    return cols;
}

std::vector<Letter> flipped(const std::vector<Letter>& col) {
    std::vector<Letter> out(col.size());
    for (std::size_t r = 0; r < col.size(); ++r)
        out[r] = flip(col[r]);
    return out;
}

} // namespace

std::optional<Transform> are_isomorphic(const Code& u, const Code& w) {
    if (u.length() != w.length())
        throw Error(Errc::LengthMismatch,
                    "code lengths differ: " + std::to_string(u.length()) +
                        " vs " + std::to_string(w.length()));
    if (u.size() != w.size())
        throw Error(Errc::SizeMismatch,
                    "code sizes differ: " + std::to_string(u.size()) + " vs " +
                        std::to_string(w.size()));
    const int n = u.length();
    const std::size_t m = u.size();
    if (m == 0)
        return Transform::identity(n);

    auto ucols = columns_of(u);

    // Sorted k-prefix lists of w, one per depth.
    std::vector<std::vector<std::vector<Letter>>> wpre(
        static_cast<std::size_t>(n + 1));
    for (int k = 1; k <= n; ++k) {
        auto& list = wpre[static_cast<std::size_t>(k)];
        list.reserve(m);
        for (std::size_t r = 0; r < m; ++r) {
            const auto& letters = w.word(r).letters();
            list.emplace_back(letters.begin(), letters.begin() + k);
        }
        std::sort(list.begin(), list.end());
    }

    std::vector<std::vector<Letter>> rows(m);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<int> sigma;
    std::vector<bool> flips;

    auto prefixes_match = [&](int k) {
        std::vector<std::vector<Letter>> cur(rows.begin(), rows.end());
        std::sort(cur.begin(), cur.end());
        return cur == wpre[static_cast<std::size_t>(k)];
    };

    std::function<bool(int)> dfs = [&](int k) -> bool {
        if (k == n)
            return true;
        std::set<std::vector<Letter>> seen;
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)])
                continue;
            for (int f = 0; f < 2; ++f) {
                auto content = f ? flipped(ucols[static_cast<std::size_t>(j)])
                                 : ucols[static_cast<std::size_t>(j)];
                if (!seen.insert(content).second)
                    continue;
                for (std::size_t r = 0; r < m; ++r)
                    rows[r].push_back(content[r]);
                used[static_cast<std::size_t>(j)] = true;
                sigma.push_back(j + 1);
                flips.push_back(f != 0);
                if (prefixes_match(k + 1) && dfs(k + 1))
                    return true;
                sigma.pop_back();
                flips.pop_back();
                used[static_cast<std::size_t>(j)] = false;
                for (std::size_t r = 0; r < m; ++r)
                    rows[r].pop_back();
            }
        }
        return false;
    };

    if (dfs(0))
        return Transform(std::move(sigma), std::move(flips));
    return std::nullopt;
}

namespace {

// Branch-and-prune over output-column assignments; the objective is the
// sorted word list in row-major order. The lower bound at a partial
// assignment is the sorted prefix list padded with the minimum letter, so
// any node whose bound is not strictly below the incumbent is pruned.
class CanonSearch {
public:
    CanonSearch(const Code& v, bool abort_on_improve)
        : n_(v.length()),
          m_(v.size()),
          cols_(columns_of(v)),
          rows_(v.size()),
          abort_(abort_on_improve) {
        auto sorted = v.sorted_words();
        incumbent_.reserve(m_ * static_cast<std::size_t>(n_));
        for (const auto& word : sorted)
            for (Letter a : word.letters())
                incumbent_.push_back(a);
        inc_sigma_.resize(static_cast<std::size_t>(n_));
        std::iota(inc_sigma_.begin(), inc_sigma_.end(), 1);
        inc_flips_.assign(static_cast<std::size_t>(n_), false);
        used_.assign(static_cast<std::size_t>(n_), false);
    }

    // True iff some assignment beats the incumbent strictly. With abort
    // unset, the incumbent ends at the orbit minimum.
    bool run() {
        dfs(0);
        return improved_;
    }

    Code minimum(int n) const {
        std::vector<Word> words;
        words.reserve(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            auto begin = incumbent_.begin() +
                         static_cast<std::ptrdiff_t>(r * static_cast<std::size_t>(n));
            words.emplace_back(std::vector<Letter>(begin, begin + n));
        }
        return Code(n, std::move(words));
    }

    Transform transform() const {
        return Transform(inc_sigma_, inc_flips_);
    }

private:
    // Compare the padded sorted-prefix bound at depth k to the incumbent:
    // negative = strictly below (possible improvement), otherwise prune.
    int compare_bound(int k) const {
        std::vector<const std::vector<Letter>*> order(m_);
        for (std::size_t r = 0; r < m_; ++r)
            order[r] = &rows_[r];
        std::sort(order.begin(), order.end(),
                  [](const auto* a, const auto* b) { return *a < *b; });
        std::size_t pos = 0;
        for (std::size_t r = 0; r < m_; ++r) {
            const auto& prefix = *order[r];
            for (int j = 0; j < n_; ++j, ++pos) {
                Letter mine = j < k ? prefix[static_cast<std::size_t>(j)]
                                    : Letter::Zero;
                if (mine != incumbent_[pos])
                    return mine < incumbent_[pos] ? -1 : 1;
            }
        }
        return 0;
    }

    void dfs(int k) {
        if (stop_)
            return;
        if (k == n_) {
            // compare_bound(n) < 0 was established by the caller; adopt.
            improved_ = true;
            if (abort_) {
                stop_ = true;
                return;
            }
            std::vector<const std::vector<Letter>*> order(m_);
            for (std::size_t r = 0; r < m_; ++r)
                order[r] = &rows_[r];
            std::sort(order.begin(), order.end(),
                      [](const auto* a, const auto* b) { return *a < *b; });
            std::size_t pos = 0;
            for (std::size_t r = 0; r < m_; ++r)
                for (int j = 0; j < n_; ++j, ++pos)
                    incumbent_[pos] = (*order[r])[static_cast<std::size_t>(j)];
            inc_sigma_ = chosen_src_;
            inc_flips_.assign(chosen_flip_.begin(), chosen_flip_.end());
            return;
        }
        std::set<std::vector<Letter>> seen;
        for (int j = 0; j < n_; ++j) {
            if (used_[static_cast<std::size_t>(j)])
                continue;
            for (int f = 0; f < 2; ++f) {
                auto content = f ? flipped(cols_[static_cast<std::size_t>(j)])
                                 : cols_[static_cast<std::size_t>(j)];
                if (!seen.insert(content).second)
                    continue;
                for (std::size_t r = 0; r < m_; ++r)
                    rows_[r].push_back(content[r]);
                used_[static_cast<std::size_t>(j)] = true;
                chosen_src_.push_back(j + 1);
                chosen_flip_.push_back(static_cast<char>(f));
                if (compare_bound(k + 1) < 0)
                    dfs(k + 1);
                chosen_src_.pop_back();
                chosen_flip_.pop_back();
                used_[static_cast<std::size_t>(j)] = false;
                for (std::size_t r = 0; r < m_; ++r)
                    rows_[r].pop_back();
                if (stop_)
                    return;
            }
        }
    }

    int n_;
    std::size_t m_;
    std::vector<std::vector<Letter>> cols_;
    std::vector<Letter> incumbent_;
    std::vector<int> inc_sigma_;
    std::vector<bool> inc_flips_;
    std::vector<std::vector<Letter>> rows_;
    std::vector<int> chosen_src_;
    std::vector<char> chosen_flip_;
    std::vector<bool> used_;
    bool abort_;
    bool improved_ = false;
    bool stop_ = false;
};

void check_canonical_scale(const Code& v, int max_n) {
    if (v.length() > max_n)
        throw Error(Errc::TooLarge,
                    "length " + std::to_string(v.length()) +
                        " exceeds the canonical-form limit " +
                        std::to_string(max_n));
}

} // namespace

CanonicalResult canonical_form(const Code& v, int max_n) {
    check_canonical_scale(v, max_n);
    if (v.empty())
        return {v, Transform::identity(v.length())};
    CanonSearch search(v, false);
    search.run();
    return {search.minimum(v.length()), search.transform()};
}

bool is_canonical(const Code& v, int max_n) {
    check_canonical_scale(v, max_n);
    if (v.empty())
        return true;
    CanonSearch search(v, true);
    return !search.run();
}

namespace {

struct ArgmaxSlice {
    int column = 0;     // 1-based
    Letter eps = Letter::Zero;
    std::size_t count = 0;
    std::size_t opposite = 0;
};

ArgmaxSlice argmax_slice(const Code& v) {
    ArgmaxSlice best;
    for (int j = 1; j <= v.length(); ++j) {
        std::size_t cnt[2] = {0, 0};
        for (const auto& w : v.words()) {
            if (w.at(j) == Letter::Zero)
                ++cnt[0];
            else if (w.at(j) == Letter::One)
                ++cnt[1];
        }
        for (int e = 0; e < 2; ++e) {
            if (cnt[e] > best.count) {
                best = {j, e == 0 ? Letter::Zero : Letter::One, cnt[e],
                        cnt[1 - e]};
            }
        }
    }
    return best;
}

// Proper letters of column j over the rows that carry 0 or 1 at column 1.
// Returns (has_zero, has_one).
std::pair<bool, bool> proper_letters_over_split(const Code& v, int j) {
    bool any0 = false, any1 = false;
    for (const auto& w : v.words()) {
        if (w.at(1) == Letter::Star)
            continue;
        if (w.at(j) == Letter::Zero)
            any0 = true;
        else if (w.at(j) == Letter::One)
            any1 = true;
    }
    return {any0, any1};
}

bool is_contiguous(const std::vector<int>& xs, int from) {
    for (std::size_t k = 0; k < xs.size(); ++k)
        if (xs[k] != from + static_cast<int>(k))
            return false;
    return true;
}

} // namespace

std::pair<Code, StandardFormInfo> standardize(const Code& v) {
    auto rep = validate(v);
    if (!rep.is_neighborly) {
        auto [ra, rb] = *rep.not_neighborly_witness;
        throw PairError(Errc::NotNeighborly,
                        "rows " + std::to_string(ra) + " and " +
                            std::to_string(rb) + " are not neighborly",
                        ra, rb);
    }
    const int n = v.length();
    auto best = argmax_slice(v);
    if (best.count < 2 || best.opposite < 2)
        throw Error(Errc::SliceTooSmall,
                    "largest slice pair has sizes " +
                        std::to_string(best.count) + "/" +
                        std::to_string(best.opposite) +
                        "; standard form needs both >= 2");

    // Step 1: argmax column to position 1, flipped so the max is a 0-slice.
    std::vector<int> sigma1;
    sigma1.push_back(best.column);
    for (int j = 1; j <= n; ++j)
        if (j != best.column)
            sigma1.push_back(j);
    std::vector<bool> flips1(static_cast<std::size_t>(n), false);
    flips1[0] = best.eps == Letter::One;
    Transform t1(std::move(sigma1), std::move(flips1));
    Code v1 = apply_transform(v, t1);

    // Step 2: contiguous blocks and the gamma' flips on D-columns.
    Partition part;
    try {
        part = partition_at(v1, 1, false);
    } catch (const Error& e) {
        throw Error(Errc::InternalLemmaViolation, e.what());
    }
    std::vector<int> sigma2;
    sigma2.push_back(1);
    for (int j : part.c0)
        sigma2.push_back(j);
    for (int j : part.c1)
        sigma2.push_back(j);
    for (int j : part.d)
        sigma2.push_back(j);
    std::vector<bool> flips2(static_cast<std::size_t>(n), false);
    for (std::size_t out = 0; out < sigma2.size(); ++out) {
        int src = sigma2[out];
        bool in_d = std::find(part.d.begin(), part.d.end(), src) != part.d.end();
        if (!in_d)
            continue;
        auto [any0, any1] = proper_letters_over_split(v1, src);
        if (any0 && any1)
            throw Error(Errc::InternalLemmaViolation,
                        "D-column " + std::to_string(src) +
                            " carries both 0 and 1 over the 0/1-rows");
        flips2[out] = any1;
    }
    Transform t2(std::move(sigma2), std::move(flips2));
    Code out = apply_transform(v1, t2);
    Transform total = compose(t2, t1);

    int s = 1 + static_cast<int>(part.c0.size());
    int r = s + static_cast<int>(part.c1.size());
    StandardFormInfo info{std::move(total), s, r, 0, 0, 0};
    for (const auto& w : out.words()) {
        if (w.at(1) == Letter::Zero)
            ++info.size_zero;
        else if (w.at(1) == Letter::One)
            ++info.size_one;
        else
            ++info.size_star;
    }

    std::string why;
    if (!in_standard_form(out, &why))
        throw Error(Errc::InternalLemmaViolation,
                    "standardize output failed re-check: " + why);
    Partition recheck = partition_at(out, 1, false);
    if (!is_contiguous(recheck.c0, 2) ||
        recheck.c0.size() != part.c0.size() ||
        !is_contiguous(recheck.c1, s + 1) ||
        recheck.c1.size() != part.c1.size())
        throw Error(Errc::InternalLemmaViolation,
                    "standardize output partition is not block-contiguous");
    return {std::move(out), std::move(info)};
}

bool in_standard_form(const Code& v, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why)
            *why = reason;
        return false;
    };
    auto rep = validate(v);
    if (!rep.is_neighborly)
        return fail("not a neighborly code");

    std::size_t cnt0 = 0;
    for (const auto& w : v.words())
        if (w.at(1) == Letter::Zero)
            ++cnt0;
    auto best = argmax_slice(v);
    if (cnt0 != best.count)
        return fail("|V^{1,0}| = " + std::to_string(cnt0) +
                    " is not the slice maximum " + std::to_string(best.count));

    Partition part;
    try {
        part = partition_at(v, 1, false);
    } catch (const Error& e) {
        return fail(e.what());
    }
    if (part.c0.empty())
        return fail("C^1_0 is empty");
    if (part.c1.empty())
        return fail("C^1_1 is empty");
    if (!is_contiguous(part.c0, 2))
        return fail("C^1_0 is not {2..s}");
    int s = 1 + static_cast<int>(part.c0.size());
    if (!is_contiguous(part.c1, s + 1))
        return fail("C^1_1 is not {s+1..r}");
    int r = s + static_cast<int>(part.c1.size());
    if (!is_contiguous(part.d, r + 1))
        return fail("D is not {r+1..n}");
    for (int j : part.d) {
        auto [any0, any1] = proper_letters_over_split(v, j);
        (void)any0;
        if (any1)
            return fail("D-column " + std::to_string(j) +
                        " carries letter 1 over the 0/1-rows");
    }
    return true;
}

} // namespace ncode
