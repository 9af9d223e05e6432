#include "ncode/search.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "ncode/transform.hpp"

namespace ncode {

namespace {

// Dynamic fixed-width bitset over candidate indices.
class Bits {
public:
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_)
            c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }

    Bits intersect(const Bits& other) const {
        Bits out(n_);
        for (std::size_t k = 0; k < w_.size(); ++k)
            out.w_[k] = w_[k] & other.w_[k];
        return out;
    }

    // Clears indices <= i.
    void clear_through(std::size_t i) {
        std::size_t word = i >> 6;
        for (std::size_t k = 0; k < word; ++k)
            w_[k] = 0;
        if (word < w_.size()) {
            unsigned bit = static_cast<unsigned>(i & 63);
            w_[word] &= bit == 63 ? 0ull : ~((2ull << bit) - 1);
        }
    }

    template <typename F> void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(x));
                f(k * 64 + bit);
                x &= x - 1;
            }
        }
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> w_;
};

struct Candidate {
    Word word;
    std::uint32_t mask0 = 0, mask1 = 0; // positions carrying 0 / 1
};

// All words of length n with exactly d proper letters, in letter order.
std::vector<Candidate> candidate_words(int d, int n) {
    std::vector<Candidate> out;
    std::vector<int> positions(static_cast<std::size_t>(d));
    // Enumerate position subsets, then bit patterns.
    std::function<void(int, int)> pick = [&](int from, int k) {
        if (k == d) {
            for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
                std::vector<Letter> letters(static_cast<std::size_t>(n),
                                            Letter::Star);
                std::uint32_t mask0 = 0, mask1 = 0;
                for (int t = 0; t < d; ++t) {
                    int p = positions[static_cast<std::size_t>(t)];
                    bool one = (bits >> t) & 1;
                    letters[static_cast<std::size_t>(p)] =
                        one ? Letter::One : Letter::Zero;
                    (one ? mask1 : mask0) |= 1u << p;
                }
                out.push_back({Word(std::move(letters)), mask0, mask1});
            }
            return;
        }
        for (int p = from; p <= n - (d - k); ++p) {
            positions[static_cast<std::size_t>(k)] = p;
            pick(p + 1, k + 1);
        }
    };
    pick(0, 0);
    std::sort(out.begin(), out.end(),
              [](const Candidate& a, const Candidate& b) {
                  return a.word < b.word;
              });
    return out;
}

// Neighborly non-twin pair: exactly one dichotomy position and at least one
// further difference.
bool compatible(const Candidate& a, const Candidate& b) {
    std::uint32_t dich = (a.mask0 & b.mask1) | (a.mask1 & b.mask0);
    if (__builtin_popcount(dich) != 1)
        return false;
    std::uint32_t diff = (a.mask0 ^ b.mask0) | (a.mask1 ^ b.mask1);
    return diff != dich;
}

struct SearchState {
    const std::vector<Candidate>* cands = nullptr;
    const std::vector<Bits>* compat = nullptr;
    int n = 0;
    std::size_t cap = 0;
    std::uint64_t node_limit = 0;
    bool collect_witnesses = true;
    std::size_t witness_limit = 0;

    std::vector<std::size_t> chosen;
    SearchResult result;

    Code current_code() const {
        std::vector<Word> words;
        words.reserve(chosen.size());
        for (std::size_t c : chosen)
            words.push_back((*cands)[c].word);
        return Code(n, std::move(words));
    }

    void visit() {
        if (chosen.size() > result.max_size) {
            result.max_size = chosen.size();
            result.witnesses.clear();
        }
        if (collect_witnesses && chosen.size() == result.max_size &&
            chosen.size() > 0 && result.witnesses.size() < witness_limit)
            result.witnesses.push_back(current_code());
    }

    void dfs(const Bits& allowed) {
        visit();
        if (chosen.size() >= cap || !result.exhaustive)
            return;
        // Even taking every allowed candidate cannot reach the incumbent.
        if (chosen.size() + allowed.count() < result.max_size)
            return;
        std::vector<std::size_t> order;
        allowed.for_each([&](std::size_t c) { order.push_back(c); });
        for (std::size_t c : order) {
            if (!result.exhaustive)
                return;
            if (++result.nodes_explored > node_limit) {
                result.exhaustive = false;
                return;
            }
            chosen.push_back(c);
            if (is_canonical(current_code())) {
                Bits next = allowed.intersect((*compat)[c]);
                next.clear_through(c);
                dfs(next);
            }
            chosen.pop_back();
        }
    }
};

} // namespace

SearchResult search_max(int d, int n, const SearchOptions& opts) {
    if (d < 1 || n < d)
        throw Error(Errc::BadParameters,
                    "need 1 <= d <= n, got d=" + std::to_string(d) +
                        ", n=" + std::to_string(n));

    auto cands = candidate_words(d, n);
    std::vector<Bits> compat(cands.size(), Bits(cands.size()));
    for (std::size_t a = 0; a < cands.size(); ++a)
        for (std::size_t b = a + 1; b < cands.size(); ++b)
            if (compatible(cands[a], cands[b])) {
                compat[a].set(b);
                compat[b].set(a);
            }

    SearchState st;
    st.cands = &cands;
    st.compat = &compat;
    st.n = n;
    st.cap = std::size_t{1} << d;
    if (opts.max_size_hint)
        st.cap = std::min(st.cap, *opts.max_size_hint);
    st.node_limit = opts.node_limit;
    st.collect_witnesses = opts.collect_witnesses;
    st.witness_limit = opts.witness_limit;
    st.result.d = d;
    st.result.n = n;

    Bits all(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c)
        all.set(c);
    st.dfs(all);

    return st.result;
}

std::size_t naive_search_max(int d, int n) {
    if (d < 1 || n < d)
        throw Error(Errc::BadParameters,
                    "need 1 <= d <= n, got d=" + std::to_string(d) +
                        ", n=" + std::to_string(n));
    auto cands = candidate_words(d, n);
    std::vector<Bits> compat(cands.size(), Bits(cands.size()));
    for (std::size_t a = 0; a < cands.size(); ++a)
        for (std::size_t b = a + 1; b < cands.size(); ++b)
            if (compatible(cands[a], cands[b])) {
                compat[a].set(b);
                compat[b].set(a);
            }
    std::size_t best = 0;
    std::function<void(std::size_t, const Bits&)> dfs =
        [&](std::size_t size, const Bits& allowed) {
            best = std::max(best, size);
            allowed.for_each([&](std::size_t c) {
                Bits next = allowed.intersect(compat[c]);
                next.clear_through(c);
                dfs(size + 1, next);
            });
        };
    Bits all(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c)
        all.set(c);
    dfs(0, all);
    return best;
}

bool oracle_check(const Code& v, int d) {
    const auto& words = v.words();
    for (const auto& w : words) {
        int proper = 0;
        for (int j = 1; j <= v.length(); ++j)
            if (w.at(j) != Letter::Star)
                ++proper;
        if (proper != d)
            return false;
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            int dich = 0, diff = 0;
            for (int j = 1; j <= v.length(); ++j) {
                Letter x = words[a].at(j), y = words[b].at(j);
                if (x != y)
                    ++diff;
                if ((x == Letter::Zero && y == Letter::One) ||
                    (x == Letter::One && y == Letter::Zero))
                    ++dich;
            }
            if (dich != 1 || diff < 2)
                return false;
        }
    }
    return true;
}

Code random_code(int d, int n, std::uint64_t seed, std::size_t target,
                 const RandomCodeOptions& opts) {
    if (d < 1 || n < d)
        throw Error(Errc::BadParameters,
                    "need 1 <= d <= n, got d=" + std::to_string(d) +
                        ", n=" + std::to_string(n));
    std::mt19937_64 rng(seed);
    std::size_t attempts_left =
        opts.max_attempts ? opts.max_attempts : 200 * target + 200;

    std::vector<Word> kept;
    std::vector<int> idx(static_cast<std::size_t>(n));
    while (kept.size() < target && attempts_left > 0) {
        --attempts_left;
        for (int j = 0; j < n; ++j)
            idx[static_cast<std::size_t>(j)] = j;
        std::vector<Letter> letters(static_cast<std::size_t>(n), Letter::Star);
        for (int t = 0; t < d; ++t) {
            std::size_t pick =
                static_cast<std::size_t>(t) +
                static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n - t));
            std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
            letters[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] =
                (rng() & 1) ? Letter::One : Letter::Zero;
        }
        Word cand(std::move(letters));
        bool ok = true;
        for (const auto& w : kept) {
            if (w == cand) {
                ok = false;
                break;
            }
            auto cls = classify_pair(w, cand);
            if (cls.kind == PairClass::Kind::Neighborly)
                continue;
            if (cls.kind == PairClass::Kind::TwinPair && !opts.twin_free)
                continue;
            ok = false;
            break;
        }
        if (ok)
            kept.push_back(std::move(cand));
    }
    return Code(n, std::move(kept));
}

} // namespace ncode
