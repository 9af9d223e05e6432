#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncode/code.hpp"
#include "ncode/inflation.hpp"
#include "ncode/search.hpp"
#include "ncode/simplex.hpp"
#include "ncode/transform.hpp"
#include "ncode/word.hpp"

namespace {

constexpr int kOk = 0;       // property holds / success
constexpr int kFail = 1;     // property fails; report on stdout
constexpr int kUsage = 2;    // malformed input or flags

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ncode::Error(ncode::Errc::ParseFailure,
                           "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ncode::Code load_code(const std::string& path) {
    return ncode::Code::parse(read_file(path));
}

std::string fmt_list(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(xs[k]);
    }
    return out;
}

void print_code(const ncode::Code& code) { std::cout << code.str(); }

int run_check(const std::string& path, std::optional<int> d, bool neighborly,
              bool twin_free) {
    auto code = load_code(path);
    auto rep = ncode::validate(code);
    std::cout << "words: " << code.size() << '\n';
    std::cout << "length: " << code.length() << '\n';
    std::cout << "code: " << (rep.is_code ? "true" : "false") << '\n';
    std::cout << "neighborly: " << (rep.is_neighborly ? "true" : "false")
              << '\n';
    if (rep.uniform_prop)
        std::cout << "d: " << *rep.uniform_prop << '\n';
    else
        std::cout << "d: mixed\n";
    std::cout << "twin_pairs: " << rep.twin_pair_count << '\n';
    for (auto [a, b] : rep.twin_pairs)
        std::cout << "twin_pair: " << a << ',' << b << '\n';
    if (rep.not_code_witness)
        std::cout << "not_code_witness: " << rep.not_code_witness->first << ','
                  << rep.not_code_witness->second << '\n';
    if (rep.not_neighborly_witness)
        std::cout << "not_neighborly_witness: "
                  << rep.not_neighborly_witness->first << ','
                  << rep.not_neighborly_witness->second << '\n';
    ncode::Requirements req;
    req.d = d;
    req.neighborly = neighborly;
    req.twin_free = twin_free;
    std::string why;
    if (ncode::meets(rep, req, &why)) {
        std::cout << "result: ok\n";
        return kOk;
    }
    std::cout << "result: fail (" << why << ")\n";
    return kFail;
}

int run_volume(const std::string& path) {
    auto code = load_code(path);
    try {
        std::cout << ncode::volume(code).str() << '\n';
    } catch (const ncode::PairError& e) {
        std::cout << "not a code: rows " << e.row_a() << ',' << e.row_b()
                  << '\n';
        return kFail;
    }
    return kOk;
}

int run_slice(const std::string& path, int j, const std::string& letter) {
    auto code = load_code(path);
    if (letter.size() != 1 || !ncode::letter_from_char(letter[0]))
        throw ncode::Error(ncode::Errc::BadParameters,
                           "--letter must be one of 0, 1, *");
    print_code(ncode::slice(code, j, *ncode::letter_from_char(letter[0])));
    return kOk;
}

int run_partition(const std::string& path, int j) {
    auto code = load_code(path);
    try {
        auto part = ncode::partition_at(code, j);
        std::cout << "pivot: " << part.pivot << '\n';
        std::cout << "C0: " << fmt_list(part.c0) << '\n';
        std::cout << "C1: " << fmt_list(part.c1) << '\n';
        std::cout << "D: " << fmt_list(part.d) << '\n';
    } catch (const ncode::Error& e) {
        if (e.code() == ncode::Errc::NotNeighborly) {
            std::cout << "not neighborly: " << e.what() << '\n';
            return kFail;
        }
        if (e.code() == ncode::Errc::LemmaViolation) {
            std::cout << "lemma violation: " << e.what() << '\n';
            return kFail;
        }
        throw;
    }
    return kOk;
}

int run_standardize(const std::string& path) {
    auto code = load_code(path);
    try {
        auto [out, info] = ncode::standardize(code);
        std::cout << "transform: " << info.transform.str() << '\n';
        std::cout << "s: " << info.s << '\n';
        std::cout << "r: " << info.r << '\n';
        std::cout << "sizes: " << info.size_zero << ',' << info.size_one << ','
                  << info.size_star << '\n';
        std::cout << '\n';
        print_code(out);
    } catch (const ncode::Error& e) {
        if (e.code() == ncode::Errc::NotNeighborly ||
            e.code() == ncode::Errc::SliceTooSmall ||
            e.code() == ncode::Errc::InternalLemmaViolation) {
            std::cout << ncode::errc_name(e.code()) << ": " << e.what() << '\n';
            return kFail;
        }
        throw;
    }
    return kOk;
}

int run_iso(const std::string& path_a, const std::string& path_b) {
    auto a = load_code(path_a);
    auto b = load_code(path_b);
    try {
        auto t = ncode::are_isomorphic(a, b);
        if (t) {
            std::cout << t->str() << '\n';
            return kOk;
        }
        std::cout << "not isomorphic\n";
        return kFail;
    } catch (const ncode::Error& e) {
        if (e.code() == ncode::Errc::LengthMismatch ||
            e.code() == ncode::Errc::SizeMismatch) {
            std::cout << "not isomorphic: " << e.what() << '\n';
            return kFail;
        }
        throw;
    }
}

int run_canon(const std::string& path) {
    auto code = load_code(path);
    auto res = ncode::canonical_form(code);
    std::cout << "transform: " << res.transform.str() << '\n';
    std::cout << '\n';
    print_code(res.code);
    return kOk;
}

int run_inflate(const std::string& path, const std::vector<int>& order,
                const std::vector<int>& delta, int tie_break, bool trace) {
    auto code = load_code(path);
    std::optional<std::vector<int>> d;
    if (!delta.empty())
        d = delta;
    ncode::InflateOptions opts;
    opts.balanced_tie_break = tie_break;
    try {
        auto res = ncode::inflate(code, order, d, opts);
        if (trace) {
            std::cout << "order: " << fmt_list(res.trace.order) << '\n';
            std::cout << "delta: " << fmt_list(res.trace.realized_delta)
                      << '\n';
            std::cout << "states: ";
            for (std::size_t k = 0; k < res.trace.step_states.size(); ++k) {
                if (k)
                    std::cout << ',';
                std::cout << ncode::advantage_name(res.trace.step_states[k]);
            }
            std::cout << '\n';
            for (std::size_t r = 0; r < res.trace.fates.size(); ++r) {
                const auto& fate = res.trace.fates[r];
                std::cout << "word " << (r + 1) << ": ";
                switch (fate.kind) {
                case ncode::WordFate::Kind::Unmodified:
                    std::cout << "unmodified " << code.word(r).str();
                    break;
                case ncode::WordFate::Kind::Modified:
                    std::cout << "modified " << fate.final_word->str();
                    break;
                case ncode::WordFate::Kind::Removed:
                    std::cout << (fate.modified_before_removal
                                      ? "modified-removed step="
                                      : "removed step=")
                              << *fate.removed_step;
                    break;
                }
                std::cout << '\n';
            }
            std::cout << '\n';
        }
        print_code(res.code);
    } catch (const ncode::InvalidChoiceError& e) {
        std::cout << "invalid choice: position=" << e.position()
                  << " delta=" << e.bit() << " vol0=" << e.vol0().str()
                  << " vol1=" << e.vol1().str();
        if (e.step())
            std::cout << " step=" << e.step();
        std::cout << '\n';
        return kFail;
    }
    return kOk;
}

int run_inflate_all(const std::string& path, const std::vector<int>& positions,
                    std::size_t limit) {
    auto code = load_code(path);
    auto outcomes = ncode::inflate_all(code, positions, limit);
    std::cout << "outcomes: " << outcomes.size() << '\n';
    for (const auto& outcome : outcomes) {
        std::cout << '\n';
        print_code(outcome);
    }
    return kOk;
}

int run_corollary(const std::string& path, bool force, std::size_t limit) {
    auto code = load_code(path);
    auto rep = ncode::verify_structure_corollary(code, force, limit);
    std::cout << "hypotheses: "
              << (rep.hypotheses_met ? "satisfied" : "unsatisfied") << '\n';
    for (const auto& clause : rep.unmet)
        std::cout << "unmet: " << clause << '\n';
    if (rep.d)
        std::cout << "d: " << rep.d << '\n';
    if (rep.d)
        std::cout << "M: " << rep.slack.str() << '\n';
    if (!rep.inflation_set.empty())
        std::cout << "C0: " << fmt_list(rep.inflation_set) << '\n';
    if (rep.enumerated) {
        std::cout << "outcomes: " << rep.outcome_count << '\n';
        std::cout << "all_match: " << (rep.all_outcomes_match ? "true" : "false")
                  << '\n';
        std::cout << "star_nonempty: "
                  << (rep.star_slice_nonempty ? "true" : "false") << '\n';
        std::cout << "vol_increases: "
                  << (rep.vol_strictly_increases ? "true" : "false") << '\n';
        if (rep.d) {
            std::cout << "star_small: "
                      << (rep.star_slice_small ? "true" : "false") << '\n';
            std::cout << "zero_large: "
                      << (rep.zero_slice_large ? "true" : "false") << '\n';
            std::cout << "one_large: "
                      << (rep.one_slice_large ? "true" : "false") << '\n';
        }
        std::cout << "conclusions: " << (rep.conclusions_hold ? "hold" : "fail")
                  << '\n';
        if (rep.counterexample) {
            std::cout << "counterexample:\n";
            print_code(*rep.counterexample);
        }
    }
    return rep.hypotheses_met && rep.conclusions_hold ? kOk : kFail;
}

int run_search(int d, std::optional<int> n, const std::string& n_range,
               std::uint64_t node_limit, std::size_t witnesses) {
    int from = 0, to = 0;
    if (n && !n_range.empty())
        throw ncode::Error(ncode::Errc::BadParameters,
                           "--n and --n-range are mutually exclusive");
    if (n) {
        from = to = *n;
    } else if (!n_range.empty()) {
        auto dots = n_range.find("..");
        if (dots == std::string::npos)
            throw ncode::Error(ncode::Errc::BadParameters,
                               "--n-range must look like a..b");
        try {
            from = std::stoi(n_range.substr(0, dots));
            to = std::stoi(n_range.substr(dots + 2));
        } catch (const std::exception&) {
            throw ncode::Error(ncode::Errc::BadParameters,
                               "--n-range must look like a..b");
        }
        if (from > to)
            throw ncode::Error(ncode::Errc::BadParameters,
                               "--n-range must be ascending");
    } else {
        throw ncode::Error(ncode::Errc::BadParameters,
                           "one of --n or --n-range is required");
    }
    ncode::SearchOptions opts;
    opts.node_limit = node_limit;
    opts.collect_witnesses = witnesses > 0;
    opts.witness_limit = std::max<std::size_t>(witnesses, 1);
    bool all_exhaustive = true;
    for (int cur = from; cur <= to; ++cur) {
        if (cur != from)
            std::cout << '\n';
        auto res = ncode::search_max(d, cur, opts);
        std::cout << "d=" << res.d << " n=" << res.n << " max=" << res.max_size
                  << " exhaustive=" << (res.exhaustive ? "true" : "false")
                  << '\n';
        for (std::size_t k = 0; k < res.witnesses.size() && k < witnesses; ++k) {
            std::cout << '\n';
            print_code(res.witnesses[k]);
        }
        all_exhaustive = all_exhaustive && res.exhaustive;
    }
    return all_exhaustive ? kOk : kFail;
}

int run_simplex2code(const std::string& path) {
    auto family = ncode::parse_simplices(read_file(path));
    auto built = ncode::build_code(family);
    print_code(built.code);
    std::cout << '\n';
    std::cout << "legend:\n";
    for (std::size_t k = 0; k < built.hyperplanes.size(); ++k)
        std::cout << (k + 1) << ": " << built.hyperplanes[k].str() << '\n';
    return kOk;
}

int run_neighborly2d(const std::string& path) {
    auto family = ncode::parse_simplices(read_file(path));
    if (family.size() != 2)
        throw ncode::Error(ncode::Errc::BadParameters,
                           "expected exactly 2 simplices, got " +
                               std::to_string(family.size()));
    bool neighborly = ncode::neighborly_pair_2d(family[0], family[1]);
    std::cout << (neighborly ? "true" : "false") << '\n';
    return neighborly ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neighborly-code toolkit: validation, volumes, partitions, "
                 "standard form, isomorphism, inflation, exhaustive search, "
                 "and the simplex-family bridge."};
    app.require_subcommand(1);

    std::string file, file_b;
    std::optional<int> check_d;
    bool flag_neighborly = false, flag_twin_free = false;
    auto* check = app.add_subcommand("check", "Validate a code file");
    check->add_option("file", file)->required();
    check->add_option("--d", check_d, "require a d-code with this d");
    check->add_flag("--neighborly", flag_neighborly, "require neighborliness");
    check->add_flag("--twin-free", flag_twin_free, "require no twin pairs");

    auto* volume = app.add_subcommand("volume", "Exact box volume of a code");
    volume->add_option("file", file)->required();

    int pos_j = 0;
    std::string slice_letter;
    auto* slice = app.add_subcommand("slice", "Subcode with a fixed letter");
    slice->add_option("file", file)->required();
    slice->add_option("--j", pos_j, "column")->required();
    slice->add_option("--letter", slice_letter, "0, 1 or *")->required();

    auto* partition = app.add_subcommand("partition",
                                         "Column split at a pivot");
    partition->add_option("file", file)->required();
    partition->add_option("--j", pos_j, "pivot column")->required();

    auto* standardize = app.add_subcommand("standardize",
                                           "Normalize to standard form");
    standardize->add_option("file", file)->required();

    auto* iso = app.add_subcommand("iso", "Isomorphism test for two codes");
    iso->add_option("file_a", file)->required();
    iso->add_option("file_b", file_b)->required();

    auto* canon = app.add_subcommand("canon", "Orbit-minimal representative");
    canon->add_option("file", file)->required();

    std::vector<int> order, delta;
    int tie_break = 0;
    bool trace = false;
    auto* inflate = app.add_subcommand("inflate", "Inflate along an order");
    inflate->add_option("file", file)->required();
    inflate->add_option("--order", order, "positions, e.g. 3,2,1")
        ->required()
        ->delimiter(',');
    inflate->add_option("--delta", delta, "bits, e.g. 0,0,1")->delimiter(',');
    inflate->add_option("--tie-break", tie_break,
                        "bit used on balanced steps when --delta is omitted");
    inflate->add_flag("--trace", trace, "print per-word fates");

    std::vector<int> positions;
    std::size_t limit = 8;
    auto* inflate_all = app.add_subcommand("inflate-all",
                                           "All inflation outcomes over a set");
    inflate_all->add_option("file", file)->required();
    inflate_all->add_option("--positions", positions, "e.g. 1,2,3")
        ->required()
        ->delimiter(',');
    inflate_all->add_option("--limit", limit, "max position-set size");

    bool force = false;
    auto* corollary = app.add_subcommand(
        "corollary", "Check the inflation structure corollary");
    corollary->add_option("file", file)->required();
    corollary->add_flag("--force-enumeration", force,
                        "enumerate even when hypotheses fail");
    corollary->add_option("--limit", limit, "max inflation-set size");

    int search_d = 0;
    std::optional<int> search_n;
    std::string n_range;
    std::uint64_t node_limit = 100'000'000;
    std::size_t witnesses = 1;
    auto* search = app.add_subcommand(
        "search", "Maximum neighborly twin-free d-code size");
    search->add_option("--d", search_d)->required();
    search->add_option("--n", search_n);
    search->add_option("--n-range", n_range, "a..b inclusive sweep");
    search->add_option("--node-limit", node_limit);
    search->add_option("--witnesses", witnesses,
                       "how many witnesses to print per n");

    auto* simplex2code = app.add_subcommand(
        "simplex2code", "Code of a simplex family");
    simplex2code->add_option("file", file)->required();

    auto* neighborly2d = app.add_subcommand(
        "neighborly2d", "Exact neighborliness of two triangles");
    neighborly2d->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (check->parsed())
            return run_check(file, check_d, flag_neighborly, flag_twin_free);
        if (volume->parsed())
            return run_volume(file);
        if (slice->parsed())
            return run_slice(file, pos_j, slice_letter);
        if (partition->parsed())
            return run_partition(file, pos_j);
        if (standardize->parsed())
            return run_standardize(file);
        if (iso->parsed())
            return run_iso(file, file_b);
        if (canon->parsed())
            return run_canon(file);
        if (inflate->parsed())
            return run_inflate(file, order, delta, tie_break, trace);
        if (inflate_all->parsed())
            return run_inflate_all(file, positions, limit);
        if (corollary->parsed())
            return run_corollary(file, force, limit);
        if (search->parsed())
            return run_search(search_d, search_n, n_range, node_limit,
                              witnesses);
        if (simplex2code->parsed())
            return run_simplex2code(file);
        if (neighborly2d->parsed())
            return run_neighborly2d(file);
    } catch (const ncode::Error& e) {
        std::cerr << "error: " << ncode::errc_name(e.code()) << ": " << e.what()
                  << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
