#pragma once

// uhs-cli: JSON front end over the library. Exit codes: 0 ok, 1 invalid
// input or failed validation, 2 budget exceeded.

#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uhs/uhs.hpp"

namespace uhs::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitBudget = 2;

/// Raised when a run completed but its result failed a validation check.
class validation_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline json rational_json(const Rational& r) {
    return {{"num", big_json(numerator(r))}, {"den", big_json(denominator(r))}, {"value", r.convert_to<double>()}};
}

inline json code_json(code_t v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline json kmer_list(const std::vector<std::uint64_t>& codes, unsigned sigma, unsigned w, bool acgt) {
    const Alphabet alpha(sigma, acgt);
    json out = json::array();
    for (auto c : codes) out.push_back(format_word(decode(c, sigma, w), alpha));
    return out;
}

inline void write_set_file(const std::string& path, const KmerSet& set, bool binary, bool acgt) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    require(static_cast<bool>(f), "cannot open '" + path + "' for writing");
    if (binary)
        write_binary(f, set);
    else
        write_text(f, set, acgt);
    require(static_cast<bool>(f), "failed writing '" + path + "'");
}

inline KmerSet read_set_file(const std::string& path, const Budget& budget) {
    std::ifstream f(path, std::ios::binary);
    require(static_cast<bool>(f), "cannot open '" + path + "'");
    return read_set(f, budget);
}

inline json path_json(const PathReport& r, unsigned sigma, unsigned w, bool acgt) {
    json j;
    j["kind"] = r.acyclic() ? "ACYCLIC" : "CYCLIC";
    if (r.acyclic()) {
        j["longest_vertices"] = r.longest_vertices;
        j["string_length"] = string_length_for(r.longest_vertices, w);
        j["witness"] = kmer_list(r.witness, sigma, w, acgt);
    } else {
        j["longest_vertices"] = nullptr;
        j["cycle_witness"] = kmer_list(r.cycle_witness, sigma, w, acgt);
    }
    return j;
}

/// The sequence argument: digits for any sigma, or ACGT letters for sigma = 4.
inline Word parse_sequence(const std::string& text, unsigned sigma, bool& acgt) {
    acgt = !text.empty() && std::isalpha(static_cast<unsigned char>(text[0]));
    require(!acgt || sigma == 4, "letter sequences need --sigma 4");
    return parse_word(text, Alphabet(sigma, acgt));
}

inline std::string read_sequence_file(const std::string& path) {
    std::ifstream f(path);
    require(static_cast<bool>(f), "cannot open '" + path + "'");
    std::string out, line;
    while (std::getline(f, line)) {
        if (!line.empty() && line[0] == '>') continue;  // FASTA header
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::toupper(c)));
    }
    return out;
}

}  // namespace detail

struct Common {
    std::uint64_t max_nodes = kDefaultMaxNodes;
    std::uint64_t seed = 42;
    unsigned threads = 1;
    bool acgt = false;

    Budget budget() const { return Budget{max_nodes}; }
};

/// Source of a k-mer set: "forbidden", "mykkeltveit", or a set file path.
inline KmerSet load_named_set(const std::string& name, unsigned sigma, unsigned w, const Common& common) {
    if (name == "forbidden") {
        require(sigma > 0 && w > 0, "--set forbidden needs --sigma and --w");
        return build_forbidden_set(sigma, w, common.budget());
    }
    if (name == "mykkeltveit") {
        require(sigma > 0 && w > 0, "--set mykkeltveit needs --sigma and --w");
        return build_mykkeltveit_set(sigma, w, common.budget());
    }
    return detail::read_set_file(name, common.budget());
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Universal hitting sets, selection schemes and decycling sets on de Bruijn graphs", "uhs-cli"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--max-nodes", common.max_nodes, "Node budget for exact computations")->capture_default_str();
    app.add_option("--seed", common.seed, "Seed for randomized estimates")->capture_default_str();
    app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
    app.add_flag("--acgt", common.acgt, "Print sigma=4 k-mers with the letters ACGT");

    std::function<json()> action;
    unsigned sigma = 2, w = 0, k = 0, n = 0, d = 0, l = 0;

    // necklaces
    auto* necklaces = app.add_subcommand("necklaces", "Number of rotation classes of w-mers");
    necklaces->add_option("--sigma", sigma)->required();
    necklaces->add_option("--w", w)->required();
    bool list_classes = false;
    necklaces->add_flag("--list", list_classes, "List class representatives");
    necklaces->callback([&] {
        action = [&] {
            json j{{"sigma", sigma}, {"w", w}, {"necklace_count", detail::code_json(necklace_count(sigma, w))}};
            if (list_classes) {
                const auto t = enumerate_classes(sigma, w, common.budget());
                j["representatives"] = detail::kmer_list(t.representative, sigma, w, common.acgt);
                j["sizes"] = t.size;
            }
            return j;
        };
    });

    // debruijn-seq
    auto* dbseq = app.add_subcommand("debruijn-seq", "Lexicographically least de Bruijn sequence");
    dbseq->add_option("--sigma", sigma)->required();
    dbseq->add_option("--n", n)->required();
    bool cyclic_only = false;
    dbseq->add_flag("--cyclic", cyclic_only, "Print the cycle without the wrap-around suffix");
    dbseq->callback([&] {
        action = [&] {
            require(n >= 1, "--n must be at least 1");
            const Word s = cyclic_only ? debruijn_cycle(sigma, n, common.budget()) : debruijn_sequence(sigma, n, common.budget());
            return json{{"sigma", sigma}, {"n", n}, {"cyclic", cyclic_only}, {"length", s.size()},
                        {"sequence", format_word(s, Alphabet(sigma, common.acgt))}};
        };
    });

    // mykkeltveit
    std::string out_path;
    bool binary = false;
    auto* myk = app.add_subcommand("mykkeltveit", "Build the Mykkeltveit decycling set");
    myk->add_option("--sigma", sigma)->required();
    myk->add_option("--w", w)->required();
    myk->add_option("--out", out_path, "Write the set to this file");
    myk->add_flag("--binary", binary, "Binary set file instead of text");
    myk->callback([&] {
        action = [&] {
            MykkeltveitStats stats;
            const auto m = build_mykkeltveit_set(sigma, w, common.budget(), &stats);
            if (!out_path.empty()) detail::write_set_file(out_path, m, binary, common.acgt);
            const auto r = longest_remaining_path(m);
            json j{{"sigma", sigma},
                   {"w", w},
                   {"cardinality", m.cardinality()},
                   {"necklace_count", detail::code_json(necklace_count(sigma, w))},
                   {"relative_size", detail::rational_json(m.relative_size())},
                   {"decycling", r.acyclic()},
                   {"longest_path", r.acyclic() ? json(r.longest_vertices) : json(nullptr)},
                   {"picks_by_clause", {stats.by_clause[0], stats.by_clause[1], stats.by_clause[2]}}};
            return j;
        };
    });

    // forbidden
    auto* forb = app.add_subcommand("forbidden", "Build the forbidden-word set F");
    forb->add_option("--sigma", sigma)->required();
    forb->add_option("--w", w)->required();
    forb->add_option("--d", d, "Override the forbidden word length");
    forb->add_option("--out", out_path, "Write the set to this file");
    forb->add_flag("--binary", binary, "Binary set file instead of text");
    forb->callback([&] {
        action = [&] {
            const unsigned dd = d ? d : forbidden_d(sigma, w);
            const auto f = build_forbidden_set(sigma, w, dd, common.budget());
            if (!out_path.empty()) detail::write_set_file(out_path, f, binary, common.acgt);
            const auto r = longest_remaining_path(f);
            return json{{"sigma", sigma},
                        {"w", w},
                        {"d", dd},
                        {"cardinality", f.cardinality()},
                        {"predicted_cardinality", detail::big_json(forbidden_set_size(sigma, w, dd))},
                        {"relative_size", detail::rational_json(f.relative_size())},
                        {"survival_probability", detail::rational_json(survival_probability(sigma, dd, w))},
                        {"longest_path", r.acyclic() ? json(r.longest_vertices) : json(nullptr)}};
        };
    });

    // Scheme selection shared by contexts and density.
    struct SchemeArgs {
        bool minimizer = false;
        bool constant = false;
        std::string table_file;
        std::string order_file;
        std::string compatible_set;
    } sa;
    auto add_scheme_options = [&](CLI::App* sub) {
        sub->add_option("--sigma", sigma);
        sub->add_option("--w", w, "Positions per window");
        sub->add_option("--k", k, "k-mer length for minimizers");
        sub->add_flag("--minimizer", sa.minimizer, "Minimizer scheme (lexicographic unless --order)");
        sub->add_flag("--constant", sa.constant, "The scheme f = 0");
        sub->add_option("--table", sa.table_file, "Scheme table file");
        sub->add_option("--order", sa.order_file, "Minimizer order file, one k-mer per line");
        sub->add_option("--compatible", sa.compatible_set, "Compatible minimizer for this set (file, forbidden, mykkeltveit)");
    };
    auto build_scheme = [&](json& info) -> SelectionScheme {
        const int chosen = sa.minimizer + sa.constant + !sa.table_file.empty() + !sa.compatible_set.empty();
        require(chosen == 1, "choose exactly one of --minimizer, --constant, --table, --compatible");
        if (!sa.table_file.empty()) {
            std::ifstream f(sa.table_file);
            require(static_cast<bool>(f), "cannot open '" + sa.table_file + "'");
            auto s = read_table(f, common.budget());
            info = {{"kind", "table"}, {"sigma", s.sigma()}, {"w", s.positions()}};
            return s;
        }
        require(w >= 1, "--w is required");
        if (sa.constant) {
            info = {{"kind", "constant"}, {"sigma", sigma}, {"w", w}};
            return SelectionScheme::constant(sigma, w, 0, common.budget());
        }
        if (sa.minimizer) {
            if (!sa.order_file.empty()) {
                std::ifstream f(sa.order_file);
                require(static_cast<bool>(f), "cannot open '" + sa.order_file + "'");
                unsigned kk = 0;
                auto rank = read_order(f, Alphabet(sigma, sigma == 4 && common.acgt), kk, common.budget());
                require(k == 0 || k == kk, "--k disagrees with the order file");
                k = kk;
                info = {{"kind", "minimizer"}, {"order", sa.order_file}, {"sigma", sigma}, {"k", k}, {"w", w}};
                return SelectionScheme::minimizer(sigma, k, w, std::move(rank), common.budget());
            }
            require(k >= 1, "--k is required for minimizers");
            info = {{"kind", "minimizer"}, {"order", "lexicographic"}, {"sigma", sigma}, {"k", k}, {"w", w}};
            return SelectionScheme::lexicographic_minimizer(sigma, k, w, common.budget());
        }
        const KmerSet u = load_named_set(sa.compatible_set, sigma, k, common);
        auto c = build_compatible_minimizer(u, w, common.budget());
        const char* check = c.check == UhsCheck::Holds ? "holds" : c.check == UhsCheck::Fails ? "fails" : "unverified";
        info = {{"kind", "compatible"}, {"set", sa.compatible_set}, {"sigma", u.sigma()}, {"k", u.w()}, {"w", w},
                {"set_relative_size", detail::rational_json(u.relative_size())}, {"uhs_check", check}};
        return std::move(c.scheme);
    };

    // contexts
    auto* ctx = app.add_subcommand("contexts", "Context set C_f of a scheme");
    add_scheme_options(ctx);
    bool forward = false;
    ctx->add_flag("--forward", forward, "Forward contexts, (window+1)-mers");
    ctx->add_option("--out", out_path, "Write the set to this file");
    ctx->add_flag("--binary", binary, "Binary set file instead of text");
    ctx->callback([&] {
        action = [&] {
            json info;
            const auto f = build_scheme(info);
            const auto c = forward ? build_context_set_forward(f, common.budget()) : build_context_set_local(f, common.budget());
            if (!out_path.empty()) detail::write_set_file(out_path, c.set, binary, common.acgt);
            const auto r = longest_remaining_path(c.set);
            const auto dens = expected_density(f, {common.budget(), 10'000'000, common.seed});
            return json{{"scheme", info},
                        {"source", c.source},
                        {"context_length", c.set.w()},
                        {"cardinality", c.set.cardinality()},
                        {"relative_size", detail::rational_json(c.set.relative_size())},
                        {"expected_density", detail::rational_json(dens.density)},
                        {"longest_path", r.acyclic() ? json(r.longest_vertices) : json(nullptr)},
                        {"is_uhs", is_uhs(c.set, f.positions())}};
        };
    });

    // density
    auto* dens = app.add_subcommand("density", "Particular or expected density of a scheme");
    add_scheme_options(dens);
    std::string seq, seq_file;
    bool cyclic = false;
    std::uint64_t samples = 10'000'000;
    bool force_estimate = false;
    dens->add_option("--seq", seq, "Sequence (digits, or ACGT for sigma 4)");
    dens->add_option("--seq-file", seq_file, "Sequence file (plain or FASTA)");
    dens->add_flag("--cyclic", cyclic, "Treat the sequence as cyclic");
    dens->add_option("--samples", samples, "Random symbols for the estimate")->capture_default_str();
    dens->add_flag("--estimate", force_estimate, "Estimate on random symbols even when exact fits");
    dens->callback([&] {
        action = [&] {
            json info;
            const auto f = build_scheme(info);
            require(seq.empty() || seq_file.empty(), "use either --seq or --seq-file");
            if (!seq_file.empty()) seq = detail::read_sequence_file(seq_file);
            DensityResult r;
            if (!seq.empty()) {
                bool letters = false;
                const Word s = detail::parse_sequence(seq, f.sigma(), letters);
                r = cyclic ? cyclic_density(f, s) : particular_density(f, s);
                if (cyclic) r.mode = DensityResult::Mode::Particular;
            } else if (force_estimate) {
                r = estimate_density(f, samples, common.seed);
            } else {
                r = expected_density(f, {common.budget(), samples, common.seed});
            }
            const char* mode = r.mode == DensityResult::Mode::Particular      ? "PARTICULAR"
                               : r.mode == DensityResult::Mode::ExpectedExact ? "EXPECTED_EXACT"
                                                                              : "EXPECTED_ESTIMATE";
            json j{{"scheme", info},
                   {"mode", mode},
                   {"selected", r.selected},
                   {"windows", r.windows},
                   {"denominator", r.denominator},
                   {"density", detail::rational_json(r.density)}};
            if (r.mode == DensityResult::Mode::ExpectedEstimate) {
                j["std_error"] = r.std_error;
                j["samples"] = samples;
                j["seed"] = common.seed;
            }
            if (r.mode == DensityResult::Mode::ExpectedExact) j["debruijn_order"] = r.order;
            if (!seq.empty() && !cyclic) j["positions"] = r.positions;
            return j;
        };
    });

    // check-uhs and longest-path
    std::string set_name;
    auto* check = app.add_subcommand("check-uhs", "Decycling and remaining path length of a set");
    check->add_option("--set", set_name, "forbidden, mykkeltveit, or a set file")->required();
    check->add_option("--sigma", sigma);
    check->add_option("--w", w);
    check->add_option("--l", l, "Also test whether every walk of l vertices is hit");
    check->callback([&] {
        action = [&] {
            const auto s = load_named_set(set_name, sigma, w, common);
            const auto r = longest_remaining_path(s);
            json j{{"set", set_name},
                   {"sigma", s.sigma()},
                   {"w", s.w()},
                   {"cardinality", s.cardinality()},
                   {"relative_size", detail::rational_json(s.relative_size())},
                   {"decycling", r.acyclic()},
                   {"longest_path", r.acyclic() ? json(r.longest_vertices) : json(nullptr)}};
            if (l) j["is_uhs"] = r.acyclic() && r.longest_vertices < l;
            if (l) j["l"] = l;
            return j;
        };
    });
    auto* lp = app.add_subcommand("longest-path", "Longest path avoiding a set, with a witness");
    lp->add_option("--set", set_name, "forbidden, mykkeltveit, or a set file")->required();
    lp->add_option("--sigma", sigma);
    lp->add_option("--w", w);
    lp->callback([&] {
        action = [&] {
            const auto s = load_named_set(set_name, sigma, w, common);
            json j = detail::path_json(longest_remaining_path(s), s.sigma(), s.w(), common.acgt);
            j["set"] = set_name;
            j["sigma"] = s.sigma();
            j["w"] = s.w();
            return j;
        };
    });

    // long-path
    std::string csv_path;
    auto* longp = app.add_subcommand("long-path", "Quadruple construction of a long path avoiding M");
    longp->add_option("--sigma", sigma)->capture_default_str();
    longp->add_option("--w", w)->required();
    longp->add_option("--out", out_path, "Write the vertices, one per line");
    longp->add_option("--csv", csv_path, "Write step,re,im,im_sign per vertex");
    longp->callback([&] {
        action = [&] {
            const auto p = trace_long_path(sigma, w);
            const Alphabet alpha(sigma, common.acgt);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                require(static_cast<bool>(f), "cannot open '" + out_path + "' for writing");
                for (const auto& v : p.vertices) f << format_word(v, alpha) << '\n';
            }
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                require(static_cast<bool>(f), "cannot open '" + csv_path + "' for writing");
                f << "step,re,im,im_sign\n";
                f.precision(17);
                for (std::size_t i = 0; i < p.embeddings.size(); ++i)
                    f << i << ',' << static_cast<double>(p.embeddings[i].re) << ','
                      << static_cast<double>(p.embeddings[i].im) << ',' << to_string(p.embeddings[i].im_sign) << '\n';
            }
            json quads = json::array();
            for (const auto& q : p.quadruples) quads.push_back(q);
            json validation{{"ok", p.validation.ok}};
            if (!p.validation.ok) {
                validation["first_bad_step"] = *p.validation.first_bad_step;
                validation["reason"] = p.validation.reason;
            }
            json j{{"sigma", sigma},
                   {"w", w},
                   {"vertices", p.vertices.size()},
                   {"quadruples", quads},
                   {"vertices_over_w2", static_cast<double>(p.vertices.size()) / (double(w) * w)},
                   {"validation", validation}};
            if (!p.validation.ok) {
                out << j.dump(2) << '\n';
                throw validation_failure("long path fails at step " + std::to_string(*p.validation.first_bad_step) +
                                         ": " + p.validation.reason);
            }
            return j;
        };
    });

    // mds-count
    bool emit = false;
    unsigned max_w = kMdsDefaultMaxW;
    auto* mds = app.add_subcommand("mds-count", "Count minimum decycling sets (sigma 2)");
    mds->add_option("--sigma", sigma)->capture_default_str();
    mds->add_option("--w", w)->required();
    mds->add_flag("--emit", emit, "Stream every set in text form before the census");
    mds->add_option("--max-w", max_w, "Raise the cap to allow w = 6 or 7")->capture_default_str();
    mds->callback([&] {
        action = [&] {
            std::function<void(const KmerSet&)> sink;
            if (emit) sink = [&](const KmerSet& s) { write_text(out, s); };
            const auto c = enumerate_mds(sigma, w, sink, max_w);
            return json{{"sigma", c.sigma},
                        {"w", c.w},
                        {"mds_count", c.mds_count},
                        {"nodes_explored", c.nodes_explored},
                        {"prunes", c.prunes},
                        {"necklace_count", detail::code_json(necklace_count(2, w))}};
        };
    });

    // fsm
    std::vector<std::uint64_t> ws;
    auto* fsm = app.add_subcommand("fsm", "Automaton for 0^d: matrix, survival probabilities, dominant root");
    fsm->add_option("--sigma", sigma)->required();
    fsm->add_option("--d", d)->required();
    fsm->add_option("--w", ws, "Word lengths for survival probabilities");
    fsm->callback([&] {
        action = [&] {
            require(d >= 1 && d <= 64, "--d must be in [1, 64]");
            const auto a = fsm_matrix(sigma, d);
            json rows = json::array();
            for (unsigned i = 0; i < d; ++i) {
                json row = json::array();
                for (unsigned jj = 0; jj < d; ++jj) row.push_back(detail::rational_json(a(i, jj)));
                rows.push_back(row);
            }
            json surv = json::array();
            for (auto len : ws) {
                require(len <= 100000, "--w too large");
                const auto p = survival_probability(sigma, d, len);
                surv.push_back({{"w", len}, {"probability", detail::rational_json(p)},
                                {"avoiders", detail::big_json(numerator(p * Rational(big_pow(sigma, static_cast<unsigned>(len)))))}});
            }
            json root;
            root["bracket_holds"] = root_bracket_holds(sigma, d);
            if (root_bracket_holds(sigma, d)) {
                const auto r = dominant_root(sigma, d);
                root["lambda"] = static_cast<double>(r.lambda);
                root["lower"] = static_cast<double>(r.lower);
                root["upper"] = static_cast<double>(r.upper);
                root["iterations"] = r.iterations;
                root["eigen_residual"] = static_cast<double>(eigen_residual(sigma, d, r.lambda));
            }
            return json{{"sigma", sigma}, {"d", d}, {"matrix", rows}, {"survival", surv}, {"dominant_root", root}};
        };
    });

    std::vector<const char*> argv{"uhs-cli"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const budget_error& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    }

    try {
        const json result = action();
        out << result.dump(2) << '\n';
        return kExitOk;
    } catch (const budget_error& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const validation_failure& e) {
        err << "validation failed: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace uhs::cli
