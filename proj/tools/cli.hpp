#pragma once

// Command-line front end. Every subcommand only parses flags, calls the library and renders
// what it returns.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wnc/wnc.hpp"

namespace wnc::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

inline std::vector<DecompKind> parse_kinds(const std::string& text) {
    std::vector<DecompKind> kinds;
    for (const auto& name : split(text, ',')) {
        const auto k = parse_kind(name);
        if (!k) throw usage_error("unknown kind '" + name + "'");
        kinds.push_back(*k);
    }
    if (kinds.empty()) throw usage_error("no kinds given");
    return kinds;
}

inline Format parse_format_or_throw(const std::string& text) {
    const auto f = parse_format(text);
    if (!f) throw usage_error("unknown format '" + text + "' (expected table, json or csv)");
    return *f;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw usage_error("range must look like a..b");
    try {
        const auto lo = std::stoull(text.substr(0, dots));
        const auto hi = std::stoull(text.substr(dots + 2));
        if (lo > hi || lo < 1) throw usage_error("range " + text + " is empty");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw usage_error("range must look like a..b");
    }
}

/// Notion for a kind; S-restricted kinds use the given pool, defaulting to {0, 1}.
inline Notion notion_for(const RingTable& r, DecompKind kind, const std::string& subset) {
    if (!traits(kind).restricted) return kind;
    if (subset.empty()) return Notion(kind, Subset(r, {r.zero(), r.one()}));
    std::vector<ElementId> members;
    for (const auto& s : split(subset, ',')) members.push_back(r.element(std::stoull(s)));
    return Notion(kind, Subset(r, std::move(members)));
}

}  // namespace detail

/// Runs the CLI with argv-style arguments (args[0] is the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite ring cleanness toolkit: weak nil clean and related decompositions", "wnc"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    bool plain = false;
    app.add_flag("--plain", plain, "Suppress the version banner in table output");

    std::string ring_text, kinds_text = "weak-nil-clean,nil-clean", subset_text, format_text = "table";
    bool expect = false;

    auto* classify = app.add_subcommand("classify", "Decide cleanness notions for a whole ring");
    classify->add_option("--ring", ring_text, "Ring expression")->required();
    classify->add_option("--kinds", kinds_text, "Comma-separated kinds");
    classify->add_option("--subset", subset_text, "Idempotent pool S for s-* kinds (default 0,1 i.e. {zero, one})");
    classify->add_option("--format", format_text, "table | json | csv");
    classify->add_flag("--expect", expect, "Exit 1 unless every kind holds");

    std::size_t index = 0;
    auto* element = app.add_subcommand("element", "Decompose a single element");
    element->add_option("--ring", ring_text, "Ring expression")->required();
    element->add_option("--index", index, "Element index")->required();
    element->add_option("--kinds", kinds_text, "Comma-separated kinds");
    element->add_option("--subset", subset_text, "Idempotent pool S for s-* kinds");
    element->add_option("--format", format_text, "table | json | csv");
    element->add_flag("--expect", expect, "Exit 1 unless every kind decomposes the element");

    std::string range_text;
    auto* sweep = app.add_subcommand("sweep", "Classify Z(n) over a range of n");
    sweep->add_option("--zn", range_text, "Range a..b")->required();
    sweep->add_option("--kinds", kinds_text, "Comma-separated kinds");
    sweep->add_option("--format", format_text, "table | json | csv");

    std::string corpus_text = "default", checks_text = "all", output_path;
    bool list_checks = false;
    auto* verify = app.add_subcommand("verify", "Run the theorem suite over a corpus");
    verify->add_option("--corpus", corpus_text, "'default' or a corpus file path");
    verify->add_option("--checks", checks_text, "'all' or comma-separated check ids");
    verify->add_option("--format", format_text, "table | json | csv");
    verify->add_option("--output", output_path, "Write the report to this file");
    verify->add_flag("--list-checks", list_checks, "Print the check registry and traceability table");

    std::string what = "structure";
    auto* dump = app.add_subcommand("dump", "Print operation tables or the structure of a ring");
    dump->add_option("--ring", ring_text, "Ring expression")->required();
    dump->add_option("--what", what, "tables | structure");
    dump->add_option("--format", format_text, "table | json | csv (structure only)");

    std::vector<const char*> argv;
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
        err << "wnc: " << e.what() << "\n" << kGrammarSynopsis;
        return kExitUsage;
    }

    const auto opts = BuildOptions::from_env();
    auto emit = [&](const Report& report, Format fmt) {
        if (fmt == Format::Table && !plain) out << "wnc " << kVersion << "\n";
        out << render_report(report, fmt);
    };

    try {
        const auto fmt = detail::parse_format_or_throw(format_text);

        if (classify->parsed()) {
            const auto r = build(ring_text, opts);
            const StructureCache s(r);
            bool all = true;
            if (fmt == Format::Json) {
                Json arr = Json::array();
                for (auto k : detail::parse_kinds(kinds_text)) {
                    const auto v = ring_verdict(r, s, detail::notion_for(r, k, subset_text));
                    all = all && v.holds;
                    arr.push_back(verdict_json(r, v));
                }
                out << arr.dump(2) << "\n";
            } else {
                Report rep{{"ring", "kind", "holds", "witness"}, {}};
                for (auto k : detail::parse_kinds(kinds_text)) {
                    const auto v = ring_verdict(r, s, detail::notion_for(r, k, subset_text));
                    all = all && v.holds;
                    rep.rows.push_back(Json{{"ring", r.label()},
                                            {"kind", kind_name(k)},
                                            {"holds", v.holds},
                                            {"witness", v.witness_failure ? Json(v.witness_failure->index) : Json()}});
                }
                emit(rep, fmt);
            }
            return expect && !all ? kExitNegative : kExitOk;
        }

        if (element->parsed()) {
            const auto r = build(ring_text, opts);
            const StructureCache s(r);
            const auto x = r.element(index);
            Report rep{{"ring", "x", "kind", "decomposable", "e", "companion", "sign", "commutes"}, {}};
            bool all = true;
            for (auto k : detail::parse_kinds(kinds_text)) {
                const auto c = find_decomp(r, s, x, detail::notion_for(r, k, subset_text));
                all = all && c.has_value();
                Json row{{"ring", r.label()}, {"x", x.index}, {"kind", kind_name(k)}, {"decomposable", c.has_value()}};
                if (c) {
                    row["e"] = c->idempotent.index;
                    row["companion"] = c->companion.index;
                    row["sign"] = sign_symbol(c->sign);
                    row["commutes"] = c->commutes;
                }
                rep.rows.push_back(std::move(row));
            }
            emit(rep, fmt);
            return expect && !all ? kExitNegative : kExitOk;
        }

        if (sweep->parsed()) {
            const auto [lo, hi] = detail::parse_range(range_text);
            const auto kinds = detail::parse_kinds(kinds_text);
            const bool both = std::find(kinds.begin(), kinds.end(), DecompKind::WeakNilClean) != kinds.end() &&
                              std::find(kinds.begin(), kinds.end(), DecompKind::NilClean) != kinds.end();
            Report rep{{"n"}, {}};
            for (auto k : kinds) rep.columns.push_back(kind_name(k));
            if (both) rep.columns.push_back("weak_not_nil");
            for (auto n = lo; n <= hi; ++n) {
                const auto r = zn(n, opts);
                const StructureCache s(r);
                Json row{{"n", n}};
                for (auto k : kinds) row[kind_name(k)] = holds(r, s, detail::notion_for(r, k, ""));
                if (both)
                    row["weak_not_nil"] =
                        row["weak-nil-clean"].get<bool>() && !row["nil-clean"].get<bool>();
                rep.rows.push_back(std::move(row));
            }
            emit(rep, fmt);
            return kExitOk;
        }

        if (verify->parsed()) {
            if (list_checks) {
                out << traceability_markdown();
                return kExitOk;
            }
            CorpusSpec corpus;
            if (corpus_text == "default") {
                corpus = default_corpus();
            } else {
                std::ifstream in(corpus_text);
                if (!in) throw usage_error("cannot open corpus file " + corpus_text);
                corpus = parse_corpus(in);
            }
            std::vector<std::string> ids;
            if (checks_text != "all") ids = detail::split(checks_text, ',');
            const auto suite = run_suite(corpus, ids, opts);
            const auto text = render_report(suite_report(suite), fmt);
            if (output_path.empty()) {
                if (fmt == Format::Table && !plain) out << "wnc " << kVersion << "\n";
                out << text;
            } else {
                std::ofstream file(output_path, std::ios::binary);
                if (!file) throw usage_error("cannot write " + output_path);
                file << text;
                out << suite.count(Outcome::Pass) << " pass, " << suite.count(Outcome::NotApplicable)
                    << " not-applicable, " << suite.count(Outcome::Fail) << " fail, " << suite.count(Outcome::Error)
                    << " error\n";
            }
            return suite.ok() ? kExitOk : kExitNegative;
        }

        if (dump->parsed()) {
            const auto r = build(ring_text, opts);
            if (what == "tables") {
                write_tables_csv(out, r);
                return kExitOk;
            }
            if (what != "structure") throw usage_error("--what must be tables or structure");
            const StructureCache s(r);
            Report rep{{"index", "element", "unit", "inverse", "idempotent", "nilpotency", "radical"}, {}};
            for (auto x : r.elements()) {
                const auto inv = s.inverse(x);
                rep.rows.push_back(Json{{"index", x.index},
                                        {"element", r.name(x)},
                                        {"unit", s.is_unit(x)},
                                        {"inverse", inv ? Json(inv->index) : Json()},
                                        {"idempotent", s.is_idempotent(x)},
                                        {"nilpotency", s.nilpotency_index(x)},
                                        {"radical", s.in_radical(x)}});
            }
            emit(rep, fmt);
            return kExitOk;
        }
    } catch (const syntax_error& e) {
        err << "wnc: syntax error: " << e.what() << "\n" << kGrammarSynopsis;
        return kExitUsage;
    } catch (const capacity_error& e) {
        err << "wnc: " << e.what() << " (set WNC_SIZE_BUDGET to raise it)\n";
        return kExitUsage;
    } catch (const error& e) {
        err << "wnc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "wnc: bad argument: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wnc::cli
