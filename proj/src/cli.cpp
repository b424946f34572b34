#include "probcheck/cli.hpp"

#include "probcheck/ambiguity.hpp"
#include "probcheck/corpus.hpp"
#include "probcheck/exact.hpp"
#include "probcheck/mc.hpp"
#include "probcheck/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

namespace probcheck {
namespace {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

struct Options {
    std::string format = "text";
    std::int64_t max_enumeration = kDefaultEnumerationCap;
    std::uint64_t trials = 1'000'000;
    std::string seed_text = "0";
    double z = 5.0;
    unsigned workers = 1;

    std::uint64_t resolve_seed() const {
        if (seed_text == "random") {
            std::random_device rd;
            return (static_cast<std::uint64_t>(rd()) << 32) | rd();
        }
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(seed_text.data(),
                                         seed_text.data() + seed_text.size(), seed);
        if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size())
            throw CLI::ValidationError("--seed", "expected an unsigned integer or 'random'");
        return seed;
    }
};

int emit_diagnostics(const std::vector<ParseDiagnostic>& diagnostics,
                     const std::string& source, std::ostream& err) {
    for (const auto& d : diagnostics)
        err << source << ":" << d.span.line << ":" << d.span.column
            << ": " << (d.severity == Severity::Error ? "error" : "warning")
            << ": " << d.message << "\n";
    return kExitParseError;
}

std::variant<ProblemSet, int> load_problem(const std::string& path, std::ostream& err) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << path << "'\n";
        return kExitParseError;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    ParseResult result = parse_problem(buffer.str(), path);
    if (!result.ok()) return emit_diagnostics(result.diagnostics, path, err);
    return std::move(*result.problem);
}

struct ExactRecord {
    std::string name;
    Rational probability;
    std::string decimal;
    BigInt satisfying_count;
    BigInt space_size;
    Rational enumeration_p;
    Rational compositional_p;
};

// Both exact routes per event; they must agree, a mismatch is an
// internal error surfaced as exit code 3.
std::variant<std::vector<ExactRecord>, int> compute_exact(const ProblemSet& problem,
                                                          std::int64_t cap,
                                                          std::ostream& err) {
    std::vector<ExactRecord> records;
    for (const auto& event : problem.events) {
        try {
            ExactResult enumerated = prob_enumerate(problem.space, event.expr, cap);
            ExactResult composed = prob_compositional(problem.space, event.expr, cap);
            if (!(enumerated.probability == composed.probability)) {
                err << "internal error: methods disagree on event '" << event.name
                    << "': enumeration " << enumerated.probability.fraction_str()
                    << " vs compositional " << composed.probability.fraction_str() << "\n";
                return kExitInternalMismatch;
            }
            records.push_back({event.name, enumerated.probability,
                               to_repeating_decimal(enumerated.probability),
                               enumerated.satisfying_count, enumerated.space_size,
                               enumerated.probability, composed.probability});
        } catch (const SpaceTooLarge& e) {
            err << "error: " << e.what() << " (raise --max-enumeration or use 'simulate')\n";
            return kExitSpaceTooLarge;
        } catch (const ValidationFailure& e) {
            err << "error: event '" << event.name << "': " << e.what() << "\n";
            return kExitParseError;
        }
    }
    return records;
}

json exact_to_json(const ExactRecord& rec) {
    return json{{"fraction", rec.probability.fraction_str()},
                {"decimal", rec.decimal},
                {"satisfying_count", rec.satisfying_count.str()},
                {"space_size", rec.space_size.str()},
                {"methods",
                 {{"enumeration", rec.enumeration_p.fraction_str()},
                  {"compositional", rec.compositional_p.fraction_str()}}}};
}

json estimate_to_json(const McEstimate& est) {
    return json{{"hits", est.hits},
                {"trials", est.trials},
                {"p_hat", est.p_hat},
                {"std_err", est.std_err}};
}

json verdict_to_json(const ConsistencyVerdict& v) {
    json j{{"z_score", std::isinf(v.z_score) ? json("inf") : json(v.z_score)},
           {"pass", v.pass}};
    return j;
}

json base_report(const std::string& command, const std::string& source) {
    return json{{"version", kToolVersion},
                {"command", command},
                {"source", source},
                {"events", json::array()},
                {"sampling", nullptr}};
}

void emit(const json& report, const std::string& text, const Options& opt,
          std::ostream& out) {
    if (opt.format == "json")
        out << report.dump(2) << "\n";
    else
        out << text;
}

int cmd_eval(const ProblemSet& problem, const Options& opt, std::ostream& out,
             std::ostream& err) {
    auto exact = compute_exact(problem, opt.max_enumeration, err);
    if (std::holds_alternative<int>(exact)) return std::get<int>(exact);
    const auto& records = std::get<std::vector<ExactRecord>>(exact);

    json report = base_report("eval", problem.source_name);
    std::ostringstream text;
    text << "source: " << problem.source_name << " ("
         << problem.space.total_size().str() << " outcomes)\n";
    for (const auto& rec : records) {
        json ev{{"name", rec.name}, {"exact", exact_to_json(rec)}};
        report["events"].push_back(std::move(ev));
        text << rec.name << " = " << rec.probability.fraction_str() << " = "
             << rec.decimal << "   [" << rec.satisfying_count.str() << "/"
             << rec.space_size.str() << " satisfying]\n";
    }
    emit(report, text.str(), opt, out);
    return kExitOk;
}

std::vector<std::pair<std::string, ExprPtr>> event_list(const ProblemSet& problem) {
    std::vector<std::pair<std::string, ExprPtr>> events;
    events.reserve(problem.events.size());
    for (const auto& ev : problem.events) events.emplace_back(ev.name, ev.expr);
    return events;
}

int cmd_simulate(const ProblemSet& problem, const Options& opt, std::ostream& out,
                 std::ostream& err) {
    McConfig config{opt.trials, opt.resolve_seed(), 1u << 16, opt.workers};
    std::vector<McEstimate> estimates;
    try {
        estimates = estimate(problem.space, event_list(problem), config);
    } catch (const ValidationFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }

    json report = base_report("simulate", problem.source_name);
    report["sampling"] = json{{"seed", config.seed}, {"trials", config.trials}};
    std::ostringstream text;
    for (const auto& est : estimates) {
        report["events"].push_back(json{{"name", est.event_name},
                                        {"estimate", estimate_to_json(est)}});
        text << est.event_name << ": " << format_double(est.p_hat) << " ± "
             << format_double(est.std_err) << "\n";
    }
    emit(report, text.str(), opt, out);
    return kExitOk;
}

// Shared by check and corpus. `overrides` substitutes the exact value
// used for a verdict (testing hook for planting a wrong exact).
int run_check(const ProblemSet& problem, const Options& opt,
              const std::map<std::string, Rational>& overrides,
              const std::string& command, std::string corpus_text,
              std::optional<json> analysis, std::string analysis_text,
              std::ostream& out, std::ostream& err) {
    auto exact = compute_exact(problem, opt.max_enumeration, err);
    if (std::holds_alternative<int>(exact)) return std::get<int>(exact);
    const auto& records = std::get<std::vector<ExactRecord>>(exact);

    McConfig config{opt.trials, opt.resolve_seed(), 1u << 16, opt.workers};
    std::vector<McEstimate> estimates;
    try {
        estimates = estimate(problem.space, event_list(problem), config);
    } catch (const ValidationFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }

    json report = base_report(command, problem.source_name);
    report["sampling"] = json{{"seed", config.seed}, {"trials", config.trials}};
    if (!corpus_text.empty()) report["corpus_text"] = corpus_text;
    std::ostringstream text;
    if (!corpus_text.empty()) text << corpus_text << "\n";

    bool all_pass = true;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ExactRecord& rec = records[i];
        Rational expected = rec.probability;
        if (auto it = overrides.find(rec.name); it != overrides.end())
            expected = it->second;
        ConsistencyVerdict verdict = consistency_check(estimates[i], expected, opt.z);
        all_pass = all_pass && verdict.pass;

        report["events"].push_back(json{{"name", rec.name},
                                        {"exact", exact_to_json(rec)},
                                        {"estimate", estimate_to_json(estimates[i])},
                                        {"verdict", verdict_to_json(verdict)}});
        text << rec.name << ": exact " << expected.fraction_str() << " = "
             << to_repeating_decimal(expected) << ", estimate "
             << format_double(estimates[i].p_hat) << " ± "
             << format_double(estimates[i].std_err) << ", z = "
             << format_double(verdict.z_score) << ", "
             << (verdict.pass ? "PASS" : "FAIL") << "\n";
    }
    text << (all_pass ? "check: all events consistent" : "check: FAILED")
         << " (threshold z = " << format_double(opt.z) << ")\n";
    if (analysis) {
        report["analysis"] = std::move(*analysis);
        text << analysis_text;
    }
    emit(report, text.str(), opt, out);
    return all_pass ? kExitOk : kExitConsistencyFailure;
}

std::optional<Rational> parse_fraction(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<std::map<std::string, Rational>> parse_overrides(
    const std::vector<std::string>& specs, std::ostream& err) {
    std::map<std::string, Rational> overrides;
    for (const auto& spec : specs) {
        auto eq = spec.find('=');
        std::optional<Rational> value =
            eq == std::string::npos ? std::nullopt : parse_fraction(spec.substr(eq + 1));
        if (!value) {
            err << "error: bad --override-exact '" << spec << "' (want name=num/den)\n";
            return std::nullopt;
        }
        overrides.insert_or_assign(spec.substr(0, eq), *value);
    }
    return overrides;
}

struct AnalysisOutput {
    json report;
    std::string text;
};

std::variant<AnalysisOutput, int> analyze_event(const ProblemSet& problem,
                                                const std::string& event_name,
                                                std::ostream& err) {
    const NamedEvent* event = problem.find_event(event_name);
    if (!event) {
        err << "error: unknown event '" << event_name << "'\n";
        return kExitParseError;
    }
    auto sites = detect_ambiguity_sites(event->expr);
    AnalysisOutput output;
    output.report = json{{"event", event_name}, {"sites", json::array()}};
    std::ostringstream text;
    if (sites.empty()) {
        text << "event " << event_name << ": no ambiguity sites\n";
    } else {
        text << "event " << event_name << ": " << sites.size() << " ambiguity site"
             << (sites.size() == 1 ? "" : "s") << "\n";
        for (const auto& site : sites) {
            output.report["sites"].push_back(
                json{{"path", path_to_string(site.path)},
                     {"expression", pretty_print(site.sub_expression)}});
            text << "  " << path_to_string(site.path) << ": "
                 << pretty_print(site.sub_expression) << "\n";
        }
    }
    output.text = text.str();
    return output;
}

std::variant<AnalysisOutput, int> analyze_atoms(const ProblemSet& problem,
                                                const std::string& atoms_spec,
                                                std::int64_t cap, std::ostream& err) {
    AtomListResult atoms = parse_atom_list(atoms_spec, problem.space);
    if (!atoms.ok()) return emit_diagnostics(atoms.diagnostics, "<atoms>", err);
    ReadingPair pair;
    try {
        pair = dual_readings(problem.space, atoms.atoms, cap);
    } catch (const SpaceTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitSpaceTooLarge;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    ReadingReport rep = explain(pair);

    AnalysisOutput output;
    output.report = json{
        {"atoms", atoms_spec},
        {"readings",
         {{"loose", {{"text", rep.loose_text},
                     {"fraction", rep.loose_fraction},
                     {"decimal", rep.loose_decimal}}},
          {"strict", {{"text", rep.strict_text},
                      {"fraction", rep.strict_fraction},
                      {"decimal", rep.strict_decimal}}}}},
        {"divergence", {{"fraction", rep.divergence_fraction},
                        {"decimal", rep.divergence_decimal}}},
        {"ambiguous", !rep.readings_coincide}};
    std::ostringstream text;
    text << "readings of the negated condition over (" << atoms_spec << "):\n"
         << "  not both (negated conjunction): " << rep.loose_text << "\n"
         << "    P = " << rep.loose_fraction << " = " << rep.loose_decimal << "\n"
         << "  neither (conjoined negations):  " << rep.strict_text << "\n"
         << "    P = " << rep.strict_fraction << " = " << rep.strict_decimal << "\n";
    if (rep.readings_coincide)
        text << "  the readings coincide (divergence 0)\n";
    else
        text << "  divergence = " << rep.divergence_fraction << " = "
             << rep.divergence_decimal << " (ambiguous)\n";
    output.text = text.str();
    return output;
}

int cmd_analyze(const ProblemSet& problem, const Options& opt,
                const std::string& event_name, const std::string& atoms_spec,
                std::ostream& out, std::ostream& err) {
    json report = base_report("analyze", problem.source_name);
    report.erase("events");
    report["analysis"] = json::object();
    std::ostringstream text;
    if (!event_name.empty()) {
        auto result = analyze_event(problem, event_name, err);
        if (std::holds_alternative<int>(result)) return std::get<int>(result);
        auto& output = std::get<AnalysisOutput>(result);
        report["analysis"]["event_sites"] = std::move(output.report);
        text << output.text;
    }
    if (!atoms_spec.empty()) {
        auto result = analyze_atoms(problem, atoms_spec, opt.max_enumeration, err);
        if (std::holds_alternative<int>(result)) return std::get<int>(result);
        auto& output = std::get<AnalysisOutput>(result);
        report["analysis"]["readings"] = std::move(output.report);
        text << output.text;
    }
    emit(report, text.str(), opt, out);
    return kExitOk;
}

int cmd_corpus(const Options& opt, std::ostream& out, std::ostream& err) {
    ParseResult parsed = parse_problem(kCorpusText, kCorpusSourceName);
    if (!parsed.ok()) return emit_diagnostics(parsed.diagnostics, kCorpusSourceName, err);
    auto analysis = analyze_atoms(*parsed.problem, kCorpusAmbiguousAtoms,
                                  opt.max_enumeration, err);
    if (std::holds_alternative<int>(analysis)) return std::get<int>(analysis);
    auto& output = std::get<AnalysisOutput>(analysis);
    return run_check(*parsed.problem, opt, {}, "corpus", kCorpusText,
                     json{{"readings", std::move(output.report)}}, output.text,
                     out, err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"probcheck: exact and Monte Carlo probabilities of boolean events "
                 "over uniform categorical draws"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--max-enumeration", opt.max_enumeration,
                   "Largest outcome count enumerated exactly")
        ->capture_default_str();
    app.add_option("--trials", opt.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", opt.seed_text, "PRNG seed (or 'random')")
        ->capture_default_str();
    app.add_option("--z", opt.z, "Consistency threshold in standard errors")
        ->capture_default_str();
    app.add_option("--workers", opt.workers, "Worker threads for sampling")
        ->capture_default_str();

    std::string file;
    std::string event_name;
    std::string atoms_spec;
    std::vector<std::string> override_specs;

    auto* eval = app.add_subcommand("eval", "Exact probabilities, both methods");
    eval->add_option("file", file, "Problem file")->required();
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo estimates");
    simulate->add_option("file", file, "Problem file")->required();
    auto* check = app.add_subcommand("check", "Exact vs Monte Carlo consistency");
    check->add_option("file", file, "Problem file")->required();
    check->add_option("--override-exact", override_specs,
                      "Replace an event's exact value, name=num/den (testing hook)");
    auto* analyze = app.add_subcommand("analyze", "De Morgan reading analysis");
    analyze->add_option("file", file, "Problem file")->required();
    analyze->add_option("--event", event_name, "Report ambiguity sites of this event");
    analyze->add_option("--atoms", atoms_spec, "Comma-separated atoms for dual readings");
    auto* corpus = app.add_subcommand("corpus",
                                      "Print the built-in problems and check them");
    for (auto* sub : {eval, simulate, check, analyze, corpus}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*corpus) return cmd_corpus(opt, out, err);

        auto loaded = load_problem(file, err);
        if (std::holds_alternative<int>(loaded)) return std::get<int>(loaded);
        const ProblemSet& problem = std::get<ProblemSet>(loaded);

        if (*eval) return cmd_eval(problem, opt, out, err);
        if (*simulate) return cmd_simulate(problem, opt, out, err);
        if (*check) {
            auto overrides = parse_overrides(override_specs, err);
            if (!overrides) return kExitParseError;
            return run_check(problem, opt, *overrides, "check", "", std::nullopt, "",
                             out, err);
        }
        if (*analyze) {
            if (event_name.empty() && atoms_spec.empty()) {
                err << "error: analyze needs --event and/or --atoms\n";
                return kExitParseError;
            }
            return cmd_analyze(problem, opt, event_name, atoms_spec, out, err);
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    return kExitOk;
}

}  // namespace probcheck
