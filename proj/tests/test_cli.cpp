#include "probcheck/cli.hpp"

#include "probcheck/corpus.hpp"
#include "probcheck/parser.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace probcheck;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "probcheck");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file(path, std::ios::binary);
    file << content;
    return path.string();
}

const char* kCorpusLike =
    "space person[2] uniform(12)\n"
    "event p1: person[0] != person[1]\n"
    "event p2: not (person[0] == may and person[1] == may)\n"
    "event p3: person[0] != may and person[1] != may\n";

}  // namespace

TEST_CASE("eval reports both fraction and decimal") {
    std::string path = write_temp("cli_eval.prob", kCorpusLike);
    RunResult r = run({"eval", path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("p1 = 11/12 = 0.91(6)") != std::string::npos);
    CHECK(r.out.find("p2 = 143/144 = 0.9930(5)") != std::string::npos);
    CHECK(r.out.find("p3 = 121/144 = 0.8402(7)") != std::string::npos);
    CHECK(r.out.find("[132/144 satisfying]") != std::string::npos);
}

TEST_CASE("eval json carries the same numbers") {
    std::string path = write_temp("cli_eval_json.prob", kCorpusLike);
    RunResult r = run({"--format", "json", "eval", path});
    CHECK(r.code == kExitOk);
    json report = json::parse(r.out);
    CHECK(report["version"] == kToolVersion);
    CHECK(report["command"] == "eval");
    CHECK(report["sampling"].is_null());
    REQUIRE(report["events"].size() == 3);
    CHECK(report["events"][0]["exact"]["fraction"] == "11/12");
    CHECK(report["events"][0]["exact"]["satisfying_count"] == "132");
    CHECK(report["events"][1]["exact"]["methods"]["enumeration"] == "143/144");
    CHECK(report["events"][1]["exact"]["methods"]["compositional"] == "143/144");
}

TEST_CASE("eval of a literal event") {
    std::string path = write_temp("cli_true.prob",
                                  "space x[1] uniform(2)\nevent always: true\n");
    RunResult r = run({"eval", path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("always = 1/1 = 1") != std::string::npos);
}

TEST_CASE("eval past the enumeration cap exits 2 and names the cap") {
    std::string path = write_temp("cli_big.prob",
                                  "space person[8] uniform(12)\n"
                                  "event e: person[0] == 5\n");
    RunResult r = run({"eval", path});
    CHECK(r.code == kExitSpaceTooLarge);
    CHECK(r.err.find("10000000") != std::string::npos);
    CHECK(r.err.find("429981696") != std::string::npos);
}

TEST_CASE("parse failures exit 1 with located diagnostics") {
    std::string path = write_temp("cli_bad.prob", "event p: person[0] == 5\n");
    RunResult r = run({"eval", path});
    CHECK(r.code == kExitParseError);
    CHECK(r.err.find("unknown family") != std::string::npos);
    CHECK(r.err.find(":1:") != std::string::npos);

    RunResult missing = run({"eval", "/nonexistent/file.prob"});
    CHECK(missing.code == kExitParseError);
}

TEST_CASE("simulate is deterministic and formats value ± stderr") {
    std::string path = write_temp("cli_sim.prob", kCorpusLike);
    RunResult a = run({"simulate", path, "--trials", "50000", "--seed", "9"});
    RunResult b = run({"simulate", path, "--trials", "50000", "--seed", "9"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find(" ± ") != std::string::npos);

    RunResult c = run({"simulate", path, "--trials", "50000", "--seed", "10"});
    CHECK(c.out != a.out);
}

TEST_CASE("simulate with one trial gives degenerate estimates") {
    std::string path = write_temp("cli_sim1.prob", kCorpusLike);
    RunResult r = run({"--format", "json", "simulate", path, "--trials", "1"});
    CHECK(r.code == kExitOk);
    json report = json::parse(r.out);
    CHECK(report["sampling"]["trials"] == 1);
    for (const auto& event : report["events"]) {
        double p = event["estimate"]["p_hat"];
        CHECK((p == 0.0 || p == 1.0));
        CHECK(event["estimate"]["std_err"] == 0.0);
    }
}

TEST_CASE("check passes on truthful exacts and fails on a planted wrong one") {
    std::string path = write_temp("cli_check.prob", kCorpusLike);
    RunResult ok = run({"check", path, "--trials", "100000", "--seed", "0"});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("PASS") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    RunResult planted = run({"check", path, "--trials", "100000", "--seed", "0",
                             "--override-exact", "p2=11/12"});
    CHECK(planted.code == kExitConsistencyFailure);
    CHECK(planted.out.find("FAIL") != std::string::npos);

    RunResult garbage = run({"check", path, "--override-exact", "p2"});
    CHECK(garbage.code == kExitParseError);
}

TEST_CASE("analyze atoms reports the fork, analyze event lists sites") {
    std::string path = write_temp("cli_analyze.prob", kCorpusLike);
    RunResult fork = run({"analyze", path, "--atoms",
                          "person[0]==may, person[1]==may"});
    CHECK(fork.code == kExitOk);
    CHECK(fork.out.find("143/144") != std::string::npos);
    CHECK(fork.out.find("121/144") != std::string::npos);
    CHECK(fork.out.find("11/72") != std::string::npos);
    CHECK(fork.out.find("ambiguous") != std::string::npos);

    RunResult collapse = run({"analyze", path, "--atoms", "person[0]==person[1]"});
    CHECK(collapse.code == kExitOk);
    CHECK(collapse.out.find("11/12") != std::string::npos);
    CHECK(collapse.out.find("coincide") != std::string::npos);

    RunResult sites = run({"analyze", path, "--event", "p2"});
    CHECK(sites.code == kExitOk);
    CHECK(sites.out.find("1 ambiguity site") != std::string::npos);
    RunResult none = run({"analyze", path, "--event", "p3"});
    CHECK(none.out.find("no ambiguity sites") != std::string::npos);

    RunResult unknown = run({"analyze", path, "--event", "nope"});
    CHECK(unknown.code == kExitParseError);
    RunResult neither = run({"analyze", path});
    CHECK(neither.code == kExitParseError);
}

TEST_CASE("corpus prints its source, checks it, and shows the fork") {
    RunResult r = run({"corpus", "--trials", "100000"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("space person[2] uniform(12)") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("143/144") != std::string::npos);
    CHECK(r.out.find("121/144") != std::string::npos);

    // The embedded corpus text reparses cleanly.
    ParseResult reparsed = parse_problem(kCorpusText);
    CHECK(reparsed.ok());
    CHECK(reparsed.problem->events.size() == 3);
}

TEST_CASE("corpus json is one schema-shaped document") {
    RunResult r = run({"--format", "json", "corpus", "--trials", "50000"});
    CHECK(r.code == kExitOk);
    json report = json::parse(r.out);
    CHECK(report["command"] == "corpus");
    CHECK(report["corpus_text"].get<std::string>() == kCorpusText);
    CHECK(report["events"].size() == 3);
    CHECK(report["sampling"]["seed"] == 0);
    CHECK(report["analysis"]["readings"]["divergence"]["fraction"] == "11/72");
    for (const auto& event : report["events"]) {
        CHECK(event.contains("exact"));
        CHECK(event.contains("estimate"));
        CHECK(event["verdict"]["pass"] == true);
    }
}

TEST_CASE("json and text renderings agree numerically") {
    std::string path = write_temp("cli_same.prob", kCorpusLike);
    RunResult text = run({"simulate", path, "--trials", "20000", "--seed", "4"});
    RunResult js = run({"--format", "json", "simulate", path, "--trials", "20000",
                        "--seed", "4"});
    json report = json::parse(js.out);
    for (const auto& event : report["events"]) {
        double p = event["estimate"]["p_hat"];
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
        std::string rendered(buf, ptr);
        CHECK(text.out.find(rendered) != std::string::npos);
    }
}
