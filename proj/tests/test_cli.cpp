#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <regex>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(TROPPT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

size_t count_of(const std::string& text, const std::string& needle) {
    size_t c = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
    return c;
}

}  // namespace

TEST_CASE("cli examples") {
    auto es = run("euler-satake --d 1 --n 0");
    CHECK(es.code == 0);
    CHECK(es.out == "20\n");
    auto in = run("integral --triangle-degree 1");
    CHECK(in.code == 0);
    CHECK(in.out == "1\n");
    auto sec = run("secondary --polytope unit-square");
    REQUIRE(sec.code == 0);
    auto j = nlohmann::json::parse(sec.out);
    CHECK(j["count"] == 3);
    CHECK(j["maximal"].size() == 2);
    auto inline_poly = run("secondary --polytope '{\"points\": [[0,0],[1,0],[0,1],[1,1]]}'");
    CHECK(inline_poly.out == sec.out);
}

TEST_CASE("cli exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("euler-satake --d 1").code == 2);
    CHECK(run("secondary --polytope '{\"points\": [[0,0]'").code == 2);
    CHECK(run("integral --triangle-degree 2").code == 2);
    CHECK(run("pt0-fan --polytope unit-square --around '[0,0,0,1]'").code == 2);
    CHECK(run("pt0-fan --polytope triangle-2 --budget 10").code == 1);
    CHECK(run("--budget 10 pt0-fan --polytope triangle-2").code == 1);
}

TEST_CASE("cli output is deterministic") {
    for (const std::string args : {"pt0-fan --polytope unit-square", "secondary --polytope rectangle-1x2",
                                   "euler-satake --d 2 --n 1 --audit",
                                   "pt0-fan --polytope unit-square --lazy --around '[0,0,0,1]'"}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_NOTHROW(nlohmann::json::parse(a.out));
    }
    auto t1 = run("--threads 1 euler-satake --d 3 --n 1");
    auto t4 = run("--threads 4 euler-satake --d 3 --n 1");
    CHECK(t1.out == t4.out);
    CHECK(t1.out == "17940\n");
}

TEST_CASE("cli svg output") {
    struct Case {
        std::string polytope, lift;
    };
    for (const auto& c : {Case{"unit-square", "[0,0,0,1]"}, Case{"unit-square", "[0,0,0,0]"},
                          Case{"triangle-2", "[0,1,3,1,0,2]"}, Case{"rectangle-1x2", "{\"values\": [0,2,1,0,3,1]}"}}) {
        std::string svg = "troppt_cli_test.svg";
        auto r = run("dual-curve --polytope " + c.polytope + " --lift '" + c.lift + "' --svg " + svg + " --box 4");
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        std::string text = slurp(svg);
        CHECK(text.rfind("<?xml", 0) == 0);
        CHECK(count_of(text, "<svg") == 1);
        CHECK(count_of(text, "</svg>") == 1);
        CHECK(count_of(text, "<polyline") == j["edges"].size() + j["rays"].size());
        std::remove(svg.c_str());
    }
}

TEST_CASE("cli csv audit") {
    auto r = run("euler-satake --d 1 --n 1 --audit --csv");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "type,value");
    size_t rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 25);
    CHECK(last == "total,96");
}
