#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <kweave/cli.hpp>

using namespace kweave;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = runCli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / fs::path("kweave-cli-" + std::to_string(::getpid()) + "-" +
                                                    std::to_string(counter++));
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

} // namespace

TEST_CASE("list prints examples and targets") {
    auto r = run({"list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("glassbr") != std::string::npos);
    CHECK(r.out.find("glassbr-enum") != std::string::npos);
    CHECK(r.out.find("python") != std::string::npos);
    CHECK(r.out.find("cpp") != std::string::npos);
}

TEST_CASE("check reports no findings for the bundled example") {
    auto r = run({"check", "glassbr"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("graph prints the dependency DOT") {
    auto r = run({"graph", "glassbr"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"DD:riskFun\" -> \"DD:probOfBreak\"") != std::string::npos);
}

TEST_CASE("srs renders in both formats") {
    auto md = run({"srs", "glassbr"});
    CHECK(md.code == 0);
    CHECK(md.out.rfind("# Software Requirements Specification", 0) == 0);
    auto html = run({"srs", "glassbr", "--format", "html"});
    CHECK(html.code == 0);
    CHECK(html.out.find("<html>") != std::string::npos);
    auto bad = run({"srs", "glassbr", "--format", "pdf"});
    CHECK(bad.code == 2);
}

TEST_CASE("generate writes a tree and prints the manifest") {
    TempDir dir;
    auto r = run({"generate", "glassbr", "--out", dir.path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("SRS.md") != std::string::npos);
    CHECK(r.out.find("Makefile") != std::string::npos);
    CHECK(fs::exists(dir.path / "trace.dot"));
}

TEST_CASE("unknown examples exit 2") {
    TempDir dir;
    auto r = run({"generate", "nope", "--out", dir.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown example") != std::string::npos);
    CHECK(run({"check", "nope"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"generate", "glassbr"}).code == 2);  // --out missing
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("--name overrides the program name") {
    TempDir dir;
    auto r = run({"generate", "glassbr", "--out", dir.path.string(), "--name", "GlassSafe"});
    CHECK(r.code == 0);
    std::ifstream in(dir.path / "README.md");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("GlassSafe") != std::string::npos);
    CHECK(text.str().find("GlassBR") == std::string::npos);
}

TEST_CASE("--choices loads a choices file") {
    TempDir dir;
    fs::create_directories(dir.path);
    Choices custom = exampleChoices(defaultTargets());
    custom.constStructure = ConstStructure::Store;
    fs::path choicesPath = dir.path / "custom.log";
    {
        std::ofstream out(choicesPath);
        out << genChoicesLog(custom);
    }
    auto r = run({"generate", "glassbr", "--out", (dir.path / "out").string(), "--choices", choicesPath.string()});
    CHECK(r.code == 0);
    std::ifstream in(dir.path / "out" / "choices.log");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("constStructure = Store") != std::string::npos);

    auto missing = run({"generate", "glassbr", "--out", (dir.path / "out2").string(), "--choices",
                        (dir.path / "absent.log").string()});
    CHECK(missing.code == 2);
}

TEST_CASE("invalid choices exit 1 with findings on standard error") {
    TempDir dir;
    fs::create_directories(dir.path);
    Choices bad = exampleChoices(defaultTargets());
    bad.logFile = std::nullopt;
    fs::path choicesPath = dir.path / "bad.log";
    {
        std::ofstream out(choicesPath);
        out << genChoicesLog(bad);
    }
    auto r = run({"generate", "glassbr", "--out", (dir.path / "out").string(), "--choices", choicesPath.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("logFile") != std::string::npos);
    CHECK(!fs::exists(dir.path / "out"));
}

TEST_CASE("identical invocations are byte-identical") {
    auto a = run({"srs", "glassbr"});
    auto b = run({"srs", "glassbr"});
    CHECK(a.out == b.out);
    auto ga = run({"graph", "glassbr-enum"});
    auto gb = run({"graph", "glassbr-enum"});
    CHECK(ga.out == gb.out);
}
