#include <catch_amalgamated.hpp>

#include <kweave/cli.hpp>

using namespace kweave;

namespace {

Choices paperChoices() { return exampleChoices(defaultTargets()); }

std::vector<std::string> calcNames(const CodeProject& project) {
    std::vector<std::string> names;
    for (const auto& m : project.modules)
        for (const auto& f : m.functions)
            if (f.kind == FuncKind::Calculation) names.push_back(f.name);
    return names;
}

int countStmts(const StmtList& body, const std::function<bool(const Stmt&)>& pred);

int countInStmt(const Stmt& s, const std::function<bool(const Stmt&)>& pred) {
    int n = pred(s) ? 1 : 0;
    if (const auto* ifs = std::get_if<IfStmt>(&s.node))
        n += countStmts(ifs->thenBody, pred) + countStmts(ifs->elseBody, pred);
    return n;
}

int countStmts(const StmtList& body, const std::function<bool(const Stmt&)>& pred) {
    int n = 0;
    for (const auto& s : body) n += countInStmt(s, pred);
    return n;
}

int countInProject(const CodeProject& project, const std::function<bool(const Stmt&)>& pred) {
    int n = 0;
    for (const auto& m : project.modules)
        for (const auto& f : m.functions) n += countStmts(f.body, pred);
    return n;
}

} // namespace

TEST_CASE("calculation functions follow the solution path order") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    CHECK(calcNames(project) == std::vector<std::string>{"func_B", "func_P_b", "func_is_safePb"});
}

TEST_CASE("modular separated yields the four conventional modules") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    std::vector<std::string> names;
    for (const auto& m : project.modules) names.push_back(m.name);
    CHECK(names == std::vector<std::string>{"InputParameters", "Calculations", "OutputFormat", "Control"});
    CHECK(project.entryModule == "Control");
    REQUIRE(project.inputRecord);
    CHECK(project.inputRecord->typeName == "InputParameters");
    CHECK(project.inputRecord->fields.size() == 9);
}

TEST_CASE("unmodular packs everything into one module") {
    Choices c = paperChoices();
    c.modularity = Modularity::Unmodular;
    auto project = lowerToIR(glassBR().spec, c);
    REQUIRE(project.modules.size() == 1);
    CHECK(project.entryModule == project.modules[0].name);
}

TEST_CASE("a library build drops the driver") {
    Choices c = paperChoices();
    c.impType = ImpType::Library;
    auto project = lowerToIR(glassBR().spec, c);
    CHECK(!project.entryModule);
    for (const auto& m : project.modules)
        for (const auto& f : m.functions) CHECK(f.kind != FuncKind::Driver);
}

TEST_CASE("inline constants leave no module-level declarations") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    for (const auto& m : project.modules) CHECK(m.constants.empty());
}

TEST_CASE("stored constants hoist literals out of calculation bodies") {
    Choices c = paperChoices();
    c.constStructure = ConstStructure::Store;
    auto project = lowerToIR(glassBR().spec, c);
    bool anyConstants = false;
    for (const auto& m : project.modules)
        if (!m.constants.empty()) anyConstants = true;
    CHECK(anyConstants);
}

TEST_CASE("logging choices control Log statements") {
    auto isLog = [](const Stmt& s) { return std::holds_alternative<LogStmt>(s.node); };

    Choices quiet = paperChoices();
    quiet.logging.clear();
    quiet.logFile = std::nullopt;
    CHECK(countInProject(lowerToIR(glassBR().spec, quiet), isLog) == 0);

    auto chatty = lowerToIR(glassBR().spec, paperChoices());
    CHECK(countInProject(chatty, isLog) > 0);
    // every calculation function logs its entry and its assignment
    for (const auto& m : chatty.modules)
        for (const auto& f : m.functions)
            if (f.kind == FuncKind::Calculation) CHECK(countStmts(f.body, isLog) >= 2);
}

TEST_CASE("constraint checks name the violated quantity") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    const CodeFunc* constraints = nullptr;
    for (const auto& m : project.modules)
        for (const auto& f : m.functions)
            if (f.kind == FuncKind::InputConstraints) constraints = &f;
    REQUIRE(constraints);
    int mentionsA = countStmts(constraints->body, [](const Stmt& s) {
        const auto* t = std::get_if<ThrowOrWarnStmt>(&s.node);
        return t && t->kind == ConstraintBehavior::Exception && t->message.rfind("a ", 0) == 0;
    });
    CHECK(mentionsA >= 2);  // both ends of a's software range, at least
}

TEST_CASE("enumerated inputs get membership checks") {
    Choices c = paperChoices();
    auto project = lowerToIR(glassBRWithEnumeratedThickness().spec, c);
    int enumChecks = countInProject(project, [](const Stmt& s) {
        const auto* t = std::get_if<ThrowOrWarnStmt>(&s.node);
        return t && t->message.find("one of the allowed values") != std::string::npos;
    });
    CHECK(enumChecks == 1);
}

TEST_CASE("outputs with physical ranges are checked after computation") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    const CodeFunc* driver = nullptr;
    for (const auto& m : project.modules)
        for (const auto& f : m.functions)
            if (f.kind == FuncKind::Driver) driver = &f;
    REQUIRE(driver);
    int outputChecks = countStmts(driver->body, [](const Stmt& s) {
        const auto* t = std::get_if<ThrowOrWarnStmt>(&s.node);
        return t && t->message.rfind("P_b ", 0) == 0;
    });
    CHECK(outputChecks >= 2);
}

TEST_CASE("lowering is deterministic") {
    auto a = lowerToIR(glassBR().spec, paperChoices());
    auto b = lowerToIR(glassBR().spec, paperChoices());
    PythonRenderer py;
    CHECK(py.render(a, paperChoices()) == py.render(b, paperChoices()));
    CppRenderer cpp;
    CHECK(cpp.render(a, paperChoices()) == cpp.render(b, paperChoices()));
}

TEST_CASE("comments choice only changes comments") {
    Choices with = paperChoices();
    Choices without = paperChoices();
    without.comments.clear();
    PythonRenderer py;
    auto a = py.render(lowerToIR(glassBR().spec, with), with);
    auto b = py.render(lowerToIR(glassBR().spec, without), without);
    // strip comment/docstring lines and compare the executable residue
    auto strip = [](const FileSet& files) {
        std::string out;
        for (const auto& [path, text] : files) {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) {
                std::string trimmed = line;
                size_t b0 = trimmed.find_first_not_of(' ');
                trimmed = b0 == std::string::npos ? "" : trimmed.substr(b0);
                // docstrings are emitted as single """...""" lines
                if (trimmed.rfind("\"\"\"", 0) == 0) continue;
                if (trimmed.rfind("#", 0) == 0) continue;
                out += line + "\n";
            }
        }
        return out;
    };
    CHECK(strip(a) == strip(b));
}

TEST_CASE("renderer registry") {
    RendererRegistry registry;
    registry.add(std::make_shared<PythonRenderer>());
    registry.add(std::make_shared<CppRenderer>());
    CHECK(registry.ids() == std::set<TargetId>{"cpp", "python"});
    CHECK_THROWS_AS(registry.add(std::make_shared<PythonRenderer>()), DuplicateTarget);
    auto grown = registerRenderer(RendererRegistry{}, std::make_shared<CppRenderer>());
    CHECK(grown.size() == 1);
}

TEST_CASE("renderers produce a file per module plus helpers") {
    auto project = lowerToIR(glassBR().spec, paperChoices());
    PythonRenderer py;
    auto files = py.render(project, paperChoices());
    CHECK(files.count("InputParameters.py") == 1);
    CHECK(files.count("Calculations.py") == 1);
    CHECK(files.count("OutputFormat.py") == 1);
    CHECK(files.count("Control.py") == 1);
    CHECK(files.count("helpers.py") == 1);
    CppRenderer cpp;
    auto cppFiles = cpp.render(project, paperChoices());
    CHECK(cppFiles.count("Control.cpp") == 1);
    CHECK(cppFiles.count("Calculations.hpp") == 1);
    CHECK(cppFiles.count("helpers.hpp") == 1);
}
