#include <catch_amalgamated.hpp>

#include <kweave/coherence.hpp>
#include <kweave/glassbr.hpp>

using namespace kweave;

namespace {

// Minimal spec: one IM computing y = x + 1 from input x.
SystemSpec tinySpec() {
    ChunkDB db;
    db.add(QuantityDef{"x", "x", Space::real(), {}, "the input", {}, {}});
    db.add(QuantityDef{"y", "y", Space::real(), {}, "the output", {}, {}});
    InstanceModel im;
    im.uid = "IM:addOne";
    im.output = "y";
    im.inputs = {"x"};
    im.expr = add(var("x"), litInt(1));
    db.add(im);
    SystemSpec spec;
    spec.programName = "Tiny";
    spec.goal = "Add one.";
    spec.inputs = {"x"};
    spec.outputs = {"y"};
    spec.ims = {"IM:addOne"};
    spec.db = std::move(db);
    return spec;
}

} // namespace

TEST_CASE("dependency graph has the three model-level edges") {
    auto g = buildDependencyGraph(glassBR().spec);
    CHECK(g.hasEdge("TM:isSafeProb", "IM:isSafePb", EdgeKind::Grounds));
    CHECK(g.hasEdge("DD:probOfBreak", "IM:isSafePb"));
    CHECK(g.hasEdge("DD:riskFun", "DD:probOfBreak"));
    // and no other model-to-model edges
    std::set<UID> models{"TM:isSafeProb", "IM:isSafePb", "DD:riskFun", "DD:probOfBreak"};
    int modelEdges = 0;
    for (const auto& e : g.edges)
        if (models.count(e.from) && models.count(e.to)) ++modelEdges;
    CHECK(modelEdges == 3);
}

TEST_CASE("a spec with no models yields only quantity nodes") {
    SystemSpec spec = tinySpec();
    spec.ims.clear();
    spec.outputs.clear();
    spec.db.instanceModels.clear();
    auto g = buildDependencyGraph(spec);
    CHECK(g.edges.empty());
    CHECK(g.nodes == std::set<UID>{"x", "y"});
}

TEST_CASE("graph build propagates integrity failures") {
    SystemSpec spec = tinySpec();
    spec.db.quantities.erase("x");
    CHECK_THROWS_AS(buildDependencyGraph(spec), IntegrityError);
}

TEST_CASE("ambiguous definitions are rejected") {
    SystemSpec spec = tinySpec();
    DataDefinition dd;
    dd.uid = "DD:alsoY";
    dd.defines = "y";
    dd.expr = litInt(2);
    spec.db.add(dd);
    spec.dds = {"DD:alsoY"};
    CHECK_THROWS_AS(buildDependencyGraph(spec), AmbiguousDefinition);
}

TEST_CASE("acyclicity") {
    CHECK(!checkAcyclic(buildDependencyGraph(glassBR().spec)));
    CHECK(!checkAcyclic(DependencyGraph{}));

    DependencyGraph cyc;
    cyc.nodes = {"x", "y"};
    cyc.edges = {{"x", "y", EdgeKind::Uses}, {"y", "x", EdgeKind::Uses}};
    auto cycle = checkAcyclic(cyc);
    REQUIRE(cycle);
    CHECK(cycle->size() == 3);
    CHECK(cycle->front() == cycle->back());
}

TEST_CASE("solution path is the expected evaluation order") {
    auto path = solutionPath(glassBR().spec);
    CHECK(path == std::vector<UID>{"DD:riskFun", "DD:probOfBreak", "IM:isSafePb"});
    CHECK(solutionPath(tinySpec()) == std::vector<UID>{"IM:addOne"});
}

TEST_CASE("removing the risk definition underdetermines B") {
    SystemSpec spec = glassBR().spec;
    spec.dds = {"DD:probOfBreak"};
    spec.db.dataDefs.erase("DD:riskFun");
    try {
        solutionPath(spec);
        FAIL("expected UnderdeterminedQuantity");
    } catch (const UnderdeterminedQuantity& e) {
        CHECK(e.uid == "B");
    }
}

TEST_CASE("an output defined by nothing is unreachable") {
    SystemSpec spec = tinySpec();
    spec.db.add(QuantityDef{"z", "z", Space::real(), {}, "undefined", {}, {}});
    spec.outputs.push_back("z");
    try {
        solutionPath(spec);
        FAIL("expected UnreachableOutput");
    } catch (const UnreachableOutput& e) {
        CHECK(e.uid == "z");
    }
}

TEST_CASE("solution path replay derives every output") {
    auto bundle = glassBR();
    const auto& spec = bundle.spec;
    auto path = solutionPath(spec);
    for (const auto& testCase : bundle.testCases) {
        Env env = testCase.inputs;
        for (const auto& chunk : path) {
            if (auto it = spec.db.dataDefs.find(chunk); it != spec.db.dataDefs.end())
                env[it->second.defines] = evalExpr(it->second.expr, env);
            else {
                const InstanceModel& im = spec.db.instanceModels.at(chunk);
                env[im.output] = evalExpr(im.expr, env);
            }
        }
        for (const auto& out : spec.outputs) CHECK(env.count(out) == 1);
    }
}

TEST_CASE("solution path is a valid topological order") {
    auto spec = glassBR().spec;
    auto path = solutionPath(spec);
    std::set<UID> available(spec.inputs.begin(), spec.inputs.end());
    for (const auto& chunk : path) {
        Expr e;
        UID defines;
        if (auto it = spec.db.dataDefs.find(chunk); it != spec.db.dataDefs.end()) {
            e = it->second.expr;
            defines = it->second.defines;
        } else {
            const auto& im = spec.db.instanceModels.at(chunk);
            e = im.expr;
            defines = im.output;
        }
        for (const auto& v : freeVars(e)) CHECK(available.count(v) == 1);
        available.insert(defines);
    }
}

TEST_CASE("used symbols") {
    auto spec = glassBR().spec;
    std::set<UID> expected{"B", "P_b", "P_btol", "is_safePb", "P_f",  "P_ftol", "is_safeProb",
                           "k", "a",   "b",      "m",         "E",    "h",      "LDF",
                           "J"};
    CHECK(usedSymbols(spec) == expected);

    SystemSpec noModels = tinySpec();
    noModels.ims.clear();
    noModels.outputs.clear();
    noModels.db.instanceModels.clear();
    CHECK(usedSymbols(noModels) == std::set<UID>{"x"});

    // adding a DD over a new symbol strictly grows the set
    SystemSpec grown = glassBR().spec;
    grown.db.add(QuantityDef{"w", "w", Space::real(), {}, "extra", {}, {}});
    grown.db.add(QuantityDef{"w2", "w2", Space::real(), {}, "extra out", {}, {}});
    DataDefinition dd;
    dd.uid = "DD:w2";
    dd.defines = "w2";
    dd.expr = var("w");
    grown.db.add(dd);
    grown.dds.push_back("DD:w2");
    auto before = usedSymbols(glassBR().spec);
    auto after = usedSymbols(grown);
    CHECK(after.size() > before.size());
    for (const auto& s : before) CHECK(after.count(s) == 1);
}

TEST_CASE("inputs and outputs are always used symbols") {
    auto spec = glassBR().spec;
    auto used = usedSymbols(spec);
    for (const auto& u : spec.inputs) CHECK(used.count(u) == 1);
    for (const auto& u : spec.outputs) CHECK(used.count(u) == 1);
}

TEST_CASE("DOT export") {
    auto spec = glassBR().spec;
    std::string dot = exportDot(buildDependencyGraph(spec), spec.programName);
    CHECK(dot.find("\"DD:riskFun\" -> \"DD:probOfBreak\"") != std::string::npos);
    CHECK(dot.find("ground (to instance)") != std::string::npos);
    CHECK(dot.rfind("digraph", 0) == 0);

    CHECK(exportDot(DependencyGraph{}, "empty").find("digraph") == 0);

    DependencyGraph quoted;
    quoted.nodes = {"a\"b"};
    CHECK(exportDot(quoted).find("\"a\\\"b\"") != std::string::npos);
}

TEST_CASE("DOT export is deterministic") {
    auto spec = glassBR().spec;
    CHECK(exportDot(buildDependencyGraph(spec)) == exportDot(buildDependencyGraph(spec)));
}

TEST_CASE("spec shape validation") {
    SystemSpec spec = tinySpec();
    CHECK(validateSpecShape(spec).empty());
    spec.outputs.push_back("x");  // also an input
    CHECK(!validateSpecShape(spec).empty());
}
