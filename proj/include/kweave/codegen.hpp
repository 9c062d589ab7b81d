#pragma once
// Abstract imperative IR and the lowering from a validated SystemSpec +
// Choices into it. Target renderers (render_python.hpp, render_cpp.hpp)
// turn the IR into source text.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "choices.hpp"
#include "coherence.hpp"

namespace kweave {

// ---------------------------------------------------------------------------
// IR

struct Stmt;
using StmtList = std::vector<Stmt>;

struct AssignStmt {
    std::string name;
    Space space;
    Expr value;
    bool declare = false;
};

struct IfStmt {
    Expr cond;
    StmtList thenBody;
    StmtList elseBody;
};

struct ThrowOrWarnStmt {
    ConstraintBehavior kind = ConstraintBehavior::Exception;
    std::string message;
};

// Appends "<message>" or "<message> = <value of varName>" to the log file.
struct LogStmt {
    std::string message;
    std::optional<std::string> varName;
};

struct ReturnStmt {
    std::optional<Expr> value;
};

// Reads the generated-program input file (name = value lines, # comments,
// order-insensitive) into the input variables. Field list comes from the
// enclosing CodeProject.
struct ReadInputsStmt {};

// Prints "<name> = <value>" on standard output.
struct WriteOutputStmt {
    std::string name;
    std::string varName;
    Space space;
};

// Function call; args are variable names. argvInput passes the program's
// first command-line argument; unpackInputs destructures a get_input result
// into the project's input scalars.
struct CallStmt {
    std::optional<std::string> target;
    Space targetSpace;
    bool targetDeclare = false;
    std::string module;
    std::string func;
    std::vector<std::string> args;
    bool argvInput = false;
    bool unpackInputs = false;
};

struct Stmt {
    std::variant<AssignStmt, IfStmt, ThrowOrWarnStmt, LogStmt, ReturnStmt, ReadInputsStmt, WriteOutputStmt,
                 CallStmt>
        node;

    Stmt(AssignStmt s) : node(std::move(s)) {}
    Stmt(IfStmt s) : node(std::move(s)) {}
    Stmt(ThrowOrWarnStmt s) : node(std::move(s)) {}
    Stmt(LogStmt s) : node(std::move(s)) {}
    Stmt(ReturnStmt s) : node(std::move(s)) {}
    Stmt(ReadInputsStmt s) : node(std::move(s)) {}
    Stmt(WriteOutputStmt s) : node(std::move(s)) {}
    Stmt(CallStmt s) : node(std::move(s)) {}
};

struct CodeConstant {
    std::string name;
    Expr value;  // literal
    ConstRepr repr = ConstRepr::Const;
};

struct CodeParam {
    std::string name;
    Space space;
    bool isRecord = false;
};

enum class FuncKind { Calculation, GetInput, InputConstraints, OutputWriter, Driver };

struct CodeFunc {
    std::string name;
    FuncKind kind = FuncKind::Calculation;
    std::vector<CodeParam> params;
    std::optional<Space> returnSpace;  // scalar result
    bool returnsRecord = false;        // GetInput under Bundled
    bool returnsInputTuple = false;    // GetInput under Unbundled
    StmtList body;
    std::string docComment;  // emitted only when CommentFunc is chosen
};

struct InputRecord {
    std::string typeName;
    std::string instanceName;
    std::vector<std::pair<std::string, Space>> fields;  // code name, space
    std::string docComment;
};

struct CodeModule {
    std::string name;
    std::string docComment;
    bool definesRecord = false;
    std::vector<CodeConstant> constants;
    std::vector<CodeFunc> functions;
};

struct CodeProject {
    std::string programName;
    std::vector<CodeModule> modules;
    std::optional<InputRecord> inputRecord;      // Bundled only
    std::optional<std::string> entryModule;      // module holding the driver; present iff Program
    InputStructure inputStructure = InputStructure::Unbundled;
    std::vector<std::pair<std::string, Space>> inputs;   // code name + space, declared order
    std::vector<std::pair<std::string, Space>> outputs;  // code name + space, declared order
};

// Map path -> file text.
using FileSet = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Renderers

struct Renderer {
    virtual ~Renderer() = default;
    virtual std::string id() const = 0;
    // Paths are relative to <target>/src.
    virtual FileSet render(const CodeProject& project, const Choices& choices) const = 0;
    // Make rules (a run_<target> target, plus any build rule it needs).
    virtual std::string makefileRules(const std::string& programName, const CodeProject& project) const = 0;
};

class RendererRegistry {
public:
    void add(std::shared_ptr<const Renderer> r) {
        if (!renderers_.emplace(r->id(), r).second) throw DuplicateTarget(r->id());
    }

    const Renderer& at(const TargetId& id) const {
        auto it = renderers_.find(id);
        if (it == renderers_.end()) throw UnknownUID(id);
        return *it->second;
    }

    std::set<TargetId> ids() const {
        std::set<TargetId> out;
        for (const auto& [id, _] : renderers_) out.insert(id);
        return out;
    }

    size_t size() const { return renderers_.size(); }

private:
    std::map<TargetId, std::shared_ptr<const Renderer>> renderers_;
};

inline RendererRegistry registerRenderer(const RendererRegistry& registry, std::shared_ptr<const Renderer> r) {
    RendererRegistry next = registry;
    next.add(std::move(r));
    return next;
}

// ---------------------------------------------------------------------------
// Lowering

namespace lower {

inline std::string codeName(const std::string& symbol) {
    std::string out;
    for (char c : symbol) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        out += ok ? c : '_';
    }
    if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out = "_" + out;
    return out;
}

inline Expr renameVars(const Expr& e, const std::map<UID, std::string>& names) {
    if (e->kind == ExprKind::Var) {
        auto it = names.find(e->uid);
        return var(it == names.end() ? e->uid : it->second);
    }
    auto n = std::make_shared<ExprNode>(*e);
    for (auto& c : n->children) c = renameVars(c, names);
    for (auto& b : n->branches) {
        b.condition = renameVars(b.condition, names);
        b.value = renameVars(b.value, names);
    }
    return n;
}

inline std::string constantName(const Expr& lit, ConstRepr repr) {
    std::string digits;
    switch (lit->kind) {
    case ExprKind::LitInt: digits = std::to_string(lit->intValue); break;
    case ExprKind::LitReal: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%g", lit->realValue);
        digits = buf;
        break;
    }
    case ExprKind::LitRational:
        digits = std::to_string(lit->ratValue.num) + "_over_" + std::to_string(lit->ratValue.den);
        break;
    default: throw UnsupportedConstruct("constantName on non-literal");
    }
    std::string safe;
    for (char c : digits) {
        if (c == '.') safe += '_';
        else if (c == '-') safe += 'm';
        else if (c == '+') continue;
        else safe += c;
    }
    return (repr == ConstRepr::Const ? "CONST_" : "const_") + safe;
}

inline bool isLiteral(const Expr& e) {
    return e->kind == ExprKind::LitInt || e->kind == ExprKind::LitReal || e->kind == ExprKind::LitRational;
}

inline Expr hoistLiterals(const Expr& e, ConstRepr repr, std::map<std::string, Expr>& collected) {
    if (isLiteral(e)) {
        std::string name = constantName(e, repr);
        collected.emplace(name, e);
        return var(name);
    }
    if (e->kind == ExprKind::Var) return e;
    auto n = std::make_shared<ExprNode>(*e);
    for (auto& c : n->children) c = hoistLiterals(c, repr, collected);
    for (auto& b : n->branches) {
        b.condition = hoistLiterals(b.condition, repr, collected);
        b.value = hoistLiterals(b.value, repr, collected);
    }
    return n;
}

inline void hoistInStmts(StmtList& stmts, ConstRepr repr, std::map<std::string, Expr>& collected) {
    for (auto& s : stmts) {
        if (auto* a = std::get_if<AssignStmt>(&s.node)) {
            a->value = hoistLiterals(a->value, repr, collected);
        } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
            i->cond = hoistLiterals(i->cond, repr, collected);
            hoistInStmts(i->thenBody, repr, collected);
            hoistInStmts(i->elseBody, repr, collected);
        } else if (auto* r = std::get_if<ReturnStmt>(&s.node)) {
            if (r->value) r->value = hoistLiterals(*r->value, repr, collected);
        }
    }
}

inline void applyConstStructure(CodeModule& m, const Choices& choices) {
    if (choices.constStructure != ConstStructure::Store) return;
    std::map<std::string, Expr> collected;
    for (auto& f : m.functions) hoistInStmts(f.body, choices.constRepr, collected);
    for (auto& [name, value] : collected) m.constants.push_back({name, value, choices.constRepr});
}

// Range-violation checks for one variable. Open bounds use <=/>=.
inline StmtList rangeChecks(const std::string& name, const std::string& symbol, const Interval& range,
                            ConstraintBehavior behavior, const char* rangeKind) {
    auto bound = [](double v) { return litReal(v); };
    std::string msg = symbol + " violates " + rangeKind + " constraint [" + std::to_string(range.lo) + ", " +
                      std::to_string(range.hi) + "]";
    StmtList out;
    Expr low = range.loClosed ? lt(var(name), bound(range.lo)) : le(var(name), bound(range.lo));
    Expr high = range.hiClosed ? gt(var(name), bound(range.hi)) : ge(var(name), bound(range.hi));
    out.push_back(IfStmt{low, {ThrowOrWarnStmt{behavior, msg}}, {}});
    out.push_back(IfStmt{high, {ThrowOrWarnStmt{behavior, msg}}, {}});
    return out;
}

// Membership check for an enumerated space, as nested if/else.
inline StmtList enumChecks(const std::string& name, const std::string& symbol, const std::vector<double>& values,
                           ConstraintBehavior behavior) {
    std::string msg = symbol + " must be one of the allowed values";
    StmtList inner{ThrowOrWarnStmt{behavior, msg}};
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        StmtList next;
        next.push_back(IfStmt{eq(var(name), litReal(*it)), {}, std::move(inner)});
        inner = std::move(next);
    }
    return inner;
}

} // namespace lower

inline CodeProject lowerToIR(const SystemSpec& spec, const Choices& choices) {
    const std::vector<UID> path = solutionPath(spec);
    const bool bundled = choices.inputStructure == InputStructure::Bundled;
    const bool logVar = choices.logging.count(LogKind::LogVar) > 0;
    const bool logFunc = choices.logging.count(LogKind::LogFunc) > 0;

    std::map<UID, std::string> names;
    for (const auto& [uid, q] : spec.db.quantities) names[uid] = lower::codeName(q.symbol);

    CodeProject project;
    project.programName = spec.programName;
    project.inputStructure = choices.inputStructure;
    for (const auto& in : spec.inputs) project.inputs.emplace_back(names.at(in), spec.db.quantity(in).space);
    for (const auto& out : spec.outputs)
        project.outputs.emplace_back(names.at(out), spec.db.quantity(out).space);

    std::set<std::string> inputNames;
    for (const auto& [n, _] : project.inputs) inputNames.insert(n);

    if (bundled) {
        InputRecord rec;
        rec.typeName = "InputParameters";
        rec.instanceName = "inParams";
        rec.fields = project.inputs;
        rec.docComment = "Structure for holding the input values of " + spec.programName + ".";
        project.inputRecord = rec;
    }

    // --- calculation functions, in solution-path order
    std::vector<CodeFunc> calcFuncs;
    std::map<std::string, std::string> funcForVar;  // computed code name -> function name
    for (const auto& chunkUid : path) {
        UID outQ;
        Expr body;
        std::string what;
        if (auto it = spec.db.dataDefs.find(chunkUid); it != spec.db.dataDefs.end()) {
            outQ = it->second.defines;
            body = it->second.expr;
            what = it->second.description;
        } else {
            const InstanceModel& im = spec.db.instanceModels.at(chunkUid);
            outQ = im.output;
            body = im.expr;
            what = im.description;
        }
        const QuantityDef& q = spec.db.quantity(outQ);
        const std::string outName = names.at(outQ);

        CodeFunc f;
        f.name = "func_" + outName;
        f.kind = FuncKind::Calculation;
        f.returnSpace = q.space;
        f.docComment = "Calculates " + (what.empty() ? q.description : what) + ": " +
                       renderMathText(eq(var(q.symbol), lower::renameVars(body, {})), MathStyle::Unicode,
                                      [&spec](const std::string& u) {
                                          auto it = spec.db.quantities.find(u);
                                          return it != spec.db.quantities.end() ? it->second.symbol : u;
                                      });

        std::vector<std::string> scalarDeps;
        bool usesInputs = false;
        for (const auto& v : freeVars(body)) {
            const std::string n = names.at(v);
            if (inputNames.count(n) && bundled)
                usesInputs = true;
            else
                scalarDeps.push_back(n);
        }
        std::sort(scalarDeps.begin(), scalarDeps.end());
        if (bundled && usesInputs) f.params.push_back({project.inputRecord->instanceName, Space::real(), true});
        for (const auto& d : scalarDeps) {
            Space sp = Space::real();
            for (const auto& [uid, n] : names)
                if (n == d) sp = spec.db.quantity(uid).space;
            f.params.push_back({d, sp, false});
        }

        if (logFunc) f.body.push_back(LogStmt{"called " + f.name, std::nullopt});
        f.body.push_back(AssignStmt{outName, q.space, lower::renameVars(body, names), true});
        if (logVar) f.body.push_back(LogStmt{outName, outName});
        f.body.push_back(ReturnStmt{var(outName)});

        funcForVar[outName] = f.name;
        calcFuncs.push_back(std::move(f));
    }

    // --- input routine
    CodeFunc getInput;
    getInput.name = "get_input";
    getInput.kind = FuncKind::GetInput;
    getInput.docComment = "Reads the input file (name = value lines) for " + spec.programName + ".";
    getInput.returnsRecord = bundled;
    getInput.returnsInputTuple = !bundled;
    if (logFunc) getInput.body.push_back(LogStmt{"called get_input", std::nullopt});
    getInput.body.push_back(ReadInputsStmt{});

    CodeFunc constraints;
    constraints.name = "input_constraints";
    constraints.kind = FuncKind::InputConstraints;
    constraints.docComment = "Checks the input values against their declared constraints.";
    if (bundled)
        constraints.params.push_back({project.inputRecord->instanceName, Space::real(), true});
    else
        for (const auto& [n, sp] : project.inputs) constraints.params.push_back({n, sp, false});
    if (logFunc) constraints.body.push_back(LogStmt{"called input_constraints", std::nullopt});
    for (const auto& in : spec.inputs) {
        const QuantityDef& q = spec.db.quantity(in);
        const std::string n = names.at(in);
        if (q.space.kind == Space::Kind::Enumerated) {
            auto checks = lower::enumChecks(n, q.symbol, q.space.enumValues, choices.onSfwrConstraint);
            constraints.body.insert(constraints.body.end(), checks.begin(), checks.end());
        }
        if (q.sfwrRange) {
            auto checks = lower::rangeChecks(n, q.symbol, *q.sfwrRange, choices.onSfwrConstraint, "software");
            constraints.body.insert(constraints.body.end(), checks.begin(), checks.end());
        }
        if (q.physRange) {
            auto checks = lower::rangeChecks(n, q.symbol, *q.physRange, choices.onPhysConstraint, "physical");
            constraints.body.insert(constraints.body.end(), checks.begin(), checks.end());
        }
    }

    // --- output routine
    CodeFunc writer;
    writer.name = "write_output";
    writer.kind = FuncKind::OutputWriter;
    writer.docComment = "Writes one name = value line per output of " + spec.programName + ".";
    for (const auto& [n, sp] : project.outputs) writer.params.push_back({n, sp, false});
    if (logFunc) writer.body.push_back(LogStmt{"called write_output", std::nullopt});
    for (size_t i = 0; i < project.outputs.size(); ++i) {
        const auto& [n, sp] = project.outputs[i];
        writer.body.push_back(WriteOutputStmt{spec.db.quantity(spec.outputs[i]).symbol, n, sp});
    }

    // --- driver
    CodeFunc driver;
    driver.name = "main";
    driver.kind = FuncKind::Driver;
    driver.docComment = "Controls the flow of " + spec.programName + ": read, check, calculate, write.";
    if (logFunc) driver.body.push_back(LogStmt{"called main", std::nullopt});
    {
        CallStmt readCall;
        readCall.func = "get_input";
        readCall.argvInput = true;
        if (bundled) {
            readCall.target = project.inputRecord->instanceName;
            readCall.targetDeclare = true;
        } else {
            readCall.unpackInputs = true;
        }
        driver.body.push_back(readCall);

        CallStmt checkCall;
        checkCall.func = "input_constraints";
        if (bundled)
            checkCall.args = {project.inputRecord->instanceName};
        else
            for (const auto& [n, _] : project.inputs) checkCall.args.push_back(n);
        driver.body.push_back(checkCall);

        for (const auto& f : calcFuncs) {
            CallStmt call;
            call.func = f.name;
            std::string outName = f.name.substr(5);  // func_<name>
            call.target = outName;
            call.targetDeclare = true;
            for (const auto& p : f.params) call.args.push_back(p.name);
            call.targetSpace = *f.returnSpace;
            driver.body.push_back(call);
            if (logVar) driver.body.push_back(LogStmt{outName, outName});
        }

        // characteristics of a good solution: output range checks
        for (size_t i = 0; i < spec.outputs.size(); ++i) {
            const QuantityDef& q = spec.db.quantity(spec.outputs[i]);
            if (!q.physRange) continue;
            auto checks = lower::rangeChecks(project.outputs[i].first, q.symbol, *q.physRange,
                                             choices.onPhysConstraint, "physical");
            driver.body.insert(driver.body.end(), checks.begin(), checks.end());
        }

        CallStmt writeCall;
        writeCall.func = "write_output";
        for (const auto& [n, _] : project.outputs) writeCall.args.push_back(n);
        driver.body.push_back(writeCall);
    }

    // --- module assembly
    auto fillModule = [&](const std::string& name, std::vector<CodeFunc> funcs, bool record,
                          const std::string& doc) {
        CodeModule m;
        m.name = name;
        m.docComment = doc;
        m.definesRecord = record && bundled;
        m.functions = std::move(funcs);
        lower::applyConstStructure(m, choices);
        return m;
    };
    const bool program = choices.impType == ImpType::Program;
    switch (choices.modularity) {
    case Modularity::ModularSeparated: {
        project.modules.push_back(fillModule("InputParameters", {getInput, constraints}, true,
                                             "Input reading and constraint checking for " + spec.programName + "."));
        project.modules.push_back(
            fillModule("Calculations", calcFuncs, false, "Calculation functions for " + spec.programName + "."));
        project.modules.push_back(
            fillModule("OutputFormat", {writer}, false, "Output formatting for " + spec.programName + "."));
        if (program) {
            project.modules.push_back(
                fillModule("Control", {driver}, false, "Driver for " + spec.programName + "."));
            project.entryModule = "Control";
        }
        break;
    }
    case Modularity::ModularCombined: {
        std::vector<CodeFunc> all{getInput, constraints};
        all.insert(all.end(), calcFuncs.begin(), calcFuncs.end());
        all.push_back(writer);
        project.modules.push_back(
            fillModule(lower::codeName(spec.programName), all, true, "Implementation of " + spec.programName + "."));
        if (program) {
            project.modules.push_back(
                fillModule("Control", {driver}, false, "Driver for " + spec.programName + "."));
            project.entryModule = "Control";
        }
        break;
    }
    case Modularity::Unmodular: {
        std::vector<CodeFunc> all{getInput, constraints};
        all.insert(all.end(), calcFuncs.begin(), calcFuncs.end());
        all.push_back(writer);
        if (program) all.push_back(driver);
        project.modules.push_back(
            fillModule(lower::codeName(spec.programName), all, true, "Implementation of " + spec.programName + "."));
        if (program) project.entryModule = lower::codeName(spec.programName);
        break;
    }
    }
    return project;
}

inline FileSet renderTarget(const CodeProject& project, const Renderer& renderer, const Choices& choices) {
    return renderer.render(project, choices);
}

} // namespace kweave
