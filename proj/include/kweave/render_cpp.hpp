#pragma once
// C++17 renderer for the code IR. Non-driver modules become header-only
// files included by the driver translation unit.

#include <sstream>

#include "codegen.hpp"

namespace kweave {

namespace cppdetail {

inline std::string realLiteral(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

inline std::string typeName(const Space& sp) {
    switch (sp.kind) {
    case Space::Kind::Boolean: return "bool";
    case Space::Kind::Integer: return "int";
    default: return "double";
    }
}

struct Ctx {
    const CodeProject* project = nullptr;
    const Choices* choices = nullptr;
    const CodeModule* module = nullptr;
    std::set<std::string> recordFields;
    bool recordInScope = false;

    std::string varRef(const std::string& name) const {
        if (recordInScope && project->inputRecord && recordFields.count(name) &&
            name != project->inputRecord->instanceName)
            return project->inputRecord->instanceName + "." + name;
        return name;
    }
};

inline std::string renderExpr(const Expr& e, const Ctx& ctx) {
    auto bin = [&](const char* op) {
        return "(" + renderExpr(e->children[0], ctx) + ") " + op + " (" + renderExpr(e->children[1], ctx) + ")";
    };
    switch (e->kind) {
    case ExprKind::LitInt: return std::to_string(e->intValue) + ".0";
    case ExprKind::LitReal: return realLiteral(e->realValue);
    case ExprKind::LitRational:
        return "(" + std::to_string(e->ratValue.num) + ".0 / " + std::to_string(e->ratValue.den) + ".0)";
    case ExprKind::Var: return ctx.varRef(e->uid);
    case ExprKind::Neg: return "-(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Add: return bin("+");
    case ExprKind::Sub: return bin("-");
    case ExprKind::Mul: return bin("*");
    case ExprKind::Div: return bin("/");
    case ExprKind::Pow:
        return "std::pow(" + renderExpr(e->children[0], ctx) + ", " + renderExpr(e->children[1], ctx) + ")";
    case ExprKind::Exp: return "std::exp(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Ln: return "std::log(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Sqrt: return "std::sqrt(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Abs: return "std::fabs(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Lt: return bin("<");
    case ExprKind::Gt: return bin(">");
    case ExprKind::Le: return bin("<=");
    case ExprKind::Ge: return bin(">=");
    case ExprKind::Eq: return bin("==");
    case ExprKind::Case: {
        std::string out = "no_case()";
        for (auto it = e->branches.rbegin(); it != e->branches.rend(); ++it)
            out = "((" + renderExpr(it->condition, ctx) + ") ? (" + renderExpr(it->value, ctx) + ") : " + out +
                  ")";
        return out;
    }
    }
    throw UnsupportedConstruct("cpp renderer: unknown expression kind");
}

inline std::string cppStr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

inline void renderStmts(std::ostringstream& out, const StmtList& stmts, Ctx& ctx, int indent);

inline void renderStmt(std::ostringstream& out, const Stmt& s, Ctx& ctx, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 4, ' ');
    const std::string logFile = ctx.choices->logFile ? *ctx.choices->logFile : "";
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
        out << pad;
        if (a->declare) out << typeName(a->space) << " ";
        out << ctx.varRef(a->name) << " = " << renderExpr(a->value, ctx) << ";\n";
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        out << pad << "if (" << renderExpr(i->cond, ctx) << ") {\n";
        renderStmts(out, i->thenBody, ctx, indent + 1);
        if (!i->elseBody.empty()) {
            out << pad << "} else {\n";
            renderStmts(out, i->elseBody, ctx, indent + 1);
        }
        out << pad << "}\n";
    } else if (const auto* t = std::get_if<ThrowOrWarnStmt>(&s.node)) {
        if (t->kind == ConstraintBehavior::Exception)
            out << pad << "throw std::runtime_error(" << cppStr(t->message) << ");\n";
        else
            out << pad << "std::cerr << " << cppStr("warning: " + t->message) << " << std::endl;\n";
    } else if (const auto* l = std::get_if<LogStmt>(&s.node)) {
        if (l->varName)
            out << pad << "log_line(" << cppStr(logFile) << ", " << cppStr(l->message + " = ") << " + fmt("
                << ctx.varRef(*l->varName) << "));\n";
        else
            out << pad << "log_line(" << cppStr(logFile) << ", " << cppStr(l->message) << ");\n";
    } else if (const auto* r = std::get_if<ReturnStmt>(&s.node)) {
        if (r->value)
            out << pad << "return " << renderExpr(*r->value, ctx) << ";\n";
        else
            out << pad << "return;\n";
    } else if (std::get_if<ReadInputsStmt>(&s.node)) {
        out << pad << "std::map<std::string, std::string> values = read_values(path);\n";
        if (ctx.project->inputRecord) {
            const auto& rec = *ctx.project->inputRecord;
            out << pad << rec.typeName << " " << rec.instanceName << ";\n";
            for (const auto& [n, sp] : rec.fields)
                out << pad << rec.instanceName << "." << n << " = parse_"
                    << (sp.kind == Space::Kind::Boolean ? "bool"
                        : sp.kind == Space::Kind::Integer ? "int"
                                                          : "real")
                    << "(require(values, " << cppStr(n) << "));\n";
            out << pad << "return " << rec.instanceName << ";\n";
        } else {
            for (const auto& [n, sp] : ctx.project->inputs)
                out << pad << n << " = parse_"
                    << (sp.kind == Space::Kind::Boolean ? "bool"
                        : sp.kind == Space::Kind::Integer ? "int"
                                                          : "real")
                    << "(require(values, " << cppStr(n) << "));\n";
        }
    } else if (const auto* w = std::get_if<WriteOutputStmt>(&s.node)) {
        out << pad << "std::cout << " << cppStr(w->name + " = ") << " << fmt(" << ctx.varRef(w->varName)
            << ") << \"\\n\";\n";
    } else if (const auto* c = std::get_if<CallStmt>(&s.node)) {
        out << pad;
        if (c->unpackInputs) {
            // declarations precede the call; handled by the driver renderer
        } else if (c->target) {
            if (c->targetDeclare) {
                if (c->func == "get_input" && ctx.project->inputRecord)
                    out << ctx.project->inputRecord->typeName << " ";
                else
                    out << typeName(c->targetSpace) << " ";
            }
            out << ctx.varRef(*c->target) << " = ";
        }
        out << c->func << "(";
        bool first = true;
        if (c->argvInput) {
            out << "argv[1]";
            first = false;
        }
        for (const auto& arg : c->args) {
            if (!first) out << ", ";
            first = false;
            out << ctx.varRef(arg);
        }
        out << ");\n";
    }
}

inline void renderStmts(std::ostringstream& out, const StmtList& stmts, Ctx& ctx, int indent) {
    for (const auto& s : stmts) renderStmt(out, s, ctx, indent);
}

} // namespace cppdetail

class CppRenderer final : public Renderer {
public:
    std::string id() const override { return "cpp"; }

    FileSet render(const CodeProject& project, const Choices& choices) const override {
        FileSet files;
        files["helpers.hpp"] = helpersFile(project, choices);
        cppdetail::Ctx ctx;
        ctx.project = &project;
        ctx.choices = &choices;
        if (project.inputRecord)
            for (const auto& [n, _] : project.inputRecord->fields) ctx.recordFields.insert(n);
        for (const auto& m : project.modules) {
            bool entry = project.entryModule && *project.entryModule == m.name;
            files[m.name + (entry ? ".cpp" : ".hpp")] = moduleFile(project, choices, m, ctx, entry);
        }
        return files;
    }

    std::string makefileRules(const std::string& programName, const CodeProject& project) const override {
        std::string binary = lower::codeName(programName);
        std::ostringstream out;
        out << "# build and run the C++ version of " << programName << "\n";
        if (project.entryModule) {
            out << "build_cpp:\n\t$(CXX) -std=c++17 -O2 -o cpp/" << binary << " cpp/src/" << *project.entryModule
                << ".cpp\n";
            out << "run_cpp: build_cpp\n\t./cpp/" << binary << " $(RUNARGS)\n";
        } else {
            out << "build_cpp:\n\t$(CXX) -std=c++17 -O2 -fsyntax-only";
            for (const auto& m : project.modules) out << " cpp/src/" << m.name << ".hpp";
            out << "\n";
        }
        return out.str();
    }

private:
    static std::string header(const CodeProject& project, const Choices& choices, const std::string& what) {
        std::ostringstream out;
        out << "// " << project.programName << ": " << what << "\n";
        out << "// generated file, do not edit\n";
        if (choices.dates == DateStamp::Show) out << "// generated on " << choices.dateText << "\n";
        return out.str();
    }

    static std::string helpersFile(const CodeProject& project, const Choices& choices) {
        std::ostringstream out;
        out << header(project, choices, "shared runtime helpers");
        out << R"(#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::map<std::string, std::string> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::map<std::string, std::string> values;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("malformed input line: " + line);
        values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return values;
}

inline std::string require(const std::map<std::string, std::string>& values, const std::string& name) {
    auto it = values.find(name);
    if (it == values.end()) throw std::runtime_error("missing input: " + name);
    return it->second;
}

inline double parse_real(const std::string& raw) { return std::stod(raw); }
inline int parse_int(const std::string& raw) { return std::stoi(raw); }
inline bool parse_bool(const std::string& raw) { return trim(raw) == "true"; }

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(bool v) { return v ? "true" : "false"; }

inline void log_line(const std::string& path, const std::string& message) {
    std::ofstream out(path, std::ios::app);
    out << message << "\n";
}

[[noreturn]] inline double no_case() { throw std::runtime_error("no case condition matched"); }
)";
        return out.str();
    }

    static std::string signature(const CodeProject& project, const CodeFunc& f) {
        std::ostringstream out;
        if (f.kind == FuncKind::Driver) return "int main(int argc, char* argv[])";
        std::string ret = "void";
        if (f.returnSpace) ret = cppdetail::typeName(*f.returnSpace);
        if (f.returnsRecord && project.inputRecord) ret = project.inputRecord->typeName;
        out << "inline " << ret << " " << f.name << "(";
        bool first = true;
        if (f.kind == FuncKind::GetInput) {
            out << "const std::string& path";
            first = false;
            if (f.returnsInputTuple)
                for (const auto& [n, sp] : project.inputs) {
                    out << ", " << cppdetail::typeName(sp) << "& " << n;
                }
        } else {
            for (const auto& p : f.params) {
                if (!first) out << ", ";
                first = false;
                if (p.isRecord && project.inputRecord)
                    out << "const " << project.inputRecord->typeName << "& " << p.name;
                else
                    out << cppdetail::typeName(p.space) << " " << p.name;
            }
        }
        out << ")";
        return out.str();
    }

    static std::string moduleFile(const CodeProject& project, const Choices& choices, const CodeModule& m,
                                  cppdetail::Ctx ctx, bool entry) {
        ctx.module = &m;
        std::ostringstream out;
        out << header(project, choices, m.name);
        if (choices.comments.count(CommentKind::CommentMod)) out << "// " << m.docComment << "\n";
        if (!entry) out << "#pragma once\n";
        out << "\n#include \"helpers.hpp\"\n";
        if (entry) {
            for (const auto& other : project.modules)
                if (other.name != m.name) out << "#include \"" << other.name << ".hpp\"\n";
        } else if (!m.definesRecord && project.inputRecord) {
            for (const auto& other : project.modules)
                if (other.definesRecord) out << "#include \"" << other.name << ".hpp\"\n";
        }
        out << "\n";

        if (m.definesRecord && project.inputRecord) {
            const auto& rec = *project.inputRecord;
            if (choices.comments.count(CommentKind::CommentClass)) out << "// " << rec.docComment << "\n";
            out << "struct " << rec.typeName << " {\n";
            for (const auto& [n, sp] : rec.fields) {
                const char* init = sp.kind == Space::Kind::Boolean ? "false"
                                   : sp.kind == Space::Kind::Integer ? "0"
                                                                     : "0.0";
                out << "    " << cppdetail::typeName(sp) << " " << n << " = " << init << ";\n";
            }
            out << "};\n\n";
        }

        for (const auto& c : m.constants) {
            const char* qual = c.repr == ConstRepr::Const ? "constexpr double" : "double";
            out << "static " << qual << " " << c.name << " = " << cppdetail::renderExpr(c.value, ctx) << ";\n";
        }
        if (!m.constants.empty()) out << "\n";

        for (const auto& f : m.functions) {
            ctx.recordInScope = false;
            for (const auto& p : f.params)
                if (p.isRecord) ctx.recordInScope = true;
            if (f.kind == FuncKind::Driver || f.kind == FuncKind::GetInput)
                ctx.recordInScope = project.inputRecord.has_value();
            if (choices.comments.count(CommentKind::CommentFunc)) out << "// " << f.docComment << "\n";
            out << signature(project, f) << " {\n";
            if (f.kind == FuncKind::Driver) {
                out << "    if (argc < 2) {\n";
                out << "        std::cerr << \"usage: " << lower::codeName(project.programName)
                    << " <input-file>\" << std::endl;\n";
                out << "        return 2;\n";
                out << "    }\n";
                out << "    try {\n";
                std::ostringstream body;
                renderDriverBody(body, project, f, ctx);
                out << body.str();
                out << "    } catch (const std::exception& error) {\n";
                out << "        std::cerr << error.what() << std::endl;\n";
                out << "        return 1;\n";
                out << "    }\n";
                out << "    return 0;\n";
            } else {
                cppdetail::renderStmts(out, f.body, ctx, 1);
            }
            out << "}\n\n";
        }
        return out.str();
    }

    static void renderDriverBody(std::ostringstream& out, const CodeProject& project, const CodeFunc& f,
                                 cppdetail::Ctx& ctx) {
        for (const auto& s : f.body) {
            if (const auto* c = std::get_if<CallStmt>(&s.node); c && c->unpackInputs) {
                // declare the scalars, then call get_input with out-params
                for (const auto& [n, sp] : project.inputs)
                    out << "        " << cppdetail::typeName(sp) << " " << n << " = "
                        << (sp.kind == Space::Kind::Boolean ? "false" : sp.kind == Space::Kind::Integer ? "0" : "0.0")
                        << ";\n";
                out << "        get_input(argv[1]";
                for (const auto& [n, _] : project.inputs) out << ", " << n;
                out << ");\n";
                continue;
            }
            cppdetail::renderStmt(out, s, ctx, 2);
        }
    }
};

} // namespace kweave
