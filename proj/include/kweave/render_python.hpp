#pragma once
// Python 3 renderer for the code IR.

#include <sstream>

#include "codegen.hpp"

namespace kweave {

namespace pydetail {

inline std::string realLiteral(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

struct Ctx {
    const CodeProject* project = nullptr;
    const Choices* choices = nullptr;
    const CodeModule* module = nullptr;
    std::map<std::string, std::string> funcModule;  // func name -> module name
    std::set<std::string> recordFields;
    bool recordInScope = false;

    bool mapToRecord(const std::string& name) const {
        return recordInScope && project->inputRecord && recordFields.count(name) &&
               name != project->inputRecord->instanceName;
    }

    std::string varRef(const std::string& name) const {
        if (mapToRecord(name)) return project->inputRecord->instanceName + "." + name;
        return name;
    }

    std::string callRef(const std::string& func) const {
        auto it = funcModule.find(func);
        if (it != funcModule.end() && it->second != module->name) return it->second + "." + func;
        return func;
    }
};

inline std::string renderExpr(const Expr& e, const Ctx& ctx) {
    auto bin = [&](const char* op) {
        return "(" + renderExpr(e->children[0], ctx) + ") " + op + " (" + renderExpr(e->children[1], ctx) + ")";
    };
    switch (e->kind) {
    case ExprKind::LitInt: return std::to_string(e->intValue);
    case ExprKind::LitReal: return realLiteral(e->realValue);
    case ExprKind::LitRational:
        return "(" + std::to_string(e->ratValue.num) + " / " + std::to_string(e->ratValue.den) + ")";
    case ExprKind::Var: return ctx.varRef(e->uid);
    case ExprKind::Neg: return "-(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Add: return bin("+");
    case ExprKind::Sub: return bin("-");
    case ExprKind::Mul: return bin("*");
    case ExprKind::Div: return bin("/");
    case ExprKind::Pow: return bin("**");
    case ExprKind::Exp: return "math.exp(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Ln: return "math.log(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Sqrt: return "math.sqrt(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Abs: return "math.fabs(" + renderExpr(e->children[0], ctx) + ")";
    case ExprKind::Lt: return bin("<");
    case ExprKind::Gt: return bin(">");
    case ExprKind::Le: return bin("<=");
    case ExprKind::Ge: return bin(">=");
    case ExprKind::Eq: return bin("==");
    case ExprKind::Case: {
        std::string out = "helpers.no_case()";
        for (auto it = e->branches.rbegin(); it != e->branches.rend(); ++it)
            out = "(" + renderExpr(it->value, ctx) + " if " + renderExpr(it->condition, ctx) + " else " + out +
                  ")";
        return out;
    }
    }
    throw UnsupportedConstruct("python renderer: unknown expression kind");
}

inline std::string pyStr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string parseCall(const Space& sp, const std::string& raw) {
    switch (sp.kind) {
    case Space::Kind::Integer: return "int(" + raw + ")";
    case Space::Kind::Boolean: return raw + ".strip().lower() == \"true\"";
    default: return "float(" + raw + ")";
    }
}

inline void renderStmts(std::ostringstream& out, const StmtList& stmts, Ctx& ctx, int indent);

inline void renderStmt(std::ostringstream& out, const Stmt& s, Ctx& ctx, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 4, ' ');
    const std::string logFile = ctx.choices->logFile ? *ctx.choices->logFile : "";
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
        out << pad << ctx.varRef(a->name) << " = " << renderExpr(a->value, ctx) << "\n";
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        out << pad << "if " << renderExpr(i->cond, ctx) << ":\n";
        if (i->thenBody.empty())
            out << pad << "    pass\n";
        else
            renderStmts(out, i->thenBody, ctx, indent + 1);
        if (!i->elseBody.empty()) {
            out << pad << "else:\n";
            renderStmts(out, i->elseBody, ctx, indent + 1);
        }
    } else if (const auto* t = std::get_if<ThrowOrWarnStmt>(&s.node)) {
        if (t->kind == ConstraintBehavior::Exception)
            out << pad << "raise ValueError(" << pyStr(t->message) << ")\n";
        else
            out << pad << "sys.stderr.write(" << pyStr("warning: " + t->message + "\n") << ")\n";
    } else if (const auto* l = std::get_if<LogStmt>(&s.node)) {
        if (l->varName)
            out << pad << "helpers.log_line(" << pyStr(logFile) << ", " << pyStr(l->message + " = ")
                << " + helpers.fmt(" << ctx.varRef(*l->varName) << "))\n";
        else
            out << pad << "helpers.log_line(" << pyStr(logFile) << ", " << pyStr(l->message) << ")\n";
    } else if (const auto* r = std::get_if<ReturnStmt>(&s.node)) {
        if (r->value)
            out << pad << "return " << renderExpr(*r->value, ctx) << "\n";
        else
            out << pad << "return\n";
    } else if (std::get_if<ReadInputsStmt>(&s.node)) {
        out << pad << "values = helpers.read_values(path)\n";
        if (ctx.project->inputRecord) {
            const auto& rec = *ctx.project->inputRecord;
            out << pad << rec.instanceName << " = " << ctx.callRef(rec.typeName) << "()\n";
            for (const auto& [n, sp] : rec.fields)
                out << pad << rec.instanceName << "." << n << " = "
                    << parseCall(sp, "helpers.require(values, " + pyStr(n) + ")") << "\n";
            out << pad << "return " << rec.instanceName << "\n";
        } else {
            for (const auto& [n, sp] : ctx.project->inputs)
                out << pad << n << " = " << parseCall(sp, "helpers.require(values, " + pyStr(n) + ")") << "\n";
            out << pad << "return ";
            for (size_t i = 0; i < ctx.project->inputs.size(); ++i) {
                if (i) out << ", ";
                out << ctx.project->inputs[i].first;
            }
            if (ctx.project->inputs.size() == 1) out << ",";
            out << "\n";
        }
    } else if (const auto* w = std::get_if<WriteOutputStmt>(&s.node)) {
        out << pad << "print(" << pyStr(w->name + " = ") << " + helpers.fmt(" << ctx.varRef(w->varName)
            << "))\n";
    } else if (const auto* c = std::get_if<CallStmt>(&s.node)) {
        out << pad;
        if (c->unpackInputs) {
            for (size_t i = 0; i < ctx.project->inputs.size(); ++i) {
                if (i) out << ", ";
                out << ctx.project->inputs[i].first;
            }
            if (ctx.project->inputs.size() == 1) out << ",";
            out << " = ";
        } else if (c->target) {
            out << ctx.varRef(*c->target) << " = ";
        }
        out << ctx.callRef(c->func) << "(";
        bool first = true;
        if (c->argvInput) {
            out << "sys.argv[1]";
            first = false;
        }
        for (const auto& arg : c->args) {
            if (!first) out << ", ";
            first = false;
            out << ctx.varRef(arg);
        }
        out << ")\n";
    }
}

inline void renderStmts(std::ostringstream& out, const StmtList& stmts, Ctx& ctx, int indent) {
    for (const auto& s : stmts) renderStmt(out, s, ctx, indent);
}

} // namespace pydetail

class PythonRenderer final : public Renderer {
public:
    std::string id() const override { return "python"; }

    FileSet render(const CodeProject& project, const Choices& choices) const override {
        FileSet files;
        files["helpers.py"] = helpersFile(project, choices);
        pydetail::Ctx ctx;
        ctx.project = &project;
        ctx.choices = &choices;
        for (const auto& m : project.modules)
            for (const auto& f : m.functions) ctx.funcModule[f.name] = m.name;
        if (project.inputRecord) {
            ctx.funcModule[project.inputRecord->typeName] =
                recordModuleName(project);
            for (const auto& [n, _] : project.inputRecord->fields) ctx.recordFields.insert(n);
        }
        for (const auto& m : project.modules) files[m.name + ".py"] = moduleFile(project, choices, m, ctx);
        return files;
    }

    std::string makefileRules(const std::string& programName, const CodeProject& project) const override {
        std::ostringstream out;
        out << "# run the Python version of " << programName << "\n";
        if (project.entryModule) {
            out << "run_python:\n\tpython3 python/src/" << *project.entryModule << ".py $(RUNARGS)\n";
        } else {
            out << "run_python:\n\tpython3 -m compileall -q python/src\n";
        }
        return out.str();
    }

private:
    static std::string recordModuleName(const CodeProject& project) {
        for (const auto& m : project.modules)
            if (m.definesRecord) return m.name;
        return project.modules.empty() ? std::string() : project.modules.front().name;
    }

    static std::string header(const CodeProject& project, const Choices& choices, const std::string& what) {
        std::ostringstream out;
        out << "# " << project.programName << ": " << what << "\n";
        out << "# generated file, do not edit\n";
        if (choices.dates == DateStamp::Show) out << "# generated on " << choices.dateText << "\n";
        return out.str();
    }

    static std::string helpersFile(const CodeProject& project, const Choices& choices) {
        std::ostringstream out;
        out << header(project, choices, "shared runtime helpers");
        out << R"(
def read_values(path):
    values = {}
    with open(path) as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, sep, raw = line.partition("=")
            if not sep:
                raise ValueError("malformed input line: " + line)
            values[name.strip()] = raw.strip()
    return values


def require(values, name):
    if name not in values:
        raise ValueError("missing input: " + name)
    return values[name]


def fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(float(value))


def log_line(path, message):
    with open(path, "a") as handle:
        handle.write(message + "\n")


def no_case():
    raise ValueError("no case condition matched")
)";
        return out.str();
    }

    static std::string moduleFile(const CodeProject& project, const Choices& choices, const CodeModule& m,
                                  pydetail::Ctx ctx) {
        ctx.module = &m;
        std::ostringstream out;
        out << header(project, choices, m.name);
        if (choices.comments.count(CommentKind::CommentMod)) out << "# " << m.docComment << "\n";
        out << "\nimport math\nimport sys\n\nimport helpers\n";
        std::set<std::string> imports;
        std::function<void(const StmtList&)> scan = [&](const StmtList& stmts) {
            for (const auto& s : stmts) {
                if (const auto* c = std::get_if<CallStmt>(&s.node)) {
                    auto it = ctx.funcModule.find(c->func);
                    if (it != ctx.funcModule.end() && it->second != m.name) imports.insert(it->second);
                } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
                    scan(i->thenBody);
                    scan(i->elseBody);
                }
            }
        };
        for (const auto& f : m.functions) scan(f.body);
        for (const auto& mod : imports) out << "import " << mod << "\n";
        out << "\n";

        if (m.definesRecord && project.inputRecord) {
            const auto& rec = *project.inputRecord;
            out << "\nclass " << rec.typeName << ":\n";
            if (choices.comments.count(CommentKind::CommentClass))
                out << "    \"\"\"" << rec.docComment << "\"\"\"\n";
            out << "    def __init__(self):\n";
            for (const auto& [n, sp] : rec.fields) {
                const char* init = sp.kind == Space::Kind::Boolean ? "False"
                                   : sp.kind == Space::Kind::Integer ? "0"
                                                                     : "0.0";
                out << "        self." << n << " = " << init << "\n";
            }
            out << "\n";
        }

        for (const auto& c : m.constants)
            out << c.name << " = " << pydetail::renderExpr(c.value, ctx) << "\n";
        if (!m.constants.empty()) out << "\n";

        for (const auto& f : m.functions) {
            ctx.recordInScope = false;
            for (const auto& p : f.params)
                if (p.isRecord) ctx.recordInScope = true;
            if (f.kind == FuncKind::Driver || f.kind == FuncKind::GetInput)
                ctx.recordInScope = project.inputRecord.has_value();
            out << "\ndef " << f.name << "(";
            if (f.kind == FuncKind::GetInput) {
                out << "path";
            } else if (f.kind == FuncKind::Driver) {
                // no parameters; reads sys.argv
            } else {
                for (size_t i = 0; i < f.params.size(); ++i) {
                    if (i) out << ", ";
                    out << f.params[i].name;
                }
            }
            out << "):\n";
            if (choices.comments.count(CommentKind::CommentFunc))
                out << "    \"\"\"" << f.docComment << "\"\"\"\n";
            std::ostringstream body;
            if (f.kind == FuncKind::Driver) {
                body << "    if len(sys.argv) < 2:\n";
                body << "        sys.stderr.write(\"usage: " << f.name << " <input-file>\\n\")\n";
                body << "        sys.exit(2)\n";
            }
            pydetail::renderStmts(body, f.body, ctx, 1);
            std::string text = body.str();
            if (text.empty()) text = "    pass\n";
            out << text;
        }

        if (project.entryModule && *project.entryModule == m.name) {
            out << "\n\nif __name__ == \"__main__\":\n";
            out << "    try:\n";
            out << "        main()\n";
            out << "    except Exception as error:\n";
            out << "        sys.stderr.write(str(error) + \"\\n\")\n";
            out << "        sys.exit(1)\n";
        }
        return out.str();
    }
};

} // namespace kweave
