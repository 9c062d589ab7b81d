#pragma once
// Top-level recipe: weaves code for every target, the SRS in both formats,
// Makefile, README, choices log and traceability graph into one output
// tree. Everything is assembled in memory and only written once all
// validations pass.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "choices.hpp"
#include "codegen.hpp"
#include "coherence.hpp"
#include "docgen.hpp"

namespace kweave {

struct Manifest {
    std::vector<std::string> paths;  // relative to the output dir, sorted
};

// ---------------------------------------------------------------------------
// Choices log (lossless serialization of Choices)

namespace choicelog {

inline std::string toText(Modularity m) {
    switch (m) {
    case Modularity::Unmodular: return "Unmodular";
    case Modularity::ModularCombined: return "ModularCombined";
    default: return "ModularSeparated";
    }
}
inline std::string toText(ImpType t) { return t == ImpType::Program ? "Program" : "Library"; }
inline std::string toText(LogKind k) { return k == LogKind::LogVar ? "LogVar" : "LogFunc"; }
inline std::string toText(CommentKind k) {
    switch (k) {
    case CommentKind::CommentFunc: return "CommentFunc";
    case CommentKind::CommentClass: return "CommentClass";
    default: return "CommentMod";
    }
}
inline std::string toText(DateStamp d) { return d == DateStamp::Hide ? "Hide" : "Show"; }
inline std::string toText(ConstraintBehavior b) {
    return b == ConstraintBehavior::Exception ? "Exception" : "Warning";
}
inline std::string toText(InputStructure s) { return s == InputStructure::Bundled ? "Bundled" : "Unbundled"; }
inline std::string toText(ConstStructure s) { return s == ConstStructure::Inline ? "Inline" : "Store"; }
inline std::string toText(ConstRepr r) { return r == ConstRepr::Const ? "Const" : "Var"; }

template <typename T>
inline std::string listText(const T& items) {
    std::string out = "[";
    bool first = true;
    for (const auto& item : items) {
        if (!first) out += ", ";
        first = false;
        if constexpr (std::is_same_v<std::decay_t<decltype(item)>, std::string>)
            out += item;
        else
            out += toText(item);
    }
    return out + "]";
}

inline std::vector<std::string> parseList(const std::string& raw) {
    std::string body = raw;
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
    std::vector<std::string> out;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(' ');
        if (b == std::string::npos) continue;
        size_t e = item.find_last_not_of(' ');
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

} // namespace choicelog

inline std::string genChoicesLog(const Choices& c) {
    std::ostringstream out;
    out << "targets = " << choicelog::listText(c.targets) << "\n";
    out << "modularity = " << choicelog::toText(c.modularity) << "\n";
    out << "impType = " << choicelog::toText(c.impType) << "\n";
    out << "logFile = " << (c.logFile ? *c.logFile : "") << "\n";
    out << "logging = " << choicelog::listText(c.logging) << "\n";
    out << "comments = " << choicelog::listText(c.comments) << "\n";
    out << "dates = " << choicelog::toText(c.dates) << "\n";
    out << "dateText = " << c.dateText << "\n";
    out << "onSfwrConstraint = " << choicelog::toText(c.onSfwrConstraint) << "\n";
    out << "onPhysConstraint = " << choicelog::toText(c.onPhysConstraint) << "\n";
    out << "inputStructure = " << choicelog::toText(c.inputStructure) << "\n";
    out << "constStructure = " << choicelog::toText(c.constStructure) << "\n";
    out << "constRepr = " << choicelog::toText(c.constRepr) << "\n";
    return out.str();
}

inline Choices parseChoicesLog(const std::string& text) {
    std::map<std::string, std::string> fields;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw Error("choices log: malformed line: " + line);
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(' ');
            if (b == std::string::npos) return std::string();
            size_t e = s.find_last_not_of(" \r");
            return s.substr(b, e - b + 1);
        };
        fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto field = [&](const char* name) -> std::string {
        auto it = fields.find(name);
        if (it == fields.end()) throw Error(std::string("choices log: missing field: ") + name);
        return it->second;
    };
    Choices c;
    c.targets = choicelog::parseList(field("targets"));
    {
        std::string v = field("modularity");
        c.modularity = v == "Unmodular"         ? Modularity::Unmodular
                       : v == "ModularCombined" ? Modularity::ModularCombined
                       : v == "ModularSeparated"
                           ? Modularity::ModularSeparated
                           : throw Error("choices log: bad modularity: " + v);
    }
    c.impType = field("impType") == "Program" ? ImpType::Program : ImpType::Library;
    {
        std::string v = field("logFile");
        c.logFile = v.empty() ? std::nullopt : std::optional<std::string>(v);
    }
    for (const auto& item : choicelog::parseList(field("logging"))) {
        if (item == "LogVar") c.logging.insert(LogKind::LogVar);
        else if (item == "LogFunc") c.logging.insert(LogKind::LogFunc);
        else throw Error("choices log: bad logging item: " + item);
    }
    for (const auto& item : choicelog::parseList(field("comments"))) {
        if (item == "CommentFunc") c.comments.insert(CommentKind::CommentFunc);
        else if (item == "CommentClass") c.comments.insert(CommentKind::CommentClass);
        else if (item == "CommentMod") c.comments.insert(CommentKind::CommentMod);
        else throw Error("choices log: bad comments item: " + item);
    }
    c.dates = field("dates") == "Show" ? DateStamp::Show : DateStamp::Hide;
    c.dateText = field("dateText");
    c.onSfwrConstraint =
        field("onSfwrConstraint") == "Exception" ? ConstraintBehavior::Exception : ConstraintBehavior::Warning;
    c.onPhysConstraint =
        field("onPhysConstraint") == "Exception" ? ConstraintBehavior::Exception : ConstraintBehavior::Warning;
    c.inputStructure = field("inputStructure") == "Bundled" ? InputStructure::Bundled : InputStructure::Unbundled;
    c.constStructure = field("constStructure") == "Inline" ? ConstStructure::Inline : ConstStructure::Store;
    c.constRepr = field("constRepr") == "Const" ? ConstRepr::Const : ConstRepr::Var;
    return c;
}

// ---------------------------------------------------------------------------
// Makefile and README

inline std::string genMakefile(const SystemSpec& spec, const Choices& choices, const RendererRegistry& registry,
                               const CodeProject& project) {
    std::ostringstream out;
    out << "# Makefile for " << spec.programName << "\n";
    out << "# generated file, do not edit\n";
    if (choices.dates == DateStamp::Show) out << "# generated on " << choices.dateText << "\n";
    out << "\nCXX = g++\nRUNARGS =\n\n";
    std::vector<std::string> rules;
    std::vector<std::string> buildTargets;
    for (const auto& t : choices.targets) {
        std::string r = registry.at(t).makefileRules(spec.programName, project);
        std::string buildName = "build_" + t;
        if (r.find(buildName + ":") != std::string::npos) buildTargets.push_back(buildName);
        rules.push_back(std::move(r));
    }
    out << "all:";
    for (const auto& b : buildTargets) out << " " << b;
    out << "\n\n";
    for (const auto& r : rules) out << r << "\n";
    out << ".PHONY: all";
    for (const auto& t : choices.targets) out << " run_" << t;
    for (const auto& b : buildTargets) out << " " << b;
    out << "\n";
    return out.str();
}

inline std::string genReadme(const SystemSpec& spec, const Choices& choices) {
    std::ostringstream out;
    out << "# " << spec.programName << "\n\n";
    out << "> All files in this tree are generated. Edit the knowledge encoding and regenerate\n"
        << "> instead of editing " << spec.programName << " artifacts by hand.\n\n";
    out << "## Purpose\n\n" << spec.goal << "\n\n";
    if (!spec.authors.empty()) {
        out << "## Authors\n\n";
        for (const auto& a : spec.authors) out << "- " << a << "\n";
        out << "\n";
    }
    out << "## Running " << spec.programName << "\n\n";
    out << "Inputs are plain text, one `name = value` per line (`#` starts a comment).\n\n";
    for (const auto& t : choices.targets) {
        out << "For the " << t << " version of " << spec.programName << ":\n\n";
        out << "    make run_" << t << " RUNARGS=input.txt\n\n";
    }
    out << "## Documents\n\n";
    out << "- `SRS.md` / `SRS.html`: the software requirements specification of " << spec.programName << ".\n";
    out << "- `choices.log`: the code-level design choices used for this generation.\n";
    out << "- `trace.dot`: the traceability graph (Graphviz).\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// generateAll

inline std::vector<std::string> collectFindings(const SystemSpec& spec, const Choices& choices,
                                                const RendererRegistry& registry) {
    std::vector<std::string> findings = validateSpecShape(spec);
    for (const auto& f : validateIntegrity(spec.db)) findings.push_back(f.message);
    if (!findings.empty()) return findings;  // later checks assume resolvable references
    for (const auto& f : checkDimensions(spec.db)) findings.push_back(f);
    if (registry.size() < 2) findings.push_back("at least two registered targets are required");
    for (const auto& f : validateChoices(choices, registry.ids())) findings.push_back(f);
    try {
        auto graph = buildDependencyGraph(spec);
        if (auto cycle = checkAcyclic(graph)) {
            std::string msg = "cycle:";
            for (const auto& u : *cycle) msg += " " + u;
            findings.push_back(msg);
        } else {
            solutionPath(spec);
        }
    } catch (const Error& e) {
        findings.push_back(e.what());
    }
    return findings;
}

// The full artifact set, in memory.
inline FileSet buildFileSet(const SystemSpec& spec, const Choices& choices, const RendererRegistry& registry) {
    FileSet files;
    CodeProject project = lowerToIR(spec, choices);
    for (const auto& t : choices.targets) {
        FileSet sources = registry.at(t).render(project, choices);
        for (const auto& [path, text] : sources) files[t + "/src/" + path] = text;
    }
    DocumentModel srs = buildSRS(spec);
    files["SRS.md"] = renderDocument(srs, DocFormat::Markdown);
    files["SRS.html"] = renderDocument(srs, DocFormat::HTML);
    files["Makefile"] = genMakefile(spec, choices, registry, project);
    files["README.md"] = genReadme(spec, choices);
    files["choices.log"] = genChoicesLog(choices);
    files["trace.dot"] = exportDot(buildDependencyGraph(spec), spec.programName);
    return files;
}

inline Manifest generateAll(const SystemSpec& spec, const Choices& choices, const std::string& outDir,
                            const RendererRegistry& registry) {
    auto findings = collectFindings(spec, choices, registry);
    if (!findings.empty()) throw ValidationFailed(std::move(findings));

    FileSet files = buildFileSet(spec, choices, registry);

    namespace fs = std::filesystem;
    Manifest manifest;
    for (const auto& [path, text] : files) {
        fs::path full = fs::path(outDir) / path;
        std::error_code ec;
        fs::create_directories(full.parent_path(), ec);
        if (ec) throw IOFailure(full.parent_path().string());
        std::ofstream out(full, std::ios::binary);
        if (!out) throw IOFailure(full.string());
        out << text;
        if (!out) throw IOFailure(full.string());
        manifest.paths.push_back(path);
    }
    return manifest;
}

} // namespace kweave
