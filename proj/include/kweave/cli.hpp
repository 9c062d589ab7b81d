#pragma once
// Command-line front end: check / generate / graph / srs / list over the
// bundled examples. Exit codes: 0 success, 1 validation failure, 2 usage
// or I/O error.

#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "glassbr.hpp"
#include "render_cpp.hpp"
#include "render_python.hpp"
#include "weaver.hpp"

namespace kweave {

inline RendererRegistry defaultRegistry() {
    RendererRegistry registry;
    registry.add(std::make_shared<PythonRenderer>());
    registry.add(std::make_shared<CppRenderer>());
    return registry;
}

// The example's published generation settings: fully modular program with
// logging, comments everywhere, exceptions on violated constraints, bundled
// inputs and inlined constants.
inline Choices exampleChoices(std::vector<TargetId> targets) {
    Choices c = defaultChoices(std::move(targets));
    c.modularity = Modularity::ModularSeparated;
    c.impType = ImpType::Program;
    c.logFile = "log.txt";
    c.logging = {LogKind::LogVar, LogKind::LogFunc};
    c.comments = {CommentKind::CommentFunc, CommentKind::CommentClass, CommentKind::CommentMod};
    c.dates = DateStamp::Hide;
    c.onSfwrConstraint = ConstraintBehavior::Exception;
    c.onPhysConstraint = ConstraintBehavior::Exception;
    c.inputStructure = InputStructure::Bundled;
    c.constStructure = ConstStructure::Inline;
    c.constRepr = ConstRepr::Const;
    return c;
}

inline std::vector<TargetId> defaultTargets() { return {"python", "cpp"}; }

inline const std::map<std::string, std::function<ExampleBundle()>>& exampleRegistry() {
    static const std::map<std::string, std::function<ExampleBundle()>> examples = {
        {"glassbr", [] { return glassBR(); }},
        {"glassbr-enum", [] { return glassBRWithEnumeratedThickness(); }},
    };
    return examples;
}

inline int runCli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"knowledge-capture and artifact-generation engine"};
    app.require_subcommand(1);

    std::string example, outDir, choicesFile, nameOverride, format = "md";
    CLI::App* check = app.add_subcommand("check", "run all validations over an example");
    check->add_option("example", example, "example name")->required();
    CLI::App* generate = app.add_subcommand("generate", "generate the full artifact tree");
    generate->add_option("example", example, "example name")->required();
    generate->add_option("--out", outDir, "output directory")->required();
    generate->add_option("--choices", choicesFile, "choices file (choices.log format)");
    generate->add_option("--name", nameOverride, "override the program name");
    CLI::App* graph = app.add_subcommand("graph", "print the dependency graph as DOT");
    graph->add_option("example", example, "example name")->required();
    CLI::App* srs = app.add_subcommand("srs", "print the requirements document");
    srs->add_option("example", example, "example name")->required();
    srs->add_option("--format", format, "md or html")->check(CLI::IsMember({"md", "html"}));
    app.add_subcommand("list", "list bundled examples and registered targets");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    RendererRegistry registry = defaultRegistry();
    const auto& examples = exampleRegistry();

    try {
        if (app.got_subcommand("list")) {
            out << "examples:\n";
            for (const auto& [name, _] : examples) out << "  " << name << "\n";
            out << "targets:\n";
            for (const auto& id : registry.ids()) out << "  " << id << "\n";
            return 0;
        }

        auto found = examples.find(example);
        if (found == examples.end()) {
            err << "unknown example: " << example << "\n";
            return 2;
        }
        ExampleBundle bundle = found->second();

        if (app.got_subcommand(check)) {
            auto findings = collectFindings(bundle.spec, exampleChoices(defaultTargets()), registry);
            for (const auto& f : findings) out << f << "\n";
            return findings.empty() ? 0 : 1;
        }
        if (app.got_subcommand(graph)) {
            out << exportDot(buildDependencyGraph(bundle.spec), bundle.spec.programName);
            return 0;
        }
        if (app.got_subcommand(srs)) {
            DocumentModel doc = buildSRS(bundle.spec);
            out << renderDocument(doc, format == "html" ? DocFormat::HTML : DocFormat::Markdown);
            return 0;
        }
        // generate
        Choices choices = exampleChoices(defaultTargets());
        if (!choicesFile.empty()) {
            std::ifstream in(choicesFile, std::ios::binary);
            if (!in) throw IOFailure(choicesFile);
            std::ostringstream text;
            text << in.rdbuf();
            choices = parseChoicesLog(text.str());
        }
        if (!nameOverride.empty()) bundle.spec.programName = nameOverride;
        Manifest manifest = generateAll(bundle.spec, choices, outDir, registry);
        for (const auto& p : manifest.paths) out << p << "\n";
        return 0;
    } catch (const ValidationFailed& v) {
        for (const auto& f : v.findings) err << f << "\n";
        return 1;
    } catch (const IOFailure& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
}

inline int runCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return runCli(std::move(args), out, err);
}

} // namespace kweave
