#pragma once
// Knowledge dependency graph and the coherent-narrative checks: acyclicity,
// a deterministic path from inputs to every output, the used-symbol set,
// and Graphviz DOT export.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dimension.hpp"
#include "kb.hpp"

namespace kweave {

struct SystemSpec {
    std::string programName;
    std::vector<std::string> authors;
    std::string goal;
    std::vector<UID> inputs;   // QuantityDef UIDs
    std::vector<UID> outputs;  // QuantityDef UIDs
    std::vector<UID> tms;
    std::vector<UID> ims;
    std::vector<UID> dds;
    std::vector<UID> assumptions;
    ChunkDB db;
};

inline std::vector<std::string> validateSpecShape(const SystemSpec& spec) {
    std::vector<std::string> findings;
    if (spec.programName.empty()) findings.push_back("programName must be non-empty");
    std::set<UID> in(spec.inputs.begin(), spec.inputs.end());
    for (const auto& o : spec.outputs)
        if (in.count(o)) findings.push_back("quantity is both input and output: " + o);
    auto resolveAll = [&](const std::vector<UID>& uids, const char* role) {
        for (const auto& u : uids)
            if (!spec.db.has(u)) findings.push_back(std::string(role) + " does not resolve: " + u);
    };
    resolveAll(spec.inputs, "input");
    resolveAll(spec.outputs, "output");
    resolveAll(spec.tms, "theory model");
    resolveAll(spec.ims, "instance model");
    resolveAll(spec.dds, "data definition");
    resolveAll(spec.assumptions, "assumption");
    return findings;
}

enum class EdgeKind { Uses, Grounds };

struct GraphEdge {
    UID from;
    UID to;
    EdgeKind kind = EdgeKind::Uses;

    friend bool operator==(const GraphEdge& a, const GraphEdge& b) {
        return a.from == b.from && a.to == b.to && a.kind == b.kind;
    }
    friend bool operator<(const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.from, a.to, a.kind) < std::tie(b.from, b.to, b.kind);
    }
};

struct DependencyGraph {
    std::set<UID> nodes;
    std::set<GraphEdge> edges;

    bool hasEdge(const UID& from, const UID& to, EdgeKind kind = EdgeKind::Uses) const {
        return edges.count({from, to, kind}) > 0;
    }
};

namespace detail {

// Quantity UID -> the DD/IM that defines it. Two definers is an error:
// the path must be deterministic.
inline std::map<UID, UID> definerIndex(const SystemSpec& spec) {
    std::map<UID, UID> definer;
    auto claim = [&](const UID& quantity, const UID& chunk) {
        auto [it, fresh] = definer.emplace(quantity, chunk);
        if (!fresh && it->second != chunk) throw AmbiguousDefinition(quantity);
    };
    for (const auto& ddUid : spec.dds) {
        auto it = spec.db.dataDefs.find(ddUid);
        if (it != spec.db.dataDefs.end()) claim(it->second.defines, ddUid);
    }
    for (const auto& imUid : spec.ims) {
        auto it = spec.db.instanceModels.find(imUid);
        if (it != spec.db.instanceModels.end()) claim(it->second.output, imUid);
    }
    return definer;
}

} // namespace detail

inline DependencyGraph buildDependencyGraph(const SystemSpec& spec) {
    auto integrity = validateIntegrity(spec.db);
    if (!integrity.empty()) throw IntegrityError(integrity.front().message);

    DependencyGraph g;
    for (const auto& [uid, _] : spec.db.quantities) g.nodes.insert(uid);
    for (const auto& u : spec.tms) g.nodes.insert(u);
    for (const auto& u : spec.ims) g.nodes.insert(u);
    for (const auto& u : spec.dds) g.nodes.insert(u);

    auto definer = detail::definerIndex(spec);
    auto usesEdges = [&](const UID& consumer, const Expr& e) {
        for (const auto& q : freeVars(e)) {
            g.nodes.insert(q);
            g.edges.insert({q, consumer, EdgeKind::Uses});
            auto def = definer.find(q);
            if (def != definer.end() && def->second != consumer)
                g.edges.insert({def->second, consumer, EdgeKind::Uses});
        }
    };
    for (const auto& ddUid : spec.dds) usesEdges(ddUid, spec.db.dataDefs.at(ddUid).expr);
    for (const auto& imUid : spec.ims) {
        const InstanceModel& im = spec.db.instanceModels.at(imUid);
        usesEdges(imUid, im.expr);
        if (im.grounds) g.edges.insert({*im.grounds, imUid, EdgeKind::Grounds});
    }
    for (const auto& tmUid : spec.tms) usesEdges(tmUid, spec.db.theoryModels.at(tmUid).relation);
    return g;
}

// ok when empty; otherwise one complete cycle in order, first node repeated
// at the end.
inline std::optional<std::vector<UID>> checkAcyclic(const DependencyGraph& g) {
    std::map<UID, std::vector<UID>> succ;
    for (const auto& e : g.edges) succ[e.from].push_back(e.to);

    std::map<UID, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::vector<UID> stack;
    std::optional<std::vector<UID>> cycle;

    std::function<bool(const UID&)> visit = [&](const UID& u) -> bool {
        state[u] = 1;
        stack.push_back(u);
        for (const auto& v : succ[u]) {
            if (state[v] == 1) {
                auto start = std::find(stack.begin(), stack.end(), v);
                cycle = std::vector<UID>(start, stack.end());
                cycle->push_back(v);
                return true;
            }
            if (state[v] == 0 && visit(v)) return true;
        }
        stack.pop_back();
        state[u] = 2;
        return false;
    };
    for (const auto& n : g.nodes)
        if (state[n] == 0 && visit(n)) return cycle;
    return std::nullopt;
}

// Evaluation order over DDs/IMs deriving every output from the declared
// inputs. Only chunks that contribute to some output are listed. Ties among
// ready chunks break lexicographically by UID.
inline std::vector<UID> solutionPath(const SystemSpec& spec) {
    auto definer = detail::definerIndex(spec);
    std::set<UID> inputs(spec.inputs.begin(), spec.inputs.end());

    auto dependsOn = [&](const UID& chunk) -> std::set<UID> {
        if (auto it = spec.db.dataDefs.find(chunk); it != spec.db.dataDefs.end())
            return freeVars(it->second.expr);
        return freeVars(spec.db.instanceModels.at(chunk).expr);
    };

    // Walk back from the outputs, collecting the relevant chunks.
    std::set<UID> relevant;
    std::vector<UID> work;
    for (const auto& out : spec.outputs) {
        if (inputs.count(out)) continue;
        auto def = definer.find(out);
        if (def == definer.end()) throw UnreachableOutput(out);
        work.push_back(def->second);
    }
    while (!work.empty()) {
        UID chunk = work.back();
        work.pop_back();
        if (!relevant.insert(chunk).second) continue;
        for (const auto& q : dependsOn(chunk)) {
            if (inputs.count(q)) continue;
            auto def = definer.find(q);
            if (def == definer.end()) throw UnderdeterminedQuantity(q);
            work.push_back(def->second);
        }
    }

    // Kahn's algorithm with a sorted ready set.
    std::map<UID, std::set<UID>> needs;  // chunk -> defining chunks it waits on
    for (const auto& chunk : relevant) {
        std::set<UID> deps;
        for (const auto& q : dependsOn(chunk)) {
            auto def = definer.find(q);
            if (def != definer.end() && relevant.count(def->second)) deps.insert(def->second);
        }
        needs[chunk] = std::move(deps);
    }
    std::vector<UID> order;
    while (order.size() < relevant.size()) {
        std::optional<UID> pick;
        for (const auto& [chunk, deps] : needs)
            if (deps.empty() && std::find(order.begin(), order.end(), chunk) == order.end()) {
                pick = chunk;
                break;
            }
        if (!pick) {
            // A cycle among the relevant chunks; report it via checkAcyclic's shape.
            throw Error("solutionPath: cyclic dependencies among " + std::to_string(relevant.size()) +
                        " chunks; run checkAcyclic for the cycle");
        }
        order.push_back(*pick);
        for (auto& [_, deps] : needs) deps.erase(*pick);
        needs.erase(*pick);
    }
    return order;
}

// Quantities free in any in-scope TM/IM/DD expression, plus declared
// inputs and outputs.
inline std::set<UID> usedSymbols(const SystemSpec& spec) {
    std::set<UID> out(spec.inputs.begin(), spec.inputs.end());
    out.insert(spec.outputs.begin(), spec.outputs.end());
    auto addFrom = [&](const Expr& e) {
        auto fv = freeVars(e);
        out.insert(fv.begin(), fv.end());
    };
    for (const auto& u : spec.dds)
        if (auto it = spec.db.dataDefs.find(u); it != spec.db.dataDefs.end()) addFrom(it->second.expr);
    for (const auto& u : spec.ims)
        if (auto it = spec.db.instanceModels.find(u); it != spec.db.instanceModels.end()) addFrom(it->second.expr);
    for (const auto& u : spec.tms)
        if (auto it = spec.db.theoryModels.find(u); it != spec.db.theoryModels.end()) addFrom(it->second.relation);
    return out;
}

namespace detail {

inline std::string dotEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace detail

// Graphviz digraph; nodes and edges in sorted order so output is stable.
inline std::string exportDot(const DependencyGraph& g, const std::string& graphName = "dependencies") {
    std::ostringstream out;
    out << "digraph \"" << detail::dotEscape(graphName) << "\" {\n";
    out << "  label=\"" << detail::dotEscape(graphName) << "\";\n";
    for (const auto& n : g.nodes) out << "  \"" << detail::dotEscape(n) << "\";\n";
    for (const auto& e : g.edges) {
        out << "  \"" << detail::dotEscape(e.from) << "\" -> \"" << detail::dotEscape(e.to) << "\"";
        if (e.kind == EdgeKind::Grounds) out << " [label=\"ground (to instance)\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace kweave
