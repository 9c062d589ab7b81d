#pragma once
// Knowledge chunks and the chunk database. UIDs are flat strings with
// conventional prefixes ("TM:", "IM:", "DD:") that the engine does not
// interpret. Forward references are allowed while registering; integrity
// is checked by validateIntegrity before anything is generated.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "units.hpp"

namespace kweave {

using UID = std::string;

inline void requireValidUid(const UID& uid) {
    if (uid.empty()) throw Error("UID must be non-empty");
    for (char c : uid)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw Error("UID must not contain whitespace: \"" + uid + "\"");
}

struct NamedIdea {
    UID uid;
    std::string term;  // noun phrase, non-empty
    std::optional<std::string> abbreviation;
};

// A named idea with a domain of related ideas.
struct ConceptChunk {
    NamedIdea idea;
    std::string definition;
    std::vector<UID> domain;
};

struct Space {
    enum class Kind { Real, Integer, Boolean, Enumerated };
    Kind kind = Kind::Real;
    std::vector<double> enumValues;  // Enumerated only, non-empty

    static Space real() { return {Kind::Real, {}}; }
    static Space integer() { return {Kind::Integer, {}}; }
    static Space boolean() { return {Kind::Boolean, {}}; }
    static Space enumerated(std::vector<double> values) { return {Kind::Enumerated, std::move(values)}; }

    friend bool operator==(const Space& a, const Space& b) {
        return a.kind == b.kind && a.enumValues == b.enumValues;
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool loClosed = true;
    bool hiClosed = true;

    bool contains(double v) const {
        if (loClosed ? v < lo : v <= lo) return false;
        if (hiClosed ? v > hi : v >= hi) return false;
        return true;
    }
};

struct QuantityDef {
    UID uid;
    std::string symbol;  // display text, e.g. "P_b"
    Space space;
    std::optional<UID> unit;  // UnitDef UID; absent means dimensionless
    std::string description;
    std::optional<Interval> physRange;
    std::optional<Interval> sfwrRange;
};

struct DataDefinition {
    UID uid;
    UID defines;  // QuantityDef UID
    Expr expr;
    std::string description;  // also the card label, e.g. "Risk of Failure"
    std::vector<std::string> sources;  // citation keys
    // Declared result dimension for expressions whose dimension cannot be
    // inferred (symbolic exponents). Required whenever inference is opaque.
    std::optional<Dimension> declaredResultDim;
};

struct TheoryModel {
    UID uid;
    std::string label;
    Expr relation;  // boolean- or equation-valued, possibly over abstract quantities
    std::string description;
};

struct InstanceModel {
    UID uid;
    std::optional<UID> grounds;  // TheoryModel UID
    UID output;                  // QuantityDef UID
    std::vector<UID> inputs;     // QuantityDef UIDs
    Expr expr;
    std::string description;
};

struct Assumption {
    UID uid;
    std::string statement;
    std::vector<UID> affects;  // QuantityDef UIDs
};

using Chunk = std::variant<UnitDef, NamedIdea, ConceptChunk, QuantityDef, DataDefinition, TheoryModel,
                           InstanceModel, Assumption>;

inline const UID& chunkUid(const Chunk& c) {
    return std::visit(
        [](const auto& x) -> const UID& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConceptChunk>)
                return x.idea.uid;
            else
                return x.uid;
        },
        c);
}

namespace detail {

inline void checkStructure(const UnitDef& u) {
    requireValidUid(u.uid);
    if (!(Rational(0) < u.siScale)) throw Error(u.uid + ": siScale must be positive");
}
inline void checkStructure(const NamedIdea& n) {
    requireValidUid(n.uid);
    if (n.term.empty()) throw Error(n.uid + ": term must be non-empty");
}
inline void checkStructure(const ConceptChunk& c) { checkStructure(c.idea); }
inline void checkStructure(const QuantityDef& q) {
    requireValidUid(q.uid);
    if (q.space.kind == Space::Kind::Enumerated && q.space.enumValues.empty())
        throw Error(q.uid + ": enumerated space must be non-empty");
    for (const auto* range : {&q.physRange, &q.sfwrRange}) {
        if (*range && !((*range)->lo < (*range)->hi))
            throw Error(q.uid + ": range bounds must satisfy lo < hi");
    }
    if (q.space.kind == Space::Kind::Boolean) {
        if (q.unit) throw Error(q.uid + ": boolean quantity must carry no unit");
        if (q.physRange || q.sfwrRange) throw Error(q.uid + ": boolean quantity must carry no ranges");
    }
}
inline void checkStructure(const DataDefinition& d) {
    requireValidUid(d.uid);
    if (!d.expr) throw Error(d.uid + ": missing expression");
}
inline void checkStructure(const TheoryModel& t) {
    requireValidUid(t.uid);
    if (!t.relation) throw Error(t.uid + ": missing relation");
}
inline void checkStructure(const InstanceModel& i) {
    requireValidUid(i.uid);
    if (!i.expr) throw Error(i.uid + ": missing expression");
}
inline void checkStructure(const Assumption& a) { requireValidUid(a.uid); }

} // namespace detail

class ChunkDB {
public:
    std::map<UID, UnitDef> units;
    std::map<UID, NamedIdea> namedIdeas;
    std::map<UID, ConceptChunk> concepts;
    std::map<UID, QuantityDef> quantities;
    std::map<UID, DataDefinition> dataDefs;
    std::map<UID, TheoryModel> theoryModels;
    std::map<UID, InstanceModel> instanceModels;
    std::map<UID, Assumption> assumptions;
    std::map<std::string, std::string> citations;  // key -> free-text entry

    bool has(const UID& uid) const {
        return units.count(uid) || namedIdeas.count(uid) || concepts.count(uid) || quantities.count(uid) ||
               dataDefs.count(uid) || theoryModels.count(uid) || instanceModels.count(uid) ||
               assumptions.count(uid);
    }

    // Mutating insert, used while constructing a DB. Forward references are
    // fine; validateIntegrity settles them later.
    void add(const Chunk& chunk) {
        std::visit([this](const auto& c) { detail::checkStructure(c); }, chunk);
        const UID& uid = chunkUid(chunk);
        if (has(uid)) throw DuplicateUID(uid);
        std::visit(
            [this](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, UnitDef>)
                    units.emplace(c.uid, c);
                else if constexpr (std::is_same_v<T, NamedIdea>)
                    namedIdeas.emplace(c.uid, c);
                else if constexpr (std::is_same_v<T, ConceptChunk>)
                    concepts.emplace(c.idea.uid, c);
                else if constexpr (std::is_same_v<T, QuantityDef>)
                    quantities.emplace(c.uid, c);
                else if constexpr (std::is_same_v<T, DataDefinition>)
                    dataDefs.emplace(c.uid, c);
                else if constexpr (std::is_same_v<T, TheoryModel>)
                    theoryModels.emplace(c.uid, c);
                else if constexpr (std::is_same_v<T, InstanceModel>)
                    instanceModels.emplace(c.uid, c);
                else
                    assumptions.emplace(c.uid, c);
            },
            chunk);
    }

    void addCitation(const std::string& key, const std::string& entry) { citations[key] = entry; }

    Chunk resolve(const UID& uid) const {
        if (auto it = units.find(uid); it != units.end()) return it->second;
        if (auto it = namedIdeas.find(uid); it != namedIdeas.end()) return it->second;
        if (auto it = concepts.find(uid); it != concepts.end()) return it->second;
        if (auto it = quantities.find(uid); it != quantities.end()) return it->second;
        if (auto it = dataDefs.find(uid); it != dataDefs.end()) return it->second;
        if (auto it = theoryModels.find(uid); it != theoryModels.end()) return it->second;
        if (auto it = instanceModels.find(uid); it != instanceModels.end()) return it->second;
        if (auto it = assumptions.find(uid); it != assumptions.end()) return it->second;
        throw UnknownUID(uid);
    }

    const QuantityDef& quantity(const UID& uid) const {
        auto it = quantities.find(uid);
        if (it == quantities.end()) throw UnknownUID(uid);
        return it->second;
    }

    const UnitDef& unit(const UID& uid) const {
        auto it = units.find(uid);
        if (it == units.end()) throw UnknownUID(uid);
        return it->second;
    }

    // Dimension of a quantity: its unit's dimension, or dimensionless.
    Dimension quantityDimension(const UID& uid) const {
        const QuantityDef& q = quantity(uid);
        if (!q.unit) return dimensionless();
        return unit(*q.unit).dimension;
    }
};

inline ChunkDB registerChunk(const ChunkDB& db, const Chunk& chunk) {
    ChunkDB next = db;
    next.add(chunk);
    return next;
}

inline Chunk resolveChunk(const ChunkDB& db, const UID& uid) { return db.resolve(uid); }

// Resolves Var UIDs to display symbols for rendering.
inline SymbolResolver symbolResolver(const ChunkDB& db) {
    return [&db](const std::string& uid) -> std::string {
        auto it = db.quantities.find(uid);
        if (it == db.quantities.end()) throw UnknownUID(uid);
        return it->second.symbol;
    };
}

// ---------------------------------------------------------------------------
// Integrity

struct IntegrityFinding {
    UID chunk;          // the offending chunk
    std::string reference;  // what failed to resolve / which invariant broke
    std::string message;
};

namespace detail {

inline void requireResolves(const ChunkDB& db, const UID& owner, const UID& ref, const char* what,
                            std::vector<IntegrityFinding>& out) {
    if (!db.has(ref))
        out.push_back({owner, ref, owner + ": " + what + " \"" + ref + "\" does not resolve"});
}

inline void requireQuantity(const ChunkDB& db, const UID& owner, const UID& ref, const char* what,
                            std::vector<IntegrityFinding>& out) {
    if (!db.quantities.count(ref))
        out.push_back({owner, ref, owner + ": " + what + " \"" + ref + "\" does not resolve to a quantity"});
}

inline bool isComparison(const Expr& e) {
    switch (e->kind) {
    case ExprKind::Lt:
    case ExprKind::Gt:
    case ExprKind::Le:
    case ExprKind::Ge:
    case ExprKind::Eq: return true;
    default: return false;
    }
}

} // namespace detail

inline std::vector<IntegrityFinding> validateIntegrity(const ChunkDB& db) {
    std::vector<IntegrityFinding> out;
    for (const auto& [uid, c] : db.concepts)
        for (const auto& tag : c.domain) detail::requireResolves(db, uid, tag, "domain tag", out);
    for (const auto& [uid, q] : db.quantities) {
        if (q.unit && !db.units.count(*q.unit))
            out.push_back({uid, *q.unit, uid + ": unit \"" + *q.unit + "\" does not resolve to a unit"});
    }
    for (const auto& [uid, d] : db.dataDefs) {
        detail::requireQuantity(db, uid, d.defines, "defined quantity", out);
        auto fv = freeVars(d.expr);
        if (fv.count(d.defines))
            out.push_back({uid, d.defines, uid + ": defines \"" + d.defines + "\" but also references it"});
        for (const auto& v : fv) detail::requireQuantity(db, uid, v, "free variable", out);
        for (const auto& key : d.sources)
            if (!db.citations.count(key))
                out.push_back({uid, key, uid + ": citation key \"" + key + "\" is not in the citation table"});
    }
    for (const auto& [uid, t] : db.theoryModels)
        for (const auto& v : freeVars(t.relation)) detail::requireQuantity(db, uid, v, "free variable", out);
    for (const auto& [uid, im] : db.instanceModels) {
        if (im.grounds && !db.theoryModels.count(*im.grounds))
            out.push_back({uid, *im.grounds, uid + ": grounds \"" + *im.grounds + "\" is not a theory model"});
        detail::requireQuantity(db, uid, im.output, "output", out);
        for (const auto& in : im.inputs) detail::requireQuantity(db, uid, in, "input", out);
        std::set<UID> inputSet(im.inputs.begin(), im.inputs.end());
        if (inputSet.count(im.output))
            out.push_back({uid, im.output, uid + ": output \"" + im.output + "\" also listed as input"});
        for (const auto& v : freeVars(im.expr))
            if (!inputSet.count(v))
                out.push_back({uid, v, uid + ": free variable \"" + v + "\" is not among declared inputs"});
        if (auto it = db.quantities.find(im.output); it != db.quantities.end()) {
            bool wantsBool = detail::isComparison(im.expr);
            bool isBool = it->second.space.kind == Space::Kind::Boolean;
            if (wantsBool != isBool)
                out.push_back({uid, im.output,
                               uid + ": output \"" + im.output + "\" space does not match the expression type"});
        }
    }
    for (const auto& [uid, a] : db.assumptions)
        for (const auto& v : a.affects) detail::requireQuantity(db, uid, v, "affected quantity", out);
    return out;
}

} // namespace kweave
