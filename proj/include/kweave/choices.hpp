#pragma once
// Code-level design variabilities and their validation. Plain data; the
// choices log (weaver) is its lossless serialization.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace kweave {

enum class Modularity { Unmodular, ModularCombined, ModularSeparated };
enum class ImpType { Program, Library };
enum class LogKind { LogVar, LogFunc };
enum class CommentKind { CommentFunc, CommentClass, CommentMod };
enum class DateStamp { Hide, Show };
enum class ConstraintBehavior { Exception, Warning };
enum class InputStructure { Bundled, Unbundled };
enum class ConstStructure { Inline, Store };
enum class ConstRepr { Const, Var };

using TargetId = std::string;

struct Choices {
    std::vector<TargetId> targets;
    Modularity modularity = Modularity::Unmodular;
    ImpType impType = ImpType::Program;
    std::optional<std::string> logFile;
    std::set<LogKind> logging;
    std::set<CommentKind> comments;
    DateStamp dates = DateStamp::Hide;
    std::string dateText;  // stamped into headers when dates=Show; caller-supplied, never wall-clock
    ConstraintBehavior onSfwrConstraint = ConstraintBehavior::Warning;
    ConstraintBehavior onPhysConstraint = ConstraintBehavior::Warning;
    InputStructure inputStructure = InputStructure::Unbundled;
    ConstStructure constStructure = ConstStructure::Store;
    ConstRepr constRepr = ConstRepr::Const;

    friend bool operator==(const Choices& a, const Choices& b) {
        return a.targets == b.targets && a.modularity == b.modularity && a.impType == b.impType &&
               a.logFile == b.logFile && a.logging == b.logging && a.comments == b.comments &&
               a.dates == b.dates && a.dateText == b.dateText && a.onSfwrConstraint == b.onSfwrConstraint &&
               a.onPhysConstraint == b.onPhysConstraint && a.inputStructure == b.inputStructure &&
               a.constStructure == b.constStructure && a.constRepr == b.constRepr;
    }
};

// Valid against any registry containing the given targets.
inline Choices defaultChoices(std::vector<TargetId> targets) {
    Choices c;
    c.targets = std::move(targets);
    return c;
}

inline std::vector<std::string> validateChoices(const Choices& c, const std::set<TargetId>& registered) {
    std::vector<std::string> findings;
    if (c.targets.empty()) findings.push_back("targets must be non-empty");
    std::set<TargetId> seen;
    for (const auto& t : c.targets) {
        if (!seen.insert(t).second) findings.push_back("duplicate target: " + t);
        if (!registered.count(t)) findings.push_back("unregistered target: " + t);
    }
    if (!c.logging.empty() && !c.logFile)
        findings.push_back("logFile required when logging is enabled");
    if (c.dates == DateStamp::Show && c.dateText.empty())
        findings.push_back("dateText required when dates = Show");
    return findings;
}

} // namespace kweave
