#pragma once
// Typed mathematical expression AST: the computational leg of a theory.
// Immutable nodes behind shared_ptr so subtrees are shared freely.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kweave {

enum class ExprKind {
    LitInt,
    LitReal,
    LitRational,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Case,
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct CaseBranch {
    Expr condition;
    Expr value;
};

struct ExprNode {
    ExprKind kind;
    std::int64_t intValue = 0;      // LitInt
    double realValue = 0.0;         // LitReal
    Rational ratValue;              // LitRational
    std::string uid;                // Var
    std::vector<Expr> children;     // operands, in order
    std::vector<CaseBranch> branches;  // Case
};

inline Expr litInt(std::int64_t v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::LitInt;
    n->intValue = v;
    return n;
}

inline Expr litReal(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::LitReal;
    n->realValue = v;
    return n;
}

inline Expr litRational(Rational r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::LitRational;
    n->ratValue = r;
    return n;
}

inline Expr var(std::string uid) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Var;
    n->uid = std::move(uid);
    return n;
}

inline Expr mkUnary(ExprKind k, Expr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->children = {std::move(a)};
    return n;
}

inline Expr mkBinary(ExprKind k, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->children = {std::move(a), std::move(b)};
    return n;
}

inline Expr neg(Expr a) { return mkUnary(ExprKind::Neg, std::move(a)); }
inline Expr add(Expr a, Expr b) { return mkBinary(ExprKind::Add, std::move(a), std::move(b)); }
inline Expr sub(Expr a, Expr b) { return mkBinary(ExprKind::Sub, std::move(a), std::move(b)); }
inline Expr mul(Expr a, Expr b) { return mkBinary(ExprKind::Mul, std::move(a), std::move(b)); }
inline Expr div(Expr a, Expr b) { return mkBinary(ExprKind::Div, std::move(a), std::move(b)); }
inline Expr pow(Expr base, Expr exponent) { return mkBinary(ExprKind::Pow, std::move(base), std::move(exponent)); }
inline Expr exp(Expr a) { return mkUnary(ExprKind::Exp, std::move(a)); }
inline Expr ln(Expr a) { return mkUnary(ExprKind::Ln, std::move(a)); }
inline Expr sqrt(Expr a) { return mkUnary(ExprKind::Sqrt, std::move(a)); }
inline Expr abs(Expr a) { return mkUnary(ExprKind::Abs, std::move(a)); }
inline Expr lt(Expr a, Expr b) { return mkBinary(ExprKind::Lt, std::move(a), std::move(b)); }
inline Expr gt(Expr a, Expr b) { return mkBinary(ExprKind::Gt, std::move(a), std::move(b)); }
inline Expr le(Expr a, Expr b) { return mkBinary(ExprKind::Le, std::move(a), std::move(b)); }
inline Expr ge(Expr a, Expr b) { return mkBinary(ExprKind::Ge, std::move(a), std::move(b)); }
inline Expr eq(Expr a, Expr b) { return mkBinary(ExprKind::Eq, std::move(a), std::move(b)); }

inline Expr caseOf(std::vector<CaseBranch> branches) {
    if (branches.empty()) throw TypeError("Case needs at least one branch");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Case;
    n->branches = std::move(branches);
    return n;
}

// ---------------------------------------------------------------------------
// Free variables

inline void collectFreeVars(const Expr& e, std::set<std::string>& out) {
    if (e->kind == ExprKind::Var) {
        out.insert(e->uid);
        return;
    }
    for (const auto& c : e->children) collectFreeVars(c, out);
    for (const auto& b : e->branches) {
        collectFreeVars(b.condition, out);
        collectFreeVars(b.value, out);
    }
}

inline std::set<std::string> freeVars(const Expr& e) {
    std::set<std::string> out;
    collectFreeVars(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

using Value = std::variant<double, bool>;

// Map from quantity UID to its numeric or boolean value.
using Env = std::map<std::string, Value>;

inline double asNumber(const Value& v, const char* context) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw TypeError(std::string("expected a number in ") + context);
}

inline bool asBool(const Value& v, const char* context) {
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    throw TypeError(std::string("expected a boolean in ") + context);
}

inline Value evalExpr(const Expr& e, const Env& env) {
    switch (e->kind) {
    case ExprKind::LitInt: return static_cast<double>(e->intValue);
    case ExprKind::LitReal: return e->realValue;
    case ExprKind::LitRational: return e->ratValue.toDouble();
    case ExprKind::Var: {
        auto it = env.find(e->uid);
        if (it == env.end()) throw UnboundVariable(e->uid);
        return it->second;
    }
    case ExprKind::Neg: return -asNumber(evalExpr(e->children[0], env), "Neg");
    case ExprKind::Add:
        return asNumber(evalExpr(e->children[0], env), "Add") + asNumber(evalExpr(e->children[1], env), "Add");
    case ExprKind::Sub:
        return asNumber(evalExpr(e->children[0], env), "Sub") - asNumber(evalExpr(e->children[1], env), "Sub");
    case ExprKind::Mul:
        return asNumber(evalExpr(e->children[0], env), "Mul") * asNumber(evalExpr(e->children[1], env), "Mul");
    case ExprKind::Div: {
        double d = asNumber(evalExpr(e->children[1], env), "Div");
        if (d == 0.0) throw DomainError("division by zero");
        return asNumber(evalExpr(e->children[0], env), "Div") / d;
    }
    case ExprKind::Pow:
        return std::pow(asNumber(evalExpr(e->children[0], env), "Pow"),
                        asNumber(evalExpr(e->children[1], env), "Pow"));
    case ExprKind::Exp: return std::exp(asNumber(evalExpr(e->children[0], env), "Exp"));
    case ExprKind::Ln: {
        double x = asNumber(evalExpr(e->children[0], env), "Ln");
        if (x <= 0.0) throw DomainError("Ln of non-positive value");
        return std::log(x);
    }
    case ExprKind::Sqrt: {
        double x = asNumber(evalExpr(e->children[0], env), "Sqrt");
        if (x < 0.0) throw DomainError("Sqrt of negative value");
        return std::sqrt(x);
    }
    case ExprKind::Abs: return std::fabs(asNumber(evalExpr(e->children[0], env), "Abs"));
    case ExprKind::Lt:
        return asNumber(evalExpr(e->children[0], env), "Lt") < asNumber(evalExpr(e->children[1], env), "Lt");
    case ExprKind::Gt:
        return asNumber(evalExpr(e->children[0], env), "Gt") > asNumber(evalExpr(e->children[1], env), "Gt");
    case ExprKind::Le:
        return asNumber(evalExpr(e->children[0], env), "Le") <= asNumber(evalExpr(e->children[1], env), "Le");
    case ExprKind::Ge:
        return asNumber(evalExpr(e->children[0], env), "Ge") >= asNumber(evalExpr(e->children[1], env), "Ge");
    case ExprKind::Eq: {
        // Eq also relates booleans (theory relations such as b = x < y);
        // numeric equality is exact, user-beware.
        Value a = evalExpr(e->children[0], env);
        Value b = evalExpr(e->children[1], env);
        if (std::holds_alternative<bool>(a) || std::holds_alternative<bool>(b))
            return asBool(a, "Eq") == asBool(b, "Eq");
        return asNumber(a, "Eq") == asNumber(b, "Eq");
    }
    case ExprKind::Case:
        for (const auto& b : e->branches) {
            if (asBool(evalExpr(b.condition, env), "Case condition")) return evalExpr(b.value, env);
        }
        throw NoCaseMatched();
    }
    throw TypeError("unknown expression kind");
}

// ---------------------------------------------------------------------------
// Rendering

enum class MathStyle { Unicode, MarkdownInline };

// Maps a Var UID to its display symbol. Throws UnknownUID when it cannot.
using SymbolResolver = std::function<std::string(const std::string&)>;

inline SymbolResolver identitySymbols() {
    return [](const std::string& uid) { return uid; };
}

namespace detail {

// Higher binds tighter. Pow is right-associative; comparisons do not chain.
inline int precedence(ExprKind k) {
    switch (k) {
    case ExprKind::Eq:
    case ExprKind::Lt:
    case ExprKind::Gt:
    case ExprKind::Le:
    case ExprKind::Ge: return 1;
    case ExprKind::Add:
    case ExprKind::Sub: return 2;
    case ExprKind::Mul:
    case ExprKind::Div: return 3;
    case ExprKind::Neg: return 4;
    case ExprKind::Pow: return 5;
    default: return 6;
    }
}

inline std::string renderReal(double v) {
    // Shortest form that still reads as a literal.
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline std::string renderMath(const Expr& e, MathStyle style, const SymbolResolver& symbols, int parentPrec,
                              bool rightChild) {
    const int prec = precedence(e->kind);
    auto wrap = [&](std::string body) {
        bool needParens = prec < parentPrec || (prec == parentPrec && rightChild && prec != 5) ||
                          (prec == parentPrec && !rightChild && prec == 5);
        return needParens ? "(" + body + ")" : body;
    };
    auto child = [&](size_t i, bool right) { return renderMath(e->children[i], style, symbols, prec, right); };
    const char* mulSign = style == MathStyle::Unicode ? "·" : "*";
    switch (e->kind) {
    case ExprKind::LitInt: return std::to_string(e->intValue);
    case ExprKind::LitReal: return renderReal(e->realValue);
    case ExprKind::LitRational: return toString(e->ratValue);
    case ExprKind::Var: return symbols(e->uid);
    case ExprKind::Neg: return wrap("-" + child(0, true));
    case ExprKind::Add: return wrap(child(0, false) + " + " + child(1, true));
    case ExprKind::Sub: return wrap(child(0, false) + " - " + child(1, true));
    case ExprKind::Mul: return wrap(child(0, false) + mulSign + child(1, true));
    case ExprKind::Div: return wrap(child(0, false) + "/" + child(1, true));
    case ExprKind::Pow: return wrap(child(0, false) + "^" + child(1, true));
    case ExprKind::Exp: return "e^" + renderMath(e->children[0], style, symbols, precedence(ExprKind::Pow), true);
    case ExprKind::Ln: return "ln(" + renderMath(e->children[0], style, symbols, 0, false) + ")";
    case ExprKind::Sqrt: return "sqrt(" + renderMath(e->children[0], style, symbols, 0, false) + ")";
    case ExprKind::Abs: return "|" + renderMath(e->children[0], style, symbols, 0, false) + "|";
    case ExprKind::Lt: return wrap(child(0, false) + " < " + child(1, true));
    case ExprKind::Gt: return wrap(child(0, false) + " > " + child(1, true));
    case ExprKind::Le: return wrap(child(0, false) + " <= " + child(1, true));
    case ExprKind::Ge: return wrap(child(0, false) + " >= " + child(1, true));
    case ExprKind::Eq: return wrap(child(0, false) + " = " + child(1, true));
    case ExprKind::Case: {
        std::string out;
        for (size_t i = 0; i < e->branches.size(); ++i) {
            if (i) out += "; ";
            out += renderMath(e->branches[i].value, style, symbols, 0, false);
            out += " if ";
            out += renderMath(e->branches[i].condition, style, symbols, 0, false);
        }
        return "{" + out + "}";
    }
    }
    throw TypeError("unknown expression kind");
}

} // namespace detail

inline std::string renderMathText(const Expr& e, MathStyle style, const SymbolResolver& symbols) {
    return detail::renderMath(e, style, symbols, 0, false);
}

inline std::string renderMathText(const Expr& e, MathStyle style) {
    return renderMathText(e, style, identitySymbols());
}

} // namespace kweave
