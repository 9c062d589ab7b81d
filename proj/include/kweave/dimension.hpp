#pragma once
// Dimensional analysis of expressions. Exponents may be symbolic (a power
// raised to a quantity, as in (E*h^2)^m), so inferred exponents are affine
// forms over exponent quantities. A fully constant result is a Dimension;
// a symbolic or unanalyzable one is reported as UnitOpaque and must be
// covered by a declared result dimension on the owning chunk.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kb.hpp"

namespace kweave {

struct UnitOpaque {};

using DimResult = std::variant<Dimension, UnitOpaque>;

namespace dimdetail {

// Affine form c0 + sum(coeff[uid] * uid) with rational coefficients.
struct AffineExp {
    Rational constant;
    std::map<UID, Rational> coeffs;

    bool isConstant() const {
        for (const auto& [_, c] : coeffs)
            if (!c.isZero()) return false;
        return true;
    }

    void addScaled(const AffineExp& other, Rational k) {
        constant = constant + other.constant * k;
        for (const auto& [uid, c] : other.coeffs) {
            Rational next = coeffs[uid] + c * k;
            if (next.isZero())
                coeffs.erase(uid);
            else
                coeffs[uid] = next;
        }
    }

    friend bool operator==(const AffineExp& a, const AffineExp& b) {
        return a.constant == b.constant && a.coeffs == b.coeffs;
    }
};

struct SymDim {
    std::array<AffineExp, 7> exponents;

    bool isConstant() const {
        for (const auto& e : exponents)
            if (!e.isConstant()) return false;
        return true;
    }

    bool isDimensionless() const {
        for (const auto& e : exponents)
            if (!e.isConstant() || !e.constant.isZero()) return false;
        return true;
    }

    Dimension toDimension() const {
        Dimension d;
        for (int i = 0; i < 7; ++i) d.exponents[i] = exponents[i].constant;
        return d;
    }

    static SymDim fromDimension(const Dimension& d) {
        SymDim s;
        for (int i = 0; i < 7; ++i) s.exponents[i].constant = d.exponents[i];
        return s;
    }

    friend bool operator==(const SymDim& a, const SymDim& b) { return a.exponents == b.exponents; }
};

inline std::string describe(const SymDim& s) {
    if (s.isConstant()) return toString(s.toDimension());
    return "<symbolic exponents>";
}

// Inference result: either a (possibly symbolic) dimension, or opaque.
struct DimInfo {
    bool opaque = false;
    SymDim dim;

    static DimInfo makeOpaque() { return {true, {}}; }
    static DimInfo of(SymDim d) { return {false, std::move(d)}; }
    static DimInfo clear() { return {false, {}}; }
};

// Interprets an exponent expression as an affine form over quantity UIDs.
// Returns nullopt when the expression is not affine.
inline std::optional<AffineExp> affineExponent(const Expr& e) {
    switch (e->kind) {
    case ExprKind::LitInt: {
        AffineExp a;
        a.constant = Rational(e->intValue);
        return a;
    }
    case ExprKind::LitRational: {
        AffineExp a;
        a.constant = e->ratValue;
        return a;
    }
    case ExprKind::Var: {
        AffineExp a;
        a.coeffs[e->uid] = 1;
        return a;
    }
    case ExprKind::Neg: {
        auto inner = affineExponent(e->children[0]);
        if (!inner) return std::nullopt;
        AffineExp a;
        a.addScaled(*inner, -1);
        return a;
    }
    case ExprKind::Add:
    case ExprKind::Sub: {
        auto lhs = affineExponent(e->children[0]);
        auto rhs = affineExponent(e->children[1]);
        if (!lhs || !rhs) return std::nullopt;
        AffineExp a = *lhs;
        a.addScaled(*rhs, e->kind == ExprKind::Add ? 1 : -1);
        return a;
    }
    default: return std::nullopt;
    }
}

inline std::string subterm(const Expr& e, const ChunkDB& db) {
    auto lenient = [&db](const std::string& uid) {
        auto it = db.quantities.find(uid);
        return it != db.quantities.end() ? it->second.symbol : uid;
    };
    return renderMathText(e, MathStyle::Unicode, lenient);
}

inline DimInfo infer(const Expr& e, const ChunkDB& db);

inline DimInfo inferSameDim(const Expr& e, const ChunkDB& db, const char* op) {
    DimInfo a = infer(e->children[0], db);
    DimInfo b = infer(e->children[1], db);
    if (a.opaque || b.opaque) return DimInfo::makeOpaque();
    if (!(a.dim == b.dim))
        throw DimensionMismatch(std::string(op) + " operands have dimensions " + describe(a.dim) + " and " +
                                describe(b.dim) + " in \"" + subterm(e, db) + "\"");
    return a;
}

inline DimInfo infer(const Expr& e, const ChunkDB& db) {
    switch (e->kind) {
    case ExprKind::LitInt:
    case ExprKind::LitReal:
    case ExprKind::LitRational: return DimInfo::clear();
    case ExprKind::Var: {
        auto it = db.quantities.find(e->uid);
        if (it == db.quantities.end()) throw UnknownUID(e->uid);
        return DimInfo::of(SymDim::fromDimension(db.quantityDimension(e->uid)));
    }
    case ExprKind::Neg:
    case ExprKind::Abs: return infer(e->children[0], db);
    case ExprKind::Add: return inferSameDim(e, db, "Add");
    case ExprKind::Sub: return inferSameDim(e, db, "Sub");
    case ExprKind::Mul: {
        DimInfo a = infer(e->children[0], db);
        DimInfo b = infer(e->children[1], db);
        if (a.opaque || b.opaque) return DimInfo::makeOpaque();
        SymDim r;
        for (int i = 0; i < 7; ++i) {
            r.exponents[i] = a.dim.exponents[i];
            r.exponents[i].addScaled(b.dim.exponents[i], 1);
        }
        return DimInfo::of(r);
    }
    case ExprKind::Div: {
        DimInfo a = infer(e->children[0], db);
        DimInfo b = infer(e->children[1], db);
        if (a.opaque || b.opaque) return DimInfo::makeOpaque();
        SymDim r;
        for (int i = 0; i < 7; ++i) {
            r.exponents[i] = a.dim.exponents[i];
            r.exponents[i].addScaled(b.dim.exponents[i], -1);
        }
        return DimInfo::of(r);
    }
    case ExprKind::Sqrt: {
        DimInfo a = infer(e->children[0], db);
        if (a.opaque) return a;
        SymDim r;
        for (int i = 0; i < 7; ++i) r.exponents[i].addScaled(a.dim.exponents[i], Rational(1, 2));
        return DimInfo::of(r);
    }
    case ExprKind::Pow: {
        DimInfo base = infer(e->children[0], db);
        DimInfo expo = infer(e->children[1], db);
        // The exponent itself must be a pure number.
        if (!expo.opaque && !expo.dim.isDimensionless())
            throw DimensionMismatch("exponent has dimension " + describe(expo.dim) + " in \"" +
                                    subterm(e, db) + "\"");
        if (base.opaque) return DimInfo::makeOpaque();
        if (base.dim.isDimensionless()) return DimInfo::clear();
        auto aff = affineExponent(e->children[1]);
        // A symbolic exponent over a dimensioned base stays analyzable only
        // when the base dimension is constant and the exponent is affine.
        if (!aff || !base.dim.isConstant()) return DimInfo::makeOpaque();
        SymDim r;
        for (int i = 0; i < 7; ++i) {
            Rational baseExp = base.dim.exponents[i].constant;
            if (baseExp.isZero()) continue;
            r.exponents[i].addScaled(*aff, baseExp);
        }
        return DimInfo::of(r);
    }
    case ExprKind::Exp:
    case ExprKind::Ln: {
        DimInfo a = infer(e->children[0], db);
        if (a.opaque) return a;
        if (!a.dim.isDimensionless()) return DimInfo::makeOpaque();
        return DimInfo::clear();
    }
    case ExprKind::Lt:
    case ExprKind::Gt:
    case ExprKind::Le:
    case ExprKind::Ge:
    case ExprKind::Eq: {
        inferSameDim(e, db, "Comparison");
        return DimInfo::clear();  // comparisons yield a dimensionless boolean
    }
    case ExprKind::Case: {
        std::optional<SymDim> common;
        bool anyOpaque = false;
        for (const auto& b : e->branches) {
            infer(b.condition, db);
            DimInfo v = infer(b.value, db);
            if (v.opaque) {
                anyOpaque = true;
                continue;
            }
            if (!common)
                common = v.dim;
            else if (!(*common == v.dim))
                throw DimensionMismatch("case branches have dimensions " + describe(*common) + " and " +
                                        describe(v.dim) + " in \"" + subterm(e, db) + "\"");
        }
        if (anyOpaque || !common) return DimInfo::makeOpaque();
        return DimInfo::of(*common);
    }
    }
    throw TypeError("unknown expression kind");
}

// Checks whether some assignment of the exponent symbols makes `dim` equal
// `target`. Gaussian elimination over a tiny rational system.
inline bool satisfiable(const SymDim& dim, const Dimension& target) {
    std::vector<UID> symbols;
    for (const auto& e : dim.exponents)
        for (const auto& [uid, c] : e.coeffs)
            if (!c.isZero() && std::find(symbols.begin(), symbols.end(), uid) == symbols.end())
                symbols.push_back(uid);
    const size_t n = symbols.size();
    // rows: [coeffs... | rhs]
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < 7; ++i) {
        std::vector<Rational> row(n + 1);
        for (size_t j = 0; j < n; ++j) {
            auto it = dim.exponents[i].coeffs.find(symbols[j]);
            row[j] = it == dim.exponents[i].coeffs.end() ? Rational(0) : it->second;
        }
        row[n] = target.exponents[i] - dim.exponents[i].constant;
        rows.push_back(std::move(row));
    }
    size_t pivotRow = 0;
    for (size_t col = 0; col < n && pivotRow < rows.size(); ++col) {
        size_t sel = pivotRow;
        while (sel < rows.size() && rows[sel][col].isZero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivotRow], rows[sel]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivotRow || rows[r][col].isZero()) continue;
            Rational f = rows[r][col] / rows[pivotRow][col];
            for (size_t c = col; c <= n; ++c) rows[r][c] = rows[r][c] - rows[pivotRow][c] * f;
        }
        ++pivotRow;
    }
    for (const auto& row : rows) {
        bool allZero = true;
        for (size_t j = 0; j < n; ++j)
            if (!row[j].isZero()) allZero = false;
        if (allZero && !row[n].isZero()) return false;
    }
    return true;
}

} // namespace dimdetail

// Dimension of an expression against the quantities in `db`. Throws
// DimensionMismatch for incompatible operands; returns UnitOpaque when the
// result depends on symbolic exponents or an unanalyzable operand.
inline DimResult inferDimension(const Expr& e, const ChunkDB& db) {
    dimdetail::DimInfo info = dimdetail::infer(e, db);
    if (info.opaque || !info.dim.isConstant()) return UnitOpaque{};
    return info.dim.toDimension();
}

// Whole-database dimension pass: every DD/IM/TM expression must be
// internally consistent and agree with the declared dimension of what it
// defines. Findings are strings naming the offending chunk.
inline std::vector<std::string> checkDimensions(const ChunkDB& db) {
    std::vector<std::string> findings;
    for (const auto& [uid, dd] : db.dataDefs) {
        Dimension declared;
        try {
            declared = db.quantityDimension(dd.defines);
        } catch (const UnknownUID&) {
            continue;  // validateIntegrity reports this
        }
        try {
            dimdetail::DimInfo info = dimdetail::infer(dd.expr, db);
            if (info.opaque) {
                if (!dd.declaredResultDim)
                    findings.push_back(uid + ": result dimension is opaque and no declared dimension is given");
                else if (!(*dd.declaredResultDim == declared))
                    findings.push_back(uid + ": declared result dimension disagrees with the defined quantity");
            } else if (info.dim.isConstant()) {
                if (!(info.dim.toDimension() == declared))
                    findings.push_back(uid + ": inferred dimension " + toString(info.dim.toDimension()) +
                                       " does not match declared " + toString(declared) + " of " + dd.defines);
            } else {
                // Symbolic exponents: the declared-dimension check asks
                // whether any exponent assignment reconciles the two.
                if (!dd.declaredResultDim)
                    findings.push_back(uid + ": result dimension is symbolic and no declared dimension is given");
                else if (!(*dd.declaredResultDim == declared))
                    findings.push_back(uid + ": declared result dimension disagrees with the defined quantity");
                else if (!dimdetail::satisfiable(info.dim, declared))
                    findings.push_back(uid + ": declared-dimension check failed: no exponent value makes the "
                                             "expression's dimension equal " +
                                       toString(declared));
            }
        } catch (const DimensionMismatch& m) {
            findings.push_back(uid + ": " + m.what());
        } catch (const UnknownUID&) {
            // validateIntegrity reports unresolved variables
        }
    }
    auto checkRelation = [&](const UID& uid, const Expr& rel) {
        try {
            dimdetail::infer(rel, db);
        } catch (const DimensionMismatch& m) {
            findings.push_back(uid + ": " + m.what());
        } catch (const UnknownUID&) {
        }
    };
    for (const auto& [uid, tm] : db.theoryModels) checkRelation(uid, tm.relation);
    for (const auto& [uid, im] : db.instanceModels) checkRelation(uid, im.expr);
    return findings;
}

} // namespace kweave
