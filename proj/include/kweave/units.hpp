#pragma once
// Dimension vectors over the seven SI base dimensions, plus named units
// with a scale factor to coherent SI. Exponents are rational so that
// fractional powers (sqrt) stay closed.

#include <array>
#include <string>
#include <vector>

#include "rational.hpp"

namespace kweave {

// Index order: length, mass, time, current, temperature, amount, luminosity.
enum class BaseDim : int { Length = 0, Mass, Time, Current, Temperature, Amount, Luminosity };

struct Dimension {
    std::array<Rational, 7> exponents{};

    bool isDimensionless() const {
        for (const auto& e : exponents)
            if (!e.isZero()) return false;
        return true;
    }

    Rational& operator[](BaseDim d) { return exponents[static_cast<int>(d)]; }
    const Rational& operator[](BaseDim d) const { return exponents[static_cast<int>(d)]; }

    friend bool operator==(const Dimension& a, const Dimension& b) { return a.exponents == b.exponents; }
    friend bool operator!=(const Dimension& a, const Dimension& b) { return !(a == b); }
};

inline Dimension dimensionless() { return {}; }

inline Dimension baseDim(BaseDim d, Rational e = 1) {
    Dimension r;
    r[d] = e;
    return r;
}

inline Dimension dimMul(const Dimension& a, const Dimension& b) {
    Dimension r;
    for (int i = 0; i < 7; ++i) r.exponents[i] = a.exponents[i] + b.exponents[i];
    return r;
}

inline Dimension dimDiv(const Dimension& a, const Dimension& b) {
    Dimension r;
    for (int i = 0; i < 7; ++i) r.exponents[i] = a.exponents[i] - b.exponents[i];
    return r;
}

inline Dimension dimPow(const Dimension& a, Rational e) {
    Dimension r;
    for (int i = 0; i < 7; ++i) r.exponents[i] = a.exponents[i] * e;
    return r;
}

// Compact display form, e.g. "M^1 L^-1 T^-2" for Pa; "1" when dimensionless.
inline std::string toString(const Dimension& d) {
    static const char* names[7] = {"L", "M", "T", "I", "Th", "N", "J"};
    std::string out;
    for (int i = 0; i < 7; ++i) {
        if (d.exponents[i].isZero()) continue;
        if (!out.empty()) out += " ";
        out += names[i];
        out += "^";
        out += toString(d.exponents[i]);
    }
    return out.empty() ? "1" : out;
}

struct UnitDef {
    std::string uid;
    std::string name;
    std::string symbol;
    Dimension dimension;
    Rational siScale = 1;  // > 0, factor to coherent SI
};

// The units every bundled example may reference. Includes the composite
// m^12 N^-7 carried by the surface flaw parameter.
inline std::vector<UnitDef> builtinUnits() {
    const Dimension metre = baseDim(BaseDim::Length);
    const Dimension kilogram = baseDim(BaseDim::Mass);
    const Dimension second = baseDim(BaseDim::Time);
    const Dimension newton = dimMul(kilogram, dimMul(metre, dimPow(second, -2)));
    const Dimension pascal = dimDiv(newton, dimPow(metre, 2));
    return {
        {"unit:m", "metre", "m", metre, 1},
        {"unit:kg", "kilogram", "kg", kilogram, 1},
        {"unit:s", "second", "s", second, 1},
        {"unit:N", "newton", "N", newton, 1},
        {"unit:Pa", "pascal", "Pa", pascal, 1},
        {"unit:m12Nm7", "metre to the 12th per newton to the 7th", "m^12*N^-7",
         dimMul(dimPow(metre, 12), dimPow(newton, -7)), 1},
    };
}

} // namespace kweave
