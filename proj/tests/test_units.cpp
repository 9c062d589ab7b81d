#include <catch_amalgamated.hpp>

#include <kweave/units.hpp>

using namespace kweave;

namespace {

Dimension dimOf(const std::string& uid) {
    for (const auto& u : builtinUnits())
        if (u.uid == uid) return u.dimension;
    FAIL("unknown builtin unit " + uid);
    return {};
}

Dimension make(Rational l, Rational m, Rational t) {
    Dimension d;
    d[BaseDim::Length] = l;
    d[BaseDim::Mass] = m;
    d[BaseDim::Time] = t;
    return d;
}

} // namespace

TEST_CASE("dimMul is componentwise addition") {
    CHECK(dimMul(dimOf("unit:m"), dimOf("unit:s")) == make(1, 0, 1));
    CHECK(dimMul(dimensionless(), dimOf("unit:Pa")) == dimOf("unit:Pa"));
    // Pa * m^2 = N
    CHECK(dimMul(dimOf("unit:Pa"), dimPow(dimOf("unit:m"), 2)) == dimOf("unit:N"));
}

TEST_CASE("dimPow scales exponents") {
    CHECK(dimPow(baseDim(BaseDim::Length), 2) == make(2, 0, 0));
    CHECK(dimPow(dimOf("unit:m12Nm7"), 0) == dimensionless());
    CHECK(dimPow(dimOf("unit:Pa"), 7) == make(-7, 7, -14));
    // rational exponents stay closed (sqrt of an area is a length)
    CHECK(dimPow(make(2, 0, 0), Rational(1, 2)) == make(1, 0, 0));
}

TEST_CASE("builtin units carry the correct dimension vectors") {
    CHECK(dimOf("unit:Pa") == make(-1, 1, -2));
    CHECK(dimOf("unit:N") == make(1, 1, -2));
    // m^12 N^-7 = L^12 (M L T^-2)^-7 = M^-7 L^5 T^14
    CHECK(dimOf("unit:m12Nm7") == make(5, -7, 14));
    for (const auto& u : builtinUnits()) CHECK(Rational(0) < u.siScale);
}

TEST_CASE("builtin units round-trip through their defining products") {
    const Dimension metre = baseDim(BaseDim::Length);
    const Dimension newton = dimMul(baseDim(BaseDim::Mass), dimMul(metre, dimPow(baseDim(BaseDim::Time), -2)));
    CHECK(dimOf("unit:N") == newton);
    CHECK(dimOf("unit:Pa") == dimDiv(newton, dimPow(metre, 2)));
    CHECK(dimOf("unit:m12Nm7") == dimMul(dimPow(metre, 12), dimPow(newton, -7)));
}

TEST_CASE("dimension group laws on a fixed sample") {
    std::uint64_t state = 42;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return Rational(static_cast<std::int64_t>((state >> 33) % 9) - 4,
                        static_cast<std::int64_t>((state >> 20) % 3) + 1);
    };
    auto randomDim = [&] {
        Dimension d;
        for (auto& e : d.exponents) e = next();
        return d;
    };
    for (int i = 0; i < 100; ++i) {
        Dimension a = randomDim(), b = randomDim(), c = randomDim();
        Rational r = next();
        CHECK(dimMul(a, b) == dimMul(b, a));
        CHECK(dimMul(dimMul(a, b), c) == dimMul(a, dimMul(b, c)));
        CHECK(dimMul(a, dimensionless()) == a);
        CHECK(dimMul(a, dimDiv(dimensionless(), a)) == dimensionless());
        CHECK(dimPow(dimMul(a, b), r) == dimMul(dimPow(a, r), dimPow(b, r)));
    }
}

TEST_CASE("dimension display") {
    CHECK(toString(dimensionless()) == "1");
    CHECK(toString(dimOf("unit:Pa")) == "L^-1 M^1 T^-2");
    CHECK(dimensionless().isDimensionless());
    CHECK(!dimOf("unit:m").isDimensionless());
}
