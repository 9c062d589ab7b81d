#pragma once
// Bundled example: glass-slab blast-risk analysis. Encodes the glass-type
// concepts, the risk / probability-of-breakage definitions and the safety
// instance model, plus test cases with frozen expected outputs.

#include "coherence.hpp"

namespace kweave {

struct ExampleCase {
    Env inputs;
    Env expected;
};

struct ExampleBundle {
    SystemSpec spec;
    std::vector<ExampleCase> testCases;
};

namespace glassdetail {

inline QuantityDef quantityOf(UID uid, std::string symbol, Space space, std::optional<UID> unit,
                              std::string description, std::optional<Interval> physRange = std::nullopt,
                              std::optional<Interval> sfwrRange = std::nullopt) {
    QuantityDef q;
    q.uid = std::move(uid);
    q.symbol = std::move(symbol);
    q.space = std::move(space);
    q.unit = std::move(unit);
    q.description = std::move(description);
    q.physRange = physRange;
    q.sfwrRange = sfwrRange;
    return q;
}

inline ConceptChunk glassConcept(UID uid, std::string term, std::string abbrev, std::string definition) {
    ConceptChunk c;
    c.idea = {std::move(uid), std::move(term), std::move(abbrev)};
    c.definition = std::move(definition);
    c.domain = {"Glass"};
    return c;
}

// B = k / (a*b)^(m-1) * (E*h^2)^m * LDF * e^J
inline Expr riskExpr() {
    Expr base = div(var("k"), pow(mul(var("a"), var("b")), sub(var("m"), litInt(1))));
    Expr loadTerm = pow(mul(var("E"), pow(var("h"), litInt(2))), var("m"));
    return mul(mul(mul(base, loadTerm), var("LDF")), exp(var("J")));
}

} // namespace glassdetail

inline ExampleBundle glassBR() {
    using glassdetail::glassConcept;
    using glassdetail::quantityOf;

    ChunkDB db;
    for (const auto& u : builtinUnits()) db.add(u);

    db.add(NamedIdea{"Glass", "glass", std::nullopt});
    db.add(glassConcept("fullyT", "Fully Tempered", "FT",
                        "glass heat-treated for roughly four times the strength of annealed glass"));
    db.add(glassConcept("heatS", "Heat Strengthened", "HS",
                        "glass heat-treated for roughly twice the strength of annealed glass"));
    db.add(glassConcept("iGlass", "Insulating Glass", "IG",
                        "two or more glass lites separated by a sealed air space"));
    db.add(glassConcept("lGlass", "Laminated Glass", "LG",
                        "layered glass lites bonded by an interlayer"));
    db.add(glassConcept("glassTypeFac", "Glass Type Factor", "GTF",
                        "multiplier expressing the relative strength of a glass type"));

    const Interval unitInterval{0.0, 1.0, true, true};
    db.add(quantityOf("k", "k", Space::real(), "unit:m12Nm7", "surface flaw parameter", std::nullopt,
                      Interval{0.0, 5.0}));
    db.add(quantityOf("a", "a", Space::real(), "unit:m", "plate length", Interval{0.0, 1.0e3, false, true},
                      Interval{0.5, 3.0}));
    db.add(quantityOf("b", "b", Space::real(), "unit:m", "plate width", Interval{0.0, 1.0e3, false, true},
                      Interval{0.5, 3.0}));
    db.add(quantityOf("m", "m", Space::real(), std::nullopt, "surface flaw parameter exponent", std::nullopt,
                      Interval{1.0, 4.0}));
    db.add(quantityOf("E", "E", Space::real(), "unit:Pa", "modulus of elasticity of glass", std::nullopt,
                      Interval{1.0, 50.0}));
    db.add(quantityOf("h", "h", Space::real(), "unit:m", "minimum thickness", std::nullopt,
                      Interval{0.1, 1.0}));
    db.add(quantityOf("LDF", "LDF", Space::real(), std::nullopt, "load duration factor", std::nullopt,
                      Interval{0.5, 2.0}));
    db.add(quantityOf("J", "J", Space::real(), std::nullopt, "stress distribution factor", std::nullopt,
                      Interval{0.0, 2.0}));
    db.add(quantityOf("B", "B", Space::real(), std::nullopt, "risk of failure"));
    db.add(quantityOf("P_b", "P_b", Space::real(), std::nullopt, "probability of breakage", unitInterval));
    db.add(quantityOf("P_btol", "P_btol", Space::real(), std::nullopt, "tolerable probability of breakage",
                      unitInterval, unitInterval));
    db.add(quantityOf("is_safePb", "is_safePb", Space::boolean(), std::nullopt,
                      "probability-based safety verdict"));
    db.add(quantityOf("P_f", "P_f", Space::real(), std::nullopt, "probability of failure", unitInterval));
    db.add(quantityOf("P_ftol", "P_ftol", Space::real(), std::nullopt, "tolerable probability of failure",
                      unitInterval));
    db.add(quantityOf("is_safeProb", "is_safeProb", Space::boolean(), std::nullopt,
                      "probability-based safety condition"));

    db.addCitation("ASTM2009", "ASTM. Standard practice for determining load resistance of glass in "
                               "buildings. E1300-09a, 2009.");
    db.addCitation("ASTM2015", "ASTM. Standard specification for flat glass. C1036-15, 2015.");
    db.addCitation("BeasonEtAl1998", "Beason, Kohutek, Bracci. Basis for ASTM E1300 annealed glass "
                                     "thickness selection charts. 1998.");

    DataDefinition riskFun;
    riskFun.uid = "DD:riskFun";
    riskFun.defines = "B";
    riskFun.expr = glassdetail::riskExpr();
    riskFun.description = "Risk of Failure";
    riskFun.sources = {"ASTM2009", "BeasonEtAl1998"};
    riskFun.declaredResultDim = dimensionless();
    db.add(riskFun);

    DataDefinition probOfBreak;
    probOfBreak.uid = "DD:probOfBreak";
    probOfBreak.defines = "P_b";
    probOfBreak.expr = sub(litInt(1), exp(neg(var("B"))));
    probOfBreak.description = "Probability of Breakage";
    probOfBreak.sources = {"ASTM2009"};
    db.add(probOfBreak);

    TheoryModel isSafeProb;
    isSafeProb.uid = "TM:isSafeProb";
    isSafeProb.label = "Probability-based safety";
    isSafeProb.relation = eq(var("is_safeProb"), lt(var("P_f"), var("P_ftol")));
    isSafeProb.description = "an artifact is safe when its probability of failure stays below tolerance";
    db.add(isSafeProb);

    InstanceModel isSafePb;
    isSafePb.uid = "IM:isSafePb";
    isSafePb.grounds = "TM:isSafeProb";
    isSafePb.output = "is_safePb";
    isSafePb.inputs = {"P_b", "P_btol"};
    isSafePb.expr = lt(var("P_b"), var("P_btol"));
    isSafePb.description = "the slab is safe when its probability of breakage stays below tolerance";
    db.add(isSafePb);

    Assumption ldfConstant;
    ldfConstant.uid = "A:ldfConstant";
    ldfConstant.statement = "The load duration (distribution) factor LDF is constant over the analysis.";
    ldfConstant.affects = {"LDF"};
    db.add(ldfConstant);

    ExampleBundle bundle;
    bundle.spec.programName = "GlassBR";
    bundle.spec.authors = {};
    bundle.spec.goal =
        "Analyze and predict whether the glass slab under consideration will be able to withstand the "
        "explosion of a certain degree that is calculated based on user input.";
    bundle.spec.inputs = {"k", "a", "b", "m", "E", "h", "LDF", "J", "P_btol"};
    bundle.spec.outputs = {"P_b", "is_safePb"};
    bundle.spec.tms = {"TM:isSafeProb"};
    bundle.spec.ims = {"IM:isSafePb"};
    bundle.spec.dds = {"DD:riskFun", "DD:probOfBreak"};
    bundle.spec.assumptions = {"A:ldfConstant"};
    bundle.spec.db = std::move(db);

    // Expected outputs are frozen doubles, hand-checked against closed
    // forms: case 1 has B = 1, case 2 has B = 0, case 3 has B = 0.45 e.
    bundle.testCases = {
        {{{"k", 1.0}, {"a", 1.0}, {"b", 1.0}, {"m", 1.0}, {"E", 1.0}, {"h", 1.0}, {"LDF", 1.0}, {"J", 0.0},
          {"P_btol", 0.5}},
         {{"P_b", 0.6321205588285577}, {"is_safePb", false}}},
        {{{"k", 0.0}, {"a", 1.5}, {"b", 2.0}, {"m", 2.0}, {"E", 3.0}, {"h", 0.5}, {"LDF", 1.2}, {"J", 1.0},
          {"P_btol", 0.5}},
         {{"P_b", 0.0}, {"is_safePb", true}}},
        {{{"k", 2.0}, {"a", 1.5}, {"b", 2.0}, {"m", 2.0}, {"E", 3.0}, {"h", 0.5}, {"LDF", 1.2}, {"J", 1.0},
          {"P_btol", 0.5}},
         {{"P_b", 0.7057209531385633}, {"is_safePb", false}}},
    };
    return bundle;
}

// Variant where the slab thickness is restricted to the values manufacturers
// actually provide (illustrative set, not standard data).
inline ExampleBundle glassBRWithEnumeratedThickness() {
    ExampleBundle bundle = glassBR();
    QuantityDef& h = bundle.spec.db.quantities.at("h");
    h.space = Space::enumerated({0.4, 0.5, 0.6});
    bundle.testCases.clear();
    Env inputs{{"k", 2.0}, {"a", 1.5}, {"b", 2.0},   {"m", 2.0},     {"E", 3.0},
               {"h", 0.5}, {"LDF", 1.2}, {"J", 1.0}, {"P_btol", 0.5}};
    bundle.testCases.push_back({inputs, {{"P_b", 0.7057209531385633}, {"is_safePb", false}}});
    return bundle;
}

inline std::vector<ExampleCase> glassBRTestCases() { return glassBR().testCases; }

} // namespace kweave
