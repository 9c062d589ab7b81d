#include <catch_amalgamated.hpp>

#include <kweave/glassbr.hpp>
#include <kweave/kb.hpp>

using namespace kweave;

namespace {

QuantityDef quantityB() {
    QuantityDef q;
    q.uid = "B";
    q.symbol = "B";
    q.description = "risk of failure";
    return q;
}

} // namespace

TEST_CASE("register and resolve round-trip") {
    ChunkDB empty;
    ChunkDB db = registerChunk(empty, quantityB());
    CHECK(empty.quantities.empty());  // registration is persistent, not in-place
    CHECK(db.quantities.size() == 1);
    Chunk back = resolveChunk(db, "B");
    CHECK(std::get<QuantityDef>(back).symbol == "B");
}

TEST_CASE("duplicate registration is rejected") {
    ChunkDB db = registerChunk(ChunkDB{}, quantityB());
    CHECK_THROWS_AS(registerChunk(db, quantityB()), DuplicateUID);
}

TEST_CASE("resolution failures") {
    CHECK_THROWS_AS(resolveChunk(ChunkDB{}, "nope"), UnknownUID);
}

TEST_CASE("registered data definitions resolve by UID") {
    const ChunkDB& db = glassBR().spec.db;
    Chunk dd = resolveChunk(db, "DD:probOfBreak");
    CHECK(std::get<DataDefinition>(dd).defines == "P_b");
    Chunk risk = resolveChunk(db, "DD:riskFun");
    CHECK(std::get<DataDefinition>(risk).defines == "B");
}

TEST_CASE("structural invariants are enforced at registration") {
    ChunkDB db;
    CHECK_THROWS_AS(db.add(QuantityDef{"bad uid", "x", Space::real(), {}, "", {}, {}}), Error);
    CHECK_THROWS_AS(db.add(QuantityDef{"", "x", Space::real(), {}, "", {}, {}}), Error);
    CHECK_THROWS_AS(db.add(QuantityDef{"x", "x", Space::enumerated({}), {}, "", {}, {}}), Error);
    QuantityDef badRange{"y", "y", Space::real(), {}, "", Interval{2.0, 1.0}, {}};
    CHECK_THROWS_AS(db.add(badRange), Error);
    QuantityDef boolWithUnit{"z", "z", Space::boolean(), "unit:m", "", {}, {}};
    CHECK_THROWS_AS(db.add(boolWithUnit), Error);
    NamedIdea emptyTerm{"n", "", std::nullopt};
    CHECK_THROWS_AS(db.add(emptyTerm), Error);
}

TEST_CASE("integrity of the bundled example") {
    CHECK(validateIntegrity(glassBR().spec.db).empty());
    CHECK(validateIntegrity(ChunkDB{}).empty());
}

TEST_CASE("deleting a referenced quantity produces a dangling finding") {
    ChunkDB db = glassBR().spec.db;
    db.quantities.erase("B");
    auto findings = validateIntegrity(db);
    REQUIRE(!findings.empty());
    bool riskFlagged = false;
    for (const auto& f : findings)
        if (f.chunk == "DD:riskFun" && f.reference == "B") riskFlagged = true;
    CHECK(riskFlagged);
}

TEST_CASE("delete-one sweep: removing any referenced chunk is reported") {
    const ChunkDB base = glassBR().spec.db;
    REQUIRE(validateIntegrity(base).empty());
    std::vector<UID> all;
    for (const auto& [uid, _] : base.quantities) all.push_back(uid);
    for (const auto& uid : all) {
        ChunkDB db = base;
        db.quantities.erase(uid);
        // Every quantity in the example is referenced somewhere, so deleting
        // any of them must surface at least one finding naming it.
        auto findings = validateIntegrity(db);
        bool mentioned = false;
        for (const auto& f : findings)
            if (f.reference == uid) mentioned = true;
        INFO("deleted " << uid);
        CHECK(mentioned);
    }
}

TEST_CASE("integrity is monotone under deletion") {
    const ChunkDB base = glassBR().spec.db;
    auto baseline = validateIntegrity(base).size();
    std::vector<UID> all;
    for (const auto& [uid, _] : base.quantities) all.push_back(uid);
    for (const auto& uid : all) {
        ChunkDB db = base;
        db.quantities.erase(uid);
        CHECK(validateIntegrity(db).size() >= baseline);
    }
}

TEST_CASE("registration order does not affect contents") {
    const ChunkDB base = glassBR().spec.db;
    // Rebuild in reverse registration order per kind; maps make contents
    // order-independent, which this pins down.
    ChunkDB rebuilt;
    std::vector<Chunk> chunks;
    for (const auto& [_, c] : base.units) chunks.push_back(c);
    for (const auto& [_, c] : base.namedIdeas) chunks.push_back(c);
    for (const auto& [_, c] : base.concepts) chunks.push_back(c);
    for (const auto& [_, c] : base.quantities) chunks.push_back(c);
    for (const auto& [_, c] : base.dataDefs) chunks.push_back(c);
    for (const auto& [_, c] : base.theoryModels) chunks.push_back(c);
    for (const auto& [_, c] : base.instanceModels) chunks.push_back(c);
    for (const auto& [_, c] : base.assumptions) chunks.push_back(c);
    for (auto it = chunks.rbegin(); it != chunks.rend(); ++it) rebuilt.add(*it);
    for (const auto& [k, v] : base.citations) rebuilt.addCitation(k, v);
    CHECK(rebuilt.quantities.size() == base.quantities.size());
    CHECK(rebuilt.has("DD:riskFun"));
    CHECK(validateIntegrity(rebuilt).empty());
}

TEST_CASE("instance model invariants are validated") {
    ChunkDB db = glassBR().spec.db;
    // output also listed as input
    InstanceModel& im = db.instanceModels.at("IM:isSafePb");
    im.inputs.push_back(im.output);
    auto findings = validateIntegrity(db);
    bool flagged = false;
    for (const auto& f : findings)
        if (f.chunk == "IM:isSafePb") flagged = true;
    CHECK(flagged);
}

TEST_CASE("missing citation keys are findings") {
    ChunkDB db = glassBR().spec.db;
    db.citations.erase("ASTM2009");
    auto findings = validateIntegrity(db);
    bool flagged = false;
    for (const auto& f : findings)
        if (f.reference == "ASTM2009") flagged = true;
    CHECK(flagged);
}
