#include <catch_amalgamated.hpp>

#include <kweave/choices.hpp>
#include <kweave/weaver.hpp>

using namespace kweave;

namespace {
const std::set<TargetId> registered{"python", "cpp"};
}

TEST_CASE("default choices are valid and conservative") {
    Choices c = defaultChoices({"python", "cpp"});
    CHECK(validateChoices(c, registered).empty());
    CHECK(c.logging.empty());
    CHECK(c.comments.empty());
    CHECK(c.modularity == Modularity::Unmodular);
    CHECK(c.impType == ImpType::Program);
    CHECK(c.dates == DateStamp::Hide);
    CHECK(c.onSfwrConstraint == ConstraintBehavior::Warning);
    CHECK(c.onPhysConstraint == ConstraintBehavior::Warning);
    CHECK(c.inputStructure == InputStructure::Unbundled);
    CHECK(c.constStructure == ConstStructure::Store);
    CHECK(c.constRepr == ConstRepr::Const);
}

TEST_CASE("the published example settings validate") {
    Choices c = defaultChoices({"python", "cpp"});
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
    CHECK(validateChoices(c, registered).empty());
}

TEST_CASE("logging without a log file is a finding") {
    Choices c = defaultChoices({"python"});
    c.logging = {LogKind::LogVar};
    auto findings = validateChoices(c, registered);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].find("logFile") != std::string::npos);
}

TEST_CASE("unknown and duplicate targets are findings") {
    Choices c = defaultChoices({"fortran"});
    auto findings = validateChoices(c, registered);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].find("unregistered") != std::string::npos);

    Choices dup = defaultChoices({"python", "python"});
    CHECK(!validateChoices(dup, registered).empty());

    Choices none = defaultChoices({});
    CHECK(!validateChoices(none, registered).empty());
}

TEST_CASE("showing dates requires a caller-supplied date") {
    Choices c = defaultChoices({"python"});
    c.dates = DateStamp::Show;
    CHECK(!validateChoices(c, registered).empty());
    c.dateText = "2024-01-01";
    CHECK(validateChoices(c, registered).empty());
}

TEST_CASE("choices log round-trips every field") {
    Choices c = defaultChoices({"python", "cpp"});
    c.modularity = Modularity::ModularSeparated;
    c.logFile = "log.txt";
    c.logging = {LogKind::LogVar, LogKind::LogFunc};
    c.comments = {CommentKind::CommentClass};
    c.dates = DateStamp::Show;
    c.dateText = "2024-06-30";
    c.onSfwrConstraint = ConstraintBehavior::Exception;
    c.inputStructure = InputStructure::Bundled;
    c.constStructure = ConstStructure::Inline;
    c.constRepr = ConstRepr::Var;
    CHECK(parseChoicesLog(genChoicesLog(c)) == c);

    Choices d = defaultChoices({"cpp"});
    CHECK(parseChoicesLog(genChoicesLog(d)) == d);
}

TEST_CASE("choices log format details") {
    Choices c = defaultChoices({"python", "cpp"});
    c.constStructure = ConstStructure::Inline;
    std::string log = genChoicesLog(c);
    CHECK(log.find("targets = [python, cpp]\n") != std::string::npos);
    CHECK(log.find("constStructure = Inline\n") != std::string::npos);
    CHECK(log.find("logging = []\n") != std::string::npos);
}

TEST_CASE("malformed choices logs are rejected") {
    CHECK_THROWS_AS(parseChoicesLog("not a field line"), Error);
    CHECK_THROWS_AS(parseChoicesLog("targets = [python]"), Error);  // everything else missing
}
