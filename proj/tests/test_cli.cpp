#include "prp/cli.hpp"
#include "prp/error.hpp"
#include "prp/model.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace prp;
using namespace prp::cli;

namespace {

const std::string kModels = PRP_MODELS_DIR;

std::string model_path(const std::string& name) { return kModels + "/" + name + ".json"; }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ValidationError;
}

std::string message_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const char* kBin = R"({
  "name": "BIN",
  "space": {"outcomes": ["u", "d"], "probabilities": ["1/2", "1/2"], "horizon": 1},
  "processes": {"X": [["1", "2"], ["1", "1/2"]]}
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
    text.replace(text.find(from), from.size(), to);
    return text;
}

struct Run {
    int status;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST(ParseModel, Bin) {
    const ModelDocument m = parse_model(kBin);
    EXPECT_EQ(m.name, "BIN");
    EXPECT_EQ(m.outcomes.size(), 2u);
    ASSERT_NE(m.process("X"), nullptr);
    EXPECT_EQ(m.space.filtration().back().block_count(), 2u);
    EXPECT_FALSE(m.filtration);
}

TEST(ParseModel, Errors) {
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"1/0\", \"1/2\"")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "[\"1\", \"1/2\"]]", "[\"1\", \"1/2\"], [\"1\", \"1\"]]")); }),
              ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"2/4\", \"1/2\"")); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"0.5\", \"1/2\"")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"1/3\", \"1/2\"")); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_model(with(kBin, "\"horizon\": 1", "\"horizon\": 2")); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_model("{\"name\": }"); }), ErrorCode::ParseError);
}

TEST(ParseModel, DiagnosticsNameTheLocation) {
    EXPECT_NE(message_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"1/2\", \"x\"")); }).find("/space/probabilities/1"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_model(with(kBin, "\"horizon\": 1", "\"horizon\": 1, \"extra\": 0")); }).find("/space/extra"),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_model("{\n  \"name\": \"A\",\n  oops\n}"); }).find("line 3"), std::string::npos);
    EXPECT_NE(message_of([] { parse_model(with(kBin, "\"1/2\", \"1/2\"", "\"2/4\", \"1/2\"")); }).find("reduced"),
              std::string::npos);
}

TEST(ParseModel, ExplicitFiltrationAndAdaptedness) {
    const std::string explicit_f = with(kBin, "\n}", ",\n  \"filtration\": {\"explicit\": [[[\"u\", \"d\"]], [[\"u\"], [\"d\"]]]}\n}");
    const ModelDocument m = parse_model(explicit_f);
    EXPECT_TRUE(m.filtration->is_explicit());
    EXPECT_EQ(m.explicit_filtration(), m.space.filtration());
    const std::string coarse = with(kBin, "\n}", ",\n  \"filtration\": {\"explicit\": [[[\"u\", \"d\"]], [[\"u\", \"d\"]]]}\n}");
    EXPECT_NE(message_of([&] { parse_model(coarse); }).find("adapted"), std::string::npos);
    const std::string missing = with(kBin, "\n}", ",\n  \"filtration\": {\"natural\": [\"Z\"]}\n}");
    EXPECT_EQ(code_of([&] { parse_model(missing); }), ErrorCode::ValidationError);
}

TEST(ParseModel, RoundTripIsByteStable) {
    for (const auto& name : {"BIN", "BIN-DRIFT", "TRI", "COIN2", "TAU", "PROD2", "PROD2x2", "SKEW2"}) {
        const ModelDocument m = load_model(model_path(name));
        const std::string once = emit_model(m);
        const ModelDocument again = parse_model(once);
        EXPECT_EQ(again, m) << name;
        EXPECT_EQ(emit_model(again), once) << name;
    }
    const ModelDocument bin = parse_model(kBin);
    EXPECT_EQ(parse_model(emit_model(bin)), bin);
}

TEST(Commands, EmmOnBin) {
    const auto r = run_command("emm", load_model(model_path("BIN")), {}, {});
    EXPECT_EQ(r.values["equivalent martingale measure"], Json::parse(R"(["1/3", "2/3"])"));
    EXPECT_EQ(r.values["unique"], true);
    EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Commands, DoleansOnBinDrift) {
    const auto r = run_command("doleans", load_model(model_path("BIN-DRIFT")), {}, {});
    EXPECT_EQ(r.values["A"]["u"][1], "1/2");
    EXPECT_EQ(r.values["alpha"]["u"][0], "1");
    EXPECT_EQ(r.values["density"]["u"][1], "1/2");
    EXPECT_EQ(r.values["density"]["d"][1], "2");
    EXPECT_EQ(r.values["measure"], Json::parse(R"(["1/3", "2/3"])"));
    EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Commands, QuadraticCovariationIntegrator) {
    Options o;
    o.integrators = "M,N,QC(M,N)";
    const auto r = run_command("complete", load_model(model_path("COIN2")), {}, o);
    EXPECT_EQ(r.values["complete"], true);
    EXPECT_EQ(r.values["integral span dimension"], 3);
    o.integrators = "M,N";
    EXPECT_EQ(run_command("complete", load_model(model_path("COIN2")), {}, o).values["complete"], false);
}

TEST(Commands, Represent) {
    Options o;
    o.integrators = "X";
    const ModelDocument bin = load_model(model_path("BIN"));
    const auto r = run_command("represent", bin, {"H"}, o);
    EXPECT_EQ(r.values["constant"], "1/3");
    EXPECT_EQ(r.values["representable"], true);
    EXPECT_EQ(code_of([&] { run_command("represent", bin, {"Z"}, o); }), ErrorCode::UnknownEntity);
    o.integrators = "Z";
    EXPECT_EQ(code_of([&] { run_command("represent", bin, {"H"}, o); }), ErrorCode::UnknownEntity);
}

TEST(Commands, Enlarge) {
    const auto r = run_command("enlarge", load_model(model_path("TAU")), {}, {});
    EXPECT_EQ(r.values["u"], 1);
    EXPECT_EQ(r.values["strict times"], Json::parse("[1, 2]"));
    EXPECT_EQ(r.values["G_0 trivial"], true);
}

TEST(Commands, Unknown) {
    const ModelDocument bin = load_model(model_path("BIN"));
    EXPECT_EQ(code_of([&] { run_command("bogus", bin, {}, {}); }), ErrorCode::UnknownCommand);
    Options o;
    o.scenario = "nope";
    EXPECT_EQ(code_of([&] { run_command("scenario", bin, {}, o); }), ErrorCode::UnknownEntity);
    o.scenario.reset();
    o.measure = "Q";
    EXPECT_EQ(code_of([&] { run_command("emm", bin, {}, o); }), ErrorCode::UnknownEntity);
}

TEST(Scenarios, Catalogue) {
    const auto& all = builtin_scenarios();
    EXPECT_EQ(all.size(), 13u);
    const auto* thm4 = find_scenario("thm4");
    ASSERT_NE(thm4, nullptr);
    ASSERT_EQ(thm4->roles.size(), 2u);
    EXPECT_EQ(thm4->roles[0].kind, EntityKind::Process);
    EXPECT_EQ(thm4->roles[1].kind, EntityKind::Process);
    EXPECT_EQ(find_scenario("thm6"), find_scenario("ftap"));
    EXPECT_EQ(find_scenario("thm1"), find_scenario("immersion"));
}

TEST(Scenarios, EveryBundledScenarioPassesWithItsDeclaredChecklist) {
    for (const auto& d : builtin_scenarios()) {
        Options o;
        o.scenario = d.name;
        const auto r = run_command("scenario", load_model(model_path(d.model)), {}, o);
        EXPECT_EQ(r.verdict(), Verdict::Pass) << d.name << "\n" << render(r, Format::Text);
        ASSERT_EQ(r.hypotheses.size(), d.hypotheses.size());
        ASSERT_EQ(r.conclusions.size(), d.conclusions.size());
        for (std::size_t i = 0; i < d.hypotheses.size(); ++i) EXPECT_EQ(r.hypotheses[i].holds, true) << d.name;
        for (std::size_t i = 0; i < d.conclusions.size(); ++i) EXPECT_EQ(r.conclusions[i].holds, true) << d.name;
    }
}

TEST(Scenarios, Thm2OnTau) {
    Options o;
    o.scenario = "thm2";
    const auto r = run_command("scenario", load_model(model_path("TAU")), {}, o);
    EXPECT_EQ(r.verdict(), Verdict::Pass);
    EXPECT_EQ(r.values["u"], 1);
    EXPECT_EQ(r.values["block A"], Json::parse(R"(["uu1", "ud1"])"));
}

TEST(Scenarios, FtapOnTri) {
    Options o;
    o.scenario = "ftap";
    const auto r = run_command("scenario", load_model(model_path("TRI")), {}, o);
    EXPECT_EQ(r.values["unique"], false);
    EXPECT_EQ(r.values["complete"], false);
    EXPECT_EQ(r.verdict(), Verdict::Pass);
}

TEST(Scenarios, HypothesisFailureIsInapplicable) {
    // PROD2 under its own measure is not the martingale measure of X.
    Options o;
    o.scenario = "lemma1";
    o.integrators = "X,Y";
    const auto r = run_command("scenario", load_model(model_path("PROD2")), {}, o);
    EXPECT_EQ(r.verdict(), Verdict::Inapplicable);
    EXPECT_EQ(exit_code(r.verdict()), 0);
    for (const auto& c : r.conclusions) EXPECT_FALSE(c.holds.has_value());
}

TEST(Scenarios, LiteralSingularityFailsOffTri) {
    // Moves +1, -1, -2: the two extremal measures share an outcome.
    const std::string text = R"({
  "name": "SHARED",
  "space": {"outcomes": ["a", "b", "c"], "probabilities": ["1/3", "1/3", "1/3"], "horizon": 1},
  "processes": {"X": [["0", "1"], ["0", "-1"], ["0", "-2"]]}
})";
    Options o;
    o.scenario = "cor4";
    const auto r = run_command("scenario", parse_model(text), {}, o);
    EXPECT_EQ(r.conclusions[0].holds, false);
    EXPECT_EQ(r.conclusions[1].holds, true);
    EXPECT_EQ(r.verdict(), Verdict::Fail);
    EXPECT_EQ(exit_code(r.verdict()), 1);
}

TEST(Run, ExitCodesAndDeterminism) {
    const auto a = invoke({"scenario", model_path("TAU"), "--scenario", "thm2", "--format", "structured"});
    const auto b = invoke({"scenario", "thm2", model_path("TAU"), "--format", "structured"});
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(Json::parse(a.out)["verdict"], "pass");
    EXPECT_EQ(invoke({"bogus", model_path("BIN")}).status, 2);
    EXPECT_EQ(invoke({"emm", "/nonexistent.json"}).status, 2);
    EXPECT_EQ(invoke({"represent", model_path("BIN"), "Z"}).status, 2);
    EXPECT_EQ(invoke({"emm", model_path("BIN"), "--format", "xml"}).status, 2);
    const auto list = invoke({"list-scenarios", "--format", "structured"});
    EXPECT_EQ(list.status, 0);
    EXPECT_EQ(Json::parse(list.out).size(), 13u);
    const auto emitted = invoke({"emit", model_path("TRI")});
    EXPECT_EQ(emitted.status, 0);
    EXPECT_EQ(emitted.out, emit_model(load_model(model_path("TRI"))));
}
