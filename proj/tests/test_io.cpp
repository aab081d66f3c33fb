#include <catch_amalgamated.hpp>

#include "ua/fixtures.hpp"
#include "ua/cli.hpp"
#include "ua/io.hpp"

using namespace ua;
namespace fx = ua::fixtures;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("algebra documents") {
  const std::string z2 = R"({"size": 2, "operations": [{"name": "d", "arity": 3, "table": [0,1,1,0,1,0,0,1]}]})";
  auto doc = parse_algebra(z2);
  CHECK(doc.alg.size() == 2);
  REQUIRE(doc.alg.num_ops() == 1);
  CHECK(doc.alg.op(0).arity == 3);
  CHECK(doc.alg == fx::z2());
  CHECK(doc.labels.empty());

  auto nullary = parse_algebra(R"({"size": 3, "operations": [{"name": "c", "arity": 0, "table": [2]}]})");
  CHECK(nullary.alg.op(0).arity == 1);
  CHECK(nullary.alg.op(0).table == std::vector<int>{2, 2, 2});

  CHECK(message_of(R"({"size": 2, "operations": [{"name": "f", "arity": 1, "table": [0, 2]}]})")
            .find("element out of range") != std::string::npos);
  CHECK(message_of(R"({"size": 2, "operations": [{"name": "f", "arity": 2, "table": [0, 1]}]})")
            .find("table length mismatch") != std::string::npos);
  CHECK(message_of(R"({"size": 2, "operations": [)").find("parse error") != std::string::npos);
  CHECK(message_of(R"({"size": 2})").find("operations") != std::string::npos);
  CHECK(message_of(R"({"size": 2, "operations": [], "extra": 1})").find("unknown field") != std::string::npos);
  CHECK(message_of(R"({"size": 2, "operations": [], "labels": {"t": [[0, 2]]}})").find("out of range") !=
        std::string::npos);
  CHECK(message_of(R"({"size": 2, "operations": [], "labels": {"t": [[0], [0, 1]]}})").find("twice") !=
        std::string::npos);
}

TEST_CASE("documents round-trip") {
  for (const auto& A : {fx::z2(), fx::z4(), fx::s2(), fx::sq2()}) {
    AlgebraDocument doc{A, {{"full", Partition::full(A.size())}, {"zero", Partition::identity(A.size())}}, {}};
    auto text = serialize_algebra(doc);
    auto back = parse_algebra(text);
    CHECK(back == doc);
    CHECK(serialize_algebra(back) == text);
  }
  auto gen = document_of(fx::gen2());
  auto text = serialize_algebra(gen);
  auto back = parse_algebra(text);
  CHECK(back == gen);
  CHECK(serialize_algebra(back) == text);
  REQUIRE(back.generator);
  CHECK(generate_example(*back.generator).alg == gen.alg);
  CHECK(back.labels.at("mu") == fx::gen2().mu);

  // partitions are written as sorted blocks of sorted elements
  AlgebraDocument p{fx::z4(), {{"t", Partition::from_blocks(4, {{3, 1}, {2, 0}})}}, {}};
  CHECK(serialize_algebra(p).find("\"t\": [[0,2],[1,3]]") != std::string::npos);
}

TEST_CASE("config documents") {
  for (const auto& c : {fx::gen1_config(), fx::gen2_config(), fx::gen3_config()}) {
    auto back = parse_config(serialize_config(c));
    CHECK(config_json(back) == config_json(c));
    CHECK(generate_example(back).alg == generate_example(c).alg);
  }
  auto c = parse_config(R"({"p": 2, "k": 2, "dims": [1], "g": {}, "one": [1]})");
  CHECK(c.k == 2);
  CHECK(generate_example(c).alg.size() == 4);
  CHECK_THROWS_AS(parse_config(R"({"p": 2})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"p": 2, "dims": [1], "g": {"0": [[1]]}})"), InputError);
  CHECK_THROWS_AS(parse_config(R"({"p": 2, "dims": [1], "colour": 3})"), InputError);
}

TEST_CASE("report documents") {
  ReportDocument empty{{"con", "--in", "x.json"}, {}, {}};
  auto text = serialize_report(empty);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(parse_report(text).report.items.empty());

  ReportDocument one{{"abelian"}, {}, {}};
  one.report.add("abelian", "θ is abelian", "abelian", true);
  text = serialize_report(one);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("\"verdict\":\"pass\"") != std::string::npos);

  ReportDocument bad{{"abelian"}, {}, {}};
  bad.report.add("abelian", "θ is abelian", "abelian", false, tuple_string(std::vector<int>{0, 1, 0, 0}));
  text = serialize_report(bad);
  CHECK(text.find("\"verdict\":\"fail\"") != std::string::npos);
  CHECK(text.find("(0,1,0,0)") != std::string::npos);
  auto back = parse_report(text);
  CHECK(back.command == bad.command);
  CHECK(back.report.items[0].verdict == Verdict::fail);
  CHECK(serialize_report(back) == text);
  CHECK(serialize_report(bad) == text);

  bad.timing_ms = 1.5;
  CHECK(serialize_report(bad).find("timing_ms") != std::string::npos);
}

TEST_CASE("command line") {
  namespace fs = std::filesystem;
  const auto dir = (fs::temp_directory_path() / "ua-cli-test").string();
  auto run = [](std::vector<std::string> args, std::string* text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    if (text) *text = out.str();
    return code;
  };
  REQUIRE(run({"fixtures", "--dir", dir}) == 0);
  std::string text;
  CHECK(run({"abelian", "--in", dir + "/s2.json", "--theta", "full"}, &text) == 1);
  CHECK(parse_report(text).report.items.at(0).verdict == Verdict::fail);
  CHECK(run({"abelian", "--in", dir + "/z4.json", "--theta", "theta"}) == 0);
  CHECK(run({"similar", "--in", dir + "/z4.json", "--in2", dir + "/dz4.json"}) == 0);
  CHECK(run({"similar", "--in", dir + "/z4.json", "--in2", dir + "/z2.json"}) == 2);  // signatures differ
  CHECK(run({"generate", "--config", dir + "/gen1.cfg.json", "--out", dir + "/gen1.json"}) == 0);
  CHECK(run({"verify-claims", "--in", dir + "/gen1.json"}) == 0);
  CHECK(run({"con", "--in", dir + "/missing.json"}, &text) == 2);
  CHECK(parse_report(text).report.items.size() == 1);
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"abelian", "--in", dir + "/z4.json", "--theta", "0,9"}) == 2);

  // fixed seed gives byte-identical reports
  std::string a, b;
  run({"laws", "--seed", "7", "--count", "5"}, &a);
  run({"laws", "--seed", "7", "--count", "5"}, &b);
  CHECK(a == b);

  auto doc = parse_algebra(read_file(dir + "/z4.json"));
  CHECK(cli::resolve_partition("0,2|1,3", doc) == doc.labels.at("theta"));
  CHECK(cli::resolve_partition("cg:0,2", doc) == doc.labels.at("theta"));
  CHECK(cli::resolve_partition("monolith", doc) == doc.labels.at("theta"));
  CHECK(cli::resolve_partition("0,1", doc).num_blocks() == 3);
  CHECK_THROWS_AS(cli::resolve_partition("nope", doc), InputError);
}
