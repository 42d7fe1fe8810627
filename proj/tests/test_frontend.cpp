#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mutt/cli.hpp"
#include "mutt/diagnostics.hpp"
#include "support.hpp"

using namespace mutt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mutt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("mutt_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("declarations are processed in order and stop at the first error") {
  Development dev = test::load_text(
      "include \"base.mutt\"\n"
      "def one : Nat := S 0\n"
      "def bad : Nat := true\n"
      "def two : Nat := S one\n");
  CHECK(dev.defs.count("one"));
  CHECK_FALSE(dev.defs.count("two"));
  REQUIRE(test::first_error(dev));
  CHECK(test::first_error(dev)->span.line == 3);
  CHECK(test::first_error_tag(dev) == tag::kTypeMismatch);
}

TEST_CASE("names resolve locals before definitions before constants") {
  Development dev = test::load_text(
      "include \"base.mutt\"\n"
      "def tt2 : Unit := tt\n"
      "def shadow : Nat -> Nat := fun (tt2 : Nat) => tt2\n"
      "normalize shadow (S 0)\n");
  REQUIRE(dev.ok());
  REQUIRE(dev.normal_forms.size() == 1);
  CHECK(alpha_eq(dev.normal_forms[0].normal, mk_inert("S", {mk_inert("0")})));
  CHECK(test::first_error_tag(test::load_text("include \"base.mutt\"\ndef x : Nat := y\n")) == tag::kScope);
  CHECK(test::first_error_tag(test::load_text("include \"base.mutt\"\ndef Nat : Nat := 0\n")) == tag::kOrder);
}

TEST_CASE("constants consume exactly their arity") {
  Development dev = test::load_text("include \"base.mutt\"\n");
  TermP t = test::term(dev, "cons Nat 0 nil Nat");
  CHECK(alpha_eq(t, mk_inert("cons", {mk_inert("Nat"), mk_inert("0"), mk_inert("nil", {mk_inert("Nat")})})));
  CHECK_THROWS(test::term(dev, "cons Nat 0"));
}

TEST_CASE("includes are idempotent and relative to the including file") {
  const std::string dir = (std::filesystem::temp_directory_path() / "mutt_inc").string();
  std::filesystem::create_directories(dir + "/sub");
  std::ofstream(dir + "/sub/a.mutt") << "include \"../b.mutt\"\ndef a : Nat := S b\n";
  std::ofstream(dir + "/b.mutt") << "include \"" << test::source_path("prelude/base.mutt") << "\"\ndef b : Nat := 0\n";
  std::ofstream(dir + "/main.mutt") << "include \"sub/a.mutt\"\ninclude \"b.mutt\"\nnormalize a\n";
  Development dev = load_file(dir + "/main.mutt");
  REQUIRE_MESSAGE(dev.ok(), (dev.diagnostics.empty() ? "" : format(dev.diagnostics[0])));
  CHECK(dev.defs.size() == 2);
  CHECK(test::first_error_tag(test::load_text("include \"missing.mutt\"\n")) == tag::kIo);
}

TEST_CASE("check directives") {
  CHECK(test::load_text("include \"base.mutt\"\ncheck S 0 : Nat\n").ok());
  CHECK(test::first_error_tag(test::load_text("include \"base.mutt\"\ncheck S 0 : Bool\n")) == tag::kTypeMismatch);
}

TEST_CASE("every diagnostic tag is explained") {
  for (const auto& t : known_tags()) {
    CAPTURE(t);
    auto e = explain(t);
    REQUIRE(e);
    CHECK_FALSE(e->empty());
  }
  for (const char* t : {tag::kProgress, tag::kSingleton, tag::kIsolation, tag::kLinearB}) CHECK(explain(t));
  CHECK_FALSE(explain("no-such-tag"));
}

TEST_CASE("cli check and normalize") {
  auto ok = cli({"check", test::source_path("prelude/exc.mutt")});
  CHECK(ok.code == 0);
  auto nf = cli({"normalize", test::source_path("tests/nat.mutt"), "--term", "four", "--deep"});
  CHECK(nf.code == 0);
  CHECK(nf.out == "S (S (S (S 0)))\n");
  auto head = cli({"normalize", test::source_path("tests/nat.mutt"), "--term", "four"});
  CHECK(head.code == 0);
  CHECK(head.out.rfind("S ", 0) == 0);
  CHECK(head.out != nf.out);
  auto missing = cli({"normalize", test::source_path("tests/nat.mutt"), "--term", "five"});
  CHECK(missing.code == 1);
  auto bad = cli({"check", test::source_path("tests/data/bool_prop_discrimination.mutt")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("[singleton-elimination]") != std::string::npos);
}

TEST_CASE("cli json diagnostics") {
  auto r = cli({"--json", "check", test::source_path("tests/data/bool_prop_discrimination.mutt")});
  CHECK(r.code == 1);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  auto j = nlohmann::json::parse(line);
  CHECK(j["severity"] == "error");
  CHECK(j["tag"] == "singleton-elimination");
  CHECK(j["line"] == 8);
  for (const char* k : {"message", "file", "col"}) CHECK(j.contains(k));
}

TEST_CASE("cli flags") {
  const std::string f = write_temp("irr.mutt",
                                   "include \"" + test::source_path("prelude/base.mutt") + "\"\n"
                                   "sort Irr\n"
                                   "positive Two : Univ Irr 0 { constructor a : Two constructor b : Two }\n"
                                   "check fun (P : Two -> Univ Type 0) (x : P a) => x : Pi (P : Two -> Univ Type 0) -> P a -> P b\n");
  CHECK(cli({"check", f}).code == 1);
  CHECK(cli({"--irrelevant", "Irr", "check", f}).code == 0);
  CHECK(cli({"check", f, "--irrelevant", "Irr"}).code == 0);

  auto traced = cli({"--trace-conversion", "check", test::source_path("tests/nat.mutt")});
  CHECK(traced.code == 0);
  CHECK(traced.err.find("==") != std::string::npos);

  const std::string slow = write_temp("slow.mutt", "include \"" + test::source_path("tests/nat.mutt") +
                                                       "\"\nnormalize plus four four\n");
  auto starved = cli({"--fuel", "5", "check", slow});
  CHECK(starved.code == 1);
  CHECK(starved.err.find("[reduction.fuel]") != std::string::npos);
}

TEST_CASE("cli usage errors and explain") {
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"normalize", test::source_path("tests/nat.mutt")}).code == 2);
  CHECK(cli({"--fuel", "zero", "check", test::source_path("tests/nat.mutt")}).code == 2);
  auto e = cli({"explain", "progress"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("progress: ", 0) == 0);
  CHECK(cli({"explain", "nonsense"}).code == 1);
}

TEST_CASE("cli merge writes a file that re-checks") {
  const std::string out = (std::filesystem::temp_directory_path() / "mutt_merged.mutt").string();
  auto r = cli({"merge", test::source_path("prelude/base.mutt"), test::source_path("prelude/exc.mutt"),
                test::source_path("prelude/axiom_lem.mutt"), "-o", out});
  REQUIRE(r.code == 0);
  CHECK(cli({"check", out}).code == 0);
  auto clash = cli({"merge", test::source_path("prelude/base.mutt"), test::source_path("prelude/exc.mutt"),
                    test::source_path("prelude/exc.mutt"), "-o", out + ".2"});
  CHECK(clash.code == 1);
  CHECK(clash.err.find("[merge.shared-sort]") != std::string::npos);
}
