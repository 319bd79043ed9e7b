#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "ssi/semantics.hpp"
#include "ssi/text.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ssi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(SSI_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse") {
  auto r = run({"parse", "-f", "(p & q) |> p"});
  CHECK(r.code == 0);
  CHECK(r.out == "p & q |> p\n");
  r = run({"parse", "-f", "~(p |> ~p)", "--metrics"});
  CHECK(r.out.find("weight 3") != std::string::npos);
  CHECK(r.out.find("modal_depth 1") != std::string::npos);
  CHECK(r.out.find("language core") != std::string::npos);
  r = run({"parse", "-f", "p", "--json"});
  CHECK(r.out == "{\"op\":\"var\",\"args\":[\"p\"]}\n");
  r = run({"parse", "-f", "p -> q |> r"});
  CHECK(r.code == 2);
  CHECK(r.err.find("1:") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"valid"}).code == 2);
  CHECK(run({"valid", "-f", "p", "-c", "nope"}).code == 2);
  CHECK(run({"valid", "-f", "p", "-n", "0"}).code == 2);
  CHECK(run({"valid", "-f", "p", "-n", "6"}).code == 2);
  CHECK(run({"valid", "-f", "p", "--expect-valid", "--expect-invalid"}).code == 2);
  CHECK(run({"eval", "-f", "p", "-m", "/nonexistent", "-w", "0"}).code == 2);
  CHECK(run({"eval", "-f", "p", "-m", golden("two_point.json"), "-w", "5"}).code == 2);
  CHECK(run({"translate", "-f", "p", "--to", "lisp"}).code == 2);
  CHECK(run({"prove", "-s", "nope", "--script", golden("lemmon_t.proof")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("malformed model JSON exits 2") {
  const std::string path = "ssi_cli_bad_model.json";
  {
    std::ofstream f(path);
    f << R"({"worlds":2,"rel":[[7],[]],"normals":[],"val":{}})";
  }
  const auto r = run({"eval", "-f", "p", "-m", path, "-w", "0"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  std::remove(path.c_str());
}

TEST_CASE("eval") {
  CHECK(run({"eval", "-f", "box top", "-m", golden("two_point.json"), "-w", "0"}).out == "true\n");
  CHECK(run({"eval", "-f", "box box top", "-m", golden("two_point.json"), "-w", "0"}).out == "false\n");
  CHECK(run({"eval", "-f", "p |> p", "-m", golden("loop_p.json"), "-w", "0"}).out == "true\n");
}

TEST_CASE("valid and countermodel") {
  auto r = run({"valid", "-f", "~(p |> ~p)", "-c", "s2_0", "-n", "3", "--expect-valid"});
  CHECK(r.code == 0);
  CHECK(r.out == "valid up to 3\n");
  r = run({"valid", "-f", "p |> p", "-c", "s2", "--expect-valid"});
  CHECK(r.code == 1);
  r = run({"valid", "-f", "p |> p", "-c", "s2", "--expect-invalid"});
  CHECK(r.code == 0);
  r = run({"valid", "-f", "~(p |> ~p)", "--expect-invalid"});
  CHECK(r.code == 1);

  r = run({"countermodel", "-f", "(p |> q) -> (~q |> ~p)", "-c", "s2", "-n", "2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const ssi::Model m = ssi::model_from_json(j["model"].dump());
  CHECK_FALSE(ssi::eval(m, j["world"].get<ssi::World>(), ssi::parse("(p |> q) -> (~q |> ~p)")));
  CHECK(run({"countermodel", "-f", "(p |> q) -> (~q |> ~p)", "-c", "s2", "-n", "2", "-j", "3"}).out == r.out);
}

TEST_CASE("translate") {
  CHECK(run({"translate", "-f", "dia p"}).out == "p |> top\n");
  CHECK(run({"translate", "-f", "p |> q", "--to", "box"}).out == "dia p & box (p -> q)\n");
  CHECK(run({"translate", "-f", "box p", "--to", "strict"}).out == "top => p\n");
}

TEST_CASE("prove") {
  auto r = run({"prove", "-s", "lemmon_s2", "--script", golden("lemmon_box_top.proof")});
  CHECK(r.code == 0);
  r = run({"prove", "-s", "lemmon_s2", "--script", golden("lemmon_nrest_t.proof")});
  CHECK(r.code == 1);
  CHECK(r.out.find("step 2") != std::string::npos);
  CHECK(r.out.find("side_condition") != std::string::npos);
  r = run({"prove", "-s", "lewis_s2", "--script", golden("lewis_s2_axioms.proof"), "--spotcheck", "2"});
  CHECK(r.code == 0);
  r = run({"prove", "-s", "lemmon_s2", "--script", golden("lemmon_t.proof"), "--spotcheck", "2", "--class", "s2_0"});
  CHECK(r.code == 1);
  CHECK(r.out.find("countermodel") != std::string::npos);
}

TEST_CASE("suite writes identical JSON twice") {
  const std::string a = "ssi_cli_suite_a.json", b = "ssi_cli_suite_b.json";
  CHECK(run({"suite", "-n", "3", "--json", a}).code == 0);
  CHECK(run({"suite", "-n", "3", "--json", b, "-j", "2"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
}
