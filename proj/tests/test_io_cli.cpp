#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "hopfhom/io.hpp"

using namespace hopfhom;

namespace {

const std::string kData = HOPFHOM_TEST_DATA_DIR;
const std::string kCli = HOPFHOM_CLI_PATH;

json load(const std::string& name) {
  std::ifstream in(kData + "/" + name);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("parse then serialize is the identity on the shipped fixtures") {
  for (const std::string name : {"sweedler.json", "mutated_sweedler.json"}) {
    json original = load(name);
    auto h = hopf_from_json<Rational>(original);
    json again = hopf_to_json(h, FieldSpec{true, 0});
    CHECK(again == original);
  }
  {
    GfpScope scope(2);
    json original = load("z3_gf2.json");
    auto h = hopf_from_json<Gfp>(original);
    CHECK(hopf_to_json(h, FieldSpec{false, 2}) == original);
    CHECK(verify_hopf_axioms(h).all_pass());
  }
}

TEST_CASE("parsed sweedler passes the axioms; the mutated copy does not") {
  auto good = hopf_from_json<Rational>(load("sweedler.json"));
  CHECK(verify_hopf_axioms(good).all_pass());
  auto bad = hopf_from_json<Rational>(load("mutated_sweedler.json"));
  auto rep = verify_hopf_axioms(bad);
  CHECK(!rep.all_pass());
  const CheckResult* assoc = rep.find("mult_associative");
  REQUIRE(assoc != nullptr);
  CHECK(!assoc->pass);
}

TEST_CASE("surjection files parse against their P file") {
  auto p = hopf_from_json<Rational>(load("sweedler.json"));
  auto sf = surjection_from_json<Rational>(load("sweedler_pi_kz2.json"));
  CHECK(sf.source_name == p.name);
  CHECK(check_hopf_surjection(p, sf.target, sf.matrix).all_pass());
}

TEST_CASE("surjection files round trip through the serializer") {
  for (const std::string name : {"sweedler_pi_kz2.json", "s3_pi_k12.json"}) {
    json original = load(name);
    auto sf = surjection_from_json<Rational>(original);
    HopfSurjection<Rational> s;
    s.source.name = sf.source_name;
    s.target = sf.target;
    s.matrix = sf.matrix;
    json again = surjection_to_json(s, FieldSpec{true, 0});
    CHECK(again == original);
  }
}

TEST_CASE("group files build the chosen algebra") {
  auto gf = group_from_json(load("s3_function.json"));
  CHECK(gf.algebra == "function");
  auto h = hopf_from_group_file<Rational>(gf);
  CHECK(h.dim == 6);
  CHECK(verify_hopf_axioms(h).all_pass());
}

TEST_CASE("dense tensors and integer scalars are accepted") {
  json j;
  j["schema_version"] = 1;
  j["name"] = "k";
  j["dim"] = 1;
  j["mult"] = json::array({json::array({json::array({1})})});
  j["unit"] = {1};
  j["comult"] = {{0, 0, 0, "1"}};
  j["counit"] = {"1"};
  j["antipode"] = {{1}};
  auto h = hopf_from_json<Rational>(j);
  CHECK(verify_hopf_axioms(h).all_pass());
}

TEST_CASE("field spec parsing") {
  CHECK(FieldSpec::parse("Q")->rational);
  CHECK(FieldSpec::parse("GF(7)")->p == 7);
  CHECK(FieldSpec::parse("GF7")->p == 7);
  CHECK(!FieldSpec::parse("GF(1)").has_value());
  CHECK(!FieldSpec::parse("R").has_value());
}

TEST_CASE("cli: verify examples and files") {
  CHECK(run_cli("verify --example sweedler").exit_code == 0);
  CHECK(run_cli("verify " + kData + "/sweedler.json").exit_code == 0);
  CHECK(run_cli("verify " + kData + "/s3_function.json").exit_code == 0);
  CHECK(run_cli("verify " + kData + "/z3_gf2.json").exit_code == 0);

  auto bad = run_cli("verify " + kData + "/mutated_sweedler.json");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("\"pass\": false") != std::string::npos);
  CHECK(bad.out.find("witness") != std::string::npos);

  CHECK(run_cli("verify " + kData + "/truncated.json").exit_code == 2);
  CHECK(run_cli("verify --example no_such_example").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli: byte-identical reports on identical inputs") {
  auto a = run_cli("classify --example sweedler --brute");
  auto b = run_cli("classify --example sweedler --brute");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("cli: coinvariants from files and from examples") {
  auto r = run_cli("coinvariants " + kData + "/s3_function.json " + kData + "/s3_pi_k12.json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["data"]["dim_B"] == 3);

  auto r2 = run_cli("coinvariants --example sweedler");
  json j2 = json::parse(r2.out);
  CHECK(j2["data"]["dim_B"] == 2);

  auto r3 = run_cli("coinvariants --example fs3");
  json j3 = json::parse(r3.out);
  CHECK(j3["data"]["dim_B"] == 6);
}

TEST_CASE("cli: galois and classify agree with the library") {
  auto r = run_cli("galois --example fs3_k12");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["data"]["galois"] == true);
  CHECK(j["data"]["chi_rank"] == 12);

  auto c = run_cli("classify --example kz2 --brute");
  CHECK(c.exit_code == 0);
  json jc = json::parse(c.out);
  CHECK(jc["data"]["count"] == 2);
  CHECK(jc["data"]["complete"] == true);
  CHECK(jc["data"]["brute"]["agrees"] == true);
}

TEST_CASE("cli: induce with the universal ideal and with an ideal file") {
  auto r = run_cli("induce --example sweedler --universal");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["data"]["t_star_m_dim"] == 1);
  CHECK(j["data"]["gamma_M_dim"] == 2);
  CHECK(j["data"]["d_span_full"] == true);

  auto r2 = run_cli("induce --example fs3 --ideal " + kData + "/ideal_s3_pplus.json");
  CHECK(r2.exit_code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["data"]["gamma_M_dim"] == 0);
}

TEST_CASE("cli: roundtrip suites and gating") {
  auto r = run_cli("roundtrip --example sweedler --suite t1");
  CHECK(r.exit_code == 0);
  auto r2 = run_cli("roundtrip --example sweedler --suite t2 --mock-non-galois");
  CHECK(r2.exit_code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["data"]["fg_not_applicable"] == true);
}

TEST_CASE("cli: the whole pipeline runs over GF(7)") {
  auto r = run_cli("roundtrip --example sweedler --suite all --field GF7");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["field"] == "GF(7)");
  CHECK(j["status"] == "pass");

  auto c = run_cli("classify --example fs3_k12 --field GF7 --brute");
  CHECK(c.exit_code == 0);
  json jc = json::parse(c.out);
  CHECK(jc["data"]["count"] == 2);
  CHECK(jc["data"]["brute"]["agrees"] == true);
}

TEST_CASE("cli: classify reports a cap overflow as a failure") {
  auto r = run_cli("classify --example fs3 --cap 5");
  CHECK(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j["data"]["cap_exceeded"] == true);
}

TEST_CASE("cli: field contradictions are input errors") {
  CHECK(run_cli("verify --field GF5 " + kData + "/sweedler.json").exit_code == 2);
  auto gf7 = run_cli("verify --example sweedler --field GF7");
  CHECK(gf7.exit_code == 0);
  json j = json::parse(gf7.out);
  CHECK(j["field"] == "GF(7)");
}

TEST_CASE("cli: --json writes the same bytes as stdout") {
  const std::string tmp = std::string("/tmp/hopfhom_report_") + std::to_string(getpid()) + ".json";
  auto r = run_cli("galois --example kz2 --json " + tmp);
  CHECK(r.exit_code == 0);
  std::ifstream in(tmp);
  std::string file_text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file_text == r.out);
  std::remove(tmp.c_str());
}
