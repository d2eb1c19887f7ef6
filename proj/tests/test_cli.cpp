#include <doctest.h>

#include "tenfact/cli.hpp"
#include "tenfact/io.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tenfact;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit = 0;
  std::string out;
  std::string err;
};

// Runs with the data directory as working directory so paths in the
// reports stay relative.
RunResult run_cli(std::vector<std::string> args) {
  const fs::path cwd = fs::current_path();
  fs::current_path(TENFACT_DATA_DIR);
  std::ostringstream out, err;
  RunResult r;
  r.exit = run(args, out, err);
  fs::current_path(cwd);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Validates j against the keywords used by the report schema: type, enum,
// required, properties, items, minimum.
bool schema_ok(const Json& j, const Json& s, std::string& why, const std::string& at = "$") {
  auto type_matches = [&](const std::string& t) {
    if (t == "object") return j.is_object();
    if (t == "array") return j.is_array();
    if (t == "string") return j.is_string();
    if (t == "integer") return j.is_number_integer();
    if (t == "number") return j.is_number();
    if (t == "boolean") return j.is_boolean();
    if (t == "null") return j.is_null();
    return false;
  };
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_matches(t.get<std::string>());
    } else {
      ok = type_matches(s["type"].get<std::string>());
    }
    if (!ok) {
      why = at + ": wrong type";
      return false;
    }
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == j;
    if (!found) {
      why = at + ": not in enum";
      return false;
    }
  }
  if (s.contains("minimum") && j.is_number() && j.get<double>() < s["minimum"].get<double>()) {
    why = at + ": below minimum";
    return false;
  }
  if (j.is_object()) {
    if (s.contains("required"))
      for (const auto& k : s["required"])
        if (!j.contains(k.get<std::string>())) {
          why = at + ": missing " + k.get<std::string>();
          return false;
        }
    if (s.contains("properties"))
      for (const auto& [k, sub] : s["properties"].items())
        if (j.contains(k) && !schema_ok(j[k], sub, why, at + "." + k)) return false;
  }
  if (j.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < j.size(); ++i)
      if (!schema_ok(j[i], s["items"], why, at + "[" + std::to_string(i) + "]")) return false;
  }
  return true;
}

const Json& schema() {
  static const Json s = read_json_file(TENFACT_SCHEMA_PATH);
  return s;
}

// Structural equality; floating-point leaves compare to 1e-9 relative.
bool same_report(const Json& a, const Json& b, std::string& where, const std::string& at = "$") {
  if (a.is_number_float() || b.is_number_float()) {
    if (!a.is_number() || !b.is_number()) {
      where = at;
      return false;
    }
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) > 1e-9 * std::max(1.0, std::abs(y))) {
      where = at;
      return false;
    }
    return true;
  }
  if (a.type() != b.type()) {
    where = at;
    return false;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      where = at + " (keys)";
      return false;
    }
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k) || !same_report(v, b[k], where, at + "." + k)) {
        if (where.empty()) where = at + "." + k;
        return false;
      }
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      where = at + " (length)";
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same_report(a[i], b[i], where, at + "[" + std::to_string(i) + "]")) return false;
    return true;
  }
  if (a != b) where = at;
  return a == b;
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int exit;
};

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"check_vec_s3", {"check", "vec_s3.cat.json"}, 0},
      {"check_taft2", {"check", "taft2.cat.json"}, 0},
      {"check_malformed", {"check", "../tests/inputs/malformed.cat.json"}, 2},
      {"fpdim_fib", {"fpdim", "fib.cat.json"}, 0},
      {"fpdim_rep2", {"fpdim", "rep_z2_char2.cat.json"}, 0},
      {"factorize_s3_pair", {"factorize", "vec_s3.cat.json", "--a", "s3_a3.emb.json", "--c", "s3_t12.emb.json"}, 0},
      {"factorize_z4_negative", {"factorize", "vec_z4.cat.json", "--a", "sub22.emb.json", "--c", "sub22.emb.json"}, 1},
      {"factorize_rep2_x_vec3", {"factorize", "rep2_x_vec3.cat.json", "--a", "rep2_x_vec3.left.emb.json", "--c", "rep2_x_vec3.right.emb.json"}, 0},
      {"factorize_s3_auto", {"factorize", "vec_s3.cat.json", "--auto"}, 0},
      {"factorize_fib_auto", {"factorize", "fib.cat.json", "--auto"}, 0},
      {"closure_s3", {"closure", "vec_s3.cat.json", "--a", "s3_all.emb.json", "--c", "s3_t12.emb.json"}, 0},
      {"group_subgroups_s3", {"group", "subgroups", "s3.grp.json"}, 0},
      {"group_exfac_s3", {"group", "exfac", "s3.grp.json"}, 0},
      {"coh_h3_z2", {"coh", "h3", "z2.grp.json"}, 0},
      {"coh_h3_d4", {"coh", "h3", "d4.grp.json"}, 0},
      {"classify_s3", {"classify", "s3.grp.json", "--g1", "(),(1 2 3),(1 3 2)", "--g2", "(),(1 2)"}, 0},
      {"classify_z6", {"classify", "z6.grp.json", "--g1", "0,3", "--g2", "0,2,4"}, 0},
      {"build_taft3", {"build", "taft", "3"}, 0},
      {"build_rep_bad_prime", {"build", "rep-zp", "4"}, 2},
  };
  return cases;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden reports") {
  const bool update = std::getenv("TENFACT_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    CAPTURE(c.name);
    std::vector<std::string> args = c.args;
    args.insert(args.begin(), "--json");
    const RunResult r = run_cli(args);
    CHECK(r.exit == c.exit);
    const Json got = parse_json(r.out);
    std::string why;
    CHECK_MESSAGE(schema_ok(got, schema(), why), why);
    const fs::path golden = fs::path(TENFACT_GOLDEN_DIR) / (c.name + ".json");
    if (update) {
      std::ofstream(golden) << r.out;
      continue;
    }
    REQUIRE_MESSAGE(fs::exists(golden), golden.string());
    std::string where;
    CHECK_MESSAGE(same_report(got, read_json_file(golden), where), where);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& c : golden_cases()) {
    CAPTURE(c.name);
    std::vector<std::string> args = c.args;
    args.insert(args.begin(), "--json");
    CHECK(run_cli(args).out == run_cli(args).out);
  }
  const RunResult one = run_cli({"--json", "--threads", "1", "factorize", "vec_s3.cat.json", "--auto"});
  const RunResult four = run_cli({"--json", "--threads", "4", "factorize", "vec_s3.cat.json", "--auto"});
  CHECK(one.out == four.out);
}

TEST_CASE("known results through the command line") {
  const Json h3 = parse_json(run_cli({"--json", "coh", "h3", "z2.grp.json"}).out);
  CHECK(h3["invariant_factors"] == Json::array({2}));
  const Json s3 = parse_json(run_cli({"--json", "group", "exfac", "s3.grp.json"}).out);
  CHECK(s3["status"] == "OK");
  CHECK(run_cli({"check", "vec_s3.cat.json"}).exit == 0);
  const RunResult neg = run_cli({"factorize", "vec_z4.cat.json", "--a", "sub22.emb.json", "--c", "sub22.emb.json"});
  CHECK(neg.exit == 1);
  CHECK(neg.out.find("trivial-intersection") != std::string::npos);
}

TEST_CASE("timing only on request") {
  const Json plain = parse_json(run_cli({"--json", "check", "vec_z2.cat.json"}).out);
  CHECK_FALSE(plain.contains("timing"));
  const Json timed = parse_json(run_cli({"--json", "--timing", "check", "vec_z2.cat.json"}).out);
  REQUIRE(timed.contains("timing"));
  std::string why;
  CHECK_MESSAGE(schema_ok(timed, schema(), why), why);
}

TEST_CASE("malformed JSON reports its position") {
  const RunResult r = run_cli({"check", "../tests/inputs/malformed.cat.json"});
  CHECK(r.exit == 2);
  CHECK(r.err.find("malformed.cat.json:5:") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({"nonsense"}).exit == 2);
  CHECK(run_cli({"factorize", "vec_s3.cat.json"}).exit == 2);
  CHECK(run_cli({"check", "missing.cat.json"}).exit == 2);
  CHECK(run_cli({"--help"}).exit == 0);
}

TEST_CASE("limits exit with 3") {
  const fs::path dir = fs::temp_directory_path() / "tenfact_cli_test";
  fs::create_directories(dir);
  const std::string z9 = (dir / "z9.grp.json").string();
  const std::string z12 = (dir / "z12.grp.json").string();
  REQUIRE(run_cli({"build", "group", "cyclic", "9", "-o", z9}).exit == 0);
  REQUIRE(run_cli({"build", "group", "cyclic", "12", "-o", z12}).exit == 0);

  const RunResult size = run_cli({"--json", "coh", "h3", z9});
  CHECK(size.exit == 3);
  CHECK(parse_json(size.out)["error"]["code"] == "SIZE_LIMIT");

  setenv("TENFACT_LIMIT_MB", "1", 1);
  const RunResult mem = run_cli({"--json", "coh", "h3", z12, "--limit", "12"});
  unsetenv("TENFACT_LIMIT_MB");
  CHECK(mem.exit == 3);
  CHECK(parse_json(mem.out)["error"]["code"] == "RESOURCE_LIMIT");

  CHECK(run_cli({"build", "group", "symmetric", "5"}).exit == 3);
}

TEST_CASE("progress goes to standard error") {
  const fs::path dir = fs::temp_directory_path() / "tenfact_cli_test";
  fs::create_directories(dir);
  const std::string z9 = (dir / "z9.grp.json").string();
  REQUIRE(run_cli({"build", "group", "cyclic", "9", "-o", z9}).exit == 0);
  const RunResult r = run_cli({"--json", "coh", "h3", z9, "--limit", "9"});
  CHECK(r.exit == 0);
  CHECK(parse_json(r.out)["invariant_factors"] == Json::array({9}));
  CHECK(r.err.find("sparse elimination") != std::string::npos);
}

TEST_CASE("Deligne build writes usable embeddings") {
  const fs::path dir = fs::temp_directory_path() / "tenfact_cli_test";
  fs::create_directories(dir);
  const std::string out = (dir / "p.cat.json").string();
  REQUIRE(run_cli({"build", "deligne", "taft2.cat.json", "fib.cat.json", "-o", out}).exit == 0);
  const RunResult r = run_cli({"factorize", out, "--a", (dir / "p.left.emb.json").string(), "--c",
                               (dir / "p.right.emb.json").string()});
  CHECK(r.exit == 0);
  CHECK(run_cli({"check", out}).exit == 0);
}

TEST_CASE("category files round-trip") {
  for (const auto& e : fs::directory_iterator(TENFACT_DATA_DIR)) {
    const std::string name = e.path().filename().string();
    if (!name.ends_with(".cat.json")) continue;
    CAPTURE(name);
    const CategoryData d = load_category(e.path());
    CHECK(category_from_json(category_to_json(d)) == d);
  }
}

}  // TEST_SUITE
