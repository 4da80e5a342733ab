#include <doctest.h>

#include "centex/io.hpp"
#include "helpers.hpp"

using namespace centex;
using namespace centex::testing;

namespace {

const char* kHeis3 = R"({"p": 3, "m": [1, 1], "d": [1], "a": [[0, 0]], "b": [[1]]})";
const char* kD4 = R"({"p": 2, "m": [1, 1], "d": [1], "a": [[0, 0]], "b": [[1]]})";
const char* kQ8 = R"({"p": 2, "m": [1, 1], "d": [1], "a": [[1, 1]], "b": [[1]]})";

}  // namespace

TEST_CASE("pair files round-trip byte for byte") {
  CocyclePair pr = parse_pair_json(kHeis3);
  std::string once = pair_to_json_string(pr);
  std::string twice = pair_to_json_string(parse_pair_json(once));
  CHECK(once == twice);

  CocyclePair rev = make_pair(GroupShape(2, {1, 1, 1}), GroupShape(2, {1}), {{0, 0, 0}}, {{1, 0, 0}},
                              PairOrder::reversed);
  std::string s1 = pair_to_json_string(rev);
  CHECK(s1.find("example3") != std::string::npos);
  CHECK(pair_to_json_string(parse_pair_json(s1)) == s1);
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(parse_pair_json("{"), ParseError);
  CHECK_THROWS_AS(parse_pair_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_pair_json(R"({"p": 3, "m": [1,1], "d": [1], "a": [[0,0]]})"), ParseError);
  CHECK_THROWS_AS(parse_pair_json(R"({"p": 3, "m": [1,1], "d": [1], "a": [[0,0]], "b": [[1]], "extra": 1})"),
                  ParseError);
  CHECK_THROWS_AS(parse_pair_json(R"({"p": 3, "m": [1,1], "d": [1], "a": [[0,0]], "b": [[1]], "lambda_order": "x"})"),
                  ParseError);
  // invariant violations surface as invalid_argument, not ParseError
  CHECK_THROWS_AS(parse_pair_json(R"({"p": 4, "m": [1], "d": [1], "a": [[0]], "b": [[]]})"), std::invalid_argument);
}

TEST_CASE("validate command") {
  CommandResult ok = run_validate(kHeis3, ReportFormat::json);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"valid\": true") != std::string::npos);
  CHECK(ok.output.find("\"diamond\": true") != std::string::npos);

  // a valid cocycle that is not a diamond is accepted with a warning
  CommandResult nb = run_validate(R"({"p": 3, "m": [1, 1], "d": [1], "a": [[0, 0]], "b": [[0]]})",
                                  ReportFormat::text);
  CHECK(nb.exit_code == 0);
  CHECK(nb.output.find("not diamond") != std::string::npos);

  // valuation violation names the entry
  CommandResult bad = run_validate(R"({"p": 2, "m": [1, 2], "d": [2], "a": [[1, 0]], "b": [[2]]})",
                                   ReportFormat::json);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("(0,0)") != std::string::npos);

  CommandResult parse = run_validate("not json", ReportFormat::json);
  CHECK(parse.exit_code == 2);
}

TEST_CASE("aut command") {
  JobBudgets budgets;
  CommandResult res = run_aut(kQ8, budgets, ReportFormat::json);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"kernel_order\": 4") != std::string::npos);
  CHECK(res.output.find("\"frakA_order\": 6") != std::string::npos);
  CHECK(res.output.find("\"total_order\": 24") != std::string::npos);

  // determinism across repeated runs and worker counts
  CommandResult again = run_aut(kQ8, budgets, ReportFormat::json);
  CHECK(res.output == again.output);
  JobBudgets threaded = budgets;
  threaded.workers = 3;
  CommandResult par = run_aut(kQ8, threaded, ReportFormat::json);
  CHECK(par.output == res.output);

  JobBudgets tiny;
  tiny.cosets = 3;
  CHECK(run_aut(kHeis3, tiny, ReportFormat::json).exit_code == 3);
}

TEST_CASE("iso command") {
  JobBudgets budgets;
  CommandResult no = run_iso(kD4, kQ8, budgets, ReportFormat::json);
  CHECK(no.exit_code == 0);
  CHECK(no.output.find("\"verdict\": \"no\"") != std::string::npos);

  CommandResult self = run_iso(kQ8, kQ8, budgets, ReportFormat::json);
  CHECK(self.exit_code == 0);
  CHECK(self.output.find("\"verdict\": \"witness\"") != std::string::npos);
  CHECK(self.output.find("mu_samples") != std::string::npos);

  JobBudgets tiny;
  tiny.cosets = 3;
  CommandResult inc = run_iso(kHeis3, kHeis3, tiny, ReportFormat::json);
  CHECK(inc.exit_code == 3);
  CHECK(inc.output.find("inconclusive") != std::string::npos);

  // shape mismatch is invalid input
  CHECK(run_iso(kHeis3, kQ8, budgets, ReportFormat::json).exit_code == 1);
}

TEST_CASE("oracle command") {
  JobBudgets budgets;
  CommandResult res = run_oracle(kHeis3, budgets, ReportFormat::json);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"order\": 27") != std::string::npos);
  CHECK(res.output.find("\"aut_count\": 432") != std::string::npos);
  CHECK(res.output.find("\"matches_formula\": true") != std::string::npos);

  JobBudgets tiny;
  tiny.table = 10;
  CHECK(run_oracle(kHeis3, tiny, ReportFormat::json).exit_code == 3);
}

TEST_CASE("normalize command") {
  CommandResult res = run_normalize(R"({"p": 2, "m": [1, 1], "d": [1], "a": [[1, 1]], "b": [[1]]})",
                                    ReportFormat::json);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"changed\": true") != std::string::npos);
  CHECK(res.output.find("\"pair\"") != std::string::npos);
}

TEST_CASE("lift-check command") {
  CommandResult ok = run_lift_check(kQ8, "[[0,1],[1,0]]", "", ReportFormat::json);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"lifts\": true") != std::string::npos);

  CommandResult no = run_lift_check(kD4, "[[1,1],[0,1]]", "", ReportFormat::json);
  CHECK(no.exit_code == 0);
  CHECK(no.output.find("\"lifts\": false") != std::string::npos);

  CommandResult cross = run_lift_check(kD4, "[[1,0],[0,1]]", kQ8, ReportFormat::json);
  CHECK(cross.exit_code == 0);
  CHECK(cross.output.find("\"lifts\": false") != std::string::npos);
}

TEST_CASE("transform command") {
  CommandResult pull = run_transform(kHeis3, "[[1,1],[0,1]]", "", ReportFormat::json);
  CHECK(pull.exit_code == 0);
  CHECK(pull.output.find("\"pair\"") != std::string::npos);

  CommandResult push = run_transform(kHeis3, "", "[[2]]", ReportFormat::json);
  CHECK(push.exit_code == 0);

  CHECK(run_transform(kHeis3, "", "", ReportFormat::json).exit_code == 2);
  CHECK(run_transform(kHeis3, "[[1,1],[0,1]]", "[[2]]", ReportFormat::json).exit_code == 2);
}
