#pragma once

#include <string>

#include "centex/lifting.hpp"

namespace centex {

/// Malformed input: unreadable JSON, wrong types, unknown fields.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobBudgets {
  u64 cosets = AutRepStream::kDefaultCosetBudget;
  u64 table = 2048;
  u64 closure = ExtGroup::kDefaultClosureBudget;
  int workers = 1;
};

enum class ReportFormat { json, text };

/// Process exit conventions shared by every subcommand:
/// 0 success, 1 invalid input, 2 parse error, 3 inconclusive / budget.
struct CommandResult {
  int exit_code = 0;
  std::string output;  // newline-terminated
};

CocyclePair parse_pair_json(const std::string& text);
std::string pair_to_json_string(const CocyclePair& pr);

/// Parse a bare matrix literal like [[1,0],[0,1]] over the given modulus.
ModMatrix parse_matrix_json(const std::string& text, i64 mod);

CommandResult run_validate(const std::string& input, ReportFormat fmt);
CommandResult run_aut(const std::string& input, const JobBudgets& budgets, ReportFormat fmt);
CommandResult run_iso(const std::string& input_a, const std::string& input_b, const JobBudgets& budgets,
                      ReportFormat fmt);
CommandResult run_oracle(const std::string& input, const JobBudgets& budgets, ReportFormat fmt);
CommandResult run_normalize(const std::string& input, ReportFormat fmt);
/// target_input empty: self-lift check against the pair itself.
CommandResult run_lift_check(const std::string& input, const std::string& x_literal, const std::string& target_input,
                             ReportFormat fmt);
/// Exactly one of x_literal (pullback) / y_literal (pushforward) is nonempty.
CommandResult run_transform(const std::string& input, const std::string& x_literal, const std::string& y_literal,
                            ReportFormat fmt);

}  // namespace centex
