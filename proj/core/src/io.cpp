#include "centex/io.hpp"

#include <json.hpp>
#include <set>
#include <sstream>

#include "centex/oracle.hpp"

namespace centex {

using nlohmann::json;

namespace {

json parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  return j;
}

std::vector<int> int_list(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(field) + " must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<i64>> int_matrix(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array of arrays");
  std::vector<std::vector<i64>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(std::string(field) + " rows must be arrays");
    std::vector<i64> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError(std::string(field) + " must contain integers");
      r.push_back(v.get<i64>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

json matrix_to_json(const ModMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json pair_to_json(const CocyclePair& pr) {
  json j;
  j["p"] = pr.G.p;
  j["m"] = pr.G.exponents;
  j["d"] = pr.A.exponents;
  j["a"] = matrix_to_json(pr.a);
  j["b"] = matrix_to_json(pr.b);
  j["lambda_order"] = pr.lambda.order == PairOrder::lex ? "lex" : "example3";
  j["coordinates"] = "embedded";
  return j;
}

// Exceptions -> exit codes; every command body runs under this wrapper.
template <typename Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return CommandResult{2, std::string("error: ") + e.what() + "\n"};
  } catch (const BudgetExceeded& e) {
    return CommandResult{3, std::string("inconclusive: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return CommandResult{1, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace

CocyclePair parse_pair_json(const std::string& text) {
  json j = parse_object(text);
  static const std::set<std::string> known = {"p", "m", "d", "a", "b", "lambda_order", "coordinates"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError("unknown field '" + key + "'");
  }
  for (const char* req : {"p", "m", "d", "a", "b"}) {
    if (!j.contains(req)) throw ParseError(std::string("missing field '") + req + "'");
  }
  if (!j["p"].is_number_integer()) throw ParseError("p must be an integer");
  if (j.contains("coordinates") && j["coordinates"] != "embedded")
    throw ParseError("coordinates must be \"embedded\"");
  PairOrder order = PairOrder::lex;
  if (j.contains("lambda_order")) {
    if (j["lambda_order"] == "lex") {
      order = PairOrder::lex;
    } else if (j["lambda_order"] == "example3") {
      order = PairOrder::reversed;
    } else {
      throw ParseError("lambda_order must be \"lex\" or \"example3\"");
    }
  }
  i64 p = j["p"].get<i64>();
  GroupShape G(p, int_list(j["m"], "m"));
  GroupShape A(p, int_list(j["d"], "d"));
  return make_pair(std::move(G), std::move(A), int_matrix(j["a"], "a"), int_matrix(j["b"], "b"), order);
}

std::string pair_to_json_string(const CocyclePair& pr) { return dump(pair_to_json(pr)); }

ModMatrix parse_matrix_json(const std::string& text, i64 mod) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid matrix JSON: ") + e.what());
  }
  return ModMatrix::from_rows(int_matrix(j, "matrix"), mod);
}

CommandResult run_validate(const std::string& input, ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    json j = parse_object(input);
    static const std::set<std::string> known = {"p", "m", "d", "a", "b", "lambda_order", "coordinates"};
    for (const auto& [key, value] : j.items())
      if (!known.count(key)) throw ParseError("unknown field '" + key + "'");
    for (const char* req : {"p", "m", "d", "a", "b"})
      if (!j.contains(req)) throw ParseError(std::string("missing field '") + req + "'");

    PairOrder order = PairOrder::lex;
    if (j.contains("lambda_order")) {
      if (j["lambda_order"] == "example3") order = PairOrder::reversed;
      else if (j["lambda_order"] != "lex") throw ParseError("lambda_order must be \"lex\" or \"example3\"");
    }
    GroupShape G(j["p"].get<i64>(), int_list(j["m"], "m"));
    GroupShape A(j["p"].get<i64>(), int_list(j["d"], "d"));
    auto araw = int_matrix(j["a"], "a");
    auto braw = int_matrix(j["b"], "b");
    i64 J = A.rank() ? A.factor_modulus(A.rank() - 1) : A.p;
    int n = G.rank(), r = A.rank(), nchk = n * (n - 1) / 2;
    // dimension problems are reported, not thrown
    ModMatrix am(r, n, J), bm(r, nchk, J);
    bool dims = static_cast<int>(araw.size()) == r && static_cast<int>(braw.size()) == r;
    for (int u = 0; dims && u < r; ++u)
      dims = static_cast<int>(araw[u].size()) == n && static_cast<int>(braw[u].size()) == nchk;
    if (dims) {
      for (int u = 0; u < r; ++u) {
        for (int i = 0; i < n; ++i) am.at(u, i) = rem(araw[u][i], J);
        for (int L = 0; L < nchk; ++L) bm.at(u, L) = rem(braw[u][L], J);
      }
    }
    CommutatorBasis lambda = CommutatorBasis::make(n, order);
    auto checks = dims ? validate_pair_report(G, A, am, bm, lambda)
                       : std::vector<PairCheck>{{"dimensions", false, "a must be r x n and b must be r x n(n-1)/2"}};
    bool valid = true;
    for (const auto& c : checks) valid = valid && c.ok;

    bool diamond = false;
    bool exponent_ok = true;
    if (valid) {
      CocyclePair pr{G, A, lambda, am, bm};
      diamond = is_diamond(pr);
      if (diamond && n >= 2) exponent_ok = A.max_exponent() <= G.exponents[n - 2];
    }

    json out;
    out["valid"] = valid;
    out["diamond"] = diamond;
    out["exponent_condition_ok"] = exponent_ok;
    out["coordinates"] = "embedded";
    json cj = json::array();
    for (const auto& c : checks) cj.push_back(json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    out["checks"] = std::move(cj);

    std::string text;
    if (fmt == ReportFormat::json) {
      text = dump(out);
    } else {
      std::ostringstream os;
      for (const auto& c : checks)
        os << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
      os << (valid ? "valid" : "invalid") << ", " << (diamond ? "diamond" : "not diamond (warning)") << "\n";
      text = os.str();
    }
    return CommandResult{valid ? 0 : 1, text};
  });
}

CommandResult run_aut(const std::string& input, const JobBudgets& budgets, ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pr = parse_pair_json(input);
    AutReport rep = aut_order(pr, budgets.cosets, budgets.workers);
    json out;
    out["kernel_order"] = rep.kernel_order;
    out["frakA_order"] = rep.lifting_order;
    out["total_order"] = rep.total_order;
    json reps = json::array();
    for (const auto& m : rep.lifting_reps) reps.push_back(matrix_to_json(m));
    out["frakA_reps"] = std::move(reps);
    out["coordinates"] = "embedded";
    if (fmt == ReportFormat::json) return CommandResult{0, dump(out)};
    std::ostringstream os;
    os << "kernel_order " << rep.kernel_order << "\nfrakA_order " << rep.lifting_order << "\ntotal_order "
       << rep.total_order << "\n";
    return CommandResult{0, os.str()};
  });
}

CommandResult run_iso(const std::string& input_a, const std::string& input_b, const JobBudgets& budgets,
                      ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pa = parse_pair_json(input_a);
    CocyclePair pb = parse_pair_json(input_b);
    IsoResult res = iso_test(pa, pb, budgets.cosets, budgets.workers, budgets.table);
    json out;
    int code = 0;
    if (res.verdict == IsoResult::Verdict::witness) {
      out["verdict"] = "witness";
      out["x"] = matrix_to_json(res.witness->x());
      out["y"] = matrix_to_json(res.witness->y());
      json samples = json::array();
      for (int i = 0; i < pa.n(); ++i) {
        std::vector<i64> g(pa.n(), 0);
        g[i] = 1;
        json s;
        s["g"] = g;
        s["value"] = res.witness->mu_at(g);
        samples.push_back(std::move(s));
      }
      out["mu_samples"] = std::move(samples);
    } else if (res.verdict == IsoResult::Verdict::no) {
      out["verdict"] = "no";
    } else {
      out["verdict"] = "inconclusive";
      out["note"] = res.note;
      code = 3;
    }
    if (fmt == ReportFormat::json) return CommandResult{code, dump(out)};
    return CommandResult{code, out["verdict"].get<std::string>() + "\n"};
  });
}

CommandResult run_oracle(const std::string& input, const JobBudgets& budgets, ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pr = parse_pair_json(input);
    CayleyTable t = build_table(pr, budgets.table);
    u64 count = brute_aut_count(t);
    bool matches = false;
    std::string formula_note;
    try {
      AutReport rep = aut_order(pr, budgets.cosets, budgets.workers);
      matches = (rep.total_order == count);
    } catch (const std::invalid_argument& e) {
      formula_note = e.what();  // non-diamond or degenerate input: no formula path
    }
    json out;
    out["order"] = t.order;
    out["aut_count"] = count;
    out["matches_formula"] = matches;
    if (!formula_note.empty()) out["formula_note"] = formula_note;
    if (fmt == ReportFormat::json) return CommandResult{0, dump(out)};
    std::ostringstream os;
    os << "order " << t.order << "\naut_count " << count << "\nmatches_formula " << (matches ? "true" : "false")
       << "\n";
    return CommandResult{0, os.str()};
  });
}

CommandResult run_normalize(const std::string& input, ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pr = parse_pair_json(input);
    NormalizeResult res = normalize(pr);
    json out;
    out["changed"] = res.changed;
    out["pair"] = pair_to_json(res.pair);
    out["x"] = matrix_to_json(res.x);
    out["y"] = matrix_to_json(res.y);
    if (fmt == ReportFormat::json) return CommandResult{0, dump(out)};
    return CommandResult{0, pair_to_json_string(res.pair)};
  });
}

CommandResult run_lift_check(const std::string& input, const std::string& x_literal, const std::string& target_input,
                             ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pr = parse_pair_json(input);
    CocyclePair target = target_input.empty() ? pr : parse_pair_json(target_input);
    i64 Jprime = pr.G.rank() ? pr.G.factor_modulus(pr.G.rank() - 1) : pr.G.p;
    ModMatrix x = parse_matrix_json(x_literal, Jprime);
    if (!validate_hom(x, pr.G, pr.G))
      throw std::invalid_argument("lift-check: x violates the endomorphism conditions of G");
    LiftContext src = LiftContext::make(pr);
    LiftContext dst = LiftContext::make(target);
    bool aut = is_automorphism_matrix(x, pr.G);
    bool lifts = check_lift(x, src, dst, aut);
    json out;
    out["automorphism"] = aut;
    out["lifts"] = lifts;
    if (lifts) out["y"] = matrix_to_json(find_compatible_y(x, src, dst));
    if (fmt == ReportFormat::json) return CommandResult{0, dump(out)};
    return CommandResult{0, std::string(lifts ? "lifts" : "does not lift") + "\n"};
  });
}

CommandResult run_transform(const std::string& input, const std::string& x_literal, const std::string& y_literal,
                            ReportFormat fmt) {
  return guarded([&]() -> CommandResult {
    CocyclePair pr = parse_pair_json(input);
    if (x_literal.empty() == y_literal.empty())
      throw ParseError("transform: provide exactly one of --pullback / --pushforward");
    CocyclePair out_pair = pr;
    if (!x_literal.empty()) {
      i64 Jprime = pr.G.rank() ? pr.G.factor_modulus(pr.G.rank() - 1) : pr.G.p;
      ModMatrix x = parse_matrix_json(x_literal, Jprime);
      if (!validate_hom(x, pr.G, pr.G))
        throw std::invalid_argument("transform: x violates the endomorphism conditions of G");
      out_pair = pullback_class(x, pr);
    } else {
      ModMatrix y = parse_matrix_json(y_literal, pr.coeff_mod());
      out_pair = pushforward(y, pr);
    }
    json out;
    out["pair"] = pair_to_json(out_pair);
    if (fmt == ReportFormat::json) return CommandResult{0, dump(out)};
    return CommandResult{0, pair_to_json_string(out_pair)};
  });
}

}  // namespace centex
