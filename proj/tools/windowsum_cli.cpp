// Copyright 2026 The windowsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 solved/valid, 1 infeasible/invalid,
// 2 usage or format error, 3 search budget exhausted.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "windowsum/coloring.hpp"
#include "windowsum/io.hpp"
#include "windowsum/matrix.hpp"
#include "windowsum/oracle.hpp"
#include "windowsum/random.hpp"
#include "windowsum/selftest.hpp"
#include "windowsum/solver22.hpp"

namespace {

using namespace windowsum;
using nlohmann::json;

enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Written to stderr so stdout stays byte-identical across runs.
void Report(const std::string& verdict, std::chrono::steady_clock::time_point start,
            const std::string& solution_path = {}) {
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  std::cerr << "verdict: " << verdict << ", elapsed " << ms.count() << " ms";
  if (!solution_path.empty()) std::cerr << ", solution " << solution_path;
  std::cerr << '\n';
}

void Emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << io::Pretty(j);
  } else {
    io::WriteFile(path, io::Pretty(j));
  }
}

int CmdSum(const std::string& matrix_path, const std::vector<std::size_t>& window) {
  const IntMatrix a = io::SolutionFromJson(io::ParseJson(io::ReadFile(matrix_path), matrix_path));
  const WindowShape shape(window.at(0), window.at(1));
  json out{{"window", {shape.height, shape.width}},
           {"S", io::MatrixToJson(window_sums(a, shape))}};
  std::cout << io::Pretty(out);
  return kOk;
}

int CmdSolve(const std::string& instance_path, const std::string& algo, std::uint64_t budget,
             const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const ReconstructionInstance inst =
      io::InstanceFromJson(io::ParseJson(io::ReadFile(instance_path), instance_path));

  std::optional<IntMatrix> solution;
  if (algo == "brute") {
    const oracle::SearchResult r = oracle::brute_solve(inst, {budget});
    if (r.status == oracle::SearchStatus::kBudgetExhausted) {
      std::cout << io::Pretty(json{{"status", "budget-exhausted"}, {"nodes", r.nodes}});
      Report("budget-exhausted", start);
      return kBudget;
    }
    solution = r.solution;
  } else {
    if (!(inst.shape() == WindowShape(2, 2))) {
      throw UsageError("--algo " + algo + " needs a 2x2 window; use --algo brute");
    }
    if (inst.rows() < 2 || inst.cols() < 2) throw UsageError("matrix must be at least 2x2");
    const auto [shifted, shift] = shift_two_sided(inst);
    std::optional<IntMatrix> x;
    if (algo == "binary") {
      for (std::int64_t u : shifted.upper().cells()) {
        if (u > 1) throw UsageError("--algo binary needs U - L in {0, 1}");
      }
      x = solver22::solve_binary(shifted.sums(), shifted.upper());
    } else if (algo == "bounded") {
      x = solver22::solve_bounded(shifted.sums(), shifted.upper());
    } else {
      x = solver22::solve_bounded_noenum(shifted.sums(), shifted.upper());
    }
    if (x) solution = lift_solution(*x, shift);
  }

  if (!solution) {
    std::cout << io::Pretty(json{{"status", "infeasible"}});
    Report("infeasible", start);
    return kNegative;
  }
  const VerifyResult check = verify_solution(*solution, inst);
  if (!check) throw std::logic_error("solver returned an invalid matrix: " + check.reason);
  const json doc{{"status", "solved"}, {"A", io::MatrixToJson(*solution)}};
  Emit(doc, out_path);
  Report("solved", start, out_path);
  return kOk;
}

int CmdVerify(const std::string& instance_path, const std::string& solution_path) {
  const ReconstructionInstance inst =
      io::InstanceFromJson(io::ParseJson(io::ReadFile(instance_path), instance_path));
  const IntMatrix a =
      io::SolutionFromJson(io::ParseJson(io::ReadFile(solution_path), solution_path));
  if (!a.SameShape(inst.upper())) {
    std::cout << io::Pretty(json{{"valid", false}, {"reason", "dimension mismatch"}});
    return kNegative;
  }
  const VerifyResult r = verify_solution(a, inst);
  json out{{"valid", r.ok}};
  if (!r.ok) out["reason"] = r.reason;
  std::cout << io::Pretty(out);
  return r.ok ? kOk : kNegative;
}

int CmdReduce3Col(const std::string& graph_path, const std::string& out_path,
                  const std::string& record_path, const std::string& witness_path) {
  const coloring::Graph g = io::ParseGraph(io::ReadFile(graph_path));
  const auto [reduced, record] = coloring::reduce_3col(g);
  Emit(io::InstanceToJson(reduced), out_path);
  if (!record_path.empty()) io::WriteFile(record_path, io::Pretty(io::RecordToJson(record)));
  std::cerr << "reduced " << g.num_vertices() << " vertices, " << g.edges().size()
            << " edges to a " << reduced.rows() << "x" << reduced.cols() << " instance\n";
  if (witness_path.empty()) return kOk;
  const auto c = coloring::brute_force_3col(g);
  if (!c) {
    std::cerr << "graph is not 3-colorable; no witness written\n";
    return kNegative;
  }
  const IntMatrix witness = coloring::witness_for_coloring(record, *c);
  io::WriteFile(witness_path,
                io::Pretty(json{{"status", "solved"}, {"A", io::MatrixToJson(witness)}}));
  return kOk;
}

int CmdDecode3Col(const std::string& solution_path, const std::string& record_path) {
  const IntMatrix x =
      io::SolutionFromJson(io::ParseJson(io::ReadFile(solution_path), solution_path));
  const coloring::ReductionRecord record =
      io::RecordFromJson(io::ParseJson(io::ReadFile(record_path), record_path));
  coloring::Coloring c;
  try {
    c = coloring::decode_coloring(x, record);
  } catch (const std::invalid_argument& e) {
    std::cout << io::Pretty(json{{"valid", false}, {"reason", e.what()}});
    return kNegative;
  }
  const bool valid = coloring::verify_coloring(record.graph, c);
  std::cout << io::Pretty(json{{"coloring", c}, {"valid", valid}});
  return valid ? kOk : kNegative;
}

int CmdGen(std::size_t rows, std::size_t cols, std::int64_t umax, std::uint64_t seed,
           bool from_matrix, const std::vector<std::size_t>& window) {
  if (umax < 0) throw UsageError("--umax must be >= 0");
  const WindowShape shape(window.at(0), window.at(1));
  Rng rng(seed);
  const IntMatrix upper = RandomMatrix(rng, rows, cols, 0, umax);
  const auto [sr, sc] = ReconstructionInstance::SumsShape(upper.rows(), upper.cols(), shape);
  IntMatrix sums;
  if (from_matrix) {
    if (sr > 0) sums = window_sums(RandomBelow(rng, upper), shape);
  } else {
    sums = RandomMatrix(rng, sr, sc, 0,
                        static_cast<std::int64_t>(shape.height * shape.width) * umax);
  }
  std::cout << io::Pretty(io::InstanceToJson(ReconstructionInstance(shape, sums, upper)));
  return kOk;
}

int CmdSelftest(const std::string& level, std::uint64_t seed) {
  const auto outcomes =
      selftest::RunAll(level == "full" ? selftest::Level::kFull : selftest::Level::kQuick, seed);
  bool all = true;
  for (const auto& o : outcomes) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << o.id << "] " << o.name << ": "
              << o.detail << '\n';
    all = all && o.pass;
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Window-sum matrix reconstruction tools"};
  app.require_subcommand(1);

  std::vector<std::size_t> window{2, 2};
  std::string matrix_path;
  auto* sum = app.add_subcommand("sum", "Print the window sums of a matrix");
  sum->add_option("matrix", matrix_path, "Matrix JSON file ('-' for stdin)")->required();
  sum->add_option("--window", window, "Window height and width")->expected(2);

  std::string instance_path, algo = "bounded", out_path;
  std::uint64_t budget = 10'000'000;
  auto* solve = app.add_subcommand("solve", "Reconstruct a matrix from an instance");
  solve->add_option("instance", instance_path, "Instance JSON file")->required();
  solve->add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"binary", "bounded", "bounded-noenum", "brute"}));
  solve->add_option("--budget", budget, "Node budget for --algo brute")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "Write the solution here instead of stdout");

  std::string solution_path;
  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  verify->add_option("instance", instance_path, "Instance JSON file")->required();
  verify->add_option("solution", solution_path, "Solution JSON file")->required();

  std::string graph_path, record_path, witness_path;
  auto* reduce = app.add_subcommand("reduce3col", "Reduce graph 3-coloring to a 2x3 instance");
  reduce->add_option("graph", graph_path, "Graph file (JSON or DIMACS)")->required();
  reduce->add_option("--out", out_path, "Instance output file (default stdout)");
  reduce->add_option("--record", record_path, "Reduction record output file");
  reduce->add_option("--witness", witness_path,
                     "Also brute-force a coloring and write the matching solution here");

  auto* decode = app.add_subcommand("decode3col", "Decode a coloring from an instance solution");
  decode->add_option("solution", solution_path, "Solution JSON file")->required();
  decode->add_option("record", record_path, "Reduction record JSON file")->required();

  std::size_t rows = 4, cols = 4;
  std::int64_t umax = 1;
  std::uint64_t seed = 1;
  bool from_matrix = false;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--rows", rows, "Rows");
  gen->add_option("--cols", cols, "Columns");
  gen->add_option("--umax", umax, "Upper bound for U cells");
  gen->add_option("--seed", seed, "Seed for mt19937_64");
  gen->add_option("--window", window, "Window height and width")->expected(2);
  gen->add_flag("--from-random-matrix", from_matrix,
                "Sums of a random A <= U (always feasible) instead of random sums");

  std::string level = "quick";
  auto* st = app.add_subcommand("selftest", "Run the property suites");
  st->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  st->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sum) return CmdSum(matrix_path, window);
    if (*solve) return CmdSolve(instance_path, algo, budget, out_path);
    if (*verify) return CmdVerify(instance_path, solution_path);
    if (*reduce) return CmdReduce3Col(graph_path, out_path, record_path, witness_path);
    if (*decode) return CmdDecode3Col(solution_path, record_path);
    if (*gen) return CmdGen(rows, cols, umax, seed, from_matrix, window);
    if (*st) return CmdSelftest(level, seed);
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
