#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/dualspace.cpp is a thin main().
//
// Exit codes:
//    0  success
//    1  a verification law or roundtrip failed
//    2  usage error
//    3  I/O error
//    4  parse error               5  invariant violation in a file
//    6  field mismatch            7  dimension mismatch
//    8  index out of range        9  division by zero
//   10  bad truncation           11  incompatible thread
//   12  unrepresentable composite 13 undecidable
//   14  truncation too small     15  precondition violated
//   16  invalid argument

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dualspace/duality.hpp"
#include "dualspace/error.hpp"
#include "dualspace/io.hpp"
#include "dualspace/limits.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"
#include "dualspace/verify.hpp"

namespace dualspace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitLawFailed = 1;
inline constexpr int kExitUsage = 2;

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return 3;
    case ErrorKind::ParseError: return 4;
    case ErrorKind::InvariantViolation: return 5;
    case ErrorKind::FieldMismatch: return 6;
    case ErrorKind::DimensionMismatch: return 7;
    case ErrorKind::IndexOutOfRange: return 8;
    case ErrorKind::DivisionByZero: return 9;
    case ErrorKind::BadTruncation: return 10;
    case ErrorKind::IncompatibleThread: return 11;
    case ErrorKind::UnrepresentableComposite: return 12;
    case ErrorKind::Undecidable: return 13;
    case ErrorKind::TruncationTooSmall: return 14;
    case ErrorKind::PreconditionViolated: return 15;
    case ErrorKind::InvalidArgument: return 16;
  }
  return 16;
}

enum class Side { Left, Right };
enum class LimitMode { Thread, Roundtrip };

struct ApplyCmd {
  std::string matrix;
  std::string vector;
  Side side = Side::Right;
  std::string out;  // empty: stdout
};

struct ComposeCmd {
  std::string a;
  std::string b;
  std::string out;
};

struct DualCmd {
  std::string matrix;
  Side side = Side::Right;  // orientation of the input morphism
  std::string out;
};

struct LimitCmd {
  std::string vector;
  std::size_t depth = 1;
  LimitMode mode = LimitMode::Thread;
};

struct VerifyCmd {
  std::string suite = "all";
  VerifyOptions options;
  std::string out = ".";  // counterexample directory
};

using Command = std::variant<ApplyCmd, ComposeCmd, DualCmd, LimitCmd, VerifyCmd>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

inline int run(const ApplyCmd& cmd, std::ostream& out, std::ostream&) {
  const RowFiniteMatrix m = io::parse_matrix(read_file(cmd.matrix));
  const io::AnyVec v = io::parse_vector(read_file(cmd.vector));
  if (cmd.side == Side::Right) {
    FinSuppVec x = std::visit(
        [](const auto& u) -> FinSuppVec {
          using U = std::decay_t<decltype(u)>;
          if constexpr (std::is_same_v<U, FinSuppVec>) {
            return u;
          } else {
            if (!u.tail_is_zeros()) {
              fail(ErrorKind::PreconditionViolated, "right action needs a finitely supported vector");
            }
            FinSuppVec::Entries e;
            for (std::size_t i = 0; i < u.prefix().size(); ++i) e.emplace(i, u.prefix()[i]);
            return FinSuppVec::from_map(u.spec(), u.dim(), std::move(e));
          }
        },
        v);
    emit(cmd.out, io::serialize(act_right(x, m)), out);
  } else {
    ProdVec y = std::visit(
        [](const auto& u) -> ProdVec {
          using U = std::decay_t<decltype(u)>;
          if constexpr (std::is_same_v<U, FinSuppVec>) {
            return ProdVec::embed(u);
          } else {
            return u;
          }
        },
        v);
    emit(cmd.out, io::serialize(act_left(m, y)), out);
  }
  return kExitOk;
}

inline int run(const ComposeCmd& cmd, std::ostream& out, std::ostream&) {
  const RowFiniteMatrix a = io::parse_matrix(read_file(cmd.a));
  const RowFiniteMatrix b = io::parse_matrix(read_file(cmd.b));
  emit(cmd.out, io::serialize(compose(a, b)), out);
  return kExitOk;
}

inline int run(const DualCmd& cmd, std::ostream& out, std::ostream& err) {
  const DualMorphism in{io::parse_matrix(read_file(cmd.matrix)),
                        cmd.side == Side::Right ? Orientation::RightOnFinSupp : Orientation::LeftOnProd};
  const DualMorphism flipped = dual(in);
  emit(cmd.out, io::serialize(flipped.matrix), out);
  // With the matrix on stdout the orientation note goes to stderr.
  (cmd.out.empty() ? err : out) << "orientation: " << to_string(in.orientation) << " -> "
                                << to_string(flipped.orientation) << "\n";
  return kExitOk;
}

inline int run(const LimitCmd& cmd, std::ostream& out, std::ostream&) {
  const io::AnyVec v = io::parse_vector(read_file(cmd.vector));
  const ProdVec y = std::visit(
      [](const auto& u) -> ProdVec {
        using U = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<U, FinSuppVec>) {
          return ProdVec::embed(u);
        } else {
          return u;
        }
      },
      v);
  const Thread t = to_thread(y, cmd.depth);
  if (cmd.mode == LimitMode::Thread) {
    out << io::serialize(t);
    return kExitOk;
  }
  const ProdVec back = from_thread(t);
  bool ok = true;
  for (std::size_t n = 0; n <= cmd.depth && ok; ++n) ok = project(back, n) == project(y, n);
  out << "roundtrip depth=" << cmd.depth << (ok ? " pass" : " fail") << "\n";
  return ok ? kExitOk : kExitLawFailed;
}

/// Writes each failing law's inputs to <out>/counterexample-<law>/.
inline void write_counterexamples(std::vector<LawResult>& results, const std::string& dir) {
  for (auto& r : results) {
    if (r.passed() || !r.first_failure) continue;
    const std::filesystem::path base = std::filesystem::path(dir) / ("counterexample-" + r.law);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) fail(ErrorKind::IoError, "cannot create " + base.string());
    write_file((base / "note.txt").string(), r.first_failure->note + "\n");
    for (const auto& [name, content] : r.first_failure->files) write_file((base / name).string(), content);
    r.counterexample_path = base.string();
  }
}

inline int run(const VerifyCmd& cmd, std::ostream& out, std::ostream&) {
  auto results = run_verify(cmd.suite, cmd.options);
  write_counterexamples(results, cmd.out);
  out << format_report(results, cmd.options);
  for (const auto& r : results) {
    if (!r.passed()) return kExitLawFailed;
  }
  return kExitOk;
}

inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  return std::visit([&](const auto& c) { return run(c, out, err); }, cmd);
}

/// Parses argv and runs the command; library errors become exit codes.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Row-finite matrices, the dual functor and inverse limits over exact fields", "dualspace"};
  app.require_subcommand(1);

  const std::map<std::string, Side> sides{{"left", Side::Left}, {"right", Side::Right}};
  const std::map<std::string, LimitMode> modes{{"thread", LimitMode::Thread}, {"roundtrip", LimitMode::Roundtrip}};

  ApplyCmd apply;
  auto* apply_app = app.add_subcommand("apply", "Apply a matrix to a vector (right: x.M, left: M.y)");
  apply_app->add_option("--matrix", apply.matrix, "Matrix file")->required();
  apply_app->add_option("--vector", apply.vector, "Vector file")->required();
  apply_app->add_option("--side", apply.side, "left|right")->transform(CLI::CheckedTransformer(sides));
  apply_app->add_option("--out", apply.out, "Output vector file (default stdout)");

  ComposeCmd compose_cmd;
  std::vector<std::string> compose_inputs;
  auto* compose_app = app.add_subcommand("compose", "Matrix of x -> (x.A).B");
  compose_app->add_option("--matrix,matrices", compose_inputs, "The two matrix files A B")->expected(2)->required();
  compose_app->add_option("--out", compose_cmd.out, "Output matrix file (default stdout)");

  DualCmd dual_cmd;
  auto* dual_app = app.add_subcommand("dual", "Dualize a morphism: same matrix, other side");
  dual_app->add_option("--matrix", dual_cmd.matrix, "Matrix file")->required();
  dual_app->add_option("--side", dual_cmd.side, "Side the input acts on (default right)")
      ->transform(CLI::CheckedTransformer(sides));
  dual_app->add_option("--out", dual_cmd.out, "Output matrix file (default stdout)");

  LimitCmd limit;
  auto* limit_app = app.add_subcommand("limit", "Quotient-tower thread of a vector of dimension omega");
  limit_app->add_option("--vector", limit.vector, "Vector file")->required();
  limit_app->add_option("--depth", limit.depth, "Thread depth N")->required()->check(CLI::PositiveNumber);
  limit_app->add_option("--mode", limit.mode, "thread|roundtrip")->transform(CLI::CheckedTransformer(modes));

  VerifyCmd verify;
  auto* verify_app = app.add_subcommand("verify", "Run randomized law suites and print a report");
  verify_app->add_option("--suite", verify.suite, "all|adjoint|exact|faithful|full|functor|limits")
      ->check([](const std::string& s) { return s == "all" || is_suite(s) ? std::string() : "unknown suite " + s; });
  verify_app->add_option("--trunc", verify.options.trunc, "Truncation / thread depth")->check(CLI::PositiveNumber);
  verify_app->add_option("--seed", verify.options.seed, "64-bit seed")->envname("DUALSPACE_SEED");
  verify_app->add_option("--cases", verify.options.cases, "Cases per suite")->check(CLI::PositiveNumber);
  verify_app->add_option("--out", verify.out, "Directory for counterexamples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Command cmd;
  if (*apply_app) {
    cmd = apply;
  } else if (*compose_app) {
    compose_cmd.a = compose_inputs.at(0);
    compose_cmd.b = compose_inputs.at(1);
    cmd = compose_cmd;
  } else if (*dual_app) {
    cmd = dual_cmd;
  } else if (*limit_app) {
    cmd = limit;
  } else {
    cmd = verify;
  }

  try {
    return run(cmd, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace dualspace::cli
