// Command-line frontend for the promises solver.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "promises/cli.hpp"

namespace {

using promises::cli::ExitCode;
using promises::cli::json;

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return slurp(std::cin);
  std::ifstream f(path);
  if (!f) throw promises::Error(promises::ErrorCode::ParseError, "cannot open " + path);
  return slurp(f);
}

// A profile argument names a file when one exists at that path, otherwise it is inline text.
promises::RationalVector read_profile(const std::string& arg) {
  std::ifstream f(arg);
  if (f) return promises::cli::parse_profile_text(slurp(f));
  return promises::cli::parse_profile_text(arg);
}

std::size_t brute_force_cap() {
  const char* env = std::getenv("PROMISES_BRUTE_FORCE_CAP");
  if (!env || !*env) return promises::kDefaultEnumerationCap;
  char* end = nullptr;
  const auto v = std::strtoul(env, &end, 10);
  if (*end != '\0')
    throw promises::Error(promises::ErrorCode::ParseError,
                          std::string("PROMISES_BRUTE_FORCE_CAP is not an integer: ") + env);
  return v;
}

int emit_error(const json& report, ExitCode code) {
  std::cout << report.dump(2) << '\n';
  std::cerr << report["error"].get<std::string>() << ": " << report["message"].get<std::string>()
            << '\n';
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable and minimum-transfer promise profiles for kappa-majority committees"};
  app.require_subcommand(1);

  std::string input;
  std::string output = "json";
  std::uint64_t seed = 1;
  app.add_option("--input,-i", input, "committee document (JSON); standard input when omitted");
  app.add_option("--output,-o", output, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for equilibrium sampling");

  auto* classify = app.add_subcommand("classify", "regime and aggregate quantities");
  auto* solve = app.add_subcommand("solve", "equilibrium profiles, re-verified");
  std::string mode = "both";
  solve->add_option("--mode", mode)->check(CLI::IsMember({"canonical", "selection", "both"}));

  std::string profile;
  std::string status_quo;
  auto* check = app.add_subcommand("check", "stability and equilibrium verdict for a profile");
  check->add_option("--profile,-p", profile, "reform-contingent transfers: file, JSON array or a,b,c")
      ->required();
  check->add_option("--status-quo", status_quo, "status-quo-contingent transfers");
  auto* block = app.add_subcommand("block", "blocking-coalition witness only");
  block->add_option("--profile,-p", profile)->required();
  block->add_option("--status-quo", status_quo);

  auto* verify = app.add_subcommand("verify", "closed form against the LP optimum");
  std::size_t samples = 5;
  verify->add_option("--samples", samples, "sampled equilibria to re-verify");

  auto* sweep = app.add_subcommand("sweep", "minimum transfer under scaled intensities");
  std::vector<std::string> lambdas;
  sweep->add_option("--lambdas", lambdas, "positive scale factors")->required();

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {classify, solve, verify, sweep})
    if (sub->parsed() && output == "csv" && sub != sweep) {
      std::cerr << "--output csv is only available for sweep\n";
      return static_cast<int>(ExitCode::Parse);
    }

  try {
    const auto doc = promises::cli::parse_document(read_input(input));
    json report;
    auto optional_sq = [&]() -> std::optional<promises::RationalVector> {
      if (status_quo.empty()) return std::nullopt;
      return read_profile(status_quo);
    };
    if (classify->parsed()) {
      report = promises::cli::cmd_classify(doc);
    } else if (solve->parsed()) {
      using promises::cli::SolveMode;
      report = promises::cli::cmd_solve(doc, mode == "canonical"   ? SolveMode::Canonical
                                             : mode == "selection" ? SolveMode::Selection
                                                                   : SolveMode::Both);
    } else if (check->parsed()) {
      report = promises::cli::cmd_check(doc, read_profile(profile), optional_sq(),
                                        {brute_force_cap()});
    } else if (block->parsed()) {
      report = promises::cli::cmd_block(doc, read_profile(profile), optional_sq());
    } else if (verify->parsed()) {
      report = promises::cli::cmd_verify(doc, seed, samples);
    } else {
      promises::RationalVector ls;
      for (const auto& l : lambdas) ls.push_back(promises::parse_rational(l));
      report = promises::cli::cmd_sweep(doc, ls);
      if (output == "csv") {
        std::cout << promises::cli::sweep_csv(report);
        return 0;
      }
    }
    std::cout << report.dump(2) << '\n';
    return 0;
  } catch (const promises::cli::DocumentError& e) {
    auto report = promises::cli::error_report(std::string(promises::error_name(e.code())), e.what());
    report["diagnostics"] = e.diagnostics();
    return emit_error(report, promises::cli::exit_code_for(e.code()));
  } catch (const promises::Error& e) {
    return emit_error(promises::cli::error_report(std::string(promises::error_name(e.code())), e.what()),
                      promises::cli::exit_code_for(e.code()));
  } catch (const promises::cli::VerificationFailure& e) {
    auto report = promises::cli::error_report("VerificationFailure", e.what());
    report["details"] = e.details();
    return emit_error(report, ExitCode::Verification);
  }
}
