// aschcheck: decide imprimitivity, subfield realizability, and invariant
// forms for absolutely irreducible matrix representations over finite
// fields, from character data, with verified witnesses.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aschcheck/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitOracle = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    asch::fail(asch::Errc::parse_error, "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    asch::fail(asch::Errc::parse_error, "cannot write " + out_path);
  }
  out << text;
}

int exit_code_for(const asch::Error& e) {
  switch (e.code()) {
    case asch::Errc::invariant_violation:
      return kExitInvariant;
    default:
      return kExitInput;
  }
}

int run_analyze(const std::string& job_path, const std::string& checks,
                std::optional<uint64_t> seed, std::optional<size_t> cap,
                bool oracle, const std::string& out_path) {
  asch::JobSpec job = asch::parse_job(read_file(job_path));
  if (!checks.empty()) {
    std::vector<std::string> tokens;
    std::stringstream ss(checks);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);
    job.checks = asch::detail::normalize_checks(tokens);
  }
  if (seed) job.seed = *seed;
  if (cap) job.cap = *cap;
  if (oracle) job.oracle = true;

  auto t0 = std::chrono::steady_clock::now();
  asch::Report report = asch::run_job(job);
  auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  write_output(out_path, asch::report_to_string(report));
  std::cerr << "aschcheck: analyzed " << job_path << " in "
            << report.elapsed_ms << " ms\n";
  if (report.oracle_ran && !report.oracle_ok) {
    std::cerr << "aschcheck: ORACLE DISAGREEMENT\n";
    return kExitOracle;
  }
  return kExitOk;
}

int run_selftest(const std::string& corpus_dir, std::optional<uint64_t> seed,
                 const std::string& out_path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (!fs::is_directory(corpus_dir)) {
    asch::fail(asch::Errc::parse_error,
               "corpus directory not found: " + corpus_dir);
  }
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    asch::fail(asch::Errc::parse_error, "corpus directory has no job files");
  }

  asch::Json doc = asch::Json::object();
  doc["tool"] = "aschcheck selftest";
  doc["version"] = asch::kVersion;
  asch::Json reports = asch::Json::array();
  bool oracle_failed = false;
  for (const auto& path : files) {
    asch::JobSpec job = asch::parse_job(read_file(path.string()));
    job.oracle = true;
    if (seed) job.seed = *seed;
    auto t0 = std::chrono::steady_clock::now();
    asch::Report report = asch::run_job(job);
    auto t1 = std::chrono::steady_clock::now();
    long long ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    bool ok = report.oracle_ok;
    oracle_failed = oracle_failed || !ok;
    std::cerr << (ok ? "[ok]   " : "[FAIL] ") << path.filename().string()
              << " (" << ms << " ms)\n";
    asch::Json entry = asch::Json::object();
    entry["file"] = path.filename().string();
    entry["report"] = report.body;
    reports.push_back(std::move(entry));
  }
  doc["reports"] = std::move(reports);
  write_output(out_path, doc.dump(2) + "\n");
  return oracle_failed ? kExitOracle : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character-level Aschbacher class checks for matrix groups"};
  app.require_subcommand(1);

  std::string job_path, out_path, checks;
  std::optional<uint64_t> seed;
  std::optional<size_t> cap;
  bool oracle = false;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze one job file");
  analyze->add_option("job", job_path, "job JSON file")->required();
  analyze->add_option("--checks", checks,
                      "comma-separated subset of c2,c5,c8,stab (default: all)");
  analyze->add_option("--seed", seed, "PRNG seed (overrides the job file)");
  analyze->add_option("--cap", cap, "group order cap (overrides the job file)");
  analyze->add_flag("--oracle", oracle, "run independent brute-force oracles");
  analyze->add_option("--out", out_path, "write the report here instead of stdout");

  std::string corpus_dir = "corpus";
  CLI::App* selftest =
      app.add_subcommand("selftest", "run every corpus job with oracles on");
  selftest->add_option("--corpus", corpus_dir, "corpus directory");
  selftest->add_option("--seed", seed, "PRNG seed override for all jobs");
  selftest->add_option("--out", out_path, "write the combined document here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      return run_analyze(job_path, checks, seed, cap, oracle, out_path);
    }
    return run_selftest(corpus_dir, seed, out_path);
  } catch (const asch::Error& e) {
    std::cerr << "aschcheck: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "aschcheck: internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
