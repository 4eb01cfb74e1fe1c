#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "symdiff/job.hpp"

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("SYMDIFF_THREADS")) {
    try {
      const auto n = std::stoul(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
      std::cerr << "symdiff: ignoring SYMDIFF_THREADS=" << env << "\n";
    }
  }
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"symdiff: ordinary, symbolic, differential, delta- and mixed powers of ideals"};
  app.require_subcommand(1);

  std::string job_path;
  symdiff::RunOptions opts;
  unsigned threads = 0;
  unsigned degree_bound = 0;
  auto* run = app.add_subcommand("run", "Run the queries of a job file");
  run->add_option("job-file", job_path, "Job file")->required()->check(CLI::ExistingFile);
  run->add_flag("--json", opts.json, "One JSON object per query");
  run->add_option("--seed", opts.seed, "Seed for random corpora");
  run->add_option("--degree-bound", degree_bound, "Default degree bound for generator queries")
      ->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "Worker threads (default: SYMDIFF_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  std::uint64_t p = 5;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify-paper", "Check the worked examples for a prime p");
  verify->add_option("--p", p, "Prime");
  verify->add_flag("--json", verify_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the exit code of malformed jobs.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*verify) return symdiff::run_reference_checks(p, verify_json, std::cout);

    opts.threads = threads ? threads : default_threads();
    if (degree_bound) opts.degree_bound = degree_bound;
    std::ifstream in(job_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto job = symdiff::parse_job(buf.str());
    return symdiff::run_job(job, opts, std::cout);
  } catch (const symdiff::ParseError& e) {
    std::cerr << job_path << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "symdiff: " << e.what() << "\n";
    return 1;
  }
}
