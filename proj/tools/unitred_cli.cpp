// unitred: scans of real quadratic fields and checks on simplest cubic fields.
//
// Exit codes: 0 success, 1 an internal consistency check failed, 2 bad input.

#include "unitred/scan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

namespace {

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kBadInput = 2;

// "-" selects stdout.
std::ostream* open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path == "-") return &std::cout;
  holder = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*holder) return nullptr;
  return holder.get();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit reducibility and perfect unary forms over number fields"};
  app.require_subcommand(1);

  std::int64_t max_d = 0;
  std::string format = "jsonl";
  std::string scan_out = "-";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool timing = false;
  auto* scan_cmd = app.add_subcommand("scan", "Classify every square-free d up to a bound");
  scan_cmd->add_option("--max-d", max_d, "Largest d to process")->required();
  scan_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  scan_cmd->add_option("--out", scan_out, "Output path, - for stdout");
  scan_cmd->add_option("--jobs", jobs, "Worker threads");
  scan_cmd->add_flag("--timing", timing, "Record wall-clock time per d (output is then not reproducible)");

  std::int64_t classify_d = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Full pipeline for a single d");
  classify_cmd->add_option("d", classify_d, "Square-free integer >= 2")->required();

  std::int64_t t_max = 0;
  std::string cubic_out = "-";
  auto* cubic_cmd = app.add_subcommand("cubic", "Verify the Voronoi computation for simplest cubic fields");
  cubic_cmd->add_option("--t-max", t_max, "Largest t to check")->required();
  cubic_cmd->add_option("--out", cubic_out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*scan_cmd) {
      if (max_d < 2) {
        std::cerr << "error: --max-d must be >= 2\n";
        return kBadInput;
      }
      std::unique_ptr<std::ofstream> file;
      std::ostream* out = open_output(scan_out, file);
      if (out == nullptr) {
        std::cerr << "error: cannot write " << scan_out << "\n";
        return kBadInput;
      }
      unitred::ScanOptions opts;
      opts.max_d = max_d;
      opts.format = format == "csv" ? unitred::OutputFormat::csv : unitred::OutputFormat::jsonl;
      opts.jobs = jobs;
      opts.timing = timing;
      const unitred::ScanSummary summary = unitred::scan(opts, *out);
      if (!*out) {
        std::cerr << "error: write to " << scan_out << " failed\n";
        return kBadInput;
      }
      std::cerr << unitred::to_json(summary).dump() << "\n";
      return summary.inconsistent == 0 ? kOk : kInconsistent;
    }

    if (*classify_cmd) {
      if (classify_d < 2 || !unitred::is_squarefree(classify_d)) {
        std::cerr << "error: d = " << classify_d << " is not a square-free integer >= 2\n";
        return kBadInput;
      }
      const unitred::ScanRecord rec = unitred::classify(classify_d);
      std::cout << unitred::to_json(rec).dump() << "\n";
      return rec.consistent() ? kOk : kInconsistent;
    }

    if (*cubic_cmd) {
      if (t_max < 0) {
        std::cerr << "error: --t-max must be >= 0\n";
        return kBadInput;
      }
      std::unique_ptr<std::ofstream> file;
      std::ostream* out = open_output(cubic_out, file);
      if (out == nullptr) {
        std::cerr << "error: cannot write " << cubic_out << "\n";
        return kBadInput;
      }
      const unitred::CubicSummary summary = unitred::cubic_report(t_max, *out);
      std::cerr << unitred::to_json(summary).dump() << "\n";
      return summary.failed == 0 ? kOk : kInconsistent;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInconsistent;
  }
  return kOk;
}
