// exotic: build, verify and classify the surgered manifold families.
//
// Exit codes: 0 when every verdict passes, 1 on a verdict failure,
// 2 on a usage, parse or constraint error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "exotic/report.hpp"

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for exotic smooth structures on (2k-1)(S2xS2) and (2k-1)(CP2#-CP2)"};
  app.set_version_flag("--version", "exotic 0.1.0");

  std::string spec_path;
  std::string k_text;
  std::string n_text;
  std::string p_text;
  std::string r_text;
  std::string m_text;
  std::size_t limit = 1'000'000;
  std::string format = "json";
  std::string strategy = "hlt";
  std::string out_path;
  unsigned jobs = 1;
  bool timings = false;

  auto* spec_opt = app.add_option("--spec", spec_path, "run description file");
  auto* k_opt = app.add_option("--k", k_text, "k (single integer)");
  app.add_option("--n", n_text, "n, integer or range a..b (default 1)");
  app.add_option("--p", p_text, "p (default 1)");
  app.add_option("--r", r_text, "r (default 1)");
  app.add_option("--m", m_text, "m, integer or range a..b (default 1)");
  auto* limit_opt = app.add_option("--limit", limit, "coset limit")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
  auto* strategy_opt =
      app.add_option("--strategy", strategy, "coset enumeration strategy")->check(CLI::IsMember({"hlt", "felsch"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--jobs", jobs, "models run concurrently")->check(CLI::Range(1U, 256U));
  app.add_flag("--timings", timings, "include wall-clock seconds (breaks byte stability)");
  spec_opt->excludes(k_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  exotic::RunSpec spec;
  try {
    if (!spec_path.empty()) {
      spec = exotic::parse_spec(read_file(spec_path));
    } else if (!k_text.empty()) {
      std::ostringstream line;
      line << "family k=" << k_text << " n=" << (n_text.empty() ? "1" : n_text)
           << " p=" << (p_text.empty() ? "1" : p_text) << " r=" << (r_text.empty() ? "1" : r_text)
           << " m=" << (m_text.empty() ? "1" : m_text) << '\n';
      spec = exotic::parse_spec(line.str());
    } else {
      spec = exotic::parse_spec("");
    }
  } catch (const exotic::ParseError& e) {
    std::cerr << "exotic: " << (spec_path.empty() ? "arguments" : spec_path) << ":" << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "exotic: " << e.what() << '\n';
    return kUsageError;
  }

  // Command-line values override the file.
  if (*limit_opt || spec_path.empty()) spec.limit = limit;
  if (*strategy_opt || spec_path.empty())
    spec.strategy = strategy == "felsch" ? exotic::Strategy::felsch : exotic::Strategy::hlt;
  spec.format = format == "table" ? exotic::OutputFormat::table : exotic::OutputFormat::json;
  spec.jobs = jobs;
  spec.timings = timings;
  if (!out_path.empty()) spec.output_path = out_path;

  exotic::Report report;
  try {
    report = exotic::run(spec);
  } catch (const exotic::ParseError& e) {
    std::cerr << "exotic: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string text =
      spec.format == exotic::OutputFormat::json ? report.json_text() : exotic::render_table(report.body);
  if (spec.output_path) {
    std::ofstream out(*spec.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "exotic: cannot write " << *spec.output_path << '\n';
      return kUsageError;
    }
    out << text;
  } else {
    std::cout << text;
  }
  if (!report.all_pass) {
    for (const auto& m : report.body.at("models"))
      for (const auto& f : m.at("failures"))
        std::cerr << "exotic: " << m.at("name").get<std::string>() << ": " << f.get<std::string>() << '\n';
  }
  return report.exit_code();
}
