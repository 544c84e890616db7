/*
   Copyright 2026 The ttweng Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ttw/driver.hpp"

namespace {

ttw::Rational parse_number(const std::string& text) {
  // Accepts p, p/q and decimal literals, all exactly.
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q(text);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return ttw::Rational(mpz_class(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class num(digits);
  mpz_class den(1);
  for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
  ttw::Rational q(num, den);
  q.canonicalize();
  return q;
}

void apply_numeric_option(ttw::RunConfig& cfg, const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--numeric", "expected name=value pairs");
    std::string key = item.substr(0, eq);
    ttw::Rational value = parse_number(item.substr(eq + 1));
    if (key == "a") cfg.numeric_a = value;
    else if (key == "b") cfg.numeric_b = value;
    else if (key == "w") cfg.numeric_w = value;
    else throw CLI::ValidationError("--numeric", "unknown parameter '" + key + "'");
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification engine for the dihedral Dunkl-operator construction "
               "of the odd-k TTW integrals"};
  app.require_subcommand(1);

  ttw::RunConfig cfg;
  std::string level = "full";
  std::string numeric_spec;
  std::string op_id;
  std::vector<std::string> report_files;

  CLI::App* verify = app.add_subcommand("verify", "run identity check suites");
  verify->add_option("--k", cfg.k, "odd k >= 3 selecting the dihedral family");
  verify->add_option("--level", level, "section2 | boson | hamiltonians | full");
  std::string format = "text";
  verify->add_option("--format", format, "text | structured");
  verify->add_option("--out", cfg.out_path, "write the report here instead of stdout");
  verify->add_option("--seed", cfg.seed, "seed for the numeric oracle sampling");
  verify->add_option("--budget-terms", cfg.budget_terms, "cap on canonical term counts");
  verify->add_option("--budget-seconds", cfg.budget_seconds, "cap on wall time for heavy steps");
  verify->add_flag("--omit-timing", cfg.omit_timing,
                   "omit wall_ms fields for byte-reproducible reports");

  CLI::App* dump = app.add_subcommand("dump", "serialize one operator in canonical form");
  dump->add_option("--k", cfg.k, "odd k >= 3");
  dump->add_option("--op", op_id, "Dr,Dphi,Hext,Xext,Y,H_proj,X_proj,Y_proj,h,A_i,Adag_i,B_i,Bdag_i,H_i")
      ->required();
  dump->add_option("--numeric", numeric_spec, "numeric substitutions, e.g. a=0,b=1/2,w=2");
  dump->add_option("--out", cfg.out_path, "output file");
  dump->add_option("--budget-terms", cfg.budget_terms, "cap on canonical term counts");
  dump->add_option("--budget-seconds", cfg.budget_seconds, "cap on wall time for heavy steps");

  CLI::App* report = app.add_subcommand("report", "merge structured reports");
  report->add_option("files", report_files, "structured report files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return ttw::kExitUsage;
  }

  try {
    if (verify->parsed()) {
      cfg.level = ttw::parse_level(level);
      if (format == "structured") cfg.format = ttw::OutputFormat::structured;
      else if (format == "text") cfg.format = ttw::OutputFormat::text;
      else throw std::invalid_argument("unknown format '" + format + "'");
      ttw::RunResult result = ttw::run_verify(cfg);
      std::string text = cfg.format == ttw::OutputFormat::structured
                             ? ttw::render_structured(result, !cfg.omit_timing)
                             : ttw::render_text(result);
      write_output(cfg.out_path, text);
      // With a structured report going to a file, keep a human-readable
      // summary on stdout.
      if (cfg.format == ttw::OutputFormat::structured && !cfg.out_path.empty())
        std::cout << ttw::render_text(result);
      return ttw::exit_code(result);
    }
    if (dump->parsed()) {
      if (!numeric_spec.empty()) apply_numeric_option(cfg, numeric_spec);
      write_output(cfg.out_path, ttw::dump_operator(cfg, op_id));
      return ttw::kExitOk;
    }
    if (report->parsed()) {
      std::vector<std::string> docs;
      for (const auto& path : report_files) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read report file " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        docs.push_back(ss.str());
      }
      int code = ttw::kExitOk;
      std::string merged = ttw::merge_structured_reports(docs, code);
      write_output(cfg.out_path, merged);
      return code;
    }
  } catch (const ttw::BudgetExceededError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return ttw::kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ttw::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return ttw::kExitUsage;
}
