#include "minihyper/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "minihyper/claims.hpp"
#include "minihyper/classifier.hpp"
#include "minihyper/families.hpp"
#include "minihyper/report.hpp"

namespace minihyper {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_threads() {
  if (const char* t = std::getenv("MINIHYPER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(t, &end, 10);
    if (end != t && *end == '\0' && v >= 1) return static_cast<int>(v);
    throw UsageError(std::string("MINIHYPER_THREADS must be a positive integer, got '") + t + "'");
  }
  return 1;
}

Mult default_cap(Mult n, Mult w) {
  if ((n == 21 && w == 6) || (n == 30 && w == 9)) return 3;
  return 2;
}

Multiset load_multiset(const std::string& path) {
  try {
    return read_multiset_file(path);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Fails early instead of after a long search.
void check_writable(const std::string& path) {
  if (path.empty()) return;
  const bool existed = std::filesystem::exists(path);
  {
    std::ofstream f(path, std::ios::app);
    if (!f) throw UsageError("cannot write " + path);
  }
  if (!existed) std::filesystem::remove(path);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minihypers, arcs and codes in small projective geometries", "minihyper"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  // analyze
  std::string file;
  auto* analyze_cmd = app.add_subcommand("analyze", "Spectrum, parameters, gamma and theorem reports for a multiset file");
  analyze_cmd->add_option("file", file, "Multiset file")->required();
  add_format(analyze_cmd);

  // construct
  std::string family, output;
  bool list = false;
  auto* construct_cmd = app.add_subcommand("construct", "Write a named family as a multiset file");
  construct_cmd->add_option("name", family, "Family name (see --list)");
  construct_cmd->add_flag("--list", list, "List the available families");
  construct_cmd->add_option("-o,--output", output, "Output file (default: standard output)");

  // check
  std::string theorem, mode_name = "minihyper";
  int ward_e = 0;
  auto* check_cmd = app.add_subcommand("check", "Run one theorem checker on a multiset file");
  check_cmd->add_option("theorem", theorem, "ward | hill-lizak | kanda | main-reduction")
      ->required()
      ->check(CLI::IsMember({"ward", "hill-lizak", "kanda", "main-reduction"}));
  check_cmd->add_option("file", file, "Multiset file")->required();
  check_cmd->add_option("--mode", mode_name, "minihyper or arc")->check(CLI::IsMember({"minihyper", "arc"}));
  check_cmd->add_option("--e", ward_e, "Exponent for ward (default: largest e with w = n mod p^e)")
      ->check(CLI::PositiveNumber);
  add_format(check_cmd);

  // classify
  int r = 0, q = 0;
  Mult n = 0, w = 0, cap = 0;
  int threads = 0;
  std::int64_t budget = 0;
  std::string resume;
  auto* classify_cmd = app.add_subcommand("classify", "Classify (n,w)-minihypers or arcs of PG(r,q) up to equivalence");
  classify_cmd->add_option("r", r, "Dimension")->required()->check(CLI::Range(1, 16));
  classify_cmd->add_option("q", q, "Prime field order")->required()->check(CLI::Range(2, 1000));
  classify_cmd->add_option("n", n, "Cardinality")->required()->check(CLI::NonNegativeNumber);
  classify_cmd->add_option("w", w, "Hyperplane bound")->required()->check(CLI::NonNegativeNumber);
  classify_cmd->add_option("--mode", mode_name, "minihyper or arc")->check(CLI::IsMember({"minihyper", "arc"}));
  classify_cmd->add_option("--cap", cap, "Largest point multiplicity (default 3 for (21,6) and (30,9), else 2)")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("-o,--output", output, "Catalog file to write");
  classify_cmd->add_option("--resume", resume, "Frontier file: resumed when present, written when the budget runs out");
  add_format(classify_cmd);

  // verify-paper
  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the acceptance checks and print a pass/fail table");
  verify_cmd->add_option("--only", only, "Run only these criteria (1-12)")->check(CLI::Range(1, 12));
  add_format(verify_cmd);

  for (auto* sub : {classify_cmd, verify_cmd}) {
    sub->add_option("--threads", threads, "Worker threads (default: MINIHYPER_THREADS or 1)")->check(CLI::PositiveNumber);
    sub->add_option("--budget", budget, "Search node budget per classification")->check(CLI::PositiveNumber);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return exit_usage;
  }

  try {
    if (threads == 0) threads = default_threads();

    if (*analyze_cmd) {
      const Analysis a = analyze(load_multiset(file));
      if (format == "json")
        emit(out, to_json(a));
      else
        out << to_text(a);
      return exit_ok;
    }

    if (*construct_cmd) {
      if (list) {
        for (const auto& f : family_catalog())
          out << f.name << "  PG(" << f.r << "," << f.q << ")  (" << f.expected.n << "," << f.expected.w << ")-"
              << to_string(f.expected.mode) << "  " << f.description << '\n';
        return exit_ok;
      }
      if (family.empty()) throw UsageError("construct needs a family name (see construct --list)");
      Multiset k = [&] {
        try {
          return construct_family(family);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      if (output.empty())
        out << to_text(k);
      else
        write_multiset_file(k, output);
      return exit_ok;
    }

    if (*check_cmd) {
      const Multiset k = load_multiset(file);
      const Mode mode = parse_mode(mode_name);
      const TheoremId id = parse_theorem(theorem);
      TheoremReport rep;
      switch (id) {
        case TheoremId::ward: {
          const Parameters p = parameters(k, mode);
          rep = ward_check(k, mode, ward_e > 0 ? ward_e : ward_exponent(p.n, p.w, k.geometry().q()));
          break;
        }
        case TheoremId::hill_lizak: rep = hill_lizak(k, mode); break;
        case TheoremId::kanda:
          if (k.geometry().q() != 3) throw UsageError("kanda needs q = 3");
          rep = kanda(k, mode);
          break;
        case TheoremId::main_reduction:
          if (mode != Mode::minihyper) throw UsageError("main-reduction is a minihyper statement");
          rep = main_reduction(k);
          break;
      }
      if (format == "json") {
        Json j{{"schema", report_schema}, {"command", "check"}};
        const Json body = to_json(rep, k.geometry());
        for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
        emit(out, j);
      } else {
        out << to_text(rep, k.geometry());
      }
      return rep.falsified() ? exit_verification_failed : exit_ok;
    }

    if (*classify_cmd) {
      if (cap == 0) cap = default_cap(n, w);
      check_writable(output);
      check_writable(resume);
      ClassifyOptions o;
      o.threads = threads;
      o.node_budget = budget;
      o.frontier_path = resume;
      Catalog c = [&] {
        try {
          return classify(r, q, n, w, parse_mode(mode_name), cap, o);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      if (!output.empty()) write_catalog_file(c, output);
      if (format == "json")
        emit(out, to_json(c));
      else
        out << summary_text(c);
      if (!c.complete) {
        err << "search budget exhausted: catalog is incomplete";
        if (!resume.empty()) err << "; frontier saved to " << resume;
        err << '\n';
        return exit_incomplete;
      }
      return exit_ok;
    }

    if (*verify_cmd) {
      ClaimOptions o;
      o.threads = threads;
      o.budget = budget;
      o.only = only;
      const auto results = run_claims(o);
      bool failed = false, unresolved = false;
      Json rows = Json::array();
      for (const auto& c : results) {
        failed |= c.status == ClaimStatus::fail;
        unresolved |= c.status == ClaimStatus::unresolved;
        rows.push_back(Json{{"id", c.id},
                            {"key", c.key},
                            {"statement", c.statement},
                            {"status", to_string(c.status)},
                            {"detail", c.detail}});
      }
      if (format == "json") {
        emit(out, Json{{"schema", report_schema}, {"command", "verify-paper"}, {"results", rows}});
      } else {
        for (const auto& c : results) {
          char head[96];
          std::snprintf(head, sizeof head, "%-10s %2d  %-26s ", to_string(c.status).c_str(), c.id, c.key.c_str());
          out << head << c.detail << '\n';
        }
      }
      return failed ? exit_verification_failed : unresolved ? exit_incomplete : exit_ok;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace minihyper
