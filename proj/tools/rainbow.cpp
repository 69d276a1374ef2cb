// Command line front end: gen, solve, verify, bench.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "rainbow/generators.hpp"
#include "rainbow/harness.hpp"

using namespace rainbow;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string format = "json";
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0;
  bool no_timing = false;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = budget_nodes;
    if (budget_secs > 0) b.time_limit_secs = budget_secs;
    return b;
  }
};

TournamentCollection read_instance(const std::string& path) {
  if (path != "-") return read_collection_file(path);
  const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return parse_collection(text);
}

int emit_report(const SuiteReport& r, const Globals& g, const std::string& out_path = {}) {
  const bool timing = !g.no_timing;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw InvalidArgument("cannot write '" + out_path + "'");
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (g.format == "csv") {
    if (r.stats.contains("rows")) {
      out << bench_csv(r, timing);
    } else {
      out << "suite,instances,failures,counterexamples" << (timing ? ",wall_ms" : "") << "\n";
      out << r.suite << "," << r.instances << "," << r.failures.size() << "," << r.counterexamples.size();
      if (timing) out << "," << r.wall_ms;
      out << "\n";
    }
    for (const auto& f : r.failures) std::cerr << f.dump() << "\n";
  } else {
    out << report_lines(r, timing);
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transversal Hamilton paths and cycles in tournament collections"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--budget-nodes", g.budget_nodes, "Oracle node budget, 0 for none");
  app.add_option("--budget-secs", g.budget_secs, "Oracle time budget in seconds, 0 for none");
  app.add_flag("--no-timing", g.no_timing, "Omit timing fields from reports");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a collection as JSON");
  std::string gen_kind = "random_uniform", gen_out;
  std::size_t gen_n = 5, gen_m = 0;
  gen->add_option("--kind", gen_kind, "Generator kind");
  gen->add_option("-n,--n", gen_n, "Vertices");
  gen->add_option("-m,--m", gen_m, "Colors (default n - 1)");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Find a transversal Hamilton path or cycle");
  std::string in_path = "-", solve_mode = "path";
  bool constructive = false, exact = false, automatic = false, trace = false, count_all = false;
  std::optional<double> mu, gamma, beta, alpha;
  std::optional<std::size_t> fallback_n;
  solve->add_option("-i,--in", in_path, "Instance file, - for stdin");
  solve->add_option("--mode", solve_mode, "What to look for")->check(CLI::IsMember({"path", "cycle"}));
  auto* c_flag = solve->add_flag("--constructive", constructive, "Constructive branch only");
  auto* e_flag = solve->add_flag("--exact", exact, "Exact oracle only");
  auto* a_flag = solve->add_flag("--auto", automatic, "Oracle for small or unmet cases, else constructive");
  c_flag->excludes(e_flag)->excludes(a_flag);
  e_flag->excludes(a_flag);
  solve->add_option("--mu", mu);
  solve->add_option("--gamma", gamma);
  solve->add_option("--beta", beta);
  solve->add_option("--alpha", alpha);
  solve->add_option("--fallback-n", fallback_n, "Largest n sent straight to the oracle");
  solve->add_flag("--trace", trace, "Print one JSON line per pipeline stage");
  solve->add_flag("--count-all", count_all, "Count every witness vertex sequence (exact oracle)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, v_mode = "random", lemma = "one-spare", kind = "path", v_solve = "auto", record_path, v_out;
  std::size_t n_min = 3, n_max = 3, seeds = 100;
  std::vector<std::size_t> sizes;
  bool canonical = false;
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"theorem-path", "theorem-cycle", "prop14", "lemma", "pipeline", "constructive-scale",
                             "recheck"}));
  verify->add_option("--n-min", n_min);
  verify->add_option("--n-max", n_max);
  verify->add_option("--mode", v_mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--seeds", seeds, "Instances per size");
  verify->add_option("--sizes", sizes, "Sizes for lemma, pipeline and scale suites")->delimiter(',');
  verify->add_option("--lemma", lemma, "Lemma sub-suite");
  verify->add_option("--kind", kind, "Pipeline kind")->check(CLI::IsMember({"path", "cycle"}));
  verify->add_option("--solve-mode", v_solve, "Pipeline solve mode")
      ->check(CLI::IsMember({"exact", "constructive", "auto"}));
  verify->add_option("--record", record_path, "JSON-lines file of records to replay (recheck)");
  verify->add_option("-o,--out", v_out, "Write the report here instead of stdout");
  verify->add_flag("--canonical", canonical, "Count counterexamples up to relabelling");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time an operation across sizes");
  std::string bench_kind = "h-partition";
  std::vector<std::size_t> bench_sizes{100, 500, 1000};
  std::size_t bench_seeds = 3;
  bench_cmd->add_option("--kind", bench_kind)
      ->check(CLI::IsMember({"oracle", "h-partition", "one-spare", "pipeline"}));
  bench_cmd->add_option("--sizes", bench_sizes)->delimiter(',');
  bench_cmd->add_option("--seeds", bench_seeds);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto t = generate({parse_generator_kind(gen_kind), gen_n, gen_m ? gen_m : gen_n - 1, g.seed});
      if (gen_out.empty())
        std::cout << dump_collection(t) << "\n";
      else
        write_collection_file(gen_out, t);
      return 0;
    }

    if (*solve) {
      const auto t = read_instance(in_path);
      const bool cycle = solve_mode == "cycle";
      PipelineParams params;
      if (mu || gamma || beta || alpha) {
        auto pick = [](const std::optional<double>& x, Rational dflt) { return x ? Rational::from_double(*x) : dflt; };
        params = PipelineParams(pick(mu, params.mu), pick(gamma, params.gamma), pick(beta, params.beta),
                                pick(alpha, params.alpha));
      }
      params.seed = g.seed;
      params.oracle_budget = g.budget();
      if (fallback_n) params.oracle_fallback_n = *fallback_n;
      const SolveMode mode = constructive ? SolveMode::Constructive : exact ? SolveMode::Exact : SolveMode::Auto;

      PipelineOutcome o;
      if (count_all) {
        OracleOptions opts;
        opts.count_all = true;
        o.outcome = cycle ? exact_transversal_ham_cycle(t, g.budget(), opts)
                          : exact_transversal_ham_path(t, std::nullopt, g.budget(), opts);
      } else {
        o = cycle ? transversal_ham_cycle(t, params, mode) : transversal_ham_path(t, params, mode);
      }
      bool valid = true;
      if (o.outcome.path) valid = is_hamilton_path(t, *o.outcome.path);
      if (o.outcome.cycle) valid = is_hamilton_cycle(t, *o.outcome.cycle);

      if (trace)
        for (const auto& rec : o.trace) {
          Json line{{"type", "trace"}};
          for (const auto& [k, x] : rec.items()) line[k] = x;
          std::cout << line.dump() << "\n";
        }
      Json out = to_json(o);
      out["valid"] = valid;
      if (g.no_timing) out.erase("millis");
      if (g.format == "csv") {
        std::cout << "tail,head,color\n";
        for (const auto& a : out.value("arcs", Json::array())) std::cout << a[0] << "," << a[1] << "," << a[2] << "\n";
      } else {
        std::cout << out.dump() << "\n";
      }
      return valid ? 0 : 1;
    }

    HarnessOptions opt;
    opt.jobs = g.jobs;
    opt.base_seed = g.seed;
    opt.budget = g.budget();
    opt.canonical = canonical;

    if (*verify) {
      opt.seeds = seeds;
      if (suite == "recheck") {
        std::ifstream in(record_path);
        if (!in) throw InvalidArgument("cannot open record file '" + record_path + "'");
        bool all_ok = true;
        for (std::string line; std::getline(in, line);) {
          if (line.empty()) continue;
          const Json rec = Json::parse(line);
          if (!rec.contains("instance")) continue;  // summary lines
          const Json again = recheck(rec, opt);
          all_ok = all_ok && !again.at("failed").get<bool>();
          std::cout << again.dump() << "\n";
        }
        return all_ok ? 0 : 1;
      }
      SuiteReport r;
      if (suite == "theorem-path") r = verify_theorem_path(n_min, n_max, parse_suite_mode(v_mode), opt);
      if (suite == "theorem-cycle") r = verify_theorem_cycle(n_min, n_max, parse_suite_mode(v_mode), opt);
      if (suite == "prop14") r = verify_prop14(n_min, n_max, opt);
      if (suite == "lemma") r = verify_lemmas(parse_lemma_suite(lemma), sizes, opt);
      if (suite == "pipeline")
        r = verify_pipeline(kind == "cycle" ? PipelineKind::Cycle : PipelineKind::Path, parse_solve_mode(v_solve),
                            sizes, opt);
      if (suite == "constructive-scale") r = verify_constructive_scale(sizes, opt);
      return emit_report(r, g, v_out);
    }

    if (*bench_cmd) {
      opt.seeds = bench_seeds;
      return emit_report(bench(parse_bench_kind(bench_kind), bench_sizes, opt), g);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
