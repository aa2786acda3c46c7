// msos: converts polynomial optimization problems into sparse moment/SOS
// semidefinite relaxations, solves them, and extracts certified minimizers.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msos/correlative.hpp"
#include "msos/extraction.hpp"
#include "msos/models.hpp"
#include "msos/relaxation.hpp"
#include "msos/reports.hpp"
#include "msos/sdpa.hpp"
#include "msos/solver.hpp"
#include "msos/term_sparsity.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct ModelParams {
  std::string name;
  int N = 3;
  double dt = 0.1, m = 1.0, k1 = 100.0, k2 = 100.0, d1 = 1.0, d2 = 1.0;
  double u_max = 10.0, x_init = 0.5, v_init = 0.0;
  int n_modes = 3;
  double r = 1.0;
};

struct RunOptions {
  std::string input;       // POP text file
  std::string graph;       // graph JSON file (clique report mode)
  ModelParams model;       // built-in generator
  std::string cs = "md";
  std::string ts = "non";
  std::string self_cliques_file;
  std::string ts_bases_file;
  int ts_order = 1;
  bool partial_ts = false;
  int d = 0;  // 0: use d_min
  std::string side = "sos";
  std::string action = "report";
  std::string out_dir = ".";
  double feas_tol = 1e-4;
  bool native_dump = false;
  // solver overrides
  int max_iters = 50000;
  double eps_abs = 1e-7;
  double eps_rel = 1e-6;
  double rho = 1.0;
  bool no_scaling = false;
  int threads = 1;
  bool verbose = false;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

msos::Pop build_model_pop(const ModelParams& mp,
                          std::vector<std::vector<int>>* cliques_out = nullptr) {
  if (mp.name == "double-integrator") {
    msos::DoubleIntegratorParams p;
    p.N = mp.N;
    p.dt = mp.dt;
    p.m = mp.m;
    p.k1 = mp.k1;
    p.k2 = mp.k2;
    p.d1 = mp.d1;
    p.d2 = mp.d2;
    p.u_max = mp.u_max;
    p.x_init = mp.x_init;
    p.v_init = mp.v_init;
    return msos::make_double_integrator(p);
  }
  if (mp.name == "separable-modes") return msos::make_separable_modes(mp.n_modes);
  if (mp.name == "kinematic-chain") {
    msos::KinematicChain kc = msos::make_kinematic_chain(mp.N, mp.r);
    if (cliques_out) *cliques_out = kc.self_cliques;
    return kc.pop;
  }
  throw std::runtime_error("unknown model '" + mp.name +
                           "' (double-integrator, separable-modes, kinematic-chain)");
}

std::vector<std::vector<int>> parse_clique_file(const std::string& path,
                                                const msos::Pop& pop) {
  json j = json::parse(read_file(path));
  std::vector<std::vector<int>> cliques;
  for (const auto& jc : j) {
    std::vector<int> c;
    for (const auto& name : jc) {
      std::string s = name.get<std::string>();
      int idx = -1;
      for (int v = 0; v < pop.nvars(); ++v)
        if (pop.variable_names[v] == s) idx = v;
      if (idx < 0) throw std::runtime_error("clique file names unknown variable '" + s + "'");
      c.push_back(idx);
    }
    cliques.push_back(std::move(c));
  }
  return cliques;
}

std::vector<std::vector<msos::Monomial>> parse_ts_bases_file(
    const std::string& path, const msos::Pop& pop,
    const msos::CliqueDecomposition& dec) {
  json j = json::parse(read_file(path));
  std::vector<std::vector<msos::Monomial>> bases(dec.cliques.size());
  if (static_cast<int>(j.size()) != dec.nclique())
    throw std::runtime_error("term-sparsity basis file must list one basis per clique");
  for (int l = 0; l < dec.nclique(); ++l) {
    for (const auto& entry : j[l]) {
      // each monomial given as {"var": exp, ...} or a plain name
      std::vector<std::pair<int, int>> pairs;
      if (entry.is_string()) {
        std::string s = entry.get<std::string>();
        if (s != "1") {
          int idx = -1;
          for (int v = 0; v < pop.nvars(); ++v)
            if (pop.variable_names[v] == s) idx = v;
          if (idx < 0) throw std::runtime_error("unknown variable '" + s + "' in basis file");
          pairs.emplace_back(idx, 1);
        }
      } else {
        for (auto it = entry.begin(); it != entry.end(); ++it) {
          int idx = -1;
          for (int v = 0; v < pop.nvars(); ++v)
            if (pop.variable_names[v] == it.key()) idx = v;
          if (idx < 0)
            throw std::runtime_error("unknown variable '" + it.key() + "' in basis file");
          pairs.emplace_back(idx, it.value().get<int>());
        }
      }
      bases[l].push_back(msos::Monomial::from_pairs(pairs));
    }
  }
  return bases;
}

json run_config_json(const RunOptions& opt) {
  json j;
  j["input"] = opt.input;
  j["graph"] = opt.graph;
  j["model"] = opt.model.name;
  j["N"] = opt.model.N;
  j["dt"] = opt.model.dt;
  j["mass"] = opt.model.m;
  j["k1"] = opt.model.k1;
  j["k2"] = opt.model.k2;
  j["d1"] = opt.model.d1;
  j["d2"] = opt.model.d2;
  j["u-max"] = opt.model.u_max;
  j["x-init"] = opt.model.x_init;
  j["v-init"] = opt.model.v_init;
  j["modes"] = opt.model.n_modes;
  j["link-length"] = opt.model.r;
  j["cs"] = opt.cs;
  j["ts"] = opt.ts;
  j["self-cliques"] = opt.self_cliques_file;
  j["ts-bases"] = opt.ts_bases_file;
  j["ts-order"] = opt.ts_order;
  j["partial-ts"] = opt.partial_ts;
  j["d"] = opt.d;
  j["side"] = opt.side;
  j["action"] = opt.action;
  j["out"] = opt.out_dir;
  j["feas-tol"] = opt.feas_tol;
  j["native-dump"] = opt.native_dump;
  j["max-iters"] = opt.max_iters;
  j["eps-abs"] = opt.eps_abs;
  j["eps-rel"] = opt.eps_rel;
  j["rho"] = opt.rho;
  j["no-scaling"] = opt.no_scaling;
  j["threads"] = opt.threads;
  j["verbose"] = opt.verbose;
  return j;
}

// Clique report for a plain graph JSON input: extend, enumerate, emit.
int run_graph_report(const RunOptions& opt) {
  msos::Graph g = msos::graph_from_json(read_file(opt.graph));
  fs::create_directories(opt.out_dir);
  msos::CliqueSet cliques;
  msos::Graph extended = g;
  if (opt.cs == "max") {
    extended = msos::extend_max(g);
    // components of the closure are exactly its maximal cliques
    std::vector<bool> seen(g.nvertices(), false);
    for (int v = 0; v < g.nvertices(); ++v) {
      if (seen[v]) continue;
      std::vector<int> comp{v};
      seen[v] = true;
      for (int u : extended.neighbors(v)) {
        comp.push_back(u);
        seen[u] = true;
      }
      std::sort(comp.begin(), comp.end());
      cliques.cliques.push_back(std::move(comp));
    }
  } else {
    auto [ext, order] = opt.cs == "mf" ? msos::extend_mf(g) : msos::extend_md(g);
    extended = ext;
    cliques = msos::maximal_cliques(ext, order);
  }
  json j;
  j["n"] = g.nvertices();
  j["original_edges"] = g.nedges();
  j["fill_edges"] = extended.nedges() - g.nedges();
  j["chordal"] = msos::is_chordal(extended);
  j["cliques"] = cliques.cliques;
  j["rip"] = msos::check_rip(cliques);
  write_file(fs::path(opt.out_dir) / "clique_report.json", j.dump(2) + "\n");
  std::vector<std::string> names;
  for (int v = 0; v < g.nvertices(); ++v) names.push_back("v" + std::to_string(v));
  write_file(fs::path(opt.out_dir) / "graph.dot",
             msos::graph_to_dot(extended, names, &cliques));
  std::cout << j.dump(2) << std::endl;
  return 0;
}

int run_pipeline(const RunOptions& opt) {
  using clock = std::chrono::steady_clock;
  if (!opt.graph.empty()) return run_graph_report(opt);

  if (opt.cs == "self" && opt.self_cliques_file.empty() && opt.model.name != "kinematic-chain")
    throw std::invalid_argument("--cs self requires --self-cliques <file>");
  if (opt.partial_ts && opt.ts == "non")
    throw std::invalid_argument("--partial-ts has no effect with --ts non");
  if (opt.ts == "self" && opt.ts_bases_file.empty())
    throw std::invalid_argument("--ts self requires --ts-bases <file>");

  // input
  msos::Pop pop;
  std::vector<std::vector<int>> model_cliques;
  if (!opt.input.empty()) {
    pop = msos::parse_pop(read_file(opt.input));
  } else if (!opt.model.name.empty()) {
    pop = build_model_pop(opt.model, &model_cliques);
  } else {
    throw std::invalid_argument("no input: pass --input, --model or --graph");
  }

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "run_config.json",
             run_config_json(opt).dump(2) + "\n");

  auto t_convert0 = clock::now();

  // decomposition
  msos::CsOption cs;
  cs.mode = msos::mode_from_name(opt.cs);
  if (cs.mode == msos::SparsityMode::kSelf) {
    cs.self_cliques = opt.self_cliques_file.empty()
                          ? model_cliques
                          : parse_clique_file(opt.self_cliques_file, pop);
  }
  msos::CliqueDecomposition dec = msos::decompose(pop, cs);

  int d = opt.d > 0 ? opt.d : msos::compute_dmin(pop);
  if (d < msos::compute_dmin(pop))
    throw std::invalid_argument("relaxation order d is below d_min = " +
                                std::to_string(msos::compute_dmin(pop)));

  write_file(fs::path(opt.out_dir) / "clique_report.json",
             msos::clique_report_json(dec, pop));
  write_file(fs::path(opt.out_dir) / "csp.dot", [&] {
    msos::CliqueSet overlay;
    overlay.cliques = dec.cliques;
    return msos::graph_to_dot(msos::build_csp_graph(pop), pop.variable_names, &overlay);
  }());

  // masks
  msos::TsOption ts;
  ts.mode = msos::mode_from_name(opt.ts);
  ts.sparse_order = opt.ts_order;
  ts.partial = opt.partial_ts;
  if (ts.mode == msos::SparsityMode::kSelf)
    ts.self_bases = parse_ts_bases_file(opt.ts_bases_file, pop, dec);
  msos::MaskSet masks = msos::build_masks(pop, dec, ts, d);
  if (ts.mode != msos::SparsityMode::kNon) {
    write_file(fs::path(opt.out_dir) / "masks.json", msos::masks_to_json(masks, pop));
    for (const auto& mask : masks.ineq_masks) {
      std::string stem = "tsp_l" + std::to_string(mask.clique + 1) +
                         (mask.constraint < 0
                              ? "_m"
                              : "_g" + std::to_string(mask.constraint + 1));
      write_file(fs::path(opt.out_dir) / (stem + ".dot"),
                 msos::tsp_graph_to_dot(mask, pop));
    }
  }

  msos::RelaxationProblem rp = msos::assemble_cs_ts(pop, dec, masks, d);
  double convert_seconds =
      std::chrono::duration<double>(clock::now() - t_convert0).count();

  if (opt.native_dump)
    write_file(fs::path(opt.out_dir) / "problem.json", msos::relaxation_to_json(rp));

  if (opt.action == "report") {
    std::cout << msos::clique_report_text(dec, pop);
    return 0;
  }

  if (opt.action == "export" || opt.action == "full")
    write_file(fs::path(opt.out_dir) / "problem.dat-s", msos::export_sdpa(rp));
  if (opt.action == "export") return 0;

  // solve
  msos::SolverConfig cfg;
  cfg.max_iters = opt.max_iters;
  cfg.eps_abs = opt.eps_abs;
  cfg.eps_rel = opt.eps_rel;
  cfg.rho = opt.rho;
  cfg.scaling = !opt.no_scaling;
  cfg.threads = opt.threads;
  cfg.verbose = opt.verbose;

  auto t_solve0 = clock::now();
  msos::SdpSolution moment_sol = msos::solve(rp, cfg);
  msos::SdpSolution reported = moment_sol;
  if (opt.side == "sos") {
    msos::SosProblem sos = msos::dualize(rp);
    reported = msos::solve_sos(sos, cfg);
  }
  double solve_seconds = std::chrono::duration<double>(clock::now() - t_solve0).count();

  write_file(fs::path(opt.out_dir) / "solution.json",
             msos::solution_to_json(reported, convert_seconds, solve_seconds));

  if (opt.action == "solve") {
    std::cout << "lower bound (" << opt.side << "): " << reported.objective_value
              << "  status: " << msos::status_name(reported.status)
              << "  kkt: " << reported.kkt_max << std::endl;
    return reported.status == msos::SolveStatus::kOptimal ? 0 : 3;
  }

  // full: extraction + certificate from the moment-side solution
  msos::ExtractionResult extraction = msos::extract_robust(pop, rp, moment_sol);
  msos::Certificate cert =
      msos::certify(pop, reported.objective_value, extraction, opt.feas_tol);
  write_file(fs::path(opt.out_dir) / "extraction.json",
             msos::extraction_to_json(extraction, pop, &cert));

  std::cout << "lower bound (" << opt.side << "): " << reported.objective_value
            << "\npoint objective: " << extraction.objective_at_point
            << "\nfeasibility residual: " << extraction.feasibility_residual
            << "\nkkt: " << reported.kkt_max << "\n";
  if (cert.feasible)
    std::cout << "certified eta_g: " << cert.eta_g << std::endl;
  else
    std::cout << "point not feasible at tol " << opt.feas_tol << std::endl;
  return reported.status == msos::SolveStatus::kOptimal ? 0 : 3;
}

int run_model_emit(const ModelParams& mp, const std::string& out_path,
                   const std::string& cliques_out) {
  std::vector<std::vector<int>> cliques;
  msos::Pop pop = build_model_pop(mp, &cliques);
  std::string text = msos::emit_pop(pop);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  if (!cliques_out.empty()) {
    json j = json::array();
    for (const auto& c : cliques) {
      json jc = json::array();
      for (int v : c) jc.push_back(pop.variable_names[v]);
      j.push_back(jc);
    }
    write_file(cliques_out, j.dump(2) + "\n");
  }
  return 0;
}

void add_model_options(CLI::App* app, ModelParams& mp) {
  app->add_option("--N", mp.N, "planning horizon");
  app->add_option("--dt", mp.dt, "time step");
  app->add_option("--mass", mp.m, "point mass");
  app->add_option("--k1", mp.k1, "left wall stiffness");
  app->add_option("--k2", mp.k2, "right wall stiffness");
  app->add_option("--d1", mp.d1, "left wall distance");
  app->add_option("--d2", mp.d2, "right wall distance");
  app->add_option("--u-max", mp.u_max, "control saturation");
  app->add_option("--x-init", mp.x_init, "initial position");
  app->add_option("--v-init", mp.v_init, "initial velocity");
  app->add_option("--modes", mp.n_modes, "number of contact modes");
  app->add_option("--link-length", mp.r, "link length of the chain");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse moment-SOS relaxations for polynomial optimization"};
  app.require_subcommand(1);

  // model: emit a built-in POP in the text format
  ModelParams emit_params;
  std::string emit_out, emit_cliques_out;
  CLI::App* model_cmd = app.add_subcommand("model", "emit a built-in model as POP text");
  model_cmd->add_option("name", emit_params.name,
                        "double-integrator | separable-modes | kinematic-chain")
      ->required();
  add_model_options(model_cmd, emit_params);
  model_cmd->add_option("-o,--output", emit_out, "output file (default stdout)");
  model_cmd->add_option("--cliques-out", emit_cliques_out,
                        "write the model's variable cliques as JSON");

  // run: the full pipeline
  RunOptions opt;
  if (const char* env = std::getenv("MSOS_OUT_DIR")) opt.out_dir = env;
  CLI::App* run_cmd = app.add_subcommand("run", "parse, decompose, assemble, solve");
  run_cmd->add_option("--input", opt.input, "POP text file");
  run_cmd->add_option("--graph", opt.graph, "graph JSON file: report its cliques");
  run_cmd->add_option("--model", opt.model.name, "built-in model name");
  add_model_options(run_cmd, opt.model);
  run_cmd->add_option("--cs", opt.cs, "correlative sparsity: non|max|md|mf|self")
      ->check(CLI::IsMember({"non", "max", "md", "mf", "self"}));
  run_cmd->add_option("--ts", opt.ts, "term sparsity: non|max|md|mf|self")
      ->check(CLI::IsMember({"non", "max", "md", "mf", "self"}));
  run_cmd->add_option("--self-cliques", opt.self_cliques_file,
                      "JSON list of variable-name cliques for --cs self");
  run_cmd->add_option("--ts-bases", opt.ts_bases_file,
                      "JSON per-clique monomial lists for --ts self");
  run_cmd->add_option("--ts-order", opt.ts_order, "term sparsity iteration count k");
  run_cmd->add_flag("--partial-ts", opt.partial_ts,
                    "mask PSD matrices only, keep every equality row");
  run_cmd->add_option("--d", opt.d, "relaxation order (default d_min)");
  run_cmd->add_option("--side", opt.side, "moment | sos")
      ->check(CLI::IsMember({"moment", "sos"}));
  run_cmd->add_option("--action", opt.action, "report | export | solve | full")
      ->check(CLI::IsMember({"report", "export", "solve", "full"}));
  run_cmd->add_option("--out", opt.out_dir, "artifact directory (env MSOS_OUT_DIR)");
  run_cmd->add_option("--feas-tol", opt.feas_tol, "certificate feasibility tolerance");
  run_cmd->add_flag("--native-dump", opt.native_dump, "also write problem.json");
  run_cmd->add_option("--max-iters", opt.max_iters, "solver iteration cap");
  run_cmd->add_option("--eps-abs", opt.eps_abs, "solver absolute tolerance");
  run_cmd->add_option("--eps-rel", opt.eps_rel, "solver relative tolerance");
  run_cmd->add_option("--rho", opt.rho, "initial ADMM penalty");
  run_cmd->add_flag("--no-scaling", opt.no_scaling, "disable Ruiz equilibration");
  run_cmd->add_option("--threads", opt.threads, "PSD projection worker cap");
  run_cmd->add_flag("--verbose", opt.verbose, "solver iteration log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (model_cmd->parsed())
      return run_model_emit(emit_params, emit_out, emit_cliques_out);
    return run_pipeline(opt);
  } catch (const std::invalid_argument& e) {
    std::cout << msos::error_to_json("usage", e.what());
    return 64;
  } catch (const msos::ParseError& e) {
    std::cout << msos::error_to_json("parse", e.what());
    return 65;
  } catch (const std::exception& e) {
    std::cout << msos::error_to_json("run", e.what());
    return 1;
  }
}
