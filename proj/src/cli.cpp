#include "ubsea/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "ubsea/edgestats.hpp"
#include "ubsea/evaluation.hpp"
#include "ubsea/graph.hpp"
#include "ubsea/pipeline.hpp"

namespace ubsea::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kModularityConvention =
    "undirected: sum_ij (A_ij - k_i k_j / 2m) over same-community pairs; "
    "directed: sum_ij (A_ij - k_i^out k_j^in / |E|) over same-community pairs";

struct Direction {
  bool directed = false;
  bool undirected = false;

  void add_to(CLI::App* app) {
    app->add_flag("--directed", directed, "Treat edges as ordered pairs");
    app->add_flag("--undirected", undirected, "Treat edges as unordered pairs");
  }
  bool resolve() const {
    if (directed == undirected) throw UsageError("exactly one of --directed / --undirected is required");
    return directed;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json labels_json(const Partition& x) {
  json arr = json::array();
  for (auto l : x.labels()) arr.push_back(static_cast<int>(l));
  return arr;
}

Partition partition_from_json(const json& arr) {
  if (!arr.is_array()) throw InputError("report 'labels' is not an array");
  std::vector<std::uint8_t> labels;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
      throw InputError("report labels must be 0 or 1");
    labels.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }
  return Partition(std::move(labels));
}

/// Label file or a JSON detect report.
Partition read_warm_start(const std::string& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError("warm start report: " + std::string(e.what()));
    }
    if (!doc.contains("labels")) throw InputError("warm start report has no 'labels'");
    return partition_from_json(doc["labels"]);
  }
  return read_label_file(path);
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw InputError("cannot write '" + out_path + "'");
  f << text;
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

// ---- detect -------------------------------------------------------------

struct DetectArgs {
  std::string edges, method = "auto", criterion = "penalized", warm_start, out;
  Direction dir;
  double lambda = 0.12;
  int restarts = 20;
  std::uint64_t seed = 0;
};

int cmd_detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
  const bool directed = a.dir.resolve();
  DetectOptions opt;
  if (a.method != "auto") opt.method = parse_objective(a.method);
  opt.criterion = parse_criterion(a.criterion);
  opt.lambda = a.lambda;
  opt.restarts = a.restarts;
  opt.seed = a.seed;
  if (a.lambda < 0) throw UsageError("--lambda must be >= 0");
  if (a.restarts < 1) throw UsageError("--restarts must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  const auto loaded = load_edge_list_file(a.edges, directed);
  if (loaded.duplicate_edges > 0)
    err << "warning: dropped " << loaded.duplicate_edges << " duplicate edge(s)\n";
  const Graph& g = loaded.graph;
  if (!a.warm_start.empty()) {
    opt.warm_start = read_warm_start(a.warm_start);
    if (opt.warm_start->size() != static_cast<std::size_t>(g.node_count()))
      throw UsageError("--warm-start has " + std::to_string(opt.warm_start->size()) +
                       " labels but the graph has " + std::to_string(g.node_count()) + " nodes");
  }

  const auto rep = detect(g, opt);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  json doc;
  doc["graph"] = {{"directed", directed},
                  {"nodes", g.node_count()},
                  {"edges", g.edge_count()},
                  {"duplicate_edges", loaded.duplicate_edges}};
  doc["node_ids"] = loaded.node_ids;
  doc["method"] = a.method;
  doc["criterion"] = rep.selection ? json(std::string(criterion_name(opt.criterion))) : json(nullptr);
  doc["lambda"] = opt.lambda;
  doc["seed"] = opt.seed;
  doc["restarts"] = opt.restarts;

  json cands = json::array();
  for (std::size_t k = 0; k < rep.candidates.size(); ++k) {
    const auto& c = rep.candidates[k];
    json jc = {{"method", std::string(objective_name(c.kind))},
               {"statistic", c.fit.statistic(c.kind)},
               {"labels", labels_json(c.fit.labels)},
               {"group_sizes", {c.fit.labels.ones(), c.fit.labels.zeros()}},
               {"degenerate", c.fit.degenerate},
               {"flips", c.fit.iterations}};
    if (rep.selection) {
      jc["criterion_score"] = rep.selection->scores[k];
      jc["excluded"] = static_cast<bool>(rep.selection->excluded[k]);
    }
    cands.push_back(std::move(jc));
  }
  doc["candidates"] = std::move(cands);
  if (rep.selection) {
    json scores = json::object();
    for (std::size_t k = 0; k < rep.candidates.size(); ++k) {
      const auto name = std::string(objective_name(rep.candidates[k].kind));
      if (opt.criterion == Criterion::GammaTau)
        scores[rep.candidates[k].kind == Objective::ZdMax ? "n_gamma_sq" : "n_tau_sq_" + name.substr(3)] =
            rep.selection->scores[k];
      else
        scores["pen_loglik_" + name] = rep.selection->scores[k];
    }
    doc["criterion_scores"] = std::move(scores);
    doc["tie"] = rep.selection->tie;
  }
  doc["selected"] = std::string(objective_name(rep.selected));
  doc["labels"] = labels_json(rep.labels);
  doc["group_sizes"] = {rep.labels.ones(), rep.labels.zeros()};
  doc["modularity_convention"] = kModularityConvention;
  doc["runtime_ms"] = elapsed.count();

  emit(a.out, doc.dump(2) + "\n", out);
  return kOk;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
  std::string model = "sbm", theta = "const", criterion = "penalized", out;
  double p11 = 0.5, p12 = 0.3, p21 = 0.3, p22 = 0.5, lambda = 0.12;
  int m = 50, n = 50, reps = 50, restarts = 20, jobs = 0;
  std::uint64_t seed = 0;
  Direction dir;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  SimulationConfig cfg;
  cfg.directed = a.dir.resolve();
  if (a.model != "sbm" && a.model != "dcsbm") throw UsageError("--model must be sbm or dcsbm");
  cfg.dcsbm = a.model == "dcsbm";
  cfg.P = ConnectivityMatrix(a.p11, a.p12, a.p21, a.p22);
  cfg.P.validate();
  if (!cfg.directed && a.p12 != a.p21) throw UsageError("undirected graphs need --p12 == --p21");
  if (a.m < 2 || a.n < 2) throw UsageError("--m and --n must be >= 2");
  if (a.reps < 1) throw UsageError("--reps must be >= 1");
  if (a.restarts < 1) throw UsageError("--restarts must be >= 1");
  if (a.lambda < 0) throw UsageError("--lambda must be >= 0");
  cfg.theta = parse_theta_spec(a.theta);
  if (!cfg.dcsbm && cfg.theta.kind != ThetaSpec::Kind::Constant1)
    throw UsageError("--theta needs --model dcsbm");
  cfg.m = a.m;
  cfg.n = a.n;
  cfg.reps = a.reps;
  cfg.seed = a.seed;
  cfg.criterion = parse_criterion(a.criterion);
  cfg.lambda = a.lambda;
  cfg.restarts = a.restarts;
  cfg.jobs = a.jobs;

  const auto rows = run_simulation(cfg);
  std::ostringstream csv;
  csv << "rep,err_zw_max,err_zw_min,err_zd,selected,err_selected,success\n";
  double s_max = 0, s_min = 0, s_d = 0, s_sel = 0, s_ok = 0;
  for (const auto& r : rows) {
    csv << r.rep << ',' << fixed(r.err_zw_max) << ',' << fixed(r.err_zw_min) << ',' << fixed(r.err_zd)
        << ',' << objective_name(r.selected) << ',' << fixed(r.err_selected) << ','
        << (r.success ? 1 : 0) << '\n';
    s_max += r.err_zw_max;
    s_min += r.err_zw_min;
    s_d += r.err_zd;
    s_sel += r.err_selected;
    s_ok += r.success;
  }
  const double k = static_cast<double>(rows.size());
  csv << "mean," << fixed(s_max / k) << ',' << fixed(s_min / k) << ',' << fixed(s_d / k) << ",,"
      << fixed(s_sel / k) << ',' << fixed(s_ok / k) << '\n';
  emit(a.out, csv.str(), out);
  return kOk;
}

// ---- eval / moments -----------------------------------------------------

int cmd_eval(const std::string& truth_path, const std::string& est_path, std::ostream& out) {
  const auto truth = read_label_file(truth_path);
  const auto est = read_label_file(est_path);
  if (truth.size() != est.size())
    throw InputError("label files differ in length (" + std::to_string(truth.size()) + " vs " +
                     std::to_string(est.size()) + ")");
  out << misclassification_rate(truth, est) << '\n';
  return kOk;
}

int cmd_moments(const std::string& edges, const std::string& labels_path, const Direction& dir,
                std::ostream& out) {
  const bool directed = dir.resolve();
  const auto loaded = load_edge_list_file(edges, directed);
  const Graph& g = loaded.graph;
  const auto x = read_label_file(labels_path);
  if (x.size() != static_cast<std::size_t>(g.node_count()))
    throw InputError("label file has " + std::to_string(x.size()) + " labels but the graph has " +
                     std::to_string(g.node_count()) + " nodes");
  if (x.ones() < 2 || x.zeros() < 2) throw InputError("both communities need at least 2 nodes");

  const auto c = graph_constants(g);
  const auto s = compute_statistics(g, c, x);
  json doc;
  doc["graph_constants"] = {{"g_size", c.g_size}, {"q1", directed ? json(c.q1) : json(nullptr)}, {"q2", c.q2}};
  doc["group_sizes"] = {x.ones(), x.zeros()};
  doc["R1"] = s.counts.r1;
  doc["R2"] = s.counts.r2;
  doc["R_w"] = s.r_w;
  doc["R_d"] = s.r_d;
  doc["mu_w"] = s.moments.mu_w;
  doc["sigma_w"] = s.moments.sigma_w;
  doc["mu_d"] = s.moments.mu_d;
  doc["sigma_d"] = s.moments.sigma_d;
  doc["degenerate_w"] = s.moments.degenerate_w;
  doc["degenerate_d"] = s.moments.degenerate_d;
  doc["Z_w"] = s.z_w;
  doc["Z_d"] = s.z_d;
  if (g.edge_count() > 0) {
    doc["Q"] = modularity_q(g, x);
    doc["Q_d"] = q_d(g, x);
  } else {
    doc["Q"] = nullptr;
    doc["Q_d"] = nullptr;
  }
  doc["modularity_convention"] = kModularityConvention;
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

Partition read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open label file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok, extra;
    if (!(ls >> tok) || tok.front() == '#') continue;
    if (ls >> extra) throw InputError(path + ":" + std::to_string(lineno) + ": expected one label per line");
    tokens.push_back(tok);
  }
  std::vector<std::string> distinct;
  for (const auto& t : tokens)
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end()) distinct.push_back(t);
  if (distinct.size() != 2)
    throw InputError(path + ": expected exactly two distinct labels, found " + std::to_string(distinct.size()));

  const bool binary = std::all_of(distinct.begin(), distinct.end(),
                                  [](const std::string& t) { return t == "0" || t == "1"; });
  std::vector<std::uint8_t> labels;
  labels.reserve(tokens.size());
  for (const auto& t : tokens)
    labels.push_back(binary ? static_cast<std::uint8_t>(t == "1") : static_cast<std::uint8_t>(t == distinct[0]));
  return Partition(std::move(labels));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-community detection with standardized edge-count statistics", "ubsea"};
  app.require_subcommand(1);

  DetectArgs det;
  auto* detect_cmd = app.add_subcommand("detect", "Fit Z_w-max, Z_w-min, Z_d (or one method) on an edge list");
  detect_cmd->add_option("--edges", det.edges, "Edge list file")->required();
  det.dir.add_to(detect_cmd);
  detect_cmd->add_option("--method", det.method, "auto|zw-max|zw-min|zd|modularity|qd")
      ->check(CLI::IsMember({"auto", "zw-max", "zw-min", "zd", "modularity", "qd"}));
  detect_cmd->add_option("--criterion", det.criterion, "penalized|gamma-tau")
      ->check(CLI::IsMember({"penalized", "gamma-tau"}));
  detect_cmd->add_option("--lambda", det.lambda, "Penalty weight");
  detect_cmd->add_option("--restarts", det.restarts, "Random restarts per fit");
  detect_cmd->add_option("--seed", det.seed, "Base seed");
  detect_cmd->add_option("--warm-start", det.warm_start, "Label file or detect report used for restart 0");
  detect_cmd->add_option("--out", det.out, "Output file (default stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Replicate SBM/DCSBM draws and score every fit");
  sim_cmd->add_option("--model", sim.model, "sbm|dcsbm")->check(CLI::IsMember({"sbm", "dcsbm"}));
  sim_cmd->add_option("--p11", sim.p11);
  sim_cmd->add_option("--p12", sim.p12);
  sim_cmd->add_option("--p21", sim.p21);
  sim_cmd->add_option("--p22", sim.p22);
  sim_cmd->add_option("--m", sim.m, "Size of community 1");
  sim_cmd->add_option("--n", sim.n, "Size of community 2");
  sim_cmd->add_option("--theta", sim.theta, "const|pareto:SHAPE|uniform:LOW|exp:RATE");
  sim.dir.add_to(sim_cmd);
  sim_cmd->add_option("--reps", sim.reps);
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--criterion", sim.criterion)->check(CLI::IsMember({"penalized", "gamma-tau"}));
  sim_cmd->add_option("--lambda", sim.lambda);
  sim_cmd->add_option("--restarts", sim.restarts);
  sim_cmd->add_option("--jobs", sim.jobs, "Parallel replicates (0 = OpenMP default)");
  sim_cmd->add_option("--out", sim.out, "Output CSV (default stdout)");

  std::string truth, est;
  auto* eval_cmd = app.add_subcommand("eval", "Misclassification rate between two label files");
  eval_cmd->add_option("--truth", truth)->required();
  eval_cmd->add_option("--est", est)->required();

  std::string m_edges, m_labels;
  Direction m_dir;
  auto* mom_cmd = app.add_subcommand("moments", "Dump R, null moments, Z and modularity for a labeling");
  mom_cmd->add_option("--edges", m_edges)->required();
  mom_cmd->add_option("--labels", m_labels)->required();
  m_dir.add_to(mom_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (detect_cmd->parsed()) return cmd_detect(det, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
    if (eval_cmd->parsed()) return cmd_eval(truth, est, out);
    if (mom_cmd->parsed()) return cmd_moments(m_edges, m_labels, m_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFormat;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ubsea::cli
