#include "cubecover/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "cubecover/anticoncentration.hpp"
#include "cubecover/bang.hpp"
#include "cubecover/constructors.hpp"
#include "cubecover/json_io.hpp"
#include "cubecover/powers.hpp"

namespace cubecover::cli {

namespace {

json scale_partition_to_json(const ScalePartition& part) {
  json groups = json::array();
  for (const auto& g : part.groups) groups.push_back(g);
  json masses = json::array();
  for (const Rat& m : part.group_mass) masses.push_back(rat_to_json(m));
  return {{"groups", groups}, {"group_mass", masses}};
}

struct CommonOpts {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
};

void emit(const json& j, const CommonOpts& opts, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (opts.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opts.output, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + opts.output + "'");
  f << text;
}

}  // namespace

json essentiality_to_json(const EssentialityReport& rep) {
  json j;
  j["essential"] = rep.essential();
  j["e1"] = {{"holds", rep.e1_holds}};
  j["e1"]["witness"] = rep.e1_witness ? vertex_to_json(*rep.e1_witness) : json(nullptr);
  j["e2"] = {{"holds", rep.e2_holds}, {"missing_variables", rep.missing_variables}};
  json privates = json::array();
  for (const auto& w : rep.private_witnesses)
    privates.push_back(w ? vertex_to_json(*w) : json(nullptr));
  j["e3"] = {{"holds", rep.e3_holds}, {"private_witnesses", privates}};
  j["sparsity"] = {{"holds", rep.sparsity_ok}, {"offending_planes", rep.sparsity_offenders}};
  return j;
}

json check_report_to_json(const CheckReport& rep) {
  json items = json::array();
  for (const CheckItem& it : rep.items)
    items.push_back({{"name", it.name}, {"pass", it.pass}, {"notes", it.notes}});
  return {{"pass", rep.pass}, {"items", items}};
}

json four_way_to_json(const FourWayDecomposition& d) {
  json j;
  j["K1"] = d.k1;
  j["K2"] = d.k2;
  j["K3"] = d.k3;
  j["K4"] = d.k4;
  j["N1"] = d.n1;
  j["N2"] = d.n2;
  j["N3"] = d.n3;
  json phi = json::array();
  for (const auto& [row, value] : d.phi_sq)
    phi.push_back({{"row", row}, {"phi_sq", rat_to_json(value)}});
  j["phi_sq"] = phi;
  json scales = json::array();
  for (const auto& [row, part] : d.k4_scales) {
    json e = scale_partition_to_json(part);
    e["row"] = row;
    scales.push_back(e);
  }
  j["k4_scales"] = scales;
  json iters = json::array();
  for (const auto& it : d.iterations)
    iters.push_back({{"branch", it.branch},
                     {"removed_rows", it.removed_rows},
                     {"z_size", it.z_size},
                     {"m2_size", it.m2_size},
                     {"cols_before", it.cols_before}});
  j["iterations"] = iters;
  j["empty_k3"] = d.empty_k3;
  return j;
}

json finder_outcome_to_json(const FinderOutcome& o) {
  json j;
  switch (o.status) {
    case FinderOutcome::Status::Found: j["status"] = "found"; break;
    case FinderOutcome::Status::PhaseFailure: j["status"] = "phase_failure"; break;
    case FinderOutcome::Status::PremiseFailure: j["status"] = "premise_failure"; break;
  }
  j["vertex"] = o.vertex ? vertex_to_json(*o.vertex) : json(nullptr);
  json cert = json::array();
  for (const PlaneEvaluation& pe : o.certificate)
    cert.push_back({{"plane", pe.plane}, {"value", rat_to_json(pe.value)}});
  j["certificate"] = cert;
  j["failed_phase"] = o.failed_phase;
  j["reason"] = o.reason;
  j["used_fallback"] = o.used_fallback;
  j["notes"] = o.notes;
  return j;
}

namespace {

int run_verify(const std::string& input, std::size_t limit, const CommonOpts& opts,
               std::ostream& out) {
  Cover c = load_cover(input);
  EssentialityReport rep = check_essential(c, kDefaultEnumGuard, opts.threads);
  json j = essentiality_to_json(rep);
  j["n"] = c.n;
  j["k"] = c.k();
  if (!rep.e1_holds && limit > 1) {
    json extra = json::array();
    for (const Vertex& v : uncovered_vertices(c, limit, kDefaultEnumGuard, opts.threads))
      extra.push_back(vertex_to_json(v));
    j["uncovered"] = extra;
  }
  emit(j, opts, out);
  return rep.essential() ? 0 : 1;
}

int run_bounds(int n, const ParamSet& p, const CommonOpts& opts, std::ostream& out) {
  AsymptoticBound yy = yy_lower_bound(n, p);
  json j{{"n", n},
         {"lr_lower", lr_lower_bound(n)},
         {"yy_lower", yy.value},
         {"asymptotic_flags", {{"lr_lower", false}, {"yy_lower", yy.asymptotic}}}};
  emit(j, opts, out);
  return 0;
}

int run_oracle(int n, const CommonOpts& opts, std::ostream& out) {
  OracleResult r = minimum_essential_cover_size(n);
  json j{{"n", n},
         {"e", r.e},
         {"witness_cover", cover_to_json(r.witness)},
         {"nodes_visited", r.nodes_visited}};
  emit(j, opts, out);
  return 0;
}

int run_decompose(const std::string& input, const std::string& params_path,
                  const CommonOpts& opts, std::ostream& out) {
  Cover c = load_cover(input);
  ParamSet p = params_path.empty() ? ParamSet{} : load_params(params_path);
  p.seed = opts.seed;
  RatMat rows;
  for (const Hyperplane& h : c.planes) rows.push_back(h.normal);
  FourWayDecomposition d = decompose_four_way(rows, c.n, p);
  CheckReport rep = check_four_way(rows, c.n, d, p);
  json j = four_way_to_json(d);
  j["n"] = c.n;
  j["k"] = c.k();
  j["checker"] = check_report_to_json(rep);
  emit(j, opts, out);
  return rep.pass ? 0 : 1;
}

int run_bang(const std::string& input, const CommonOpts& opts, std::ostream& out) {
  json ij = read_json_file(input);
  BangInstance inst;
  if (!ij.contains("m") || !ij.contains("gamma") || !ij.contains("theta"))
    throw std::runtime_error("bang: instance needs 'm', 'gamma', 'theta'");
  for (const json& row : ij["m"]) {
    RatVec r;
    for (const json& e : row) r.push_back(rat_from_json(e));
    inst.m.push_back(std::move(r));
  }
  for (const json& e : ij["gamma"]) inst.gamma.push_back(rat_from_json(e));
  inst.theta = rat_from_json(ij["theta"]);
  inst.validate();

  std::vector<int> eps = solve_bang(inst);
  json j;
  j["epsilon"] = eps;
  j["ok"] = verify_bang(inst, eps);
  json margins = json::array();
  for (const Rat& m : bang_margins(inst, eps)) margins.push_back(rat_to_json(m));
  j["margins"] = margins;
  emit(j, opts, out);
  return 0;
}

int run_find_uncovered(const std::string& input, const std::string& params_path, bool fallback,
                       const CommonOpts& opts, std::ostream& out) {
  Cover c = load_cover(input);
  ParamSet p = params_path.empty() ? ParamSet{} : load_params(params_path);
  p.seed = opts.seed;
  FinderOutcome o = find_uncovered(c, p, fallback);
  emit(finder_outcome_to_json(o), opts, out);
  switch (o.status) {
    case FinderOutcome::Status::Found: return 0;
    case FinderOutcome::Status::PhaseFailure: return 3;
    case FinderOutcome::Status::PremiseFailure: return 2;
  }
  return 2;
}

int run_experiment_lo(int max_n, int max_entry, const CommonOpts& opts, std::ostream& out) {
  // full sweep over vectors with entries in {-max_entry..max_entry}\{0};
  // one spectrum pass per vector covers every achievable level
  json worst;
  double worst_ratio = -1;
  std::uint64_t checked = 0, violations = 0;
  for (int n = 1; n <= max_n; ++n) {
    const double inv_bound = std::sqrt(static_cast<double>(n));  // full support
    const double denom = std::pow(2.0, n);
    std::vector<int> entry(static_cast<std::size_t>(n), -max_entry);
    while (true) {
      RatVec v;
      for (int e : entry) v.push_back(Rat(e));
      LevelCounts spectrum = uniform_level_counts(v);
      for (std::size_t i = 0; i < spectrum.counts.size(); ++i) {
        std::uint64_t c = spectrum.counts[i];
        if (!c) continue;
        ++checked;
        // probability <= 1/sqrt(n)  <=>  c^2 * n <= 4^n, exactly
        bool holds;
        if (c < (std::uint64_t{1} << 24)) {
          holds = c * c * static_cast<std::uint64_t>(n) <= (std::uint64_t{1} << (2 * n));
        } else {
          Int lhs = Int(static_cast<unsigned long>(c));
          lhs = lhs * lhs * n;
          Int rhs;
          mpz_ui_pow_ui(rhs.get_mpz_t(), 4, static_cast<unsigned long>(n));
          holds = lhs <= rhs;
        }
        if (!holds) ++violations;
        double ratio = static_cast<double>(c) / denom * inv_bound;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          json jv = json::array();
          for (int e : entry) jv.push_back(e);
          worst = {{"v", jv},
                   {"a", rat_to_json(spectrum.level(i))},
                   {"count", c},
                   {"bound", 1.0 / inv_bound}};
        }
      }
      int pos = n - 1;
      while (pos >= 0) {
        int& e = entry[static_cast<std::size_t>(pos)];
        e = e == -1 ? 1 : e + 1;
        if (e <= max_entry) break;
        e = -max_entry;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  json j{{"max_n", max_n},       {"max_entry", max_entry}, {"checked", checked},
         {"violations", violations}, {"worst_case", worst},    {"worst_ratio", worst_ratio}};
  emit(j, opts, out);
  return violations == 0 ? 0 : 1;
}

int run_experiment_antichain(int n, const std::string& marginal, int trials,
                             const CommonOpts& opts, std::ostream& out) {
  ProductMeasure pm;
  pm.n = n;
  pm.marginals.assign(static_cast<std::size_t>(n), Rat::parse(marginal));
  AntichainMassReport rep = antichain_mass_experiment(pm, trials, opts.seed);
  json tj = json::array();
  for (const AntichainTrial& t : rep.trials) {
    json vj = json::array();
    for (const Rat& x : t.v) vj.push_back(rat_to_json(x));
    tj.push_back({{"v", vj},
                  {"level", rat_to_json(t.level)},
                  {"mass", rat_to_json(t.mass)},
                  {"mass_times_sigma", t.mass_sigma}});
  }
  json j{{"n", n},
         {"marginal", marginal},
         {"sigma_sq", rat_to_json(rep.sigma_sq)},
         {"trials", tj},
         {"max_mass_times_sigma", rep.max_mass_sigma}};
  emit(j, opts, out);
  return 0;
}

int run_experiment_scales(const std::vector<int>& s_list, const std::string& c0,
                          const std::string& delta, const std::string& b, const std::string& a,
                          int coords_per_scale, const CommonOpts& opts, std::ostream& out) {
  ScalesDecayReport rep = scales_decay_experiment(s_list, Rat::parse(c0), Rat::parse(delta),
                                                  Rat::parse(b), Rat::parse(a), coords_per_scale);
  json tj = json::array();
  for (const ScalesTrial& t : rep.trials) {
    json vj = json::array();
    for (const Rat& x : t.vector) vj.push_back(rat_to_json(x));
    tj.push_back({{"s_count", t.s_count},
                  {"vector", vj},
                  {"probability", rat_to_json(t.probability)},
                  {"probability_decimal", t.probability.to_double()}});
  }
  json j{{"c0", c0},      {"delta", delta}, {"b", b},
         {"a", a},        {"trials", tj},   {"monotone_in_s", rep.monotone}};
  emit(j, opts, out);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact tools for hyperplane covers of the hypercube"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--seed", opts.seed, "seed for every random choice");
  app.add_option("--threads", opts.threads, "worker threads for enumerations")
      ->check(CLI::Range(1, 64));
  app.add_option("--output", opts.output, "write the JSON report to a file");

  std::string input, params_path;
  std::size_t limit = 1;
  int n = 1;
  bool fallback = false;

  auto* verify = app.add_subcommand("verify", "check the essentiality conditions exhaustively");
  verify->add_option("--input", input, "cover file")->required();
  verify->add_option("--limit", limit, "uncovered vertices to list");

  auto* bounds = app.add_subcommand("bounds", "lower bounds for the minimum essential cover");
  bounds->add_option("--n", n, "dimension")->required();
  bounds->add_option("--params", params_path, "parameter file");

  auto* oracle = app.add_subcommand("oracle", "exact minimum essential cover size (tiny n)");
  oracle->add_option("--n", n, "dimension (1..4)")->required();

  auto* decompose = app.add_subcommand("decompose", "four-way matrix decomposition + checker");
  decompose->add_option("--input", input, "cover file")->required();
  decompose->add_option("--params", params_path, "parameter file");

  auto* bang = app.add_subcommand("bang", "sign vector with a guaranteed margin");
  bang->add_option("--input", input, "instance file")->required();

  auto* finder = app.add_subcommand("find-uncovered", "three-phase uncovered-vertex search");
  finder->add_option("--input", input, "cover file")->required();
  finder->add_option("--params", params_path, "parameter file");
  finder->add_flag("--fallback-exhaustive", fallback, "scan the cube if the pipeline fails");

  int max_n = 8, max_entry = 3, trials = 50, coords_per_scale = 2;
  std::string marginal = "1/2", c0 = "2", delta = "1", bfac = "2", target = "0";
  std::vector<int> s_list{1, 2, 3};

  auto* experiment = app.add_subcommand("experiment", "anti-concentration experiments");
  experiment->require_subcommand(1);
  auto* lo = experiment->add_subcommand("lo", "atom probabilities vs the sparsity bound");
  lo->add_option("--max-n", max_n, "sweep dimensions 1..max_n");
  lo->add_option("--max-entry", max_entry, "entry magnitude bound");
  auto* anti = experiment->add_subcommand("antichain", "level-set masses under a product measure");
  anti->add_option("--n", n, "dimension");
  anti->add_option("--marginal", marginal, "probability of +1 per coordinate");
  anti->add_option("--trials", trials, "number of random level sets");
  auto* scales = experiment->add_subcommand("scales", "tail decay across scale counts");
  scales->add_option("--s-list", s_list, "scale counts to compare");
  scales->add_option("--c0", c0, "decay constant");
  scales->add_option("--delta", delta, "smallest-scale magnitude");
  scales->add_option("--b", bfac, "window factor");
  scales->add_option("--a", target, "window center");
  scales->add_option("--coords-per-scale", coords_per_scale, "group width");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*verify) return run_verify(input, limit, opts, out);
    if (*bounds) {
      ParamSet p = params_path.empty() ? ParamSet{} : load_params(params_path);
      return run_bounds(n, p, opts, out);
    }
    if (*oracle) return run_oracle(n, opts, out);
    if (*decompose) return run_decompose(input, params_path, opts, out);
    if (*bang) return run_bang(input, opts, out);
    if (*finder) return run_find_uncovered(input, params_path, fallback, opts, out);
    if (*experiment) {
      if (*lo) return run_experiment_lo(max_n, max_entry, opts, out);
      if (*anti) return run_experiment_antichain(n, marginal, trials, opts, out);
      if (*scales)
        return run_experiment_scales(s_list, c0, delta, bfac, target, coords_per_scale, opts, out);
    }
  } catch (const PremiseError& e) {
    err << "premise error: " << e.what() << "\n";
    return 2;
  } catch (const SearchBudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace cubecover::cli
