#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include "cli_common.hpp"
#include "comasslab.h"
#include "reproduce.hpp"

namespace cli {

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += " ";
    out += argv[i];
  }
  return out;
}

std::string manifest_json(const std::string& command, std::uint64_t seed,
                          const std::string& config_json, int threads, double wall_s) {
  std::string out = "{\"command\": \"" + json_escape(command) + "\"";
  out += ", \"seed\": " + std::to_string(seed);
  out += ", \"config\": " + (config_json.empty() ? std::string("{}") : config_json);
  out += ", \"version\": \"" + std::string(cml_version()) + "\"";
  out += ", \"threads\": " + std::to_string(threads);
  out += ", \"wall_time_s\": " + g17(wall_s) + "}";
  return out;
}

int effective_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("COMASS_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(seed) ^ (index * 0x9e3779b97f4a7c15ULL + 1));
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read file: " << path << "\n";
    std::exit(kExitInputFormat);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cli

namespace {

using cli::g17;

// RAII wrappers for C-API handles used inside one subcommand.
struct CovPtr {
  cml_covector* p = nullptr;
  ~CovPtr() { cml_covector_free(p); }
};
struct FramePtr {
  cml_frame* p = nullptr;
  ~FramePtr() { cml_frame_free(p); }
};
struct TablePtr {
  cml_bound_table* p = nullptr;
  ~TablePtr() { cml_bound_table_free(p); }
};
struct StrPtr {
  char* p = nullptr;
  ~StrPtr() { cml_string_free(p); }
};

int exit_for(cml_status s) {
  switch (s) {
    case CML_OK:
      return cli::kExitOk;
    case CML_ERROR_PARSE:
      return cli::kExitInputFormat;
    case CML_ERROR_OVERFLOW:
    case CML_ERROR_INTERNAL:
      return cli::kExitVerifyFail;
    default:
      return cli::kExitUsage;
  }
}

// Report the failure and return the exit code for it.
int bail(cml_status s, const char* what) {
  std::cerr << "error: " << what << ": " << cml_last_error() << "\n";
  return exit_for(s);
}

CovPtr load_covector(const std::string& path, int* rc) {
  CovPtr cv;
  const std::string text = cli::slurp_file(path);
  cml_status s = cml_covector_from_json(text.c_str(), &cv.p);
  if (s != CML_OK) {
    std::cerr << "error: " << path << ": " << cml_last_error() << "\n";
    *rc = exit_for(s);
  }
  return cv;
}

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

std::string optimizer_config_json(const cml_optimizer_config& c) {
  std::string out = "{\"restarts\": " + std::to_string(c.restarts);
  out += ", \"max_iter\": " + std::to_string(c.max_iter);
  out += ", \"grad_tol\": " + g17(c.grad_tol);
  out += ", \"step_tol\": " + g17(c.step_tol);
  out += ", \"armijo_c1\": " + g17(c.armijo_c1);
  out += ", \"tie_tol\": " + g17(c.tie_tol);
  out += ", \"seed\": " + std::to_string(c.seed);
  out += ", \"threads\": " + std::to_string(c.threads) + "}";
  return out;
}

std::string number_or_null(double v) {
  if (std::isfinite(v)) return g17(v);
  return "null";
}

// ---------- comass estimate / exact ----------

int run_comass_estimate(const std::string& form_path, cml_optimizer_config cfg,
                        const std::string& command) {
  cli::Stopwatch watch;
  int rc = cli::kExitOk;
  CovPtr cv = load_covector(form_path, &rc);
  if (rc != cli::kExitOk) return rc;
  cml_estimate est{};
  FramePtr witness;
  cml_status s = cml_comass_estimate(cv.p, &cfg, &est, &witness.p);
  if (s != CML_OK) return bail(s, "comass estimate");
  int n = 0, p = 0;
  cml_frame_dims(witness.p, &n, &p);
  std::vector<double> data(static_cast<size_t>(n) * p);
  cml_frame_data(witness.p, data.data());

  std::string out = "{\"lower_bound\": " + g17(est.lower_bound);
  out += ", \"euclidean_norm\": " + g17(est.euclidean_norm);
  out += ", \"ratio\": " + number_or_null(est.ratio);
  out += ", \"restarts_used\": " + std::to_string(est.restarts_used);
  out += ", \"converged_fraction\": " + g17(est.converged_fraction);
  out += ", \"witness\": [";
  for (int j = 0; j < p; ++j) {
    if (j) out += ", ";
    out += "[";
    for (int i = 0; i < n; ++i) {
      if (i) out += ", ";
      out += g17(data[static_cast<size_t>(j) * n + i]);
    }
    out += "]";
  }
  out += "], \"manifest\": " +
         cli::manifest_json(command, cfg.seed, optimizer_config_json(cfg), cfg.threads,
                            watch.seconds()) +
         "}";
  std::cout << out << "\n";
  return cli::kExitOk;
}

int run_comass_exact(const std::string& form_path, const std::string& command) {
  cli::Stopwatch watch;
  int rc = cli::kExitOk;
  CovPtr cv = load_covector(form_path, &rc);
  if (rc != cli::kExitOk) return rc;
  double value = 0.0;
  cml_status s = cml_comass_exact(cv.p, &value);
  if (s != CML_OK) return bail(s, "comass exact");
  std::cout << "{\"comass\": " << g17(value) << ", \"manifest\": "
            << cli::manifest_json(command, 0, "{}", 1, watch.seconds()) << "}\n";
  return cli::kExitOk;
}

// ---------- bounds table / lower ----------

int run_bounds_table(int n_max, const std::string& format, const std::string& command) {
  cli::Stopwatch watch;
  TablePtr table;
  cml_status s = cml_bound_table_build(n_max, &table.p);
  if (s != CML_OK) return bail(s, "bound table");
  const std::string config = "{\"n_max\": " + std::to_string(n_max) + ", \"format\": \"" +
                             format + "\"}";
  if (format == "csv") {
    StrPtr csv;
    cml_bound_table_to_csv(table.p, &csv.p);
    std::cout << csv.p;
    std::cout << "# manifest: " << cli::manifest_json(command, 0, config, 1, watch.seconds())
              << "\n";
    return cli::kExitOk;
  }
  StrPtr json;
  cml_bound_table_to_json(table.p, &json.p);
  std::string out = json.p;
  if (!out.empty() && out.back() == '}') out.pop_back();
  out += ", \"manifest\": " + cli::manifest_json(command, 0, config, 1, watch.seconds()) + "}";
  std::cout << out << "\n";
  return cli::kExitOk;
}

int run_bounds_lower(int n, int p, int budget, std::uint64_t seed, const std::string& init_path,
                     int threads, const std::string& command) {
  cli::Stopwatch watch;
  cml_search_config cfg;
  cml_search_config_init(&cfg);
  cfg.budget = budget;
  cfg.seed = seed;
  cfg.inner.seed = seed;
  cfg.final_eval.seed = seed;
  cfg.inner.threads = threads;
  cfg.final_eval.threads = threads;
  CovPtr init;
  if (!init_path.empty()) {
    int rc = cli::kExitOk;
    init = load_covector(init_path, &rc);
    if (rc != cli::kExitOk) return rc;
  }
  double ratio = 0.0;
  CovPtr witness;
  cml_status s = cml_lower_bound_search(n, p, &cfg, init.p, &ratio, &witness.p);
  if (s != CML_OK) return bail(s, "lower bound search");
  StrPtr wjson;
  cml_covector_to_json(witness.p, &wjson.p);
  std::string config = "{\"budget\": " + std::to_string(cfg.budget);
  config += ", \"delta0\": " + g17(cfg.delta0);
  config += ", \"decay\": " + g17(cfg.decay);
  config += ", \"inner\": " + optimizer_config_json(cfg.inner);
  config += ", \"final_eval\": " + optimizer_config_json(cfg.final_eval) + "}";
  std::string out = "{\"n\": " + std::to_string(n) + ", \"p\": " + std::to_string(p);
  out += ", \"ratio\": " + g17(ratio);
  out += ", \"ratio_squared\": " + g17(ratio * ratio);
  out += ", \"witness\": " + std::string(wjson.p);
  out += ", \"manifest\": " + cli::manifest_json(command, seed, config, threads, watch.seconds()) +
         "}";
  std::cout << out << "\n";
  return cli::kExitOk;
}

// ---------- forms gen ----------

int run_forms_gen(const std::string& kind, const std::vector<double>& mu, int k, int n, int p,
                  int terms, std::uint64_t seed) {
  CovPtr cv;
  cml_status s = CML_OK;
  if (kind == "special-lag") {
    if (mu.size() != 4) {
      std::cerr << "error: --mu requires exactly four comma-separated values\n";
      return cli::kExitUsage;
    }
    double m4[4] = {mu[0], mu[1], mu[2], mu[3]};
    s = cml_form_special_lagrangian(m4, &cv.p);
  } else if (kind == "cayley") {
    s = cml_form_cayley(&cv.p);
  } else if (kind == "symplectic") {
    s = cml_form_symplectic_power(k, n, &cv.p);
  } else if (kind == "random") {
    s = cml_form_random(n, p, terms, seed, &cv.p);
  } else {
    std::cerr << "error: unknown form kind: " << kind << "\n";
    return cli::kExitUsage;
  }
  if (s != CML_OK) return bail(s, "form generation");
  StrPtr json;
  cml_covector_to_json(cv.p, &json.p);
  std::cout << json.p << "\n";
  return cli::kExitOk;
}

// ---------- verify wedge ----------

const char* status_name(cml_check_status s) {
  switch (s) {
    case CML_CHECK_PASS:
      return "PASS";
    case CML_CHECK_RETRY:
      return "RETRY";
    case CML_CHECK_FAIL:
      return "FAIL";
  }
  return "FAIL";
}

struct TrialCounts {
  int pass = 0;
  int retry = 0;
  int fail = 0;
  double worst_margin = 0.0;
  bool first = true;
  void absorb(const cml_wedge_report& rep) {
    if (rep.status == CML_CHECK_PASS) ++pass;
    if (rep.status == CML_CHECK_RETRY) ++retry;
    if (rep.status == CML_CHECK_FAIL) ++fail;
    if (first || rep.margin < worst_margin) worst_margin = rep.margin;
    first = false;
  }
};

void print_trial(int trial, const std::string& mode, const std::string& inputs,
                 const cml_wedge_report& rep) {
  std::cout << "{\"trial\": " << trial << ", \"mode\": \"" << mode << "\", \"inputs\": \""
            << cli::json_escape(inputs) << "\", \"lhs\": " << g17(rep.lhs)
            << ", \"rhs\": " << g17(rep.rhs) << ", \"constant\": " << g17(rep.constant_used)
            << ", \"margin\": " << g17(rep.margin) << ", \"status\": \""
            << status_name(rep.status) << "\"}\n";
}

std::string random_descriptor(int n, int p, int terms, std::uint64_t seed) {
  return "random(n=" + std::to_string(n) + ",p=" + std::to_string(p) +
         ",terms=" + std::to_string(terms) + ",seed=" + std::to_string(seed) + ")";
}

int run_verify_wedge(const std::string& mode, int n, int p, int q, int m, int trials, int terms,
                     std::uint64_t seed, cml_optimizer_config opt, const std::string& command) {
  cli::Stopwatch watch;
  if (trials < 1) {
    std::cerr << "error: --trials must be >= 1\n";
    return cli::kExitUsage;
  }
  TrialCounts counts;
  auto clamp_terms = [&](int nn, int pp) {
    const long long total = binom_ll(nn, pp);
    return static_cast<int>(std::min<long long>(std::max(1, terms), total));
  };

  for (int t = 0; t < trials; ++t) {
    cml_wedge_report rep{};
    std::string inputs;
    cml_status s = CML_OK;
    opt.seed = cli::mix_seed(seed, 1000003ULL * t + 17);
    if (mode == "complementary") {
      const int qq = n - p;
      if (p < 1 || qq < 1) {
        std::cerr << "error: complementary mode requires 1 <= p <= n-1\n";
        return cli::kExitUsage;
      }
      const int ta = clamp_terms(n, p), tb = clamp_terms(n, qq);
      const std::uint64_t sa = cli::mix_seed(seed, 2 * t), sb = cli::mix_seed(seed, 2 * t + 1);
      CovPtr a, b;
      if ((s = cml_form_random(n, p, ta, sa, &a.p)) != CML_OK) return bail(s, "form generation");
      if ((s = cml_form_random(n, qq, tb, sb, &b.p)) != CML_OK) return bail(s, "form generation");
      inputs = random_descriptor(n, p, ta, sa) + " ^ " + random_descriptor(n, qq, tb, sb);
      s = cml_check_complementary(a.p, b.p, &opt, &rep);
    } else if (mode == "general") {
      if (p < 1 || q < 1 || p + q > n) {
        std::cerr << "error: general mode requires p, q >= 1 with p + q <= n\n";
        return cli::kExitUsage;
      }
      const int ta = clamp_terms(n, p), tb = clamp_terms(n, q);
      const std::uint64_t sa = cli::mix_seed(seed, 2 * t), sb = cli::mix_seed(seed, 2 * t + 1);
      CovPtr a, b;
      if ((s = cml_form_random(n, p, ta, sa, &a.p)) != CML_OK) return bail(s, "form generation");
      if ((s = cml_form_random(n, q, tb, sb, &b.p)) != CML_OK) return bail(s, "form generation");
      inputs = random_descriptor(n, p, ta, sa) + " ^ " + random_descriptor(n, q, tb, sb);
      s = cml_check_general(a.p, b.p, &opt, &rep);
    } else if (mode == "mfold") {
      if (m < 2 || p < 1 || n != m * p) {
        std::cerr << "error: mfold mode requires m >= 2 and n == m*p\n";
        return cli::kExitUsage;
      }
      std::vector<CovPtr> fs(m);
      std::vector<cml_covector*> raw(m);
      const int tf = clamp_terms(n, p);
      for (int j = 0; j < m; ++j) {
        const std::uint64_t sj = cli::mix_seed(seed, static_cast<std::uint64_t>(m) * t + j);
        if ((s = cml_form_random(n, p, tf, sj, &fs[j].p)) != CML_OK)
          return bail(s, "form generation");
        raw[j] = fs[j].p;
        if (j) inputs += " ^ ";
        inputs += random_descriptor(n, p, tf, sj);
      }
      s = cml_check_m_fold(raw.data(), m, &opt, &rep);
    } else {
      std::cerr << "error: unknown mode: " << mode << "\n";
      return cli::kExitUsage;
    }
    if (s != CML_OK) return bail(s, "wedge check");
    counts.absorb(rep);
    print_trial(t, mode, inputs, rep);
  }

  std::string config = "{\"mode\": \"" + mode + "\", \"trials\": " + std::to_string(trials);
  config += ", \"terms\": " + std::to_string(terms);
  config += ", \"optimizer\": " + optimizer_config_json(opt) + "}";
  std::cout << "{\"summary\": true, \"mode\": \"" << mode << "\", \"trials\": " << trials
            << ", \"pass\": " << counts.pass << ", \"retry\": " << counts.retry
            << ", \"fail\": " << counts.fail << ", \"worst_margin\": " << g17(counts.worst_margin)
            << ", \"manifest\": "
            << cli::manifest_json(command, seed, config, opt.threads, watch.seconds()) << "}\n";
  return counts.fail == 0 ? cli::kExitOk : cli::kExitVerifyFail;
}

// ---------- systolic ----------

int run_systolic_constant(int n, int p, int b, int mfold, const std::string& command) {
  cli::Stopwatch watch;
  cml_systolic_result res{};
  StrPtr tags;
  cml_status s = cml_systolic_constant(n, p, b, mfold, &res, &tags.p);
  if (s != CML_OK) return bail(s, "systolic constant");
  std::string config = "{\"n\": " + std::to_string(n) + ", \"p\": " + std::to_string(p) +
                       ", \"b\": " + std::to_string(b) + ", \"mfold\": " + std::to_string(mfold) +
                       "}";
  std::string out = "{\"constant\": " + g17(res.constant);
  out += ", \"constant_rational\": \"" + std::to_string(res.constant_num) +
         (res.constant_den == 1 ? "" : "/" + std::to_string(res.constant_den)) + "\"";
  out += ", \"c_part\": " + g17(res.c_part);
  out += ", \"gamma_part\": " + g17(res.gamma_part);
  out += ", \"c_exact\": " + std::string(res.c_exact ? "true" : "false");
  out += ", \"source_tags\": [";
  {
    std::string joined = tags.p ? tags.p : "";
    size_t start = 0;
    bool first = true;
    while (start <= joined.size() && !joined.empty()) {
      size_t end = joined.find(';', start);
      if (end == std::string::npos) end = joined.size();
      if (!first) out += ", ";
      first = false;
      out += "\"" + cli::json_escape(joined.substr(start, end - start)) + "\"";
      if (end == joined.size()) break;
      start = end + 1;
    }
  }
  out += "], \"manifest\": " + cli::manifest_json(command, 0, config, 1, watch.seconds()) + "}";
  std::cout << out << "\n";
  return cli::kExitOk;
}

int run_systolic_cpm(int m, const std::string& command) {
  cli::Stopwatch watch;
  double v = 0.0;
  cml_status s = cml_cpm_equality_check(m, &v);
  if (s != CML_OK) return bail(s, "equality check");
  std::cout << "{\"m\": " << m << ", \"value\": " << g17(v) << ", \"manifest\": "
            << cli::manifest_json(command, 0, "{\"m\": " + std::to_string(m) + "}", 1,
                                  watch.seconds())
            << "}\n";
  return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command = cli::command_line(argc, argv);
  CLI::App app{"comasslab — numerical exterior-algebra comass laboratory"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- comass ----
  auto* comass = app.add_subcommand("comass", "Comass computation");
  comass->require_subcommand(1);
  {
    auto* est = comass->add_subcommand("estimate", "Projected-ascent comass estimate");
    auto opts = std::make_shared<cml_optimizer_config>();
    cml_optimizer_config_init(opts.get());
    auto form = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(0);
    est->add_option("--form", *form, "Covector JSON file")->required();
    est->add_option("--restarts", opts->restarts, "Random restarts");
    est->add_option("--max-iter", opts->max_iter, "Ascent iterations per restart");
    est->add_option("--tol", opts->grad_tol, "Gradient-norm convergence tolerance");
    est->add_option("--seed", opts->seed, "Base RNG seed");
    est->add_option("--threads", *threads, "Worker threads (default: COMASS_LAB_THREADS or 1)");
    est->callback([&action, opts, form, threads, command] {
      action = [=] {
        cml_optimizer_config cfg = *opts;
        cfg.threads = cli::effective_threads(*threads);
        return run_comass_estimate(*form, cfg, command);
      };
    });

    auto* exact = comass->add_subcommand("exact", "Closed-form comass (p in {0,1,2,n-1,n})");
    auto form2 = std::make_shared<std::string>();
    exact->add_option("--form", *form2, "Covector JSON file")->required();
    exact->callback([&action, form2, command] {
      action = [=] { return run_comass_exact(*form2, command); };
    });
  }

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "Constants triangle");
  bounds->require_subcommand(1);
  {
    auto* table = bounds->add_subcommand("table", "Materialize the bound table");
    auto n_max = std::make_shared<int>(12);
    auto format = std::make_shared<std::string>("csv");
    table->add_option("--n-max", *n_max, "Largest ambient dimension");
    table->add_option("--format", *format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    table->callback([&action, n_max, format, command] {
      action = [=] { return run_bounds_table(*n_max, *format, command); };
    });

    auto* lower = bounds->add_subcommand("lower", "Ratio lower-bound search");
    auto n = std::make_shared<int>(0);
    auto p = std::make_shared<int>(0);
    auto budget = std::make_shared<int>(400);
    auto seed = std::make_shared<std::uint64_t>(42);
    auto init = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(0);
    lower->add_option("--n", *n, "Ambient dimension")->required();
    lower->add_option("--p", *p, "Degree")->required();
    lower->add_option("--budget", *budget, "Inner ratio evaluations");
    lower->add_option("--seed", *seed, "Base RNG seed");
    lower->add_option("--init", *init, "Optional covector JSON seeding the climb");
    lower->add_option("--threads", *threads, "Worker threads");
    lower->callback([&action, n, p, budget, seed, init, threads, command] {
      action = [=] {
        return run_bounds_lower(*n, *p, *budget, *seed, *init,
                                cli::effective_threads(*threads), command);
      };
    });
  }

  // ---- forms ----
  auto* forms = app.add_subcommand("forms", "Calibration and random forms");
  forms->require_subcommand(1);
  {
    auto* gen = forms->add_subcommand("gen", "Emit a covector as JSON");
    auto kind = std::make_shared<std::string>();
    auto mu = std::make_shared<std::vector<double>>();
    auto k = std::make_shared<int>(1);
    auto n = std::make_shared<int>(0);
    auto p = std::make_shared<int>(0);
    auto terms = std::make_shared<int>(4);
    auto seed = std::make_shared<std::uint64_t>(42);
    gen->add_option("--kind", *kind, "special-lag | cayley | symplectic | random")
        ->required()
        ->check(CLI::IsMember({"special-lag", "cayley", "symplectic", "random"}));
    gen->add_option("--mu", *mu, "Four comma-separated reals (special-lag)")->delimiter(',');
    gen->add_option("--k", *k, "Power (symplectic)");
    gen->add_option("--n", *n, "Ambient dimension (symplectic, random)");
    gen->add_option("--p", *p, "Degree (random)");
    gen->add_option("--terms", *terms, "Term count (random)");
    gen->add_option("--seed", *seed, "RNG seed (random)");
    gen->callback([&action, kind, mu, k, n, p, terms, seed] {
      action = [=] { return run_forms_gen(*kind, *mu, *k, *n, *p, *terms, *seed); };
    });
  }

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "Property verification");
  verify->require_subcommand(1);
  {
    auto* wedge = verify->add_subcommand("wedge", "Wedge-product comass bound trials");
    auto mode = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto p = std::make_shared<int>(0);
    auto q = std::make_shared<int>(0);
    auto m = std::make_shared<int>(0);
    auto trials = std::make_shared<int>(20);
    auto terms = std::make_shared<int>(4);
    auto seed = std::make_shared<std::uint64_t>(42);
    auto restarts = std::make_shared<int>(64);
    auto threads = std::make_shared<int>(0);
    wedge->add_option("--mode", *mode, "complementary | general | mfold")
        ->required()
        ->check(CLI::IsMember({"complementary", "general", "mfold"}));
    wedge->add_option("--n", *n, "Ambient dimension")->required();
    wedge->add_option("--p", *p, "Degree of the first factor")->required();
    wedge->add_option("--q", *q, "Degree of the second factor (general mode)");
    wedge->add_option("--m", *m, "Factor count (mfold mode)");
    wedge->add_option("--trials", *trials, "Number of random trials");
    wedge->add_option("--terms", *terms, "Terms per random factor");
    wedge->add_option("--seed", *seed, "Base RNG seed");
    wedge->add_option("--restarts", *restarts, "Optimizer restarts per estimate");
    wedge->add_option("--threads", *threads, "Worker threads");
    wedge->callback([&action, mode, n, p, q, m, trials, terms, seed, restarts, threads, command] {
      action = [=] {
        cml_optimizer_config opt;
        cml_optimizer_config_init(&opt);
        opt.restarts = *restarts;
        opt.threads = cli::effective_threads(*threads);
        return run_verify_wedge(*mode, *n, *p, *q, *m, *trials, *terms, *seed, opt, command);
      };
    });
  }

  // ---- systolic ----
  auto* systolic = app.add_subcommand("systolic", "Stable systolic inequality constants");
  systolic->require_subcommand(1);
  {
    auto* constant = systolic->add_subcommand("constant", "Inequality constant");
    auto n = std::make_shared<int>(0);
    auto p = std::make_shared<int>(0);
    auto b = std::make_shared<int>(1);
    auto mfold = std::make_shared<int>(0);
    constant->add_option("--n", *n, "Manifold dimension")->required();
    constant->add_option("--p", *p, "Degree")->required();
    constant->add_option("--b", *b, "Betti number");
    constant->add_option("--mfold", *mfold, "m-fold mode with this m (0 = complementary)");
    constant->callback([&action, n, p, b, mfold, command] {
      action = [=] { return run_systolic_constant(*n, *p, *b, *mfold, command); };
    });

    auto* cpm = systolic->add_subcommand("cpm", "Equality-case ratio (must be 1)");
    auto m = std::make_shared<int>(2);
    cpm->add_option("--m", *m, "Half-dimension parameter")->required();
    cpm->callback([&action, m, command] {
      action = [=] { return run_systolic_cpm(*m, command); };
    });
  }

  // ---- reproduce ----
  {
    auto* rep = app.add_subcommand("reproduce", "Re-derive every headline number and check it");
    auto seed = std::make_shared<std::uint64_t>(42);
    auto n_max = std::make_shared<int>(12);
    auto threads = std::make_shared<int>(0);
    rep->add_option("--seed", *seed, "Base RNG seed");
    rep->add_option("--n-max", *n_max, "Bound-table size for the dominance checks");
    rep->add_option("--threads", *threads, "Worker threads");
    rep->callback([&action, seed, n_max, threads, command] {
      action = [=] {
        return run_reproduce(*seed, *n_max, cli::effective_threads(*threads), command);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }
  if (!action) {
    std::cerr << "error: no subcommand selected\n";
    return cli::kExitUsage;
  }
  return action();
}
