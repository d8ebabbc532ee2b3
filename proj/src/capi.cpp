#include "comasslab.h"

#include <cstring>
#include <new>
#include <string>

#include "bounds.hpp"
#include "comass.hpp"
#include "covector.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "frame.hpp"
#include "json_io.hpp"
#include "systolic.hpp"
#include "wedge_checks.hpp"

using namespace comasslab;

/* Opaque handle definitions: thin owning wrappers over the core values. */
struct cml_covector {
  Covector value;
};
struct cml_frame {
  Frame value;
};
struct cml_bound_table {
  BoundTable value;
};

namespace {

thread_local std::string g_last_error = "no error";

cml_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
      return CML_ERROR_INVALID_ARGUMENT;
    case Errc::dimension_mismatch:
      return CML_ERROR_DIMENSION_MISMATCH;
    case Errc::degree_overflow:
      return CML_ERROR_DEGREE_OVERFLOW;
    case Errc::unsupported_degree:
      return CML_ERROR_UNSUPPORTED_DEGREE;
    case Errc::parse_error:
      return CML_ERROR_PARSE;
    case Errc::numeric_overflow:
      return CML_ERROR_OVERFLOW;
    case Errc::internal:
      return CML_ERROR_INTERNAL;
  }
  return CML_ERROR_INTERNAL;
}

cml_status fail(cml_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

/* Runs the body, translating exceptions into status codes. */
template <typename F>
cml_status guarded(F&& body) {
  try {
    body();
    return CML_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CML_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CML_ERROR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

OptimizerConfig opt_config(const cml_optimizer_config* cfg) {
  if (!cfg) return OptimizerConfig{};
  OptimizerConfig c;
  c.restarts = cfg->restarts;
  c.max_iter = cfg->max_iter;
  c.grad_tol = cfg->grad_tol;
  c.step_tol = cfg->step_tol;
  c.armijo_c1 = cfg->armijo_c1;
  c.tie_tol = cfg->tie_tol;
  c.seed = cfg->seed;
  c.threads = cfg->threads;
  return c;
}

cml_check_status check_status_of(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS:
      return CML_CHECK_PASS;
    case CheckStatus::RETRY:
      return CML_CHECK_RETRY;
    case CheckStatus::FAIL:
      return CML_CHECK_FAIL;
  }
  return CML_CHECK_FAIL;
}

void fill_report(const WedgeBoundReport& rep, cml_wedge_report* out) {
  out->lhs = rep.lhs;
  out->rhs = rep.rhs;
  out->constant_used = rep.constant_used;
  out->margin = rep.margin;
  out->status = check_status_of(rep.status);
}

// The checkers need the table up to the product degree; build on demand
// (construction is cheap and exact).
BoundTable table_for(int n_max) { return BoundTable::build(n_max < 2 ? 2 : n_max); }

}  // namespace

extern "C" {

const char* cml_version(void) { return COMASSLAB_VERSION; }

const char* cml_last_error(void) { return g_last_error.c_str(); }

void cml_string_free(char* s) { delete[] s; }

/* ---------- covectors ---------- */

cml_status cml_covector_from_json(const char* json_text, cml_covector** out) {
  if (!json_text || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_covector{covector_from_json(json_text)}; });
}

cml_status cml_covector_from_terms(int n, int p, size_t nterms, const int* indices,
                                   const double* coeffs, cml_covector** out) {
  if (!out || (nterms > 0 && (!indices || !coeffs)))
    return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Covector c(n, p);
    for (size_t t = 0; t < nterms; ++t) {
      std::vector<int> entries(indices + t * p, indices + (t + 1) * p);
      MultiIndex I(std::move(entries));
      if (c.coefficient(I) != 0.0)
        raise(Errc::invalid_argument, "duplicate multi-index " + I.to_string());
      c.set_coefficient(I, coeffs[t]);
    }
    *out = new cml_covector{std::move(c)};
  });
}

cml_status cml_covector_to_json(const cml_covector* cv, char** json_out) {
  if (!cv || !json_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *json_out = dup_string(covector_to_json(cv->value)); });
}

cml_status cml_covector_dims(const cml_covector* cv, int* n_out, int* p_out) {
  if (!cv || !n_out || !p_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  *n_out = cv->value.n();
  *p_out = cv->value.p();
  return CML_OK;
}

cml_status cml_covector_term_count(const cml_covector* cv, size_t* count_out) {
  if (!cv || !count_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  *count_out = cv->value.terms().size();
  return CML_OK;
}

int cml_covector_equal(const cml_covector* a, const cml_covector* b) {
  if (!a || !b) return 0;
  return a->value == b->value ? 1 : 0;
}

void cml_covector_free(cml_covector* cv) { delete cv; }

cml_status cml_wedge(const cml_covector* a, const cml_covector* b, cml_covector** out) {
  if (!a || !b || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_covector{wedge(a->value, b->value)}; });
}

cml_status cml_hodge_star(const cml_covector* a, cml_covector** out) {
  if (!a || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_covector{hodge_star(a->value)}; });
}

cml_status cml_euclidean_norm(const cml_covector* a, double* out) {
  if (!a || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  *out = euclidean_norm(a->value);
  return CML_OK;
}

/* ---------- frames ---------- */

cml_status cml_frame_random(int n, int p, uint64_t seed, cml_frame** out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    *out = new cml_frame{random_frame(n, p, rng)};
  });
}

cml_status cml_frame_from_data(int n, int p, const double* data, cml_frame** out) {
  if (!data || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (n < 1 || p < 1) raise(Errc::invalid_argument, "frame shape must be positive");
    Eigen::MatrixXd m(n, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = data[j * n + i];
    *out = new cml_frame{Frame(std::move(m))};
  });
}

cml_status cml_frame_dims(const cml_frame* f, int* n_out, int* p_out) {
  if (!f || !n_out || !p_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  *n_out = f->value.n();
  *p_out = f->value.p();
  return CML_OK;
}

cml_status cml_frame_data(const cml_frame* f, double* data_out) {
  if (!f || !data_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  const auto& m = f->value.columns();
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) data_out[j * m.rows() + i] = m(i, j);
  return CML_OK;
}

void cml_frame_free(cml_frame* f) { delete f; }

cml_status cml_evaluate_on_frame(const cml_covector* a, const cml_frame* f, double* out) {
  if (!a || !f || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = evaluate_on_frame(a->value, f->value); });
}

cml_status cml_evaluate_raw(const cml_covector* a, int n, int p, const double* data,
                            double* out) {
  if (!a || !data || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (n < 1 || p < 0) raise(Errc::invalid_argument, "matrix shape must be positive");
    Eigen::MatrixXd m(n, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = data[j * n + i];
    *out = evaluate_raw(a->value, m);
  });
}

cml_status cml_gradient_raw(const cml_covector* a, int n, int p, const double* data,
                            double* grad_out) {
  if (!a || !data || !grad_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (n < 1 || p < 1) raise(Errc::invalid_argument, "matrix shape must be positive");
    Eigen::MatrixXd m(n, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < n; ++i) m(i, j) = data[j * n + i];
    Eigen::MatrixXd g = gradient_raw(a->value, m);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < n; ++i) grad_out[j * n + i] = g(i, j);
  });
}

/* ---------- calibration forms ---------- */

cml_status cml_form_special_lagrangian(const double mu[4], cml_covector** out) {
  if (!mu || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SpecialLagParams params{{mu[0], mu[1], mu[2], mu[3]}};
    *out = new cml_covector{special_lagrangian_form(params)};
  });
}

int cml_dadok_harvey_check(const double mu[4]) {
  if (!mu) return 0;
  return dadok_harvey_check(SpecialLagParams{{mu[0], mu[1], mu[2], mu[3]}}) ? 1 : 0;
}

int cml_special_lagrangian_canonical(const double mu[4]) {
  if (!mu) return 0;
  return special_lagrangian_canonical(SpecialLagParams{{mu[0], mu[1], mu[2], mu[3]}}) ? 1 : 0;
}

cml_status cml_form_symplectic_power(int k, int n, cml_covector** out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_covector{symplectic_power_form(k, n)}; });
}

cml_status cml_form_cayley(cml_covector** out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_covector{cayley_form()}; });
}

cml_status cml_form_random(int n, int p, int terms, uint64_t seed, cml_covector** out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::mt19937_64 rng(seed);
    *out = new cml_covector{random_covector(n, p, terms, rng)};
  });
}

/* ---------- comass ---------- */

void cml_optimizer_config_init(cml_optimizer_config* cfg) {
  if (!cfg) return;
  OptimizerConfig d;
  cfg->restarts = d.restarts;
  cfg->max_iter = d.max_iter;
  cfg->grad_tol = d.grad_tol;
  cfg->step_tol = d.step_tol;
  cfg->armijo_c1 = d.armijo_c1;
  cfg->tie_tol = d.tie_tol;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
}

cml_status cml_comass_estimate(const cml_covector* a, const cml_optimizer_config* cfg,
                               cml_estimate* out, cml_frame** witness_out) {
  if (!a || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ComassEstimate est = comass_estimate(a->value, opt_config(cfg));
    out->lower_bound = est.lower_bound;
    out->euclidean_norm = euclidean_norm(a->value);
    out->ratio = out->euclidean_norm / est.lower_bound;
    out->restarts_used = est.restarts_used;
    out->iterations = est.iterations;
    out->converged_fraction = est.converged_fraction();
    if (witness_out) *witness_out = new cml_frame{est.witness};
  });
}

cml_status cml_comass_exact(const cml_covector* a, double* out) {
  if (!a || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = comass_exact(a->value); });
}

cml_status cml_ratio_estimate(const cml_covector* a, const cml_optimizer_config* cfg,
                              double* out) {
  if (!a || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = ratio_estimate(a->value, opt_config(cfg)); });
}

/* ---------- bound table ---------- */

cml_status cml_bound_table_build(int n_max, cml_bound_table** out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cml_bound_table{BoundTable::build(n_max)}; });
}

cml_status cml_bound_table_n_max(const cml_bound_table* t, int* out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  *out = t->value.n_max();
  return CML_OK;
}

cml_status cml_bound_table_upper(const cml_bound_table* t, int n, int p, double* out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = t->value.upper(n, p).to_double(); });
}

cml_status cml_bound_table_upper_rational(const cml_bound_table* t, int n, int p,
                                          int64_t* num_out, int64_t* den_out) {
  if (!t || !num_out || !den_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Rational r = t->value.upper(n, p);
    *num_out = r.num();
    *den_out = r.den();
  });
}

cml_status cml_bound_table_exact_rational(const cml_bound_table* t, int n, int p,
                                          int* has_exact_out, int64_t* num_out,
                                          int64_t* den_out) {
  if (!t || !has_exact_out || !num_out || !den_out)
    return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto ex = t->value.exact(n, p);
    *has_exact_out = ex ? 1 : 0;
    if (ex) {
      *num_out = ex->num();
      *den_out = ex->den();
    }
  });
}

cml_status cml_bound_table_provenance(const cml_bound_table* t, int n, int p, char** out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const BoundCell& c = t->value.cell(n, p);
    std::string joined;
    for (size_t i = 0; i < c.provenance.size(); ++i) {
      if (i) joined += "+";
      joined += c.provenance[i];
    }
    *out = dup_string(joined);
  });
}

cml_status cml_bound_table_to_csv(const cml_bound_table* t, char** out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(t->value.to_csv()); });
}

cml_status cml_bound_table_to_json(const cml_bound_table* t, char** out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(t->value.to_json()); });
}

cml_status cml_bound_table_is_fixed_point(const cml_bound_table* t, int* out) {
  if (!t || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    comasslab::BoundTable copy = t->value;
    *out = copy.apply_rules_pass() ? 0 : 1;
  });
}

void cml_bound_table_free(cml_bound_table* t) { delete t; }

void cml_search_config_init(cml_search_config* cfg) {
  if (!cfg) return;
  SearchConfig d;
  cfg->budget = d.budget;
  cfg->delta0 = d.delta0;
  cfg->decay = d.decay;
  cfg->seed = d.seed;
  cml_optimizer_config_init(&cfg->inner);
  cfg->inner.restarts = d.inner.restarts;
  cfg->inner.max_iter = d.inner.max_iter;
  cml_optimizer_config_init(&cfg->final_eval);
  cfg->final_eval.restarts = d.final_eval.restarts;
  cfg->final_eval.max_iter = d.final_eval.max_iter;
}

cml_status cml_lower_bound_search(int n, int p, const cml_search_config* cfg,
                                  const cml_covector* init, double* ratio_out,
                                  cml_covector** witness_out) {
  if (!ratio_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SearchConfig c;
    if (cfg) {
      c.budget = cfg->budget;
      c.delta0 = cfg->delta0;
      c.decay = cfg->decay;
      c.seed = cfg->seed;
      c.inner = opt_config(&cfg->inner);
      c.final_eval = opt_config(&cfg->final_eval);
    }
    std::optional<Covector> seed_form;
    if (init) seed_form = init->value;
    SearchResult res = lower_bound_search(n, p, c, seed_form);
    *ratio_out = res.ratio;
    if (witness_out) *witness_out = new cml_covector{std::move(res.witness)};
  });
}

/* ---------- wedge-product bound checks ---------- */

cml_status cml_check_complementary(const cml_covector* a, const cml_covector* b,
                                   const cml_optimizer_config* cfg, cml_wedge_report* out) {
  if (!a || !b || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    CheckConfig cc;
    cc.optimizer = opt_config(cfg);
    BoundTable table = table_for(a->value.n());
    fill_report(check_complementary(a->value, b->value, table, cc), out);
  });
}

cml_status cml_check_general(const cml_covector* a, const cml_covector* b,
                             const cml_optimizer_config* cfg, cml_wedge_report* out) {
  if (!a || !b || !out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    CheckConfig cc;
    cc.optimizer = opt_config(cfg);
    BoundTable table = table_for(a->value.p() + b->value.p());
    fill_report(check_general(a->value, b->value, table, cc), out);
  });
}

cml_status cml_check_m_fold(const cml_covector* const* forms, size_t m,
                            const cml_optimizer_config* cfg, cml_wedge_report* out) {
  if (!forms || !out || m == 0) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<Covector> fs;
    fs.reserve(m);
    for (size_t i = 0; i < m; ++i) {
      if (!forms[i]) raise(Errc::invalid_argument, "null factor handle");
      fs.push_back(forms[i]->value);
    }
    CheckConfig cc;
    cc.optimizer = opt_config(cfg);
    BoundTable table = table_for(fs[0].n());
    fill_report(check_m_fold(fs, table, cc), out);
  });
}

/* ---------- systolic constants ---------- */

cml_status cml_gamma_bound(int b, double* value_out, cml_gamma_source* source_out) {
  if (!value_out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    GammaBound g = gamma_bound(b);
    *value_out = g.value.to_double();
    if (source_out)
      *source_out = g.source == "EXACT_B1" ? CML_GAMMA_EXACT_B1 : CML_GAMMA_HERMITE_LINEAR;
  });
}

cml_status cml_systolic_constant(int n, int p, int b, int mfold, cml_systolic_result* out,
                                 char** source_tags_out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SystolicQuery q;
    q.n = n;
    q.p = p;
    q.b = b;
    if (mfold == 0) {
      q.mode = SystolicMode::Complementary;
    } else if (mfold >= 2) {
      q.mode = SystolicMode::MFold;
      q.m = mfold;
    } else {
      raise(Errc::invalid_argument, "mfold must be 0 (complementary) or >= 2");
    }
    BoundTable table = table_for(n);
    SystolicResult res = systolic_constant(q, table);
    out->constant = res.constant.to_double();
    out->c_part = res.c_part.to_double();
    out->gamma_part = res.gamma_part.to_double();
    out->constant_num = res.constant.num();
    out->constant_den = res.constant.den();
    out->c_exact = res.c_exact ? 1 : 0;
    out->gamma_source = b == 1 ? CML_GAMMA_EXACT_B1 : CML_GAMMA_HERMITE_LINEAR;
    if (source_tags_out) {
      std::string joined;
      for (size_t i = 0; i < res.source_tags.size(); ++i) {
        if (i) joined += ";";
        joined += res.source_tags[i];
      }
      *source_tags_out = dup_string(joined);
    }
  });
}

cml_status cml_cpm_equality_check(int m, double* out) {
  if (!out) return fail(CML_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = cpm_equality_check(m); });
}

}  // extern "C"
