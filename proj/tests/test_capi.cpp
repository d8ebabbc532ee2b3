#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <comasslab.h>

namespace {

// Owning wrapper so test failures cannot leak C handles.
struct Cov {
  cml_covector* h = nullptr;
  ~Cov() { cml_covector_free(h); }
};
struct Frame {
  cml_frame* h = nullptr;
  ~Frame() { cml_frame_free(h); }
};
struct Table {
  cml_bound_table* h = nullptr;
  ~Table() { cml_bound_table_free(h); }
};
struct Str {
  char* s = nullptr;
  ~Str() { cml_string_free(s); }
};

cml_covector* must_parse(const char* text) {
  cml_covector* out = nullptr;
  REQUIRE(cml_covector_from_json(text, &out) == CML_OK);
  return out;
}

cml_optimizer_config cheap_config() {
  cml_optimizer_config cfg;
  cml_optimizer_config_init(&cfg);
  cfg.restarts = 8;
  cfg.max_iter = 200;
  return cfg;
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  REQUIRE(cml_version() != nullptr);
  CHECK(std::strlen(cml_version()) > 0);
  REQUIRE(cml_last_error() != nullptr);
  cml_string_free(nullptr);  // must be a no-op
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(cml_covector_from_json(nullptr, nullptr) == CML_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(cml_last_error()) > 0);
  cml_covector* out = nullptr;
  CHECK(cml_covector_from_json(nullptr, &out) == CML_ERROR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  double v = 0.0;
  CHECK(cml_euclidean_norm(nullptr, &v) == CML_ERROR_INVALID_ARGUMENT);
  CHECK(cml_comass_exact(nullptr, &v) == CML_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("json parse failures carry diagnostics") {
  cml_covector* out = nullptr;
  CHECK(cml_covector_from_json("not json", &out) == CML_ERROR_PARSE);
  CHECK(std::string(cml_last_error()).find("JSON") != std::string::npos);
  CHECK(cml_covector_from_json(R"({"n":4,"p":2,"terms":[{"index":[2,1],"coeff":1}]})", &out) ==
        CML_ERROR_PARSE);
  CHECK(std::string(cml_last_error()).find("term 0") != std::string::npos);
}

TEST_CASE("covector round trip through json") {
  Cov a;
  a.h = must_parse(R"({"n":4,"p":2,"terms":[
      {"index":[3,4],"coeff":-2.5},
      {"index":[1,2],"coeff":1.0}]})");
  int n = 0, p = 0;
  REQUIRE(cml_covector_dims(a.h, &n, &p) == CML_OK);
  CHECK(n == 4);
  CHECK(p == 2);
  size_t terms = 0;
  REQUIRE(cml_covector_term_count(a.h, &terms) == CML_OK);
  CHECK(terms == 2);
  Str text;
  REQUIRE(cml_covector_to_json(a.h, &text.s) == CML_OK);
  // Canonical order: [1,2] before [3,4].
  const std::string s(text.s);
  CHECK(s.find("[1,2]") < s.find("[3,4]"));
  Cov b;
  b.h = must_parse(text.s);
  CHECK(cml_covector_equal(a.h, b.h) == 1);
  CHECK(cml_covector_equal(a.h, nullptr) == 0);
}

TEST_CASE("term-major construction matches json construction") {
  const int idx[] = {1, 2, 3, 4};
  const double coeffs[] = {1.0, -2.5};
  Cov a;
  REQUIRE(cml_covector_from_terms(4, 2, 2, idx, coeffs, &a.h) == CML_OK);
  Cov b;
  b.h = must_parse(R"({"n":4,"p":2,"terms":[
      {"index":[1,2],"coeff":1.0},{"index":[3,4],"coeff":-2.5}]})");
  CHECK(cml_covector_equal(a.h, b.h) == 1);
  // Duplicate multi-index in the input is rejected.
  const int dup[] = {1, 2, 1, 2};
  cml_covector* bad = nullptr;
  CHECK(cml_covector_from_terms(4, 2, 2, dup, coeffs, &bad) == CML_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("wedge, dual, and norm through the C surface") {
  Cov e12;
  e12.h = must_parse(R"({"n":4,"p":2,"terms":[{"index":[1,2],"coeff":1}]})");
  Cov e34;
  e34.h = must_parse(R"({"n":4,"p":2,"terms":[{"index":[3,4],"coeff":1}]})");
  Cov w;
  REQUIRE(cml_wedge(e12.h, e34.h, &w.h) == CML_OK);
  int n = 0, p = 0;
  REQUIRE(cml_covector_dims(w.h, &n, &p) == CML_OK);
  CHECK(p == 4);
  double norm = 0.0;
  REQUIRE(cml_euclidean_norm(w.h, &norm) == CML_OK);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-15));
  Cov dual;
  REQUIRE(cml_hodge_star(e12.h, &dual.h) == CML_OK);
  CHECK(cml_covector_equal(dual.h, e34.h) == 1);
  // Degree overflow surfaces as its own status.
  Cov top;
  REQUIRE(cml_wedge(e12.h, w.h, &top.h) == CML_ERROR_DEGREE_OVERFLOW);
}

TEST_CASE("frames: random, explicit data, and gram validation") {
  Frame f;
  REQUIRE(cml_frame_random(5, 2, 7, &f.h) == CML_OK);
  int n = 0, p = 0;
  REQUIRE(cml_frame_dims(f.h, &n, &p) == CML_OK);
  CHECK(n == 5);
  CHECK(p == 2);
  std::vector<double> data(static_cast<size_t>(n) * p);
  REQUIRE(cml_frame_data(f.h, data.data()) == CML_OK);
  // Columns are orthonormal.
  double dot = 0.0, n0 = 0.0, n1 = 0.0;
  for (int i = 0; i < n; ++i) {
    dot += data[i] * data[i + n];
    n0 += data[i] * data[i];
    n1 += data[i + n] * data[i + n];
  }
  CHECK(std::abs(dot) <= 1e-12);
  CHECK(n0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n1 == doctest::Approx(1.0).epsilon(1e-12));
  // The same data round-trips through cml_frame_from_data.
  Frame g;
  REQUIRE(cml_frame_from_data(n, p, data.data(), &g.h) == CML_OK);
  // Same seed, same frame.
  Frame f2;
  REQUIRE(cml_frame_random(5, 2, 7, &f2.h) == CML_OK);
  std::vector<double> data2(data.size());
  REQUIRE(cml_frame_data(f2.h, data2.data()) == CML_OK);
  CHECK(std::memcmp(data.data(), data2.data(), data.size() * sizeof(double)) == 0);
  // A non-orthonormal matrix is rejected.
  const double skew[] = {1, 0, 0, 0, 0, /* col 2 */ 1, 1, 0, 0, 0};
  cml_frame* bad = nullptr;
  CHECK(cml_frame_from_data(5, 2, skew, &bad) == CML_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("evaluation and gradient agree with finite differences") {
  Cov a;
  a.h = must_parse(R"({"n":4,"p":2,"terms":[
      {"index":[1,2],"coeff":1.0},{"index":[2,4],"coeff":-0.5}]})");
  const int n = 4, p = 2;
  std::vector<double> m = {0.3, -0.1, 0.8, 0.4, /* col 2 */ 0.2, 0.9, -0.3, 0.1};
  double base = 0.0;
  REQUIRE(cml_evaluate_raw(a.h, n, p, m.data(), &base) == CML_OK);
  std::vector<double> grad(m.size());
  REQUIRE(cml_gradient_raw(a.h, n, p, m.data(), grad.data()) == CML_OK);
  const double h = 1e-6;
  for (size_t i = 0; i < m.size(); ++i) {
    std::vector<double> mp = m, mm = m;
    mp[i] += h;
    mm[i] -= h;
    double fp = 0.0, fm = 0.0;
    REQUIRE(cml_evaluate_raw(a.h, n, p, mp.data(), &fp) == CML_OK);
    REQUIRE(cml_evaluate_raw(a.h, n, p, mm.data(), &fm) == CML_OK);
    CHECK(grad[i] == doctest::Approx((fp - fm) / (2 * h)).epsilon(1e-5));
  }
  // The identity frame evaluates e12 + ... at its (1,2) coefficient.
  const double id[] = {1, 0, 0, 0, /* col 2 */ 0, 1, 0, 0};
  Frame f;
  REQUIRE(cml_frame_from_data(n, p, id, &f.h) == CML_OK);
  double val = 0.0;
  REQUIRE(cml_evaluate_on_frame(a.h, f.h, &val) == CML_OK);
  CHECK(val == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("calibration form constructors") {
  const double mu[4] = {1.0, 1.0, -1.0, 0.0};
  Cov phi;
  REQUIRE(cml_form_special_lagrangian(mu, &phi.h) == CML_OK);
  int n = 0, p = 0;
  REQUIRE(cml_covector_dims(phi.h, &n, &p) == CML_OK);
  CHECK(n == 6);
  CHECK(p == 3);
  double norm = 0.0;
  REQUIRE(cml_euclidean_norm(phi.h, &norm) == CML_OK);
  CHECK(norm == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cml_dadok_harvey_check(mu) == 1);
  const double bad_mu[4] = {1.0, 1.0, 1.0, 0.0};
  CHECK(cml_dadok_harvey_check(bad_mu) == 0);
  CHECK(cml_special_lagrangian_canonical(mu) == 1);
  const double out_of_order[4] = {0.2, 0.8, 0.1, 0.0};
  CHECK(cml_special_lagrangian_canonical(out_of_order) == 0);

  Cov omega2;
  REQUIRE(cml_form_symplectic_power(2, 4, &omega2.h) == CML_OK);
  double c = 0.0;
  REQUIRE(cml_comass_exact(omega2.h, &c) == CML_OK);
  CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(cml_euclidean_norm(omega2.h, &norm) == CML_OK);
  CHECK(norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  Cov cayley;
  REQUIRE(cml_form_cayley(&cayley.h) == CML_OK);
  REQUIRE(cml_covector_dims(cayley.h, &n, &p) == CML_OK);
  CHECK(n == 8);
  CHECK(p == 4);
  size_t terms = 0;
  REQUIRE(cml_covector_term_count(cayley.h, &terms) == CML_OK);
  CHECK(terms == 14);
  Cov dual;
  REQUIRE(cml_hodge_star(cayley.h, &dual.h) == CML_OK);
  CHECK(cml_covector_equal(dual.h, cayley.h) == 1);

  Cov rnd;
  REQUIRE(cml_form_random(6, 3, 5, 99, &rnd.h) == CML_OK);
  REQUIRE(cml_covector_term_count(rnd.h, &terms) == CML_OK);
  CHECK(terms == 5);
  Cov rnd2;
  REQUIRE(cml_form_random(6, 3, 5, 99, &rnd2.h) == CML_OK);
  CHECK(cml_covector_equal(rnd.h, rnd2.h) == 1);
}

TEST_CASE("comass estimation certifies its lower bound") {
  cml_optimizer_config defaults;
  cml_optimizer_config_init(&defaults);
  CHECK(defaults.restarts == 64);
  CHECK(defaults.max_iter == 500);
  CHECK(defaults.seed == 42);
  CHECK(defaults.threads == 1);

  Cov a;
  a.h = must_parse(R"({"n":4,"p":2,"terms":[
      {"index":[1,2],"coeff":1.0},{"index":[3,4],"coeff":1.0}]})");
  cml_optimizer_config cfg = cheap_config();
  cml_estimate est;
  Frame w;
  REQUIRE(cml_comass_estimate(a.h, &cfg, &est, &w.h) == CML_OK);
  CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(est.euclidean_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(est.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
  CHECK(est.restarts_used == 8);
  CHECK(est.converged_fraction > 0.0);
  // The witness certifies: evaluating on it reproduces the bound bit for bit.
  double val = 0.0;
  REQUIRE(cml_evaluate_on_frame(a.h, w.h, &val) == CML_OK);
  CHECK(val == est.lower_bound);
  // NULL config runs the defaults; NULL witness pointer is allowed.
  cml_estimate est2;
  REQUIRE(cml_comass_estimate(a.h, nullptr, &est2, nullptr) == CML_OK);
  CHECK(est2.lower_bound == doctest::Approx(1.0).epsilon(1e-9));

  double exact = 0.0;
  REQUIRE(cml_comass_exact(a.h, &exact) == CML_OK);
  CHECK(exact == doctest::Approx(1.0).epsilon(1e-12));
  double ratio = 0.0;
  REQUIRE(cml_ratio_estimate(a.h, &cfg, &ratio) == CML_OK);
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("closed-form comass rejects unsupported degrees") {
  Cov a;
  a.h = must_parse(R"({"n":7,"p":3,"terms":[{"index":[1,2,3],"coeff":1}]})");
  double v = 0.0;
  CHECK(cml_comass_exact(a.h, &v) == CML_ERROR_UNSUPPORTED_DEGREE);
  CHECK(std::strlen(cml_last_error()) > 0);
}

TEST_CASE("bound table through the C surface") {
  Table t;
  REQUIRE(cml_bound_table_build(8, &t.h) == CML_OK);
  int n_max = 0;
  REQUIRE(cml_bound_table_n_max(t.h, &n_max) == CML_OK);
  CHECK(n_max == 8);
  double u = 0.0;
  REQUIRE(cml_bound_table_upper(t.h, 6, 3, &u) == CML_OK);
  CHECK(u == 4.0);
  int64_t num = 0, den = 0;
  REQUIRE(cml_bound_table_upper_rational(t.h, 8, 3, &num, &den) == CML_OK);
  CHECK(num == 28);
  CHECK(den == 3);
  int has = 0;
  REQUIRE(cml_bound_table_exact_rational(t.h, 8, 4, &has, &num, &den) == CML_OK);
  CHECK(has == 1);
  CHECK(num == 14);
  CHECK(den == 1);
  REQUIRE(cml_bound_table_exact_rational(t.h, 8, 3, &has, &num, &den) == CML_OK);
  CHECK(has == 0);
  Str prov;
  REQUIRE(cml_bound_table_provenance(t.h, 8, 3, &prov.s) == CML_OK);
  CHECK(std::string(prov.s) == "KRULE(1)");
  Str csv;
  REQUIRE(cml_bound_table_to_csv(t.h, &csv.s) == CML_OK);
  CHECK(std::string(csv.s).find("exact:14") != std::string::npos);
  Str json;
  REQUIRE(cml_bound_table_to_json(t.h, &json.s) == CML_OK);
  CHECK(std::string(json.s).find("\"n_max\": 8") != std::string::npos);
  int fixed = 0;
  REQUIRE(cml_bound_table_is_fixed_point(t.h, &fixed) == CML_OK);
  CHECK(fixed == 1);
  cml_bound_table* bad = nullptr;
  CHECK(cml_bound_table_build(1, &bad) == CML_ERROR_INVALID_ARGUMENT);
  CHECK(cml_bound_table_upper(t.h, 9, 2, &u) == CML_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("ratio search through the C surface") {
  cml_search_config cfg;
  cml_search_config_init(&cfg);
  CHECK(cfg.budget == 400);
  CHECK(cfg.seed == 42);
  cfg.budget = 150;
  cfg.seed = 9;
  double ratio = 0.0;
  Cov witness;
  REQUIRE(cml_lower_bound_search(4, 2, &cfg, nullptr, &ratio, &witness.h) == CML_OK);
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
  int n = 0, p = 0;
  REQUIRE(cml_covector_dims(witness.h, &n, &p) == CML_OK);
  CHECK(n == 4);
  CHECK(p == 2);
  // Seeding with that witness reproduces at least the same ratio.
  cfg.budget = 10;
  double again = 0.0;
  REQUIRE(cml_lower_bound_search(4, 2, &cfg, witness.h, &again, nullptr) == CML_OK);
  CHECK(again >= ratio - 1e-6);
  CHECK(cml_lower_bound_search(4, 0, &cfg, nullptr, &ratio, nullptr) ==
        CML_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("wedge checks through the C surface") {
  Cov a;
  a.h = must_parse(R"({"n":4,"p":2,"terms":[{"index":[1,2],"coeff":1}]})");
  Cov b;
  b.h = must_parse(R"({"n":4,"p":2,"terms":[{"index":[3,4],"coeff":1}]})");
  cml_optimizer_config cfg = cheap_config();
  cml_wedge_report rep;
  REQUIRE(cml_check_complementary(a.h, b.h, &cfg, &rep) == CML_OK);
  CHECK(rep.status == CML_CHECK_PASS);
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.constant_used == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.margin == doctest::Approx(rep.rhs - rep.lhs).epsilon(1e-12));

  Cov e1;
  e1.h = must_parse(R"({"n":3,"p":1,"terms":[{"index":[1],"coeff":1}]})");
  Cov e2;
  e2.h = must_parse(R"({"n":3,"p":1,"terms":[{"index":[2],"coeff":1}]})");
  REQUIRE(cml_check_general(e1.h, e2.h, &cfg, &rep) == CML_OK);
  CHECK(rep.status == CML_CHECK_PASS);

  Cov c3;
  c3.h = must_parse(R"({"n":6,"p":2,"terms":[{"index":[1,2],"coeff":1}]})");
  Cov c4;
  c4.h = must_parse(R"({"n":6,"p":2,"terms":[{"index":[3,4],"coeff":1}]})");
  Cov c5;
  c5.h = must_parse(R"({"n":6,"p":2,"terms":[{"index":[5,6],"coeff":1}]})");
  const cml_covector* forms[] = {c3.h, c4.h, c5.h};
  REQUIRE(cml_check_m_fold(forms, 3, &cfg, &rep) == CML_OK);
  CHECK(rep.status == CML_CHECK_PASS);
  CHECK(rep.constant_used == doctest::Approx(6.0).epsilon(1e-12));
  // Mismatched complementary degrees surface as a dimension error.
  CHECK(cml_check_complementary(a.h, c3.h, &cfg, &rep) == CML_ERROR_DIMENSION_MISMATCH);
}

TEST_CASE("systolic constants through the C surface") {
  double gv = 0.0;
  cml_gamma_source src;
  REQUIRE(cml_gamma_bound(1, &gv, &src) == CML_OK);
  CHECK(gv == 1.0);
  CHECK(src == CML_GAMMA_EXACT_B1);
  REQUIRE(cml_gamma_bound(2, &gv, &src) == CML_OK);
  CHECK(gv == 3.0);
  CHECK(src == CML_GAMMA_HERMITE_LINEAR);
  CHECK(cml_gamma_bound(0, &gv, &src) == CML_ERROR_INVALID_ARGUMENT);

  cml_systolic_result res;
  Str tags;
  REQUIRE(cml_systolic_constant(6, 3, 1, 0, &res, &tags.s) == CML_OK);
  CHECK(res.constant == 4.0);
  CHECK(res.constant_num == 4);
  CHECK(res.constant_den == 1);
  CHECK(res.c_exact == 1);
  CHECK(res.gamma_source == CML_GAMMA_EXACT_B1);
  CHECK(std::string(tags.s) == "C2(6,3):EXACT;GAMMA(b=1):EXACT_B1");

  REQUIRE(cml_systolic_constant(6, 2, 1, 3, &res, nullptr) == CML_OK);
  CHECK(res.constant == 6.0);
  CHECK(res.constant_num == 6);
  CHECK(res.c_exact == 1);

  CHECK(cml_systolic_constant(6, 0, 1, 0, &res, nullptr) == CML_ERROR_INVALID_ARGUMENT);

  double one = 0.0;
  REQUIRE(cml_cpm_equality_check(4, &one) == CML_OK);
  CHECK(one == 1.0);
  CHECK(cml_cpm_equality_check(1, &one) == CML_ERROR_INVALID_ARGUMENT);
}
