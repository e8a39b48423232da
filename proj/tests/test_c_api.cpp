#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "virial/virial.h"

TEST_CASE("status strings and last error") {
  CHECK(std::string(virial_status_string(VIRIAL_OK)) == "ok");
  virial_potential* p = nullptr;
  CHECK(virial_potential_monomial(2, -1.0, &p) == VIRIAL_NOT_CONVEX);
  CHECK(p == nullptr);
  CHECK(std::string(virial_last_error()).find("NotConvex") != std::string::npos);
  CHECK(virial_potential_quartic_anharmonic(0.0, 0.0, &p) == VIRIAL_DEGENERATE_POTENTIAL);
  const double odd[] = {0.2, 1.0};
  CHECK(virial_potential_polynomial(odd, 2, &p) == VIRIAL_NOT_SYMMETRIC);
  CHECK(virial_potential_monomial(2, 1.0, nullptr) == VIRIAL_INVALID_ARGUMENT);
}

TEST_CASE("potential handles") {
  virial_potential* p = nullptr;
  REQUIRE(virial_potential_parse("kind=monomial\nkappa=2\nlambda=1\n", &p) == VIRIAL_OK);
  double u = 0, du = 0, d2u = 0;
  CHECK(virial_potential_evaluate(p, 1.0, &u, &du, &d2u) == VIRIAL_OK);
  CHECK(u == 1.0);
  CHECK(du == 4.0);
  CHECK(d2u == 12.0);
  virial_potential* q = nullptr;
  REQUIRE(virial_potential_translate(p, 0.5, &q) == VIRIAL_OK);
  CHECK(virial_potential_xi(q) == 0.5);
  virial_potential* r = nullptr;
  CHECK(virial_potential_translate(q, 0.5, &r) == VIRIAL_ALREADY_SHIFTED);
  char* text = nullptr;
  REQUIRE(virial_potential_describe(q, &text) == VIRIAL_OK);
  CHECK(std::string(text).find("xi=0.5") != std::string::npos);
  virial_string_free(text);
  virial_potential_free(q);
  virial_potential_free(p);
  CHECK(virial_potential_parse("kappa = two", &p) == VIRIAL_PARSE_ERROR);
  const double even[] = {0.5, 1.0};
  REQUIRE(virial_potential_even_polynomial(even, 2, &p) == VIRIAL_OK);
  virial_potential_free(p);
}

TEST_CASE("weight, basis and energies") {
  virial_potential* p = nullptr;
  REQUIRE(virial_potential_monomial(2, 1.0, &p) == VIRIAL_OK);
  virial_weight* w = nullptr;
  REQUIRE(virial_weight_build(p, nullptr, &w) == VIRIAL_OK);
  CHECK(virial_weight_get_mode(w) == VIRIAL_WEIGHT_CLOSED_FORM_MONOMIAL);
  double mu4 = 0;
  REQUIRE(virial_weight_moment(w, 4, &mu4) == VIRIAL_OK);
  CHECK(3 * mu4 == doctest::Approx(0.68887235).epsilon(1e-8));
  double g = 0, dg = 0, sigma = 0;
  REQUIRE(virial_weight_eval(w, 1.0, &g, &dg, &sigma) == VIRIAL_OK);
  CHECK(dg * dg == doctest::Approx(4.0));

  virial_basis* b = nullptr;
  REQUIRE(virial_basis_build(w, 5, VIRIAL_BASIS_GRAM_SCHMIDT, &b) == VIRIAL_OK);
  CHECK(virial_basis_n_max(b) == 5);
  double e = 0;
  REQUIRE(virial_energy_virial(b, 0, &e) == VIRIAL_OK);
  CHECK(e == doctest::Approx(0.68887235).epsilon(1e-8));
  REQUIRE(virial_energy_rayleigh(b, 0, &e) == VIRIAL_OK);
  CHECK(e == doctest::Approx(0.68887235).epsilon(1e-8));
  double a11 = 0;
  REQUIRE(virial_basis_coefficient(b, 1, 1, &a11) == VIRIAL_OK);
  CHECK(a11 == doctest::Approx(1.8015).epsilon(1e-4));
  double chi = 0, dchi = 0, phi = 0;
  REQUIRE(virial_ansatz_eval(b, 2, 0.3, &chi, &dchi) == VIRIAL_OK);
  REQUIRE(virial_basis_eval(b, 2, 0.3, &phi, nullptr) == VIRIAL_OK);
  double g3 = 0;
  REQUIRE(virial_weight_eval(w, 0.3, &g3, nullptr, nullptr) == VIRIAL_OK);
  CHECK(chi == doctest::Approx(phi * virial_weight_norm(w) * std::exp(-g3)).epsilon(1e-13));
  CHECK(virial_energy_virial(b, 6, &e) == VIRIAL_ORDER_OUT_OF_RANGE);
  char* csv = nullptr;
  REQUIRE(virial_basis_coefficients_csv(b, &csv) == VIRIAL_OK);
  CHECK(std::strncmp(csv, "n,a_0", 5) == 0);
  virial_string_free(csv);
  virial_basis_free(b);
  virial_weight_free(w);
  virial_potential_free(p);

  double eps = 0;
  CHECK(virial_relative_error(1.0, 0.0, &eps) == VIRIAL_DIVISION_BY_ZERO);
  REQUIRE(virial_gamma_factor(100.0, &eps) == VIRIAL_OK);
  CHECK(eps == 0.5);
}

TEST_CASE("solver and drivers") {
  virial_options opts;
  virial_options_init(&opts);
  CHECK(opts.solver_tol == 1e-10);
  virial_potential* p = nullptr;
  REQUIRE(virial_potential_quartic_anharmonic(1.0, 0.0, &p) == VIRIAL_OK);
  virial_solution* s = nullptr;
  REQUIRE(virial_solve(p, 4, &opts, &s) == VIRIAL_OK);
  CHECK(virial_solution_levels(s) == 4);
  for (int n = 0; n < 4; ++n) {
    double e = 0, res = 0;
    int nodes = -1;
    REQUIRE(virial_solution_eigenvalue(s, n, &e) == VIRIAL_OK);
    CHECK(std::abs(e - (n + 0.5)) <= 1e-9);
    REQUIRE(virial_solution_virial_residual(s, n, &res) == VIRIAL_OK);
    CHECK(res <= 1e-6);
    REQUIRE(virial_solution_nodes(s, n, &nodes) == VIRIAL_OK);
    CHECK(nodes == n);
  }
  double e = 0;
  CHECK(virial_solution_eigenvalue(s, 4, &e) == VIRIAL_INVALID_ARGUMENT);
  virial_solution_free(s);

  virial_table* t = nullptr;
  REQUIRE(virial_spectrum(p, 3, &opts, &t) == VIRIAL_OK);
  CHECK(virial_table_rows(t) == 4);
  CHECK(std::string(virial_table_column_name(t, 4)) == "eps_percent");
  CHECK(virial_table_column_name(t, 99) == nullptr);
  double eps = 1;
  REQUIRE(virial_table_value(t, 3, 4, &eps) == VIRIAL_OK);
  CHECK(std::abs(eps) <= 1e-7);

  for (auto fmt : {VIRIAL_FORMAT_CSV, VIRIAL_FORMAT_JSON}) {
    char* text = nullptr;
    REQUIRE(virial_table_serialize(t, fmt, &text) == VIRIAL_OK);
    virial_table* back = nullptr;
    REQUIRE(virial_table_parse(text, fmt, &back) == VIRIAL_OK);
    CHECK(virial_table_rows(back) == 4);
    CHECK(virial_table_columns(back) == 6);
    char* again = nullptr;
    REQUIRE(virial_table_serialize(back, VIRIAL_FORMAT_CSV, &again) == VIRIAL_OK);
    virial_string_free(again);
    virial_table_free(back);
    virial_string_free(text);
  }
  virial_table* junk = nullptr;
  CHECK(virial_table_parse("a,b\n1\n", VIRIAL_FORMAT_CSV, &junk) == VIRIAL_PARSE_ERROR);
  virial_table_free(t);
  virial_potential_free(p);

  const double lambdas[] = {0.1, 0.5, 1.0, 1.5};
  virial_audit* a = nullptr;
  REQUIRE(virial_scaling_audit(2, lambdas, 4, 3, &opts, &a) == VIRIAL_OK);
  CHECK(virial_audit_passed(a) == 1);
  REQUIRE(virial_audit_table(a, &t) == VIRIAL_OK);
  CHECK(virial_table_rows(t) == 16);
  virial_table_free(t);
  virial_audit_free(a);
  const double bad[] = {0.1, 0.0};
  CHECK(virial_scaling_audit(2, bad, 2, 3, &opts, &a) == VIRIAL_INVALID_ARGUMENT);

  const int kappas[] = {2, 3};
  virial_table *m = nullptr, *series = nullptr;
  REQUIRE(virial_error_table(kappas, 2, 2, &opts, &m, &series) == VIRIAL_OK);
  double e03 = 0;
  REQUIRE(virial_table_value(m, 0, 2, &e03) == VIRIAL_OK);
  CHECK(e03 == doctest::Approx(9.8999).epsilon(1e-4));
  CHECK(virial_table_rows(series) == 6);
  virial_table_free(m);
  virial_table_free(series);

  double grid[5];
  REQUIRE(virial_log_grid(1e-2, 1e2, 5, grid) == VIRIAL_OK);
  CHECK(grid[2] == doctest::Approx(1.0));
  REQUIRE(virial_anharmonic_sweep(1.0, grid, 5, 2, &opts, &t) == VIRIAL_OK);
  CHECK(virial_table_rows(t) == 15);
  virial_table_free(t);
}
