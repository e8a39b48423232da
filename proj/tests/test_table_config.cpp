#include <doctest.h>

#include <cmath>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "table.hpp"

using namespace virial;

TEST_CASE("column formats") {
  CHECK(format_value(3.0, ColumnFormat::integer()) == "3");
  CHECK(format_value(0.688872354, ColumnFormat::fixed(8)) == "0.68887235");
  CHECK(format_value(1.68501183, ColumnFormat::significant(5)) == "1.6850");
  CHECK(format_value(18.25934, ColumnFormat::fixed(4)) == "18.2593");
  CHECK(format_value(0.1, ColumnFormat::exact()) == "0.1");
  CHECK(format_value(NAN, ColumnFormat::fixed(3)) == "nan");
}

TEST_CASE("CSV and JSON round trip") {
  Table t;
  t.add_column("n", ColumnFormat::integer());
  t.add_column("E", ColumnFormat::fixed(8));
  t.add_column("lambda", ColumnFormat::exact());
  t.rows = {{0, 0.123456789, 1e-3}, {1, 2.5, 0.31622776601683794}};
  t.metadata = {{"kind", "demo"}};

  const auto csv = to_csv(t);
  CHECK(csv == "n,E,lambda\n0,0.12345679,0.001\n1,2.50000000,0.31622776601683794\n");
  const auto back = parse_csv(csv);
  CHECK(back.columns == t.columns);
  CHECK(back.rows[0][1] == 0.12345679);
  CHECK(back.rows[1][2] == t.rows[1][2]);
  CHECK(to_csv(Table{back.columns, t.formats, back.rows, {}}) == csv);

  const auto json = to_json(t);
  const auto parsed = parse_json(json);
  CHECK(parsed.columns == t.columns);
  CHECK(parsed.metadata["kind"] == "demo");
  CHECK(parsed.rows[0][1] == 0.12345679);
  CHECK(parsed.rows[1][0] == 1.0);
  CHECK(parse_table(serialize(t, TableFormat::Json), TableFormat::Json).rows == parsed.rows);
}

TEST_CASE("table parse errors") {
  CHECK_THROWS_AS(parse_csv(""), Error);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), Error);
  CHECK_THROWS_AS(parse_csv("a\nx\n"), Error);
  CHECK_THROWS_AS(parse_json("{"), Error);
  CHECK_THROWS_AS(parse_json("{\"columns\": [\"a\"]}"), Error);
  CHECK_THROWS_AS(parse_table_format("xml"), Error);
}

TEST_CASE("spectrum table round trip") {
  const auto report = spectrum_report(validate(PotentialSpec::monomial(2, 1.0)), 2);
  const auto table = to_table(report);
  CHECK(table.columns == std::vector<std::string>{"n", "E_ref", "E_virial", "E_rayleigh", "eps_percent", "gamma"});
  const auto back = spectrum_from_table(parse_csv(to_csv(table)));
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[0].e_virial == 0.68887235);
  CHECK(back.rows[0].eps_percent == 3.1267);
  const auto from_json = spectrum_from_table(parse_json(to_json(table)));
  CHECK(from_json.potential == report.potential);
  CHECK(from_json.rows[2].e_ref == back.rows[2].e_ref);
}

TEST_CASE("key=value parsing") {
  const auto kv = parse_key_values("# comment\nkind = monomial\n  kappa=3 # trailing\n\nlambda=0.5\n");
  CHECK(kv.size() == 3);
  CHECK(kv.at("kappa") == "3");
  CHECK_THROWS_AS(parse_key_values("kappa 3\n"), Error);
  CHECK(parse_real_list("coeffs", "1, 2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK(parse_int_list("kappas", "2 3,4") == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(parse_real("lambda", "1.0x"), Error);
  CHECK_THROWS_AS(parse_int("kappa", "2.5"), Error);
  CHECK(parse_bool("numerov", "yes"));
}

TEST_CASE("potentials from configuration") {
  const auto mono = potential_from_keys(parse_key_values("kind=monomial\nkappa=3\nlambda=0.5"));
  CHECK(mono.evaluate(-1.0).u == doctest::Approx(0.5));
  const auto qa = potential_from_keys(parse_key_values("omega=1\nlambda=0.2\nxi=0.5"));
  CHECK(qa.shifted());
  CHECK(std::holds_alternative<QuarticAnharmonic>(qa.kind()));
  const auto poly = potential_from_keys(parse_key_values("coeffs=0.5, 1"));
  CHECK(std::holds_alternative<EvenPolynomial>(poly.kind()));
  const auto harmonic = potential_from_keys(parse_key_values("kind=harmonic\nomega=2"));
  CHECK(harmonic.evaluate(1.0).u == doctest::Approx(2.0));

  CHECK_THROWS_AS(potential_from_keys(parse_key_values("kind=polynomial\ncoeffs=0.1,1")), Error);
  CHECK_THROWS_AS(potential_from_keys(parse_key_values("kind=cubic")), Error);
  CHECK_THROWS_AS(potential_from_keys(parse_key_values("kind=even-polynomial")), Error);
  try {
    potential_from_keys(parse_key_values("kappa=2\nlambda=-1"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConvex);
  }
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, 1e3, 25);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e3);
  CHECK(g[12] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(10.0, 0.25)));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), Error);
}

TEST_CASE("error table shape") {
  const std::vector<int> kappas{1, 2};
  const auto et = error_table(kappas, 3);
  CHECK(et.matrix.columns == std::vector<std::string>{"n", "eps_1", "eps_2"});
  CHECK(et.matrix.rows.size() == 4);
  for (const auto& row : et.matrix.rows) CHECK(std::abs(row[1]) <= 1e-7);
  CHECK(et.matrix.rows[0][2] == doctest::Approx(3.1267).epsilon(1e-4));
  CHECK(et.series.rows.size() == 8);
  CHECK(to_csv(et.matrix).find("0,0.0000,3.1267") != std::string::npos);
}

TEST_CASE("wavefunction export") {
  const auto t = wavefunction_table(validate(PotentialSpec::monomial(2, 1.0)), 4, 101);
  CHECK(t.columns.size() == 11);
  CHECK(t.rows.size() <= 101);
  double max_psi = 0.0, max_chi = 0.0, overlap = 0.0;
  for (const auto& r : t.rows) {
    max_psi = std::max(max_psi, std::abs(r[1]));
    max_chi = std::max(max_chi, std::abs(r[6]));
    overlap += r[1] * r[6];
  }
  // the ansatz bell is wider, hence lower
  CHECK(max_chi < max_psi);
  CHECK(overlap > 0.0);
  // grid symmetric about the centre
  CHECK(t.rows.front()[0] == doctest::Approx(-t.rows.back()[0]).epsilon(1e-12));
}
