#include "pik/tables.hpp"

#include <doctest.h>

using namespace pik;

namespace {

// Known answers: a qubit realizes exactly C(n,1) for n <= 4, a rebit for n <= 3.
CellStatus two_level_expected(bool real, int n, int t) {
  const int limit = real ? 3 : 4;
  return t == 1 && n <= limit ? CellStatus::Implementable : CellStatus::Impossible;
}

CommTable blank(int n_max) { return CommTable(SystemSpec::qubit(), n_max); }

bool flags(const std::vector<Violation>& v, CellKey lower, CellKey upper) {
  for (const auto& x : v)
    if (x.lower == lower && x.upper == upper) return true;
  return false;
}

}  // namespace

TEST_CASE("two-level tables") {
  for (bool real : {false, true}) {
    auto sys = real ? SystemSpec::rebit() : SystemSpec::qubit();
    auto table = build_table(sys, 5);
    for (int n = 2; n <= 5; ++n)
      for (int t = 1; t < n; ++t) {
        CAPTURE(n);
        CAPTURE(t);
        CHECK(table.at(n, t).status == two_level_expected(real, n, t));
        CHECK_FALSE(table.at(n, t).provenance.empty());
      }
    CHECK(check_table_consistency(table).empty());
  }
}

TEST_CASE("qutrit table up to four outcomes") {
  auto table = build_table(SystemSpec::qudit(3), 4);
  for (int n = 2; n <= 4; ++n)
    for (int t = 1; t < n; ++t) {
      CAPTURE(n);
      CAPTURE(t);
      // Only id_4's class C(4,3) exceeds the operational dimension.
      CHECK(table.at(n, t).status == (n == 4 && t == 3 ? CellStatus::Impossible : CellStatus::Implementable));
    }
  CHECK(check_table_consistency(table).empty());
  const auto& c42 = table.at(4, 2);
  CHECK(c42.status == CellStatus::Implementable);
}

TEST_CASE("consistency violations are reported") {
  SUBCASE("diagonal step") {
    auto t = blank(3);
    t.set(3, 2, CellStatus::Implementable, "fixture");
    t.set(2, 1, CellStatus::Impossible, "fixture");
    auto v = check_table_consistency(t);
    CHECK(flags(v, {2, 1}, {3, 2}));
    for (const auto& x : v) CHECK_FALSE(x.message.empty());
  }
  SUBCASE("t-reduction step") {
    auto t = blank(4);
    t.set(4, 2, CellStatus::Implementable, "fixture");
    t.set(4, 1, CellStatus::Impossible, "fixture");
    CHECK(flags(check_table_consistency(t), {4, 1}, {4, 2}));
  }
  SUBCASE("across n") {
    auto t = blank(4);
    t.set(4, 2, CellStatus::Implementable, "fixture");
    t.set(3, 1, CellStatus::Impossible, "fixture");
    CHECK(flags(check_table_consistency(t), {3, 1}, {4, 2}));
  }
  SUBCASE("incomparable cells are fine") {
    auto t = blank(4);
    t.set(4, 1, CellStatus::Implementable, "fixture");
    t.set(3, 2, CellStatus::Impossible, "fixture");
    CHECK(check_table_consistency(t).empty());
  }
  SUBCASE("unknown cells never conflict") {
    auto t = blank(4);
    t.set(4, 3, CellStatus::Implementable, "fixture");
    CHECK(check_table_consistency(t).empty());
  }
}

TEST_CASE("rendering and CSV round trip") {
  auto t = blank(3);
  t.set(2, 1, CellStatus::Implementable, "basis, mixtures");
  t.set(3, 2, CellStatus::Impossible, "says \"no\"");
  auto grid = render_grid(t);
  CHECK(grid.find("✓") != std::string::npos);
  CHECK(grid.find("✗") != std::string::npos);
  CHECK(grid.find("?") != std::string::npos);

  auto csv = render_csv(t);
  CHECK(csv.rfind("n,t,status,provenance\n", 0) == 0);
  auto back = table_from_csv(SystemSpec::qubit(), csv);
  CHECK(back.n_max() == 3);
  for (const auto& [key, cell] : t.cells()) {
    CHECK(back.at(key.first, key.second).status == cell.status);
    CHECK(back.at(key.first, key.second).provenance == cell.provenance);
  }
  CHECK(render_csv(back) == csv);

  CHECK_THROWS_AS(table_from_csv(SystemSpec::qubit(), "n,t,status,provenance\n2,1,maybe,x\n"), std::invalid_argument);
  CHECK_THROWS_AS(table_from_csv(SystemSpec::qubit(), "n,t,status,provenance\n2,5,unknown,x\n"), std::invalid_argument);
  CHECK_THROWS_AS(table_from_csv(SystemSpec::qubit(), "wrong header\n"), std::invalid_argument);
  CHECK_THROWS_AS(CommTable(SystemSpec::qubit(), 1), DomainError);
  CHECK_THROWS(t.at(3, 3));
}

TEST_CASE("built tables round trip through CSV") {
  auto table = build_table(SystemSpec::rebit(), 4);
  auto back = table_from_csv(SystemSpec::rebit(), render_csv(table));
  for (const auto& [key, cell] : table.cells()) CHECK(back.at(key.first, key.second).status == cell.status);
}
