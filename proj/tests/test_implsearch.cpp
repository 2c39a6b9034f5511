#include "pik/implsearch.hpp"

#include <doctest.h>

using namespace pik;

namespace {

bool realizable(const SearchVerdict& v) { return std::holds_alternative<Realizable>(v); }

std::optional<TheoremId> theorem_of(const SearchVerdict& v) {
  if (const auto* i = std::get_if<ImpossibleByTheorem>(&v)) return i->theorem;
  return std::nullopt;
}

void check_reproduces(const SearchVerdict& v, const CommMatrix& c) {
  REQUIRE(realizable(v));
  const auto& r = std::get<Realizable>(v);
  CHECK(max_deviation(born(r.setup.states, r.setup.povm), c.matrix()) <= kPhysicalTolerance);
  CHECK(r.residual <= kPhysicalTolerance);
  CHECK_FALSE(r.provenance.empty());
}

}  // namespace

TEST_CASE("system descriptions") {
  CHECK(SystemSpec::parse("qubit") == SystemSpec::qubit());
  CHECK(SystemSpec::parse("rebit") == SystemSpec::rebit());
  CHECK(SystemSpec::parse("qudit:5").dim() == 5);
  CHECK(SystemSpec::qudit(2) == SystemSpec::qubit());
  CHECK(SystemSpec::parse("qudit:2") == SystemSpec::qubit());
  CHECK(SystemSpec::rebit().real());
  CHECK_FALSE(SystemSpec::qudit(3).real());
  CHECK(SystemSpec::qudit(4).name() == "qudit:4");
  CHECK(SystemSpec::parse(SystemSpec::rebit().name()) == SystemSpec::rebit());
  for (const char* bad : {"", "qutrit", "qudit:", "qudit:x", "qudit:1", "qudit:-3"})
    CHECK_THROWS(SystemSpec::parse(bad));
  CHECK_THROWS_AS(SystemSpec::qudit(1), DomainError);
}

TEST_CASE("operational dimension") {
  CHECK(operational_dimension(SystemSpec::qubit()) == 2);
  CHECK(operational_dimension(SystemSpec::rebit()) == 2);
  for (int d = 3; d <= 6; ++d) CHECK(operational_dimension(SystemSpec::qudit(d)) == d);
  CHECK(theorem_name(TheoremId::QubitTwoOrMore) == "no-qubit-realization-for-t>=2");
  CHECK(theorem_name(TheoremId::UniformBound) == "uniform-antidistinguishability-bound");
}

TEST_CASE("qubit boundary for t = 1") {
  for (int n = 2; n <= 4; ++n) check_reproduces(decide_without_search(gen_copt(n, 1), SystemSpec::qubit()), gen_copt(n, 1));
  for (int n = 5; n <= 7; ++n)
    CHECK(theorem_of(decide_without_search(gen_copt(n, 1), SystemSpec::qubit())) == TheoremId::UniformBound);
  for (int n = 3; n <= 6; ++n)
    for (int t = 2; t < n; ++t)
      CHECK(theorem_of(decide_without_search(gen_copt(n, t), SystemSpec::qubit())) == TheoremId::QubitTwoOrMore);
}

TEST_CASE("rebits and qubits differ at C(4,1)") {
  check_reproduces(decide_without_search(gen_copt(3, 1), SystemSpec::rebit()), gen_copt(3, 1));
  CHECK(theorem_of(decide_without_search(gen_copt(4, 1), SystemSpec::rebit())) == TheoremId::PlanarGeometry);
  check_reproduces(decide_without_search(gen_copt(4, 1), SystemSpec::qubit()), gen_copt(4, 1));
  // Every rebit realization is real.
  const auto verdict = decide_without_search(gen_copt(3, 1), SystemSpec::rebit());
  const auto& r = std::get<Realizable>(verdict);
  for (const auto& s : r.setup.states) CHECK(s.is_real());
  for (const auto& e : r.setup.povm.effects()) CHECK(e.imag().cwiseAbs().maxCoeff() <= kPhysicalTolerance);
}

TEST_CASE("qudit constructions") {
  auto q3 = SystemSpec::qudit(3);
  check_reproduces(decide_without_search(gen_copt(4, 2), q3), gen_copt(4, 2));
  check_reproduces(decide_without_search(gen_copt(3, 2), q3), gen_copt(3, 2));
  check_reproduces(decide_without_search(gen_copt(9, 1), q3), gen_copt(9, 1));
  check_reproduces(decide_without_search(CommMatrix::identity(3), q3), CommMatrix::identity(3));
  CHECK(theorem_of(decide_without_search(gen_copt(10, 1), q3)) == TheoremId::UniformBound);
  CHECK(theorem_of(decide_without_search(gen_copt(4, 3), q3)) == TheoremId::OperationalDimension);
  CHECK(theorem_of(decide_without_search(CommMatrix::identity(4), q3)) == TheoremId::OperationalDimension);
  check_reproduces(decide_without_search(gen_copt(4, 3), SystemSpec::qudit(4)), gen_copt(4, 3));
  // Downward closure: C(3,1) and C(2,1) follow from C(4,2) on a qutrit.
  check_reproduces(decide_without_search(gen_copt(3, 1), q3), gen_copt(3, 1));
  check_reproduces(decide_without_search(gen_copt(2, 1), q3), gen_copt(2, 1));
}

TEST_CASE("non-optimal targets") {
  RationalMatrix v{{make_rational(1, 2), make_rational(1, 2), 0}, {0, make_rational(1, 2), make_rational(1, 2)}};
  check_reproduces(decide_without_search(CommMatrix(v), SystemSpec::qubit()), CommMatrix(v));
  RationalMatrix three{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)}};
  CHECK(theorem_of(decide_without_search(CommMatrix(three), SystemSpec::qubit())) == TheoremId::OperationalDimension);
}

TEST_CASE("see-saw never increases its objective") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto run = seesaw(gen_copt(3, 1), SystemSpec::qubit(), seed, 150);
    REQUIRE_FALSE(run.trace.empty());
    for (std::size_t k = 1; k < run.trace.size(); ++k) CHECK(run.trace[k] <= run.trace[k - 1] + 1e-12);
    CHECK(run.residual == doctest::Approx(max_deviation(born(run.setup.states, run.setup.povm), gen_copt(3, 1).matrix())));
  }
  auto rebit = seesaw(gen_copt(3, 1), SystemSpec::rebit(), 1, 50);
  for (const auto& s : rebit.setup.states) CHECK(s.is_real());
}

TEST_CASE("search without constructions") {
  ImplBudget budget;
  budget.constructions = false;
  budget.theorems = false;
  budget.restarts = 12;
  budget.alternations = 400;
  check_reproduces(find_implementation(gen_copt(3, 1), SystemSpec::qubit(), budget), gen_copt(3, 1));
  check_reproduces(find_implementation(gen_copt(2, 1), SystemSpec::rebit(), budget), gen_copt(2, 1));
  // The impossible rebit case never comes back Realizable.
  budget.restarts = 3;
  budget.alternations = 200;
  auto v = find_implementation(gen_copt(4, 1), SystemSpec::rebit(), budget);
  REQUIRE(std::holds_alternative<Unknown>(v));
  CHECK(std::get<Unknown>(v).best_residual > 1e-3);
}

TEST_CASE("full pipeline prefers constructions and theorems") {
  auto v = find_implementation(gen_copt(4, 2), SystemSpec::qudit(3));
  check_reproduces(v, gen_copt(4, 2));
  CHECK(theorem_of(find_implementation(gen_copt(5, 1), SystemSpec::qubit())) == TheoremId::UniformBound);
}
