// One line per acceptance criterion; exit status 1 if any fails.

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include "pik/tables.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace pik;

namespace {

constexpr double kQuantumTol = 1e-12;
constexpr double kStochasticTol = 1e-9;

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(const char* name, double limit_seconds, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    std::ostringstream s;
    s << "took " << secs << " s, limit " << limit_seconds << " s";
    c.require(false, s.str());
  }
  if (!c.ok) ++failures;
  std::printf("%s  %-34s %8.3f s  %s\n", c.ok ? "PASS" : "FAIL", name, secs, c.why.str().c_str());
  std::fflush(stdout);
}

std::vector<std::pair<CommMatrix, Certificate>> reference_certificates() {
  return {{gen_copt(2, 1), testing::pair_in_c42()},
          {gen_copt(3, 1), testing::c31_in_c42()},
          {gen_copt(4, 1), testing::c41_in_c42()}};
}

std::vector<DensityOperator> four_axes() {
  return {qubit_state({1, 0, 0}), qubit_state({-1, 0, 0}), qubit_state({0, 1, 0}), qubit_state({0, -1, 0})};
}

bool is_realizable(const SearchVerdict& v, const CommMatrix& c) {
  const auto* r = std::get_if<Realizable>(&v);
  return r && max_deviation(born(r->setup.states, r->setup.povm), c.matrix()) <= kPhysicalTolerance;
}

bool is_impossible(const SearchVerdict& v, TheoremId id) {
  const auto* i = std::get_if<ImpossibleByTheorem>(&v);
  return i && i->theorem == id;
}

bool has_violation(const CommTable& t, CellKey lower, CellKey upper) {
  for (const auto& v : check_table_consistency(t))
    if (v.lower == lower && v.upper == upper) return true;
  return false;
}

}  // namespace

int main() {
  criterion("exact matrix reproduction", 1.0, [](Check& c) {
    c.require(gen_copt(4, 2).matrix() == testing::c42_display(), "C(4,2) differs from the display");
    for (int n = 2; n <= 10; ++n)
      c.require(gen_copt(n, 1).matrix() == testing::uniform_exclusion(n), "C(" + std::to_string(n) + ",1) wrong");
  });

  criterion("success functionals", 0, [](Check& c) {
    for (int n = 2; n <= 12; ++n) {
      auto m = gen_copt(n, 1);
      c.require(psuc(m) == make_rational(1, n - 1), "psuc at n=" + std::to_string(n));
      c.require(psuc_prime(m) == make_rational(1, n - 1), "psuc_prime at n=" + std::to_string(n));
    }
  });

  criterion("certificate fixtures", 5.0, [](Check& c) {
    for (const auto& [m, cert] : reference_certificates())
      c.require(check_certificate(m, gen_copt(4, 2), cert), "reference certificate rejected");
    for (int n = 2; n <= 7; ++n)
      for (int t = 1; t < n; ++t) {
        c.require(check_certificate(gen_copt(n, t), gen_copt(n + 1, t + 1), build_diagonal_cert(n, t)), "diagonal");
        if (t >= 2) c.require(check_certificate(gen_copt(n, t - 1), gen_copt(n, t), build_t_reduction(n, t)), "t-reduction");
      }
  });

  criterion("negative decisions", 60.0, [](Check& c) {
    auto rank = majorizes(gen_copt(2, 1), gen_copt(3, 1));
    c.require(rank.is_no() && rank.no().reason == NoReason::RankExceeds, "C(3,1) below C(2,1) not refuted by rank");
    auto bnb = majorizes(gen_copt(3, 1), gen_copt(2, 1));
    c.require(bnb.is_no() && bnb.no().reason == NoReason::BranchAndBoundExhausted,
              "C(2,1) below C(3,1) not refuted by branch and bound");
    if (bnb.is_no()) c.require(bnb.no().gap_bound >= make_rational(1, 1000000), "certified gap below 1e-6");
  });

  criterion("quantum fixtures", 0, [](Check& c) {
    auto sic = qubit_sic_povm();
    auto sic_states = sym_states_from_povm(sic, 4, 2);
    c.require(max_deviation(born(sic_states, sic), gen_copt(4, 1).matrix()) <= kQuantumTol, "qubit SIC");
    auto trine = trine_povm();
    c.require(max_deviation(born(sym_states_from_povm(trine, 3, 2), trine), gen_copt(3, 1).matrix()) <= kQuantumTol,
              "trine");
    auto q = qutrit_c42();
    c.require(max_deviation(born(q.states, q.povm), gen_copt(4, 2).matrix()) <= kQuantumTol, "qutrit C(4,2)");
  });

  criterion("antidistinguishability dichotomy", 0, [](Check& c) {
    auto states = four_axes();
    auto w = is_antidistinguishable(states);
    c.require(w.has_value(), "no antidistinguishing witness");
    if (w)
      for (std::size_t j = 0; j < 4; ++j)
        c.require(std::abs((states[j].matrix() * (*w)[j]).trace()) <= kStochasticTol, "witness fails");
    c.require(!is_uniformly_antidistinguishable(states).has_value(), "uniform witness returned");
  });

  criterion("qubit boundary", 0, [](Check& c) {
    for (int n = 2; n <= 4; ++n)
      c.require(is_realizable(find_implementation(gen_copt(n, 1), SystemSpec::qubit()), gen_copt(n, 1)),
                "C(" + std::to_string(n) + ",1) not realized");
    c.require(is_impossible(find_implementation(gen_copt(5, 1), SystemSpec::qubit()), TheoremId::UniformBound),
              "C(5,1) not ruled out");
    for (int n = 3; n <= 6; ++n)
      for (int t = 2; t < n; ++t)
        c.require(is_impossible(find_implementation(gen_copt(n, t), SystemSpec::qubit()), TheoremId::QubitTwoOrMore),
                  "C(" + std::to_string(n) + "," + std::to_string(t) + ") not ruled out");
  });

  criterion("communication tables", 120.0, [](Check& c) {
    for (bool real : {false, true}) {
      auto table = build_table(real ? SystemSpec::rebit() : SystemSpec::qubit(), 4);
      for (int n = 2; n <= 4; ++n)
        for (int t = 1; t < n; ++t) {
          const bool yes = t == 1 && n <= (real ? 3 : 4);
          c.require(table.at(n, t).status == (yes ? CellStatus::Implementable : CellStatus::Impossible),
                    std::string(real ? "rebit" : "qubit") + " cell (" + std::to_string(n) + "," + std::to_string(t) + ")");
        }
      c.require(check_table_consistency(table).empty(), "built table flagged");
    }
    CommTable a(SystemSpec::qubit(), 3);
    a.set(3, 2, CellStatus::Implementable, "fixture");
    a.set(2, 1, CellStatus::Impossible, "fixture");
    c.require(has_violation(a, {2, 1}, {3, 2}), "first inconsistent table passes");
    CommTable b(SystemSpec::qubit(), 4);
    b.set(4, 2, CellStatus::Implementable, "fixture");
    b.set(4, 1, CellStatus::Impossible, "fixture");
    c.require(has_violation(b, {4, 1}, {4, 2}), "second inconsistent table passes");
  });

  criterion("property suites", 0, [](Check& c) {
    testing::Gen gen(9);
    auto size = [&](int hi) { return static_cast<std::size_t>(gen.integer(1, hi)); };
    for (int trial = 0; trial < 100; ++trial) {
      auto p = gen.stochastic(size(6), size(5));
      c.require(majorizes(p, p).is_yes(), "reflexivity");
      Certificate outer{gen.stochastic(size(6), p.rows()), gen.stochastic(p.cols(), size(5))};
      CommMatrix n(testing::triple(outer.left.matrix(), p.matrix(), outer.right.matrix()));
      Certificate inner{gen.stochastic(size(6), n.rows()), gen.stochastic(n.cols(), size(5))};
      CommMatrix m(testing::triple(inner.left.matrix(), n.matrix(), inner.right.matrix()));
      c.require(check_certificate(m, p, compose(inner, outer)), "transitivity by composition");
    }
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index d = gen.integer(2, 4);
      std::vector<DensityOperator> states;
      for (std::size_t i = 0, k = size(6); i < k; ++i) states.push_back(gen.density(d));
      auto b = born(states, gen.povm(d, size(6)));
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        c.require(std::abs(b.row(i).sum() - 1.0) <= kStochasticTol && b.row(i).minCoeff() >= 0.0, "row-stochasticity");
    }
    auto q = qutrit_c42();
    for (const auto& [m, cert] : reference_certificates()) {
      auto s = compose_with_certificate(q.states, q.povm, cert);
      c.require(max_deviation(born(s.states, s.povm), m.matrix()) <= kStochasticTol, "closure through a certificate");
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
