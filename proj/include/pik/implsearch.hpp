#pragma once

#include "pik/quantum.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace pik {

/// The physical system a communication matrix should be realised on.
class SystemSpec {
 public:
  enum class Kind { Qubit, Rebit, Qudit };

  static SystemSpec qubit() { return SystemSpec(Kind::Qubit, 2); }
  static SystemSpec rebit() { return SystemSpec(Kind::Rebit, 2); }
  /// qudit(2) is the qubit. Throws DomainError for d < 2.
  static SystemSpec qudit(int d);
  /// "qubit", "rebit" or "qudit:<d>".
  static SystemSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool real() const { return kind_ == Kind::Rebit; }
  std::string name() const;

  bool operator==(const SystemSpec&) const = default;

 private:
  SystemSpec(Kind k, int d) : kind_(k), dim_(d) {}
  Kind kind_;
  int dim_;
};

/// Largest n such that id_n is implementable: d for qudits, 2 for qubit and rebit.
int operational_dimension(const SystemSpec& system);

enum class TheoremId {
  UniformBound,        ///< at most d² states can be uniformly antidistinguished
  QubitTwoOrMore,      ///< no qubit realises C^opt_{n,t} for t >= 2
  PlanarGeometry,      ///< rebit Bloch vectors cannot hold n >= 4 uniform directions
  OperationalDimension ///< C^opt_{m,m-1} ⊑ C with m > d
};
std::string_view theorem_name(TheoremId id);

struct Realizable {
  QuantumSetup setup;
  std::string provenance;
  double residual = 0.0;
};

struct ImpossibleByTheorem {
  TheoremId theorem;
  std::string explanation;
};

struct Unknown {
  double best_residual = 0.0;
  std::optional<QuantumSetup> best;
};

using SearchVerdict = std::variant<Realizable, ImpossibleByTheorem, Unknown>;

struct ImplBudget {
  int restarts = 64;
  int alternations = 2000;
  std::uint64_t seed = 0;
  bool constructions = true;
  bool theorems = true;
};

/// Constructions first, then impossibility theorems, then a see-saw search.
/// A Realizable verdict always reproduces C within kPhysicalTolerance.
SearchVerdict find_implementation(const CommMatrix& c, const SystemSpec& system, const ImplBudget& budget = {});

/// Only the constructive and theorem stages; Unknown when neither applies.
SearchVerdict decide_without_search(const CommMatrix& c, const SystemSpec& system);

struct SeesawRun {
  QuantumSetup setup;
  double residual = 0.0;       ///< max |born - C|
  std::vector<double> trace;   ///< squared-error objective after each alternation
};

/// One see-saw restart: projected-gradient steps on states and effects in
/// turn, each accepted only if the squared error does not increase.
SeesawRun seesaw(const CommMatrix& c, const SystemSpec& system, std::uint64_t seed, int alternations);

}  // namespace pik
