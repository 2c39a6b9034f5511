#pragma once

#include "pik/implsearch.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pik {

enum class CellStatus { Implementable, Impossible, Unknown };
std::string_view status_name(CellStatus s);

struct Cell {
  CellStatus status = CellStatus::Unknown;
  std::string provenance;
  std::optional<QuantumSetup> setup;  ///< present for Implementable cells built by search
};

using CellKey = std::pair<int, int>;  ///< (n, t)

/// Implementability of C^opt_{n,t} for 2 <= n <= n_max, 1 <= t <= n-1.
class CommTable {
 public:
  /// All cells start Unknown. Throws DomainError for n_max < 2.
  CommTable(SystemSpec system, int n_max);

  const SystemSpec& system() const { return system_; }
  int n_max() const { return n_max_; }
  const Cell& at(int n, int t) const;
  Cell& at(int n, int t);
  void set(int n, int t, CellStatus status, std::string provenance);
  const std::map<CellKey, Cell>& cells() const { return cells_; }

 private:
  SystemSpec system_;
  int n_max_;
  std::map<CellKey, Cell> cells_;
};

struct TableBudget {
  int restarts = 8;  ///< see-saw restarts for cells left open by theorems and closure
  int alternations = 500;
  std::uint64_t seed = 0;
};

/// Constructions and theorems first, then closure along certified chains
/// (realizations pulled down, impossibility pushed up), then see-saw for
/// the remaining cells followed by one more closure pass.
CommTable build_table(const SystemSpec& system, int n_max, const TableBudget& budget = {});

struct Violation {
  CellKey lower;  ///< impossible cell
  CellKey upper;  ///< implementable cell that majorizes it
  std::string message;
};

/// Pairs (lower ⊑ upper) with `upper` Implementable but `lower` Impossible,
/// for every chain of diagonal, t-reduction and collapse certificates.
std::vector<Violation> check_table_consistency(const CommTable& table);

/// Rows n = 2..n_max, columns t = 1..n_max-1; ✓ implementable, ✗ impossible, ? unknown.
std::string render_grid(const CommTable& table);
/// Header "n,t,status,provenance" and one line per cell.
std::string render_csv(const CommTable& table);
/// Inverse of render_csv; n_max is the largest n present and missing cells
/// stay Unknown. Throws std::invalid_argument naming the bad line.
CommTable table_from_csv(const SystemSpec& system, std::string_view csv);

}  // namespace pik
