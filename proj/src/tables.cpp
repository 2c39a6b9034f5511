#include "pik/tables.hpp"

#include <sstream>

namespace pik {

std::string_view status_name(CellStatus s) {
  switch (s) {
    case CellStatus::Implementable: return "implementable";
    case CellStatus::Impossible: return "impossible";
    case CellStatus::Unknown: return "unknown";
  }
  return {};
}

CommTable::CommTable(SystemSpec system, int n_max) : system_(system), n_max_(n_max) {
  if (n_max < 2) throw DomainError("table needs n_max >= 2");
  for (int n = 2; n <= n_max; ++n)
    for (int t = 1; t < n; ++t) cells_[{n, t}] = Cell{};
}

const Cell& CommTable::at(int n, int t) const {
  auto it = cells_.find({n, t});
  if (it == cells_.end()) throw DomainError("no cell (" + std::to_string(n) + "," + std::to_string(t) + ")");
  return it->second;
}

Cell& CommTable::at(int n, int t) { return const_cast<Cell&>(std::as_const(*this).at(n, t)); }

void CommTable::set(int n, int t, CellStatus status, std::string provenance) {
  Cell& c = at(n, t);
  c.status = status;
  c.provenance = std::move(provenance);
  c.setup.reset();
}

namespace {

std::string label(CellKey k) { return "C(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")"; }

void record(Cell& cell, SearchVerdict verdict) {
  if (auto* r = std::get_if<Realizable>(&verdict)) {
    cell = Cell{CellStatus::Implementable, r->provenance, std::move(r->setup)};
  } else if (auto* t = std::get_if<ImpossibleByTheorem>(&verdict)) {
    cell = Cell{CellStatus::Impossible, std::string(theorem_name(t->theorem)) + ": " + t->explanation, std::nullopt};
  }
}

// Propagates along certified chains until nothing changes.
void close(CommTable& table) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [key, cell] : table.cells()) {
      if (cell.status != CellStatus::Unknown) continue;
      auto [n, t] = key;
      for (const auto& [other, source] : table.cells()) {
        if (other == key || source.status == CellStatus::Unknown) continue;
        if (source.status == CellStatus::Implementable && source.setup &&
            copt_reachable(n, t, other.first, other.second)) {
          auto cert = copt_chain(n, t, other.first, other.second);
          auto pulled = compose_with_certificate(source.setup->states, source.setup->povm, *cert);
          double dev = max_deviation(born(pulled.states, pulled.povm), gen_copt(n, t).matrix());
          if (dev > kPhysicalTolerance) continue;
          table.at(n, t) = Cell{CellStatus::Implementable, "closure: certified below " + label(other), std::move(pulled)};
          changed = true;
          break;
        }
        if (source.status == CellStatus::Impossible && copt_reachable(other.first, other.second, n, t)) {
          table.set(n, t, CellStatus::Impossible, "closure: " + label(other) + " is impossible and certified below");
          changed = true;
          break;
        }
      }
    }
  }
}

}  // namespace

CommTable build_table(const SystemSpec& system, int n_max, const TableBudget& budget) {
  CommTable table(system, n_max);
  for (int n = 2; n <= n_max; ++n)
    for (int t = 1; t < n; ++t) record(table.at(n, t), decide_without_search(gen_copt(n, t), system));
  close(table);
  ImplBudget search{budget.restarts, budget.alternations, budget.seed, false, false};
  for (int n = 2; n <= n_max; ++n)
    for (int t = 1; t < n; ++t) {
      if (table.at(n, t).status != CellStatus::Unknown) continue;
      auto verdict = find_implementation(gen_copt(n, t), system, search);
      if (auto* u = std::get_if<Unknown>(&verdict)) {
        std::ostringstream os;
        os << "see-saw best residual " << u->best_residual;
        table.at(n, t).provenance = os.str();
      } else {
        record(table.at(n, t), std::move(verdict));
      }
      close(table);
    }
  return table;
}

std::vector<Violation> check_table_consistency(const CommTable& table) {
  std::vector<Violation> out;
  for (const auto& [low, lc] : table.cells()) {
    if (lc.status != CellStatus::Impossible) continue;
    for (const auto& [up, uc] : table.cells()) {
      if (up == low || uc.status != CellStatus::Implementable) continue;
      if (!copt_reachable(low.first, low.second, up.first, up.second)) continue;
      out.push_back({low, up,
                     label(low) + " is majorized by " + label(up) + ", which is implementable, but " + label(low) +
                         " is marked impossible"});
    }
  }
  return out;
}

std::string render_grid(const CommTable& table) {
  std::ostringstream os;
  const int m = table.n_max();
  os << table.system().name() << "\n";
  os << "n\\t";
  for (int t = 1; t < m; ++t) os << ' ' << (t < 10 ? " " : "") << t;
  os << "\n";
  for (int n = 2; n <= m; ++n) {
    os << (n < 10 ? "  " : " ") << n;
    for (int t = 1; t < m; ++t) {
      os << "  ";
      if (t >= n) {
        os << ' ';
        continue;
      }
      switch (table.at(n, t).status) {
        case CellStatus::Implementable: os << "✓"; break;
        case CellStatus::Impossible: os << "✗"; break;
        case CellStatus::Unknown: os << "?"; break;
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const CommTable& table) {
  std::ostringstream os;
  os << "n,t,status,provenance\n";
  for (const auto& [key, cell] : table.cells()) {
    std::string quoted = "\"";
    for (char ch : cell.provenance) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    quoted += '"';
    os << key.first << ',' << key.second << ',' << status_name(cell.status) << ',' << quoted << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  return fields;
}

}  // namespace

CommTable table_from_csv(const SystemSpec& system, std::string_view csv) {
  struct Row {
    int n, t;
    CellStatus status;
    std::string provenance;
  };
  std::vector<Row> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  int line_no = 0, n_max = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && line.starts_with("n,"))) continue;
    auto f = split_csv_line(line);
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() < 3) throw bad("expected n,t,status[,provenance]");
    Row r{};
    try {
      r.n = std::stoi(f[0]);
      r.t = std::stoi(f[1]);
    } catch (const std::exception&) {
      throw bad("n and t must be integers");
    }
    if (r.n < 2 || r.t < 1 || r.t >= r.n) throw bad("cell outside 2 <= n, 1 <= t < n");
    if (f[2] == "implementable") r.status = CellStatus::Implementable;
    else if (f[2] == "impossible") r.status = CellStatus::Impossible;
    else if (f[2] == "unknown") r.status = CellStatus::Unknown;
    else throw bad("unknown status '" + f[2] + "'");
    if (f.size() > 3) r.provenance = f[3];
    n_max = std::max(n_max, r.n);
    rows.push_back(std::move(r));
  }
  CommTable table(system, n_max);
  for (auto& r : rows) table.set(r.n, r.t, r.status, std::move(r.provenance));
  return table;
}

}  // namespace pik
