#include "cli.hpp"

#include "pik/io.hpp"
#include "pik/tables.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pik::cli {

namespace {

struct Options {
  bool json = false;
  bool decimal = false;
  std::uint64_t seed = 0;
};

std::string fmt(const Rational& q, bool decimal) { return decimal ? to_decimal(q) : to_string(q); }

void print_matrix(std::ostream& out, const RationalMatrix& m, bool decimal) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (const auto& v : m.data()) {
    cells.push_back(fmt(v, decimal));
    width = std::max(width, cells.back().size());
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      out << (c ? " " : "") << std::setw(static_cast<int>(width)) << cells[r * m.cols() + c];
    out << "\n";
  }
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

int env_restarts(int fallback) {
  std::string v = env_or("PIK_RESTARTS", "");
  if (v.empty()) return fallback;
  try {
    std::size_t used = 0;
    int r = std::stoi(v, &used);
    if (used != v.size() || r < 0) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw FormatError("PIK_RESTARTS: expected a nonnegative integer, got '" + v + "'");
  }
}

double env_delta(double fallback) {
  std::string v = env_or("PIK_DELTA", "");
  if (v.empty()) return fallback;
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size() || !(d > 0)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw FormatError("PIK_DELTA: expected a positive number, got '" + v + "'");
  }
}

CommMatrix load_comm(const std::string& path, const char* field) {
  return comm_matrix_from_json(read_json_file(path), field);
}

Json decision_json(const MajorizationDecision& d, bool decimal) {
  if (d.is_yes()) {
    Json j = certificate_to_json(d.yes().certificate, decimal);
    j["route"] = d.yes().route;
    return j;
  }
  if (d.is_no()) {
    const auto& no = d.no();
    return {{"verdict", "no"},
            {"reason", no.reason == NoReason::RankExceeds ? "RankExceeds" : "BranchAndBoundExhausted"},
            {"gap_bound", fmt(no.gap_bound, decimal)},
            {"nodes", no.nodes}};
  }
  return {{"verdict", "unknown"}, {"best_residual", d.unknown().best_residual}, {"nodes", d.unknown().nodes}};
}

Json setup_json(const QuantumSetup& s) { return {{"states", states_to_json(s.states)}, {"effects", povm_to_json(s.povm)}}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal communication matrices, ultraweak majorization and quantum realizations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_flag("--decimal", opt.decimal, "Print rationals as 12-digit decimals");
  app.add_option("--seed", opt.seed, "Seed for randomized searches")->default_val(0);

  int copt_n = 0, copt_t = 1;
  auto* gen = app.add_subcommand("gen-copt", "Print C^opt_{n,t}");
  gen->add_option("n", copt_n, "Number of boxes")->required();
  gen->add_option("t", copt_t, "Number of revealed empty boxes")->default_val(1);

  std::string psuc_path;
  auto* ps = app.add_subcommand("psuc", "Success probabilities of a square matrix");
  ps->add_option("--matrix", psuc_path, "Matrix JSON file")->required();

  std::string n_path, m_path, cert_path;
  double delta = 1e-6;
  int restarts = 32;
  std::size_t max_nodes = MajorizeBudget{}.max_nodes;
  auto* maj = app.add_subcommand("majorize", "Decide whether M is ultraweakly majorized by N");
  maj->add_option("--n", n_path, "Majorizing matrix N")->required();
  maj->add_option("--m", m_path, "Candidate matrix M")->required();
  auto* delta_opt = maj->add_option("--delta", delta, "Branch-and-bound gap");
  auto* restarts_maj = maj->add_option("--restarts", restarts, "Alternating-LP restarts");
  maj->add_option("--max-nodes", max_nodes, "Branch-and-bound node budget");

  auto* vc = app.add_subcommand("verify-cert", "Check M = L N R exactly");
  vc->add_option("--n", n_path, "Matrix N")->required();
  vc->add_option("--m", m_path, "Matrix M")->required();
  vc->add_option("--cert", cert_path, "Certificate JSON")->required();

  std::string states_path, povm_path, target_path, system_name = "qubit";
  auto* vi = app.add_subcommand("verify-impl", "Check that states and POVM reproduce a target");
  vi->add_option("--states", states_path, "States JSON")->required();
  vi->add_option("--povm", povm_path, "POVM JSON")->required();
  vi->add_option("--target", target_path, "Target matrix JSON")->required();

  int impl_restarts = ImplBudget{}.restarts, alternations = ImplBudget{}.alternations;
  auto* si = app.add_subcommand("solve-impl", "Search for a realization of a target");
  si->add_option("--target", target_path, "Target matrix JSON")->required();
  si->add_option("--system", system_name, "qubit, rebit or qudit:<d>")->required();
  auto* restarts_si = si->add_option("--restarts", impl_restarts, "See-saw restarts");
  si->add_option("--alternations", alternations, "See-saw alternations per restart");

  int n_max = 4;
  std::string csv_path, from_csv;
  int table_restarts = TableBudget{}.restarts;
  auto* tb = app.add_subcommand("table", "Communication table of a system");
  tb->add_option("--system", system_name, "qubit, rebit or qudit:<d>")->required();
  tb->add_option("--nmax", n_max, "Largest n")->default_val(4);
  tb->add_option("--csv", csv_path, "Also write the table as CSV");
  tb->add_option("--from-csv", from_csv, "Check a table read from CSV instead of building one");
  auto* restarts_tb = tb->add_option("--restarts", table_restarts, "See-saw restarts for open cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen) {
      auto c = gen_copt(copt_n, copt_t);
      if (opt.json) out << matrix_to_json(c.matrix(), opt.decimal).dump() << "\n";
      else print_matrix(out, c.matrix(), opt.decimal);
      return kSuccess;
    }
    if (*ps) {
      auto c = load_comm(psuc_path, "matrix");
      auto p = psuc(c), q = psuc_prime(c);
      if (opt.json) out << Json{{"psuc", fmt(p, opt.decimal)}, {"psuc_prime", fmt(q, opt.decimal)}}.dump() << "\n";
      else out << "psuc " << fmt(p, opt.decimal) << "\npsuc_prime " << fmt(q, opt.decimal) << "\n";
      return kSuccess;
    }
    if (*maj) {
      MajorizeBudget budget;
      budget.delta = delta_opt->count() ? delta : env_delta(budget.delta);
      budget.restarts = restarts_maj->count() ? restarts : env_restarts(budget.restarts);
      budget.seed = opt.seed;
      budget.max_nodes = max_nodes;
      auto n = load_comm(n_path, "n");
      auto m = load_comm(m_path, "m");
      auto d = majorizes(n, m, budget);
      if (opt.json) {
        out << decision_json(d, opt.decimal).dump() << "\n";
      } else if (d.is_yes()) {
        out << "yes (" << d.yes().route << ")\nL =\n";
        print_matrix(out, d.yes().certificate.left.matrix(), opt.decimal);
        out << "R =\n";
        print_matrix(out, d.yes().certificate.right.matrix(), opt.decimal);
      } else if (d.is_no()) {
        const auto& no = d.no();
        if (no.reason == NoReason::RankExceeds) out << "no: RankExceeds (rank M > rank N)\n";
        else out << "no: BranchAndBoundExhausted, residual >= " << fmt(no.gap_bound, opt.decimal) << " (" << no.nodes << " nodes)\n";
      } else {
        out << "unknown: best residual " << d.unknown().best_residual << " after " << d.unknown().nodes << " nodes\n";
      }
      return d.is_yes() ? kSuccess : d.is_no() ? kNegative : kUnknown;
    }
    if (*vc) {
      auto n = load_comm(n_path, "n");
      auto m = load_comm(m_path, "m");
      auto cert = certificate_from_json(read_json_file(cert_path));
      bool ok = check_certificate(m, n, cert);
      if (opt.json) out << Json{{"valid", ok}}.dump() << "\n";
      else out << (ok ? "valid: M = L N R\n" : "invalid: L N R differs from M\n");
      return ok ? kSuccess : kNegative;
    }
    if (*vi) {
      auto states = states_from_json(read_json_file(states_path));
      auto povm = povm_from_json(read_json_file(povm_path));
      auto target = load_comm(target_path, "target");
      auto b = born(states, povm);
      double dev = max_deviation(b, target.matrix());
      bool ok = dev <= kPhysicalTolerance;
      if (opt.json) out << Json{{"match", ok}, {"max_deviation", dev}}.dump() << "\n";
      else out << (ok ? "match" : "mismatch") << ": max deviation " << dev << "\n";
      return ok ? kSuccess : kNegative;
    }
    if (*si) {
      auto system = SystemSpec::parse(system_name);
      auto target = load_comm(target_path, "target");
      ImplBudget budget;
      budget.restarts = restarts_si->count() ? impl_restarts : env_restarts(budget.restarts);
      budget.alternations = alternations;
      budget.seed = opt.seed;
      auto v = find_implementation(target, system, budget);
      if (auto* r = std::get_if<Realizable>(&v)) {
        if (opt.json) {
          Json j = setup_json(r->setup);
          j["verdict"] = "realizable";
          j["provenance"] = r->provenance;
          j["residual"] = r->residual;
          out << j.dump() << "\n";
        } else {
          out << "realizable on " << system.name() << " (" << r->provenance << "), residual " << r->residual << "\n";
        }
        return kSuccess;
      }
      if (auto* t = std::get_if<ImpossibleByTheorem>(&v)) {
        if (opt.json)
          out << Json{{"verdict", "impossible"}, {"theorem", theorem_name(t->theorem)}, {"explanation", t->explanation}}.dump() << "\n";
        else
          out << "impossible on " << system.name() << " [" << theorem_name(t->theorem) << "]: " << t->explanation << "\n";
        return kNegative;
      }
      const auto& u = std::get<Unknown>(v);
      if (opt.json) out << Json{{"verdict", "unknown"}, {"best_residual", u.best_residual}}.dump() << "\n";
      else out << "unknown on " << system.name() << ": best residual " << u.best_residual << "\n";
      return kUnknown;
    }
    if (*tb) {
      auto system = SystemSpec::parse(system_name);
      CommTable table = [&] {
        if (!from_csv.empty()) {
          std::ifstream in(from_csv);
          if (!in) throw FormatError(from_csv + ": cannot open file");
          std::stringstream buf;
          buf << in.rdbuf();
          return table_from_csv(system, buf.str());
        }
        TableBudget budget;
        budget.restarts = restarts_tb->count() ? table_restarts : env_restarts(budget.restarts);
        budget.seed = opt.seed;
        return build_table(system, n_max, budget);
      }();
      auto violations = check_table_consistency(table);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw FormatError(csv_path + ": cannot write file");
        csv << render_csv(table);
      }
      if (opt.json) {
        Json cells = Json::array();
        for (const auto& [key, cell] : table.cells())
          cells.push_back({{"n", key.first}, {"t", key.second}, {"status", status_name(cell.status)}, {"provenance", cell.provenance}});
        Json vs = Json::array();
        for (const auto& v : violations) vs.push_back(v.message);
        out << Json{{"system", system.name()}, {"nmax", table.n_max()}, {"cells", cells}, {"violations", vs}}.dump() << "\n";
      } else {
        out << render_grid(table);
        for (const auto& v : violations) out << "violation: " << v.message << "\n";
      }
      return violations.empty() ? kSuccess : kNegative;
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace pik::cli
