#pragma once

// Ultraweak matrix majorization: M ⊑ N iff M = L N R for row-stochastic L, R.
// Classical majorization (L = id) and weak majorization (R = id) both imply
// it; neither is implemented separately.

#include "pik/commat.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pik {

/// Row-stochastic pair witnessing M = L N R, with M a×b, N c×d, L a×c, R d×b.
struct Certificate {
  CommMatrix left;
  CommMatrix right;
};

/// True iff L·N·R equals M exactly. Throws ShapeError when shapes do not compose.
bool check_certificate(const CommMatrix& m, const CommMatrix& n, const Certificate& cert);

/// Given M ⊑ N by `inner` and N ⊑ P by `outer`, the certificate for M ⊑ P.
Certificate compose(const Certificate& inner, const Certificate& outer);

/// Canonical representative of the ≃-class reachable by row/column
/// permutations, row duplication and zero columns, together with
/// certificates for both directions.
struct CanonicalForm {
  CommMatrix form;
  Certificate form_below_original;  // form = L · original · R
  Certificate original_below_form;  // original = L · form · R
};

/// Drops duplicate rows and zero columns, then alternately sorts columns and
/// rows in descending lexicographic order (stable on ties) until stable.
CanonicalForm equiv_transforms(const CommMatrix& m);

struct UniversalBounds {
  CommMatrix vn;
  Certificate vn_below_m;  // V_n ⊑ M
  CommMatrix identity;
  Certificate m_below_identity;  // M ⊑ id_n
};

/// The V_n ⊑ M ⊑ id_n sandwich. n is the column count of M; square inputs use
/// the same construction.
UniversalBounds universal_bounds(const CommMatrix& m);

/// C^opt_{n,t} ⊑ C^opt_{n+1,t+1}: L selects the first binomial(n,t) rows
/// (those whose zero set contains box 1), R drops column 1. 1 <= t <= n-1.
Certificate build_diagonal_cert(int n, int t);

/// C^opt_{n,t-1} ⊑ C^opt_{n,t} with R = identity: each row of the smaller-t
/// matrix is the mean of the n-t+1 rows sharing its zeros. 2 <= t <= n-1.
Certificate build_t_reduction(int n, int t);

/// C^opt_{m,m-1} ⊑ C^opt_{n,t} when floor(n/(n-t)) >= m: picks m rows with
/// disjoint supports (right-aligned column blocks) and merges each block into
/// one output column. nullopt when the condition fails.
std::optional<Certificate> build_collapse_cert(int m, int n, int t);

/// Certificate for C^opt_{from} ⊑ C^opt_{to} found by composing diagonal,
/// t-reduction and collapse steps, or nullopt if no chain exists.
std::optional<Certificate> copt_chain(int n_from, int t_from, int n_to, int t_to);
/// Whether copt_chain would succeed, without building matrices.
bool copt_reachable(int n_from, int t_from, int n_to, int t_to);

struct MajorizeBudget {
  double delta = 1e-6;     ///< B&B gap a No verdict must certify
  int restarts = 32;       ///< alternating-LP starts, seeds seed..seed+restarts-1
  std::uint64_t seed = 0;
  int alternations = 60;   ///< per restart
  std::size_t max_nodes = 200000;  ///< B&B node budget
  bool structural = true;  ///< allow fast paths (rank test is always on)
};

enum class NoReason { RankExceeds, BranchAndBoundExhausted };

/// Float copy of a matrix pair kept for diagnostics.
struct FloatPair {
  std::vector<double> left;   // row-major a×c
  std::vector<double> right;  // row-major d×b
};

struct MajorizationYes {
  Certificate certificate;
  std::string route;  ///< which pipeline stage produced it
};
struct MajorizationNo {
  NoReason reason;
  /// Proven lower bound on min ||LNR - M||_inf over stochastic L, R; zero for RankExceeds.
  Rational gap_bound;
  std::size_t nodes = 0;
};
struct MajorizationUnknown {
  double best_residual;
  std::optional<FloatPair> best;
  std::size_t nodes = 0;
};

struct MajorizationDecision {
  std::variant<MajorizationYes, MajorizationNo, MajorizationUnknown> verdict;

  bool is_yes() const { return std::holds_alternative<MajorizationYes>(verdict); }
  bool is_no() const { return std::holds_alternative<MajorizationNo>(verdict); }
  bool is_unknown() const { return std::holds_alternative<MajorizationUnknown>(verdict); }
  const MajorizationYes& yes() const { return std::get<MajorizationYes>(verdict); }
  const MajorizationNo& no() const { return std::get<MajorizationNo>(verdict); }
  const MajorizationUnknown& unknown() const { return std::get<MajorizationUnknown>(verdict); }
};

/// Decides M ⊑ N. Every Yes carries an exactly verified certificate; No is
/// either a rank obstruction or a branch-and-bound proof that the residual
/// stays above budget.delta; otherwise Unknown.
MajorizationDecision majorizes(const CommMatrix& n, const CommMatrix& m,
                               const MajorizeBudget& budget = {});

namespace detail {

struct AlternatingResult {
  double residual;
  FloatPair pair;
};

/// One alternating-LP run from a seeded random R.
AlternatingResult alternating_lp(const CommMatrix& n, const CommMatrix& m, std::uint64_t seed,
                                 int alternations);

/// Tries to turn an approximate pair into an exact certificate by rounding R
/// (then solving L exactly) or rounding L (then solving R exactly).
std::optional<Certificate> extract_certificate(const CommMatrix& n, const CommMatrix& m,
                                               const FloatPair& approx);

/// Best L for a fixed float R; returns the residual and writes L.
double best_left_for(const CommMatrix& n, const CommMatrix& m, const std::vector<double>& right,
                     std::vector<double>& left);

struct BnbOutcome {
  enum class Kind { Proven, Found, Exhausted } kind;
  Rational proven_bound;  // Proven
  std::optional<Certificate> certificate;  // Found
  double best_residual = 1.0;
  std::optional<FloatPair> best;
  std::size_t nodes = 0;
};

BnbOutcome branch_and_bound(const CommMatrix& n, const CommMatrix& m, const MajorizeBudget& budget);

}  // namespace detail

}  // namespace pik
