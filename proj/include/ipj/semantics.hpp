#pragma once

// Finite epistemic models, quasimodels and truth evaluation.
//
// The probability algebra is always the power set of the finite sample U,
// with the measure given by its values on singletons.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ipj/formula.hpp"
#include "ipj/ispec.hpp"
#include "ipj/qeps.hpp"

namespace ipj {

using World = std::size_t;

struct EvidenceTuple {
  World world;
  Agent agent;
  Term term;
  EFormula formula;
};

class EpistemicModel {
 public:
  World add_world(const std::string& name);
  /// Throws Error(Model) for an unknown name.
  World world(const std::string& name) const;
  const std::string& name(World w) const { return names_[w]; }
  std::size_t size() const { return names_.size(); }

  void add_edge(Agent a, World from, World to);
  bool accessible(Agent a, World from, World to) const { return rel_[index(a)][from][to]; }
  std::vector<World> successors(Agent a, World from) const;

  void set_true(World w, const std::string& atom);
  bool valuation(World w, const std::string& atom) const { return val_[w].count(atom) > 0; }
  const std::set<std::string>& true_atoms(World w) const { return val_[w]; }

  /// Atoms the valuation is defined over.
  void declare_atom(const std::string& atom) { atoms_.insert(atom); }
  const std::set<std::string>& atoms() const { return atoms_; }

  void add_evidence(World w, Agent a, const Term& t, const EFormula& alpha);
  const std::vector<EvidenceTuple>& evidence() const { return evidence_; }
  bool has_base(World w, Agent a, const Term& t, const EFormula& alpha) const;

  void add_to_pool(const EFormula& f) { pool_.insert(f); }
  const std::set<EFormula>& witness_pool() const { return pool_; }

  /// Reflexivity and transitivity of both relations. Returns a description
  /// of the first violation.
  std::optional<std::string> relation_defect() const;

 private:
  static std::size_t index(Agent a) { return a == Agent::Prover ? 0 : 1; }

  std::vector<std::string> names_;
  std::map<std::string, World> by_name_;
  std::array<std::vector<std::vector<bool>>, 2> rel_;
  std::vector<std::set<std::string>> val_;
  std::set<std::string> atoms_;
  std::vector<EvidenceTuple> evidence_;
  std::set<std::tuple<World, int, Term, EFormula>> base_;
  std::set<EFormula> pool_;
};

struct Quasimodel {
  EpistemicModel model;
  std::vector<World> sample;
  std::map<World, QEps> mass;
  World w0 = 0;

  /// Checks the relations, w0 in U, nonnegative masses and total mass 1.
  /// Throws Error(Model).
  void validate() const;
};

/// Truth evaluation with memoized evidence membership. The application
/// witness pool is the model's pool, the evidence base formulas, and
/// `extra_pool` together with subformulas of each. Not thread-safe; use one
/// evaluator per thread.
class Evaluator {
 public:
  explicit Evaluator(const EpistemicModel& m, const std::set<EFormula>& extra_pool = {});
  Evaluator(const Quasimodel& q, const std::set<EFormula>& extra_pool = {});

  bool evidence_member(World w, Agent a, const Term& t, const EFormula& alpha);
  /// Throws Error(UnknownAtom) for atoms outside the model's atom set.
  bool holds(World w, const EFormula& alpha);
  const std::vector<bool>& truth_set(const EFormula& alpha);

  /// Requires a quasimodel.
  std::vector<World> event(const EFormula& alpha);
  QEps measure_of(const EFormula& alpha);
  QEps measure_of(const std::vector<World>& event) const;
  bool eval(const Formula& f);

  const std::set<EFormula>& pool() const { return pool_; }

 private:
  const Quasimodel& quasi() const;

  const EpistemicModel& m_;
  const Quasimodel* q_ = nullptr;
  std::set<EFormula> pool_;
  std::map<std::tuple<World, int, Term, EFormula>, bool> memo_;
  std::map<EFormula, std::vector<bool>> truth_;
};

bool evidence_member(const EpistemicModel& m, World w, Agent a, const Term& t, const EFormula& alpha);
bool eval_epistemic(const EpistemicModel& m, World w, const EFormula& alpha);
std::vector<World> event(const Quasimodel& q, const EFormula& alpha);
QEps measure_of(const Quasimodel& q, const EFormula& alpha);
/// Top-level truth; the witness pool is extended with f's subformulas.
bool eval_formula(const Quasimodel& q, const Formula& f);
bool check_independence(const Quasimodel& q, const EFormula& a, const EFormula& b);

struct Universe {
  std::set<Term> terms;
  std::set<EFormula> formulas;
};

struct Report {
  bool pass = true;
  std::vector<std::string> lines;
  std::string counterexample;

  void fail(std::string witness) {
    if (pass) counterexample = witness;
    pass = false;
    lines.push_back("FAIL " + std::move(witness));
  }
  void note(std::string line) { lines.push_back(std::move(line)); }
  std::string text() const;
};

enum class EvidenceMode {
  /// Membership is exactly the listed base tuples.
  Extensional,
  /// Membership is the least closed relation over the base.
  Closure,
};

/// Audits closure conditions 1-5 over the universe.
Report check_evidence_closure(const EpistemicModel& m, const Universe& u, EvidenceMode mode);

/// Base evidence persists along each agent's own relation.
Report check_evidence_persistence(const EpistemicModel& m);

struct ConditionOptions {
  bool zk = false;
  /// k ranges over [kmin, kmax].
  std::uint64_t kmin = 0;
  std::uint64_t kmax = 3;
};

/// Model conditions for every base term in the universe, every spec formula
/// and every k in range, using the stabilization of the f-event family.
/// Throws Error(Universe) when a spec formula uses atoms outside the model
/// or a universe term is not f-free.
Report check_model_conditions(const Quasimodel& q, const InteractionSpec& spec, const Universe& u,
                              const ConditionOptions& opts = {});

/// Largest finite complexity in base tuples for f[n](t), 0 if none.
std::uint64_t stabilization_index(const EpistemicModel& m, const Term& t);

/// Event inclusion along n and equality of the omega event with the
/// stabilized one, for f-terms over each universe term and each formula.
Report check_event_monotonicity(const Quasimodel& q, const Universe& u, const std::set<EFormula>& formulas);

}  // namespace ipj
