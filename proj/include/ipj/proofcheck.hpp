#pragma once

// Hilbert-style derivation checking.
//
// Proof file, one line per step:
//
//   n. <formula> ; <justification>
//
//   ax <schema> [n=N] [k=K] [m=M]   axiom instance
//   mp i j                          modus ponens (either citation order)
//   nec[P|V] i                      box necessitation
//   axnec c1[P] c2[V] ...           c1:[P] c2:[V] ... A for an axiom A
//   pnec i                          Pr>= 1 A for an epistemic line A
//   pnorm i                         Pr~ 1 A -> Pr~ 1 B from an epistemic line A -> B
//   param-approx r template=<file>  B -> Pr~ r A from a nu-template
//   param-arch template=<file>      B -> X, ~X a tautology, from a sigma-template
//
// Blank lines and lines starting with '#' are ignored.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipj/axioms.hpp"
#include "ipj/formula.hpp"
#include "ipj/ispec.hpp"

namespace ipj {

struct Derivation;

struct Justification {
  enum class Kind { Axiom, ModusPonens, BoxNec, AxiomNec, ProbNec, ApproxNormal, ArchimedeanRule, ApproxIntro };
  Kind kind = Kind::Axiom;
  SchemaId schema = SchemaId::P;
  SideData side;
  std::size_t i = 0;  // cited indices as written in the file
  std::size_t j = 0;
  Agent agent = Agent::Prover;
  std::vector<std::pair<std::string, Agent>> chain;  // axnec
  Rational r;                                        // param-approx
  std::string template_path;
  std::shared_ptr<const Derivation> templ;
};

struct ProofLine {
  std::size_t index = 0;
  Formula formula;
  Justification just;
  std::size_t source_line = 0;
};

/// Restricts which constant/agent pairs axiom necessitation may use. The
/// default (empty function) admits everything.
using ConstantSpec = std::function<bool(const std::string& constant, Agent agent, const Formula& axiom)>;

struct Derivation {
  InteractionSpec spec;
  bool zk = false;
  Parameter parameter = Parameter::None;
  std::vector<ProofLine> lines;
  ConstantSpec constants;
};

/// Returns the contents of a template file named in a justification.
using TemplateLoader = std::function<std::string(const std::string& path)>;

/// Parses a proof file. Template files are loaded eagerly through `loader`
/// and parsed with their parameter admitted; a parameter anywhere but a
/// threshold raises SyntaxError(Template).
Derivation parse_derivation(std::string_view text, const InteractionSpec& spec, bool zk,
                            const TemplateLoader& loader = {}, Parameter parameter = Parameter::None);

/// Loader resolving paths relative to `base_dir`.
TemplateLoader file_loader(std::string base_dir);

struct ProofReport {
  bool valid = false;
  std::optional<std::size_t> failed_index;
  std::string reason;
  bool undecidable = false;
  std::vector<std::string> log;
};

/// Checks every line in order. Throws Error(Structure) for citations of
/// missing or later lines and for duplicate indices.
ProofReport check_derivation(const Derivation& d, const ParamContext& params = {});

/// Validates one application of the parametric rules: ApproxIntro for rule
/// `B -> Pr~ r A` over nu, ArchimedeanRule over sigma.
ProofReport check_parametric_step(const Derivation& templ, const Formula& conclusion, Justification::Kind kind,
                                  const Rational& r = Rational(0));

/// Smallest admissible nu for rule ApproxIntro at r: ceil(1/(1-r)), or 1 for r = 1.
std::uint64_t approx_nu_min(const Rational& r);

/// The template with nu replaced by a concrete integer everywhere.
Derivation instantiate_template(const Derivation& templ, std::uint64_t nu);

/// Replaces every threshold in f via `fn`.
Formula map_thresholds(const Formula& f, const std::function<Threshold(const Threshold&)>& fn);

std::string to_string(const Justification& j);

}  // namespace ipj
