// DP problems with their flags, processor results, proof trees and the two
// solve loops (finiteness for YES, infiniteness for NO).
#ifndef HO_FRAMEWORK_HPP
#define HO_FRAMEWORK_HPP

#include <chrono>
#include <functional>
#include <memory>
#include <optional>

#include "ho/dp.hpp"
#include "json.hpp"

namespace ho {

// computable(S) >= minimal >= arbitrary
enum class Minimality { arbitrary = 0, minimal = 1, computable = 2 };

std::string show(Minimality m);
inline bool at_least(Minimality m, Minimality bound) { return static_cast<int>(m) >= static_cast<int>(bound); }

struct DPProblem {
  std::vector<DP> dps;
  RuleSet rules;
  Minimality m = Minimality::minimal;
  bool formative = true; // f = formative, otherwise f = all

  // provenance: dps is a subset of DDP(rules), or of its extend-image
  bool subset_ddp = false;
  bool subset_ddp_ext = false;
  // for m = computable: S is the initial rule set, ordering the AFP witness
  std::shared_ptr<const RuleSet> S;
  std::optional<SortOrdering> ordering;
};

// same DPs (up to renaming), same rules, same flags
bool same_problem(const DPProblem& a, const DPProblem& b);
std::string show(const DPProblem& M);
// FNV-1a over the rendering; stable across runs and platforms
std::string problem_hash(const DPProblem& M);
nlohmann::json problem_json(const DPProblem& M);

DPProblem initial_dynamic(const RuleSet& R);
// nullopt when R is not AFP; eta_expand tries R-up as a fallback
std::optional<DPProblem> initial_static(const RuleSet& R, bool eta_expand = false);

struct ProcessorResult {
  enum class Kind { no, problems, not_applicable };
  Kind kind = Kind::not_applicable;
  std::vector<DPProblem> problems;
  nlohmann::json payload;
  bool complete = true; // this particular application is complete

  static ProcessorResult na() { return {}; }
  static ProcessorResult nonterminating(nlohmann::json why) {
    ProcessorResult r;
    r.kind = Kind::no;
    r.payload = std::move(why);
    return r;
  }
  static ProcessorResult of(std::vector<DPProblem> ps, nlohmann::json why = nlohmann::json::object()) {
    ProcessorResult r;
    r.kind = Kind::problems;
    r.problems = std::move(ps);
    r.payload = std::move(why);
    return r;
  }
};

struct Options {
  int loop_size = 12;
  int loop_steps = 8;
  int coef_bound = 2;
  bool addcond_duplicate = true;
  std::size_t max_proof_steps = 400;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool expired() const { return deadline && std::chrono::steady_clock::now() > *deadline; }
};

struct Processor {
  std::string name;
  bool sound = true;
  bool complete = true;
  std::function<ProcessorResult(const DPProblem&, const Options&)> run;
};

struct ProofNode {
  std::string problem; // rendering
  std::string hash;
  nlohmann::json problem_data;
  std::string processor;  // empty at leaves
  nlohmann::json payload;
  std::string status; // "finite: no DPs", "NO", "open", "budget", or "" for inner nodes
  std::vector<ProofNode> children;
};

enum class Answer { yes, no, maybe };
std::string show(Answer a);

struct Verdict {
  Answer answer = Answer::maybe;
  ProofNode proof;
};

Verdict solve_finite(const DPProblem& M, const std::vector<Processor>& strategy, const Options& opt);
Verdict solve_infinite(const DPProblem& M, const std::vector<Processor>& strategy, const Options& opt);

} // namespace ho

#endif
