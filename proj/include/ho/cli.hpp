// Orchestration of the static, dynamic and loop-search pipelines, proof
// rendering (plain and json) and the replay validator for json proofs.
#ifndef HO_CLI_HPP
#define HO_CLI_HPP

#include "ho/parse.hpp"
#include "ho/processors.hpp"

namespace ho {

enum class Mode { both, finite, infinite };
enum class EtaMode { automatic, on, off };

struct RunConfig {
  Mode mode = Mode::both;
  EtaMode eta = EtaMode::automatic;
  std::vector<std::string> strategy; // empty: the default strategies
  double timeout_seconds = 60;
  Options options;
};

struct Attempt {
  std::string pipeline; // "static", "dynamic" or "infinite"
  bool eta_expanded = false;
  Verdict verdict;
};

struct RunResult {
  Answer answer = Answer::maybe;
  std::vector<Attempt> attempts;
};

// throws std::invalid_argument on an unknown processor name
std::vector<Processor> strategy_from_names(const std::vector<std::string>& names);
RunResult run(const RuleSet& R, const RunConfig& cfg);

std::string render_plain(const RunResult& r, bool proof);
nlohmann::json render_json(const RunResult& r, const RunConfig& cfg);

struct ReplayReport {
  bool ok = true;
  std::size_t steps = 0;
  std::vector<std::string> errors;
};

// Re-runs every recorded processor step from the recorded initial problem
// and compares the resulting problem hashes with the recorded children.
ReplayReport replay(const nlohmann::json& proof, const RuleSet& R);

} // namespace ho

#endif
