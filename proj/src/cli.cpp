#include "ho/cli.hpp"

#include <sstream>
#include <stdexcept>

namespace ho {

namespace {

using nlohmann::json;

std::optional<DPProblem> static_problem(const RuleSet& R, EtaMode eta, bool& expanded) {
  expanded = false;
  if (eta == EtaMode::on) {
    expanded = true;
    return initial_static(eta_expand_rules(R), false);
  }
  if (auto M = initial_static(R, false)) return M;
  if (eta == EtaMode::off) return std::nullopt;
  expanded = true;
  return initial_static(eta_expand_rules(R), false);
}

json node_json(const ProofNode& n) {
  json j;
  j["hash"] = n.hash;
  j["problem"] = n.problem_data;
  if (!n.processor.empty()) {
    j["processor"] = n.processor;
    j["payload"] = n.payload;
  }
  if (!n.status.empty()) j["status"] = n.status;
  j["children"] = json::array();
  for (const auto& c : n.children) j["children"].push_back(node_json(c));
  return j;
}

void plain_node(const ProofNode& n, int depth, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  std::istringstream lines(n.problem);
  std::string line;
  bool first = true;
  while (std::getline(lines, line)) {
    out << pad << line;
    if (first) out << "  [" << n.hash << "]";
    out << "\n";
    first = false;
  }
  if (!n.processor.empty()) out << pad << "by " << n.processor << ": " << n.payload.dump() << "\n";
  if (!n.status.empty()) out << pad << n.status << "\n";
  for (const auto& c : n.children) plain_node(c, depth + 1, out);
}

struct Replayer {
  Options opt;
  ReplayReport report;

  void fail(const std::string& msg) {
    report.ok = false;
    report.errors.push_back(msg);
  }

  void check(const json& node, const DPProblem& M, const std::string& where) {
    if (node.value("hash", "") != problem_hash(M)) {
      fail(where + ": recorded hash does not match the reconstructed problem");
      return;
    }
    std::string status = node.value("status", "");
    if (status == "finite: no DPs" && !M.dps.empty()) fail(where + ": leaf claims no DPs");
    if (!node.contains("processor")) return;
    auto p = processor_by_name(node["processor"].get<std::string>());
    if (!p) {
      fail(where + ": unknown processor " + node["processor"].get<std::string>());
      return;
    }
    ++report.steps;
    ProcessorResult r = p->run(M, opt);
    if (status == "NO") {
      if (r.kind != ProcessorResult::Kind::no) fail(where + ": " + p->name + " does not reproduce NO");
      return;
    }
    if (r.kind != ProcessorResult::Kind::problems) {
      fail(where + ": " + p->name + " is not applicable on replay");
      return;
    }
    const auto& kids = node["children"];
    // a failing leaf may stop the loop before every child is recorded
    if (kids.size() > r.problems.size()) {
      fail(where + ": " + p->name + " produced fewer problems than recorded");
      return;
    }
    for (std::size_t i = 0; i < kids.size(); ++i)
      check(kids[i], r.problems[i], where + "." + std::to_string(i + 1));
  }
};

} // namespace

std::vector<Processor> strategy_from_names(const std::vector<std::string>& names) {
  std::vector<Processor> out;
  for (const auto& n : names) {
    auto p = processor_by_name(n);
    if (!p) throw std::invalid_argument("unknown processor: " + n);
    out.push_back(*p);
  }
  return out;
}

RunResult run(const RuleSet& R, const RunConfig& cfg) {
  Options opt = cfg.options;
  opt.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(cfg.timeout_seconds));
  std::vector<Processor> finite = cfg.strategy.empty() ? default_strategy() : strategy_from_names(cfg.strategy);
  std::vector<Processor> infinite =
      cfg.strategy.empty() ? default_infinite_strategy() : strategy_from_names(cfg.strategy);

  RunResult res;
  if (cfg.mode != Mode::infinite) {
    bool expanded = false;
    if (auto M = static_problem(R, cfg.eta, expanded)) {
      Attempt a{"static", expanded, solve_finite(*M, finite, opt)};
      res.attempts.push_back(a);
      if (a.verdict.answer == Answer::yes) {
        res.answer = Answer::yes;
        return res;
      }
    }
    Attempt d{"dynamic", false, solve_finite(initial_dynamic(R), finite, opt)};
    res.attempts.push_back(d);
    if (d.verdict.answer == Answer::yes) {
      res.answer = Answer::yes;
      return res;
    }
  }
  if (cfg.mode != Mode::finite) {
    // NO is only ever derived from the unexpanded system
    Attempt a{"infinite", false, solve_infinite(initial_dynamic(R), infinite, opt)};
    res.attempts.push_back(a);
    if (a.verdict.answer == Answer::no) res.answer = Answer::no;
  }
  return res;
}

std::string render_plain(const RunResult& r, bool proof) {
  std::ostringstream out;
  out << show(r.answer) << "\n";
  if (!proof) return out.str();
  for (const auto& a : r.attempts) {
    out << "\n== " << a.pipeline << " pipeline" << (a.eta_expanded ? " (eta-expanded rules)" : "") << ": "
        << show(a.verdict.answer) << "\n";
    plain_node(a.verdict.proof, 0, out);
  }
  return out.str();
}

json render_json(const RunResult& r, const RunConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["verdict"] = show(r.answer);
  j["options"] = {{"loop_size", cfg.options.loop_size},
                  {"loop_steps", cfg.options.loop_steps},
                  {"coef_bound", cfg.options.coef_bound},
                  {"addcond_duplicate", cfg.options.addcond_duplicate}};
  j["attempts"] = json::array();
  for (const auto& a : r.attempts)
    j["attempts"].push_back(json{{"pipeline", a.pipeline},
                                 {"eta_expanded", a.eta_expanded},
                                 {"answer", show(a.verdict.answer)},
                                 {"proof", node_json(a.verdict.proof)}});
  return j;
}

ReplayReport replay(const json& proof, const RuleSet& R) {
  Replayer rp;
  if (proof.value("schema", 0) != 1) {
    rp.fail("unsupported schema");
    return rp.report;
  }
  const auto& o = proof["options"];
  rp.opt.loop_size = o.value("loop_size", rp.opt.loop_size);
  rp.opt.loop_steps = o.value("loop_steps", rp.opt.loop_steps);
  rp.opt.coef_bound = o.value("coef_bound", rp.opt.coef_bound);
  rp.opt.addcond_duplicate = o.value("addcond_duplicate", rp.opt.addcond_duplicate);
  for (const auto& a : proof["attempts"]) {
    std::string pipeline = a["pipeline"].get<std::string>();
    std::optional<DPProblem> M;
    if (pipeline == "static") {
      const RuleSet use = a.value("eta_expanded", false) ? eta_expand_rules(R) : R;
      M = initial_static(use, false);
    } else {
      M = initial_dynamic(R);
    }
    if (!M) {
      rp.fail(pipeline + ": initial problem cannot be rebuilt");
      continue;
    }
    rp.check(a["proof"], *M, pipeline);
  }
  return rp.report;
}

} // namespace ho
