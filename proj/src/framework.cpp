#include "ho/framework.hpp"

#include <cstdint>
#include <cstdio>

namespace ho {

std::string show(Minimality m) {
  switch (m) {
  case Minimality::arbitrary: return "arbitrary";
  case Minimality::minimal: return "minimal";
  case Minimality::computable: return "computable_R";
  }
  return "?";
}

std::string show(Answer a) {
  switch (a) {
  case Answer::yes: return "YES";
  case Answer::no: return "NO";
  case Answer::maybe: return "MAYBE";
  }
  return "?";
}

bool same_problem(const DPProblem& a, const DPProblem& b) {
  if (a.m != b.m || a.formative != b.formative) return false;
  if (a.dps.size() != b.dps.size() || !same_dps(a.dps, b.dps)) return false;
  const auto& ra = a.rules.rules();
  const auto& rb = b.rules.rules();
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (!rule_equal(ra[i], rb[i])) return false;
  return true;
}

std::string show(const DPProblem& M) {
  std::string out = "DP problem (" + std::to_string(M.dps.size()) + " DPs, " + std::to_string(M.rules.size()) +
                    " rules, " + show(M.m) + ", " + (M.formative ? "formative" : "all") + ")";
  for (const auto& p : M.dps) out += "\n  " + show(p);
  return out;
}

nlohmann::json problem_json(const DPProblem& M) {
  nlohmann::json j;
  j["dps"] = nlohmann::json::array();
  for (const auto& p : M.dps) j["dps"].push_back(show(p));
  j["rules"] = nlohmann::json::array();
  for (const auto& r : M.rules.rules()) j["rules"].push_back(show(r));
  j["m"] = show(M.m);
  j["f"] = M.formative ? "formative" : "all";
  if (M.ordering) j["ordering"] = show(*M.ordering);
  return j;
}

std::string problem_hash(const DPProblem& M) {
  std::string text = problem_json(M).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DPProblem initial_dynamic(const RuleSet& R) {
  DPProblem M;
  M.dps = ddp(R);
  M.rules = R;
  M.m = Minimality::minimal;
  M.formative = true;
  M.subset_ddp = true;
  return M;
}

std::optional<DPProblem> initial_static(const RuleSet& R, bool eta_expand) {
  RuleSet use = R;
  auto ord = find_afp_ordering(use);
  if (!ord && eta_expand) {
    use = eta_expand_rules(R);
    ord = find_afp_ordering(use);
  }
  if (!ord) return std::nullopt;
  DPProblem M;
  M.dps = sdp(use);
  M.rules = use;
  M.m = Minimality::computable;
  M.formative = true;
  M.S = std::make_shared<const RuleSet>(use);
  M.ordering = ord;
  return M;
}

namespace {

ProofNode snapshot(const DPProblem& Q) {
  ProofNode n;
  n.problem = show(Q);
  n.hash = problem_hash(Q);
  n.problem_data = problem_json(Q);
  return n;
}

bool progress(const ProcessorResult& r, const DPProblem& Q) {
  return !(r.problems.size() == 1 && same_problem(r.problems[0], Q));
}

struct Loop {
  const std::vector<Processor>& strategy;
  const Options& opt;
  std::size_t steps = 0;

  bool exhausted() const { return opt.expired() || steps >= opt.max_proof_steps; }

  // true iff Q was proven finite
  bool finite(const DPProblem& Q, ProofNode& node) {
    node = snapshot(Q);
    if (Q.dps.empty()) {
      node.status = "finite: no DPs";
      return true;
    }
    for (const auto& p : strategy) {
      if (!p.sound) continue;
      if (exhausted()) {
        node.status = "budget";
        return false;
      }
      ++steps;
      ProcessorResult r = p.run(Q, opt);
      if (r.kind != ProcessorResult::Kind::problems || !progress(r, Q)) continue;
      node.processor = p.name;
      node.payload = r.payload;
      for (const auto& child : r.problems) {
        node.children.emplace_back();
        if (!finite(child, node.children.back())) return false;
      }
      return true;
    }
    node.status = "open";
    return false;
  }

  // true iff NO was established
  bool infinite(const DPProblem& Q, ProofNode& node) {
    node = snapshot(Q);
    if (Q.dps.empty()) {
      node.status = "finite: no DPs";
      return false;
    }
    for (const auto& p : strategy) {
      if (!p.complete) continue;
      if (exhausted()) {
        node.status = "budget";
        return false;
      }
      ++steps;
      ProcessorResult r = p.run(Q, opt);
      if (r.kind == ProcessorResult::Kind::not_applicable) continue;
      if (r.kind == ProcessorResult::Kind::no) {
        node.processor = p.name;
        node.payload = r.payload;
        node.status = "NO";
        return true;
      }
      if (!r.complete || !progress(r, Q)) continue;
      node.processor = p.name;
      node.payload = r.payload;
      for (const auto& child : r.problems) {
        node.children.emplace_back();
        if (infinite(child, node.children.back())) return true;
      }
      return false;
    }
    node.status = "open";
    return false;
  }
};

} // namespace

Verdict solve_finite(const DPProblem& M, const std::vector<Processor>& strategy, const Options& opt) {
  Loop loop{strategy, opt};
  Verdict v;
  v.answer = loop.finite(M, v.proof) ? Answer::yes : Answer::maybe;
  return v;
}

Verdict solve_infinite(const DPProblem& M, const std::vector<Processor>& strategy, const Options& opt) {
  Loop loop{strategy, opt};
  Verdict v;
  v.answer = loop.infinite(M, v.proof) ? Answer::no : Answer::maybe;
  return v;
}

} // namespace ho
