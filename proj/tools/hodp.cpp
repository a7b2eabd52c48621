// hodp: termination prover for higher-order rewriting systems (AFSMs).
#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "ho/cli.hpp"

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination prover for higher-order rewriting (AFSMs) in the dependency pair framework"};
  std::string path, mode = "both", eta = "auto", strategy, format = "plain", replay_path;
  bool proof = false;
  ho::RunConfig cfg;
  app.add_option("input", path, "system file")->required();
  app.add_option("--mode", mode, "both, finite or infinite")->check(CLI::IsMember({"both", "finite", "infinite"}));
  app.add_option("--eta-expand", eta, "auto, on or off")->check(CLI::IsMember({"auto", "on", "off"}));
  app.add_option("--strategy", strategy, "comma-separated processor names");
  app.add_option("--timeout", cfg.timeout_seconds, "seconds for the whole run");
  app.add_option("--format", format, "plain or json")->check(CLI::IsMember({"plain", "json"}));
  app.add_flag("--proof", proof, "print the proof tree");
  app.add_option("--loop-size", cfg.options.loop_size, "term size cap of the loop search");
  app.add_option("--loop-steps", cfg.options.loop_steps, "step cap of the loop search");
  app.add_option("--coef-bound", cfg.options.coef_bound, "largest interpretation coefficient");
  app.add_option("--replay", replay_path, "validate a json proof for the input instead of proving");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  cfg.mode = mode == "finite" ? ho::Mode::finite : mode == "infinite" ? ho::Mode::infinite : ho::Mode::both;
  cfg.eta = eta == "on" ? ho::EtaMode::on : eta == "off" ? ho::EtaMode::off : ho::EtaMode::automatic;
  cfg.strategy = split(strategy);
  try {
    ho::RuleSet R = ho::parse_file(path).rule_set();
    if (!replay_path.empty()) {
      std::ifstream in(replay_path);
      if (!in) throw std::runtime_error("cannot open " + replay_path);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      // json output starts with the verdict line
      if (auto brace = text.find('{'); brace != std::string::npos) text = text.substr(brace);
      auto report = ho::replay(nlohmann::json::parse(text), R);
      std::cout << (report.ok ? "VALID" : "INVALID") << " (" << report.steps << " steps)\n";
      for (const auto& e : report.errors) std::cout << "  " << e << "\n";
      return report.ok ? 0 : 1;
    }
    ho::RunResult r = ho::run(R, cfg);
    if (format == "json") {
      std::cout << ho::show(r.answer) << "\n" << ho::render_json(r, cfg).dump(2) << "\n";
    } else {
      std::cout << ho::render_plain(r, proof);
    }
    return r.answer == ho::Answer::maybe ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
