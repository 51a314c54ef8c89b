#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "koszulq/errors.hpp"
#include "koszulq/pipeline.hpp"
#include "koszulq/suites.hpp"

using namespace koszulq;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string weights;
  std::string sign_table;
  bool json = false;
  bool text = false;
};

RunConfig load_config(const Options& o) {
  RunConfig c;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot read " + o.config);
    std::stringstream ss;
    ss << in.rdbuf();
    c = RunConfig::from_json(ss.str());
  }
  if (!o.weights.empty()) c.weights = o.weights;
  if (!o.sign_table.empty()) c.sign_table = o.sign_table;
  return c;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw UsageError("cannot write " + p.string());
  out << text << "\n";
}

int emit(const Options& o, bool pass, const std::string& json_text, const std::string& text) {
  std::cout << (o.json ? json_text + "\n" : text);
  return pass ? 0 : 1;
}

int run_quantize(const Options& o) {
  auto c = load_config(o);
  auto q = quantize(c, load_weights(c));
  std::filesystem::create_directories(o.out);
  auto dir = std::filesystem::path(o.out);
  write_file(dir / "S_side.json", presentation_to_json(q.S));
  write_file(dir / "Lambda_side.json", presentation_to_json(q.Lambda));
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = "quantize";
  j["pass"] = true;
  j["files"] = {(dir / "S_side.json").string(), (dir / "Lambda_side.json").string()};
  j["S"] = nlohmann::json::parse(presentation_to_json(q.S));
  j["Lambda"] = nlohmann::json::parse(presentation_to_json(q.Lambda));
  std::string text = "wrote " + (dir / "S_side.json").string() + " (" + std::to_string(q.S.relations.size()) +
                     " relations)\nwrote " + (dir / "Lambda_side.json").string() + " (" +
                     std::to_string(q.Lambda.relations.size()) + " relations)\n";
  return emit(o, true, j.dump(2), text);
}

int run_duality(const Options& o) {
  auto c = load_config(o);
  auto r = verify_duality(c, load_weights(c));
  return emit(o, r.pass, r.to_json(), r.to_text());
}

int run_core(const Options& o) {
  auto c = load_config(o);
  auto r = verify_core(c, load_weights(c), load_sign_table(c));
  return emit(o, r.pass, r.to_json(), r.to_text());
}

int run_fg_battery(const Options& o) {
  auto c = load_config(o);
  auto r = verify_fg_battery(c, load_sign_table(c));
  return emit(o, r.pass, r.to_json(), r.to_text());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"koszulq: Koszul duality of quantized S(V*) and Lambda(V), checked in exact arithmetic"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* cmd, bool config_required) {
    auto* cfg = cmd->add_option("--config", o.config, "run config (JSON)")->check(CLI::ExistingFile);
    if (config_required) cfg->required();
    cmd->add_option("--weights", o.weights, "\"solve\" or a WeightAssignment file");
    cmd->add_option("--sign-table", o.sign_table, "sign table file (JSON)");
    auto* j = cmd->add_flag("--json", o.json, "JSON report");
    auto* t = cmd->add_flag("--text", o.text, "text report (default)");
    j->excludes(t);
  };
  auto* quantize_cmd = app.add_subcommand("quantize", "write the S-side and Lambda-side presentations");
  common(quantize_cmd, true);
  quantize_cmd->add_option("--out", o.out, "output directory")->required();
  auto* duality_cmd = app.add_subcommand("verify-duality", "end-to-end duality pipeline");
  common(duality_cmd, true);
  auto* core_cmd = app.add_subcommand("verify-core", "every module's invariant suite");
  common(core_cmd, false);
  auto* fg_cmd = app.add_subcommand("verify-section6", "F/G identities, telescopes, phi^cat, admissibility");
  common(fg_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*quantize_cmd) return run_quantize(o);
    if (*duality_cmd) return run_duality(o);
    if (*core_cmd) return run_core(o);
    if (*fg_cmd) return run_fg_battery(o);
  } catch (const UsageError& e) {
    std::cerr << "koszulq: " << e.what() << "\n";
    return 2;
  } catch (const CutoffError& e) {
    std::cerr << "koszulq: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "koszulq: refuted: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
