#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvna/algebra_io.hpp"
#include "gvna/errors.hpp"
#include "gvna/graded_tensor.hpp"
#include "gvna/presets.hpp"
#include "gvna/type_table.hpp"
#include "gvna/verify_suite.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

struct Common {
  std::vector<std::string> presets;
  std::vector<std::string> files;
  std::string seed = "0xC1F0";
  double tol_eq = gvna::Tolerances{}.eq;
  double tol_rank = gvna::Tolerances{}.rank;
  std::string format = "human";

  gvna::Tolerances tolerances() const {
    gvna::Tolerances t;
    t.eq = tol_eq;
    t.rank = tol_rank;
    return t;
  }

  std::uint64_t parsed_seed() const {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(seed, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (seed.empty() || used != seed.size()) throw gvna::InputError("--seed: not an integer: '" + seed + "'");
    return value;
  }

  std::vector<gvna::GradedAlgebra> inputs() const {
    const auto tol = tolerances();
    std::vector<gvna::GradedAlgebra> out;
    for (const auto& p : presets) out.push_back(gvna::build_preset(p, tol));
    for (const auto& f : files) out.push_back(gvna::load_algebra_file(f, tol));
    return out;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_inputs) {
  if (with_inputs) {
    cmd->add_option("--preset", c.presets, "preset spec kind:params (repeatable)");
    cmd->add_option("--file", c.files, "algebra document path (repeatable)")->check(CLI::ExistingFile);
  }
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--tol-eq", c.tol_eq, "equality tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--tol-rank", c.tol_rank, "rank tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"human", "json"}));
}

std::vector<gvna::GradedAlgebra> require_inputs(const Common& c, std::size_t arity, const char* command) {
  auto inputs = c.inputs();
  if (inputs.size() != arity) {
    throw gvna::InputError(std::string(command) + " expects " + std::to_string(arity) + " input(s), got " +
                           std::to_string(inputs.size()));
  }
  return inputs;
}

std::string display_name(const gvna::GradedAlgebra& g) { return g.name().empty() ? "(unnamed)" : g.name(); }

json summands_json(const gvna::TypeReport& r) {
  json out = json::array();
  for (const auto& s : r.summands) out.push_back({{"block_size", s.block_size}, {"multiplicity", s.multiplicity}});
  return out;
}

json type_json(const gvna::TypeReport& r) {
  return {{"type", r.type_label}, {"factor", r.is_factor}, {"summands", summands_json(r)}};
}

int cmd_report(const Common& c) {
  const auto g = require_inputs(c, 1, "report").front();
  const auto type = gvna::factor_decomposition(g.alg());
  const bool central = gvna::is_central(g);
  const bool balanced = gvna::find_odd_symmetry(g, c.parsed_seed()).symmetry.has_value();
  const auto& center = g.alg().center_space();
  const auto zc = gvna::graded_center(g);
  const std::size_t center_even = zc.split().even.dim();
  const std::size_t center_odd = zc.split().odd.dim();
  if (c.format == "json") {
    json doc = type_json(type);
    doc["name"] = display_name(g);
    doc["hilbert_dim"] = g.hilbert_dim();
    doc["algebra_dim"] = g.alg().dim();
    doc["even_dim"] = g.split().even.dim();
    doc["odd_dim"] = g.split().odd.dim();
    doc["central"] = central;
    doc["balanced"] = balanced;
    doc["center_dim"] = center.dim();
    doc["center_even_dim"] = center_even;
    doc["center_odd_dim"] = center_odd;
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "type " << type.type_label << ", " << (central ? "central" : "not central") << ", "
            << (balanced ? "balanced" : "not balanced") << ", " << (type.is_factor ? "factor" : "not a factor")
            << "\n";
  std::cout << "algebra: " << display_name(g) << " on C^" << g.hilbert_dim() << ", dim " << g.alg().dim() << " (even "
            << g.split().even.dim() << ", odd " << g.split().odd.dim() << ")\n";
  std::cout << "summands (block size, multiplicity): " << gvna::format_summands(type) << "\n";
  std::cout << "center: dim " << center.dim() << " (even " << center_even << ", odd " << center_odd << ")\n";
  return kOk;
}

// Common block size of a central non-factor of homogeneous type, 0 otherwise.
std::size_t central_nonfactor_index(const gvna::GradedAlgebra& g, const gvna::TypeReport& r) {
  if (r.is_factor || !gvna::is_central(g)) return 0;
  const std::size_t n = r.summands.front().block_size;
  for (const auto& s : r.summands) {
    if (s.block_size != n) return 0;
  }
  return n;
}

int cmd_tensor(const Common& c) {
  const auto in = require_inputs(c, 2, "tensor");
  const auto product = gvna::graded_tensor(in[0], in[1]);
  const auto graded = gvna::factor_decomposition(product.result.alg());
  const auto ordinary = gvna::factor_decomposition(gvna::ordinary_tensor(in[0], in[1]));
  const std::size_t m = central_nonfactor_index(in[0], gvna::factor_decomposition(in[0].alg()));
  const std::size_t n = central_nonfactor_index(in[1], gvna::factor_decomposition(in[1].alg()));
  std::string rule;
  if (m && n) {
    rule = "2mn rule: 2·" + std::to_string(m) + "·" + std::to_string(n) + " = " + std::to_string(2 * m * n);
  }
  if (c.format == "json") {
    json doc;
    doc["inputs"] = {display_name(in[0]), display_name(in[1])};
    doc["hilbert_dim"] = product.result.hilbert_dim();
    doc["graded"] = type_json(graded);
    doc["ordinary"] = type_json(ordinary);
    doc["annotation"] = rule.empty() ? json(nullptr) : json(rule);
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  const auto line = [](const gvna::TypeReport& r) {
    return r.type_label + ", " + (r.is_factor ? "factor" : "not a factor") + "  " + gvna::format_summands(r);
  };
  std::cout << display_name(in[0]) << " ⊗̂ " << display_name(in[1]) << " on C^" << product.result.hilbert_dim() << "\n";
  std::cout << "graded:   " << line(graded) << "\n";
  std::cout << "ordinary: " << line(ordinary) << "\n";
  if (!rule.empty()) std::cout << rule << "\n";
  return kOk;
}

int cmd_verify(const Common& c) {
  gvna::VerifyOptions options;
  options.seed = c.parsed_seed();
  options.tol = c.tolerances();
  const auto results = gvna::run_verify_suite(options);
  bool all = true;
  bool numerical = false;
  for (const auto& r : results) {
    all = all && r.passed;
    numerical = numerical || r.numerical_error;
  }
  if (c.format == "json") {
    json cases = json::array();
    for (const auto& r : results) {
      cases.push_back({{"id", r.id},
                       {"statement", r.statement},
                       {"passed", r.passed},
                       {"numerical_error", r.numerical_error},
                       {"max_residual", gvna::format_double(r.max_residual)},
                       {"detail", r.detail}});
    }
    json doc = {{"seed", options.seed}, {"passed", all}, {"cases", cases}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::size_t passed = 0;
    for (const auto& r : results) {
      passed += r.passed ? 1 : 0;
      char residual[32];
      std::snprintf(residual, sizeof residual, "%.2e", r.max_residual);
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  max residual " << residual << "  " << r.statement
                << "\n";
      if (!r.passed || !r.detail.empty()) std::cout << "     " << r.detail << "\n";
    }
    std::cout << passed << "/" << results.size() << " passed\n";
  }
  if (numerical) return kNumerical;
  return all ? kOk : kFailed;
}

int cmd_table(const Common& c) {
  const auto cells = gvna::type_table(2, c.tolerances());
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& cell : cells) {
      rows.push_back({{"regime", cell.regime},
                      {"row", cell.row},
                      {"column", cell.column},
                      {"result", cell.result},
                      {"computed", cell.computed},
                      {"inputs", cell.inputs},
                      {"expected", cell.expected}});
    }
    std::cout << json{{"cells", rows}}.dump(2) << "\n";
    return kOk;
  }
  std::string regime;
  for (const auto& cell : cells) {
    if (cell.regime != regime) {
      regime = cell.regime;
      std::cout << "[" << regime << "]\n";
    }
    std::cout << "  " << cell.row << " ⊗̂ " << cell.column << " -> " << cell.result;
    if (cell.computed) std::cout << "   (" << cell.inputs << ", expected " << cell.expected << ")";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_presets(const Common& c) {
  const auto catalog = gvna::preset_catalog();
  if (c.format == "json") {
    json items = json::array();
    for (const auto& p : catalog) items.push_back({{"syntax", p.syntax}, {"description", p.description}});
    std::cout << json{{"presets", items}}.dump(2) << "\n";
    return kOk;
  }
  for (const auto& p : catalog) std::cout << p.syntax << "\n    " << p.description << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded von Neumann algebras on finite-dimensional Hilbert spaces"};
  app.require_subcommand(1, 1);

  Common report, tensor, verify, table, presets;
  add_common(app.add_subcommand("report", "type, centrality and balance of one algebra"), report, true);
  add_common(app.add_subcommand("tensor", "graded and ordinary tensor product of two algebras"), tensor, true);
  add_common(app.add_subcommand("verify", "run the verification suite"), verify, false);
  add_common(app.add_subcommand("table", "type I multiplication table"), table, false);
  add_common(app.add_subcommand("presets", "list preset syntax"), presets, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("report")) return cmd_report(report);
    if (app.got_subcommand("tensor")) return cmd_tensor(tensor);
    if (app.got_subcommand("verify")) return cmd_verify(verify);
    if (app.got_subcommand("table")) return cmd_table(table);
    return cmd_presets(presets);
  } catch (const gvna::NumericalInconsistency& e) {
    std::cerr << "numerical inconsistency: " << e.what() << "\n";
    return kNumerical;
  } catch (const gvna::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gvna::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
