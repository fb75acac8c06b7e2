#include "seventerm/documents.hpp"
#include "seventerm/presets.hpp"
#include "seventerm/report.hpp"
#include "seventerm/seven_term.hpp"
#include "seventerm/verification.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

using namespace seventerm;

namespace {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInputError = 2, kBudgetExceeded = 3 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeBudgetExceeded: return kBudgetExceeded;
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidGroup:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ActionNotHomomorphic:
    case ErrorCode::ActionInconsistent:
    case ErrorCode::NotNormal:
    case ErrorCode::UnknownPreset:
    case ErrorCode::BadParams:
    case ErrorCode::InfiniteModule:
    case ErrorCode::NotACocycle:
    case ErrorCode::NotModuleMorphism:
      return kInputError;
    default: return kVerificationFailure;
  }
}

struct Target {
  NormalPair pair;
  GModule module;
  std::string preset_label;
  std::string module_label;
};

/// Resolves --preset/--module or --input into an extension with its module.
Target resolve_target(const std::string& preset, const std::string& module, const std::string& input) {
  if (!input.empty()) {
    require(preset.empty(), ErrorCode::InvalidInput, "use either --preset or --input");
    ExtensionInput e = extension_from_document(read_json_file(input));
    return {e.pair, e.module, "file:" + input, "from file"};
  }
  require(!preset.empty(), ErrorCode::InvalidInput, "--preset or --input is required");
  require(!module.empty(), ErrorCode::InvalidInput, "--module is required with --preset");
  Preset p = build_preset(preset);
  if (module.rfind("json:", 0) == 0) {
    GModule m = module_from_document(p.pair.g(), read_json_file(module.substr(5)));
    return {p.pair, m, p.name, module};
  }
  return {p.pair, build_module(p, module), p.name, module};
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-degree group cohomology and the seven-term sequence of a group extension"};
  app.require_subcommand(1);
  std::size_t budget = CohomologyOptions{}.max_unknowns;

  std::string preset, module, input;
  int degree = 2;
  bool on_quotient = false;
  auto* cohomology = app.add_subcommand("cohomology", "compute H^n(G, M) (or H^n(Q, M^N) with --quotient)");
  cohomology->add_option("--preset", preset, "preset name, e.g. cyclic(2,4), heisenberg_mod(3)");
  cohomology->add_option("--module", module, "Z, Z_d, Z^r, Z_d^r, nontrivial[:k] or json:<path>");
  cohomology->add_option("--input", input, "extension document instead of a preset");
  cohomology->add_option("--degree", degree, "degree 1, 2 or 3")->check(CLI::Range(1, 3));
  cohomology->add_flag("--quotient", on_quotient, "compute over Q with coefficients M^N");

  std::string st_preset, st_module, st_input, report_format = "json";
  auto* seven = app.add_subcommand("seven-term", "compute the seven-term sequence and check exactness");
  seven->add_option("--preset", st_preset, "preset name");
  seven->add_option("--module", st_module, "module specification");
  seven->add_option("--input", st_input, "extension document instead of a preset");
  seven->add_option("--report", report_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string battery = "default";
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run the verification battery");
  verify->add_option("--battery", battery, "battery name")->check(CLI::IsMember({"default"}));
  verify->add_option("--trials", trials, "randomized trials per property and case");
  verify->add_option("--seed", seed, "random seed");

  std::string inspect_input;
  for (CLI::App* sub : {cohomology, seven, verify})
    sub->add_option("--budget", budget, "maximum number of cochain unknowns per cohomology computation")
        ->check(CLI::PositiveNumber);

  auto* inspect = app.add_subcommand("inspect", "validate and summarize a document");
  inspect->add_option("--input", inspect_input, "input or report document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  CohomologyOptions options;
  options.max_unknowns = budget;
  try {
    if (*cohomology) {
      Target t = resolve_target(preset, module, input);
      if (on_quotient) {
        NormalContext ctx(t.module, t.pair);
        Cohomology h(ctx.inv.module, static_cast<std::size_t>(degree), options);
        Json doc = cohomology_json(h, t.preset_label, t.module_label);
        doc["config"]["over"] = "Q with coefficients M^N";
        emit(doc);
      } else {
        Cohomology h(t.module, static_cast<std::size_t>(degree), options);
        emit(cohomology_json(h, t.preset_label, t.module_label));
      }
      return kSuccess;
    }
    if (*seven) {
      Target t = resolve_target(st_preset, st_module, st_input);
      SevenTermSequence seq(t.module, t.pair, {options});
      Json doc = seven_term_json(seq, t.preset_label, t.module_label);
      if (report_format == "text") std::cout << seven_term_text(doc);
      else emit(doc);
      return doc["exactness"]["all_exact"].get<bool>() ? kSuccess : kVerificationFailure;
    }
    if (*verify) {
      VerifyOptions vo;
      vo.trials = trials;
      vo.seed = seed;
      vo.cohomology = options;
      VerifyReport r = run_default_battery(vo);
      emit(verify_json(r));
      return r.ok() ? kSuccess : kVerificationFailure;
    }
    if (*inspect) {
      Json out = inspect_document(read_json_file(inspect_input));
      emit(out);
      return out.value("valid", false) ? kSuccess : kVerificationFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kSuccess;
}
