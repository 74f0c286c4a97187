#include "pickrealize/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "pickrealize/cayley_lift.hpp"
#include "pickrealize/realization_json.hpp"
#include "pickrealize/sampling.hpp"

namespace pickrealize {

namespace {

AnalysisOptions analysis_options(const RunConfig& c) {
  AnalysisOptions o;
  o.tol = c.tol;
  o.samples = c.samples;
  o.seed = c.seed;
  o.sos.max_iters = c.max_iters;
  return o;
}

void emit(std::ostream& out, Json j) {
  if (j.is_object()) j["schema_version"] = kSchemaVersion;
  out << j.dump(2) << "\n";
}

Json status_json(const std::string& status, const std::string& message) {
  Json j;
  j["status"] = status;
  j["error"] = message;
  return j;
}

template <Coefficient T>
int do_verify(const Json& input, const RunConfig& config, std::ostream& out) {
  auto f = function_from_json<T>(input);
  auto verdict = verify(f, analysis_options(config));
  emit(out, to_json(verdict));
  switch (verdict.status) {
    case PickStatus::CertifiedCayleyInner:
    case PickStatus::CertifiedPickViaRealization: return kExitOk;
    case PickStatus::Falsified: return kExitFalsified;
    case PickStatus::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

template <Coefficient T>
int do_reduce(const Json& input, std::ostream& out) {
  auto f = function_from_json<T>(input);
  auto [h, plan] = reduce_to_multi_affine(f);
  Json j = to_json(h);
  j["plan"] = to_json(plan);
  emit(out, j);
  return kExitOk;
}

template <Coefficient T>
int do_lift(const Json& input, std::ostream& out) {
  auto f = function_from_json<T>(input);
  auto l = lift(f);
  Json j = to_json(l.g);
  j["lift_variable"] = LiftResult<T>::lift_variable;
  j["parts"] = {{"p1", to_json(l.parts.p1)},
                {"p2", to_json(l.parts.p2)},
                {"q1", to_json(l.parts.q1)},
                {"q2", to_json(l.parts.q2)}};
  emit(out, j);
  return kExitOk;
}

template <Coefficient T>
int do_sos(const Json& input, const RunConfig& config, std::ostream& out) {
  auto w = to_float(matrix_polynomial_from_json<T>(input));
  SosOptions options;
  options.max_iters = config.max_iters;
  try {
    emit(out, to_json(sos_factor(w, options)));
    return kExitOk;
  } catch (const NotHermitianStructure& e) {
    throw InputError(e.what());
  }
}

template <Coefficient T>
int do_realize(const Json& input, const RunConfig& config, std::ostream& out) {
  auto f = function_from_json<T>(input);
  RealizationLog log;
  SchurRealization schur;
  try {
    schur = realize_pick(f, analysis_options(config), &log);
  } catch (const PickFalsified& e) {
    emit(out, to_json(e.verdict()));
    return kExitFalsified;
  }
  Realization r = convert_form(schur, config.form);
  auto report = certify(r, to_float(f), config.samples, config.seed, config.tol);
  Json j = realization_to_json(r);
  j["certificate"] = to_json(report);
  j["function"] = to_json(f);
  if (!log.warnings.empty()) j["warnings"] = log.warnings;
  emit(out, j);
  return report.passed() ? kExitOk : kExitInconclusive;
}

int do_certify(const Json& input, const RunConfig& config, std::ostream& out, const std::string& function_path) {
  Realization r = realization_from_json(input);
  Json fj;
  if (!function_path.empty()) fj = read_json_file(function_path);
  else if (input.contains("function")) fj = input["function"];
  else throw InputError("certify: no function given (use --function or embed \"function\")");
  FloatFunction f = config.mode == CoefficientMode::Exact ? to_float(function_from_json<GaussianRational>(fj))
                                                           : function_from_json<Complex>(fj);
  auto report = certify(r, f, config.samples, config.seed, config.tol);
  Json j;
  j["certificate"] = to_json(report);
  emit(out, j);
  return report.passed() ? kExitOk : kExitInconclusive;
}

template <Coefficient T>
int dispatch(const std::string& command, const Json& input, const RunConfig& config, std::ostream& out,
             const std::string& function_path) {
  if (command == "verify") return do_verify<T>(input, config, out);
  if (command == "reduce") return do_reduce<T>(input, out);
  if (command == "lift") return do_lift<T>(input, out);
  if (command == "sos") return do_sos<T>(input, config, out);
  if (command == "realize") return do_realize<T>(input, config, out);
  if (command == "certify") return do_certify(input, config, out, function_path);
  throw InputError("unknown command '" + command + "'");
}

}  // namespace

int run_command(const std::string& command, const std::string& input, const RunConfig& config, std::ostream& out,
                const std::string& function_path) {
  try {
    Json j = read_json_file(input);
    if (config.mode == CoefficientMode::Exact) return dispatch<GaussianRational>(command, j, config, out, function_path);
    return dispatch<Complex>(command, j, config, out, function_path);
  } catch (const InputError& e) {
    emit(out, status_json("input_error", e.what()));
    return kExitInputError;
  } catch (const ShapeMismatch& e) {
    emit(out, status_json("input_error", e.what()));
    return kExitInputError;
  } catch (const DimensionMismatch& e) {
    emit(out, status_json("input_error", e.what()));
    return kExitInputError;
  } catch (const DegenerateLift& e) {
    emit(out, status_json("input_error", e.what()));
    return kExitInputError;
  } catch (const Json::exception& e) {
    emit(out, status_json("input_error", e.what()));
    return kExitInputError;
  } catch (const SolverStalled& e) {
    emit(out, status_json("stalled", e.what()));
    return kExitInconclusive;
  } catch (const Error& e) {
    emit(out, status_json("failed", e.what()));
    return kExitInconclusive;
  }
}

int run_batch(const std::string& dir, const std::string& command, const RunConfig& config, std::ostream& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    emit(out, status_json("input_error", dir + ": not a directory"));
    return kExitInputError;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  Json rows = Json::array();
  for (const auto& file : files) {
    std::ostringstream buffer;
    int code = run_command(command, file.string(), config, buffer);
    Json row;
    row["file"] = file.filename().string();
    row["exit"] = code;
    Json result = Json::parse(buffer.str(), nullptr, false);
    if (result.is_object()) {
      if (result.contains("status")) row["status"] = result["status"];
      else if (result.contains("certificate")) row["status"] = result["certificate"]["passed"].get<bool>() ? "certified" : "certificate_failed";
      if (result.contains("error")) row["error"] = result["error"];
    }
    rows.push_back(std::move(row));
  }
  Json summary;
  summary["command"] = command;
  summary["count"] = rows.size();
  summary["results"] = std::move(rows);
  emit(out, summary);
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pick-class analysis and realization of rational matrix functions"};
  app.require_subcommand(1);
  RunConfig config;
  std::string form = "schur", mode = "exact", input, function_path, batch_command = "realize";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", config.tol, "Negativity and certificate tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--samples", config.samples, "Sample count")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", config.max_iters, "Gram solver iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "Coefficient mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--form", form, "Realization form")->check(CLI::IsMember({"schur", "transfer", "pencil"}));
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify", "Decide Pick membership"},
      {"reduce", "Reduce to a multi-affine function"},
      {"lift", "Lift to a Cayley-inner function"},
      {"sos", "Factor a PSD matrix polynomial as a sum of squares"},
      {"realize", "Realize a Pick function"},
      {"certify", "Check a realization against a function"},
      {"batch", "Run a command over a directory"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->add_option("input", input, name == "batch" ? "Input directory" : "Input JSON file")->required();
    if (name == "certify") sub->add_option("--function", function_path, "Function JSON the realization must match");
    if (name == "batch")
      sub->add_option("--command", batch_command, "Command per file")->check(CLI::IsMember({"verify", "realize"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }
  if (const char* env = std::getenv("PICKREALIZE_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "PICKREALIZE_SEED: not an unsigned integer\n";
      return kExitInputError;
    }
  }
  config.form = parse_form(form);
  config.mode = mode == "float" ? CoefficientMode::Float : CoefficientMode::Exact;

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "batch") return run_batch(input, batch_command, config, out);
  int code = run_command(command, input, config, out, function_path);
  if (code == kExitInputError) err << "input error in " << input << "\n";
  return code;
}

}  // namespace pickrealize
