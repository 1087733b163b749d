#include "tracelogic/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tracelogic {

EncodedSpec encode_spec(std::string_view text, const std::string& name, const EncodeOptions& opt) {
  EncodedSpec enc;
  enc.spec = parse_spec(text);
  TraceMode mode = enc.spec.mode();
  if (opt.traces) mode = *opt.traces == 1 ? TraceMode::Single : TraceMode::Pair;
  enc.model = std::make_shared<const ProgramModel>(enc.spec.program, mode);

  SemanticsEncoder semantics(*enc.model, opt.mutation);
  PropertyBuilder properties(semantics);
  Conjecture conj = properties.build(enc.spec);

  ReasoningTask& task = enc.task;
  task.name = name;
  task.mode = mode;
  task.signature = enc.model->signature();
  task.theory = fol::nat_order_axioms();
  task.axioms = semantics.encode_program();
  enc.semantics_count = task.axioms.size();
  if (opt.lemmas) {
    LemmaGenerator lemmas(semantics);
    for (auto& l : lemmas.generate_all(opt.lemma_config)) task.axioms.push_back(std::move(l.lemma));
  }
  enc.lemma_count = task.axioms.size() - enc.semantics_count;
  task.conjecture = conj.formula;
  return enc;
}

EncodedSpec encode_file(const std::filesystem::path& path, const EncodeOptions& opt) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return encode_spec(ss.str(), path.stem().string(), opt);
  } catch (const ParseError& e) {
    throw ParseError(e.pos(), path.string() + ": " + e.message());
  }
}

std::filesystem::path write_smtlib(const EncodedSpec& enc, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto path = out_dir / (enc.task.name + ".smt2");
  std::ofstream f(path, std::ios::binary);
  f << emit_smtlib(enc.task);
  if (!f) throw Error("cannot write " + path.string());
  return path;
}

std::vector<NamedInput> load_inputs(const std::filesystem::path& dir) {
  std::vector<NamedInput> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".in") {
      out.push_back({entry.path().filename().string(), read_input_file(entry.path())});
    }
  }
  if (ec) throw Error("cannot read input directory " + dir.string() + ": " + ec.message());
  if (out.empty()) throw Error("no .in files in " + dir.string());
  std::sort(out.begin(), out.end(),
            [](const NamedInput& a, const NamedInput& b) { return a.name < b.name; });
  return out;
}

std::filesystem::path inputs_dir_for(const std::filesystem::path& spec) {
  auto dir = spec;
  return dir.replace_extension(".inputs");
}

bool CheckResult::pass() const { return failed_runs() == 0; }

std::size_t CheckResult::failed_runs() const {
  return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [](const CheckRun& r) {
    return !r.report || !r.report->pass();
  }));
}

OracleReport check_records(const EncodedSpec& enc, const std::vector<const Input*>& inputs,
                           const OracleOptions& options) {
  std::vector<TraceRecord> records;
  for (const auto* in : inputs) records.push_back(run(enc.model->program(), *in));
  std::vector<const TraceRecord*> ptrs;
  for (const auto& r : records) ptrs.push_back(&r);
  return check_task(enc.task, *enc.model, ptrs, options);
}

CheckResult check_inputs(const EncodedSpec& enc, const std::vector<NamedInput>& inputs,
                         const OracleOptions& options) {
  CheckResult result;
  // run each input once; pairs share the records
  std::vector<std::optional<TraceRecord>> records;
  std::vector<std::string> errors;
  for (const auto& in : inputs) {
    try {
      records.emplace_back(run(enc.model->program(), in.input));
      errors.emplace_back();
    } catch (const Error& e) {
      records.emplace_back();
      errors.emplace_back(e.what());
    }
  }

  auto evaluate = [&](std::string label, std::vector<std::size_t> idx) {
    CheckRun run;
    run.inputs = std::move(label);
    std::vector<const TraceRecord*> ptrs;
    for (auto i : idx) {
      if (!records[i]) {
        run.error = inputs[i].name + ": " + errors[i];
        result.runs.push_back(std::move(run));
        return;
      }
      ptrs.push_back(&*records[i]);
    }
    run.report = check_task(enc.task, *enc.model, ptrs, options);
    result.runs.push_back(std::move(run));
  };

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!enc.model->relational()) {
      evaluate(inputs[i].name, {i});
      continue;
    }
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      evaluate(inputs[i].name + "," + inputs[j].name, {i, j});
    }
  }
  return result;
}

}  // namespace tracelogic
