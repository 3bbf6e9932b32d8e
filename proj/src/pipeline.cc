// Copyright 2026 The Flint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flint/pipeline.h"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <utility>

#include "flint/error.h"
#include "flint/evaluate.h"
#include "flint/model.h"
#include "flint/random.h"
#include "flint/report.h"
#include "flint/subpopulation.h"
#include "flint/validate.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

const std::vector<std::string>& PipelineModes() {
  static const std::vector<std::string> kModes = {
      "transform", "slice", "validate", "evaluate", "attack", "report", "augment"};
  return kModes;
}

std::string OutputFileName(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), ':', '_');
  std::replace(out.begin(), out.end(), '/', '_');
  return out + ".jsonl";
}

namespace {

// Runs fn(i) for i in [0, n) on a few threads. The first failing index's
// exception is rethrown, so failures are as deterministic as results.
template <typename Fn>
void ParallelFor(std::size_t n, Fn fn) {
  const std::size_t threads = std::max<std::size_t>(
      1, std::min<std::size_t>({n, std::thread::hardware_concurrency(), 8}));
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t t) {
    for (std::size_t i = t; i < n; i += threads) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

[[noreturn]] void Rethrow(const std::string& where) {
  try {
    throw;
  } catch (const NotApplicable&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.family(), where + ": " + e.what());
  }
}

}  // namespace

TransformRun RunTransform(const Transform& transform, const Dataset& dataset,
                          std::uint64_t seed) {
  TransformRun run;
  run.name = transform.name();
  const std::vector<Sample>& samples = dataset.samples;
  const std::string stage = "transform " + transform.name();
  if (transform.kind() == TransformKind::kGenerative) {
    const std::size_t count =
        transform.options().extra.value("count", std::max<std::size_t>(1, samples.size()));
    try {
      run.outputs = transform.Generate(dataset.task, count, SampleSeed(seed, "", run.name));
    } catch (...) {
      Rethrow(stage);
    }
    return run;
  }
  if (transform.kind() == TransformKind::kWindow) {
    const std::size_t w = transform.window();
    for (std::size_t i = 0; i + w <= samples.size(); i += w) {
      try {
        run.outputs.push_back(transform.ApplyWindow(
            std::span<const Sample>(samples.data() + i, w),
            SampleSeed(seed, samples[i].id, run.name)));
      } catch (const NotApplicable&) {
        ++run.not_applicable;
      } catch (...) {
        Rethrow(stage + ", sample " + samples[i].id);
      }
    }
    return run;
  }
  std::vector<std::vector<TransformOutput>> per(samples.size());
  std::vector<char> skipped(samples.size(), 0);
  ParallelFor(samples.size(), [&](std::size_t i) {
    try {
      per[i] = transform.Apply(samples[i], SampleSeed(seed, samples[i].id, run.name));
    } catch (const NotApplicable&) {
      skipped[i] = 1;
    } catch (...) {
      Rethrow(stage + ", sample " + samples[i].id);
    }
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    run.not_applicable += skipped[i];
    for (TransformOutput& o : per[i]) run.outputs.push_back(std::move(o));
  }
  return run;
}

TransformRun RunCombination(const std::vector<const Transform*>& steps,
                            const Dataset& dataset, std::uint64_t seed) {
  std::vector<std::string> names;
  for (const Transform* t : steps) names.push_back(t->name());
  TransformRun run;
  run.name = CombinationName(names);
  const std::vector<Sample>& samples = dataset.samples;
  std::vector<std::vector<TransformOutput>> per(samples.size());
  ParallelFor(samples.size(), [&](std::size_t i) {
    const Sample& original = samples[i];
    // Partial chains: (sample after k steps, trace against the original).
    std::vector<TransformOutput> frontier(1);
    frontier[0].transformed = original;
    ojson params = ojson::array();
    for (const Transform* t : steps) {
      params.push_back(t->Describe());
      std::vector<TransformOutput> next;
      for (const TransformOutput& prev : frontier) {
        std::vector<TransformOutput> outs;
        try {
          outs = t->Apply(prev.transformed,
                          SampleSeed(seed, prev.transformed.id, t->name()));
        } catch (const NotApplicable&) {
          continue;
        } catch (...) {
          Rethrow("combination " + run.name + ", sample " + prev.transformed.id);
        }
        for (TransformOutput& o : outs) {
          if (t != steps.front()) o.trace = Compose(original, prev.trace, o.trace);
          next.push_back(std::move(o));
        }
      }
      frontier = std::move(next);
    }
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      TransformOutput& o = frontier[k];
      o.original_id = original.id;
      o.transform = run.name;
      o.params = ojson::object();
      o.params["steps"] = params;
      o.transformed.id = original.id + "::" + run.name;
      if (k > 0) o.transformed.id += "#" + std::to_string(k);
      per[i].push_back(std::move(o));
    }
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (per[i].empty()) ++run.not_applicable;
    for (TransformOutput& o : per[i]) run.outputs.push_back(std::move(o));
  }
  return run;
}

namespace {

std::size_t CountLines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class Run {
 public:
  Run(const Config& config, const std::string& mode)
      : config_(config), mode_(mode), dir_(fs::path(config.output_dir) / mode) {
    if (std::find(PipelineModes().begin(), PipelineModes().end(), mode) ==
        PipelineModes().end()) {
      throw ConfigError("unknown mode \"" + mode + "\"");
    }
    if (config.dataset_path.empty()) throw ConfigError("no dataset configured");
    if (!config.resource_dir.empty()) {
      owned_resources_ = std::make_unique<Resources>(Resources::Load(config.resource_dir));
    }
    dataset_ = LoadDataset(config.dataset_path, config.format, config.task);
    dataset_.name = fs::path(config.dataset_path).stem().string();
    manifest_["mode"] = mode;
    manifest_["config_hash"] = ConfigHash(config);
    manifest_["seed"] = config.seed;
    manifest_["task"] = TaskName(config.task);
    manifest_["dataset"] = dataset_.name;
    manifest_["dataset_size"] = dataset_.samples.size();
    manifest_["artifacts"] = ojson::array();
  }

  RunResult Execute() {
    const bool needs_model = mode_ == "evaluate" || mode_ == "attack" || mode_ == "report";
    if (needs_model && config_.model.spec.empty()) {
      throw ConfigError(mode_ + " needs a model (--model or model.spec)");
    }
    fs::create_directories(dir_);
    if (mode_ == "transform") {
      for (const TransformRun& r : Transformed()) {
        Write(OutputFileName(r.name), OutputsJsonl(r.outputs),
              {{"transform", r.name}, {"not_applicable", r.not_applicable}});
      }
    } else if (mode_ == "slice") {
      for (const Slice& s : Slices()) Write(OutputFileName(s.spec.Name()), SliceToJsonl(s));
    } else if (mode_ == "validate") {
      ValidatorConfig v = config_.validator;
      v.enabled = true;
      std::vector<Rejection> log;
      for (const TransformRun& r : Validated(v, &log)) {
        Write(OutputFileName(r.name), OutputsJsonl(r.outputs), {{"transform", r.name}});
      }
      Write("rejections.jsonl", RejectionsToJsonl(log));
    } else if (mode_ == "evaluate") {
      Evaluator eval(model(), dataset_);
      std::string rows;
      for (const EvalRow& row : Evaluate(eval)) rows += row.ToJson().dump() + "\n";
      Write("results.jsonl", rows);
      ojson summary;
      summary["model"] = model().id();
      summary["overall"] = ojson(eval.Overall());
      Write("summary.json", summary.dump(2) + "\n");
    } else if (mode_ == "attack") {
      const AttackSummary s = Attack();
      Write("summary.json", s.ToJson().dump(2) + "\n");
    } else if (mode_ == "report") {
      ReportMode();
    } else {
      Augment();
    }
    const std::string text = manifest_.dump(2) + "\n";
    std::ofstream((dir_ / "manifest.json").string(), std::ios::binary) << text;
    return {dir_.string(), manifest_};
  }

 private:
  const Resources& resources() const {
    return owned_resources_ ? *owned_resources_ : DefaultResources();
  }

  Model& model() {
    if (!model_) {
      ModelOptions o;
      o.majority_class = config_.model.majority_class;
      o.keywords = config_.model.keywords;
      o.batch_size = config_.model.batch_size;
      o.timeout = std::chrono::milliseconds(config_.model.timeout_ms);
      o.resources = &resources();
      model_ = MakeModel(config_.model.spec, o, &dataset_);
    }
    return *model_;
  }

  std::unique_ptr<Transform> Make(const TransformSpec& spec) {
    TransformOptions o = spec.Options();
    o.resources = &resources();
    if (!config_.model.spec.empty()) {
      o.rewriter = [this](Task task, const std::vector<std::string>& texts) {
        std::lock_guard<std::mutex> lock(model_mu_);
        return model().Rewrite(task, texts);
      };
    }
    return MakeTransform(spec.name, o);
  }

  const TransformSpec* Find(const std::string& name) const {
    for (const TransformSpec& s : config_.transforms) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  std::vector<TransformRun> Transformed() {
    std::vector<TransformRun> runs;
    for (const TransformSpec& spec : config_.transforms) {
      runs.push_back(RunTransform(*Make(spec), dataset_, config_.seed));
    }
    for (const std::vector<std::string>& combo : config_.combinations) {
      std::vector<std::unique_ptr<Transform>> owned;
      std::vector<const Transform*> steps;
      for (const std::string& name : combo) {
        const TransformSpec* listed = Find(name);
        owned.push_back(Make(listed != nullptr ? *listed : TransformSpec{name}));
        steps.push_back(owned.back().get());
      }
      runs.push_back(RunCombination(steps, dataset_, config_.seed));
    }
    return runs;
  }

  std::vector<TransformRun> Validated(const ValidatorConfig& v,
                                      std::vector<Rejection>* log) {
    std::vector<TransformRun> runs = Transformed();
    if (!v.enabled) return runs;
    std::map<std::string, const Sample*> originals;
    for (const Sample& s : dataset_.samples) originals[s.id] = &s;
    MetricScorer scorer;
    if (v.needs_adapter()) {
      if (config_.model.spec.empty()) {
        throw ConfigError("adapter-scored validators need a model");
      }
      scorer = [this](const std::string& metric, const std::vector<const Sample*>& orig,
                      const std::vector<const Sample*>& trans) {
        std::vector<Sample> batch;
        for (std::size_t i = 0; i < trans.size(); ++i) {
          Sample s = *trans[i];
          if (orig[i] != nullptr) s.meta["reference"] = orig[i]->main_field().raw();
          batch.push_back(std::move(s));
        }
        return model().Score(config_.task, batch, metric);
      };
    }
    for (TransformRun& r : runs) {
      FilterResult f = Filter(r.outputs, originals, v, scorer);
      r.outputs = std::move(f.kept);
      log->insert(log->end(), f.log.begin(), f.log.end());
      kept_ += r.outputs.size();
      rejected_ += f.rejected.size();
    }
    for (const Rejection& rej : *log) ++rejected_by_metric_[rej.metric];
    return runs;
  }

  std::vector<Slice> Slices() {
    std::vector<SliceSpec> specs = config_.slices;
    if (specs.empty()) {
      specs.push_back({"length", SliceEnd::kTop, 0.2});
      specs.push_back({"length", SliceEnd::kBottom, 0.2});
    }
    std::vector<Slice> out;
    for (const SliceSpec& spec : specs) {
      out.push_back(MakeSlice(dataset_, spec, resources()));
    }
    return out;
  }

  std::vector<EvalRow> Evaluate(Evaluator& eval) {
    std::vector<EvalRow> rows;
    std::vector<Rejection> log;
    for (const TransformRun& r : Validated(config_.validator, &log)) {
      const bool combo = r.name.find('+') != std::string::npos;
      rows.push_back(eval.Transformed(r.name, r.outputs, combo ? "combination" : "transform"));
    }
    if (!config_.slices.empty()) {
      for (const Slice& s : Slices()) rows.push_back(eval.Sliced(s));
    }
    return rows;
  }

  AttackSummary Attack() {
    std::vector<AttackResult> results;
    std::string lines;
    for (const Sample& s : dataset_.samples) {
      try {
        results.push_back(GreedyAttack(model(), s, resources(), config_.attack_budget));
      } catch (...) {
        Rethrow("attack, sample " + s.id);
      }
      lines += results.back().ToJson().dump() + "\n";
    }
    Write("attacks.jsonl", lines);
    return Summarize(results);
  }

  void ReportMode() {
    AnalyzeInput in;
    in.model = model().id();
    in.dataset = dataset_.name;
    Evaluator eval(model(), dataset_);
    in.rows = Evaluate(eval);
    if (config_.attack) in.attack = Attack();
    if (config_.validator.enabled) {
      in.validator = ValidatorStats{kept_, rejected_, rejected_by_metric_};
    }
    in.human_eval = resources().human_eval;
    in.worst_k = config_.worst_k;
    const RobustnessReport report = Analyze(in);
    for (const std::string& f : config_.report_formats) {
      const std::string ext = f == "markdown" ? "md" : f == "latex" ? "tex" : "json";
      Write("report." + ext, Render(report, f));
    }
    Write("plots.json", PlotData(report).dump(2) + "\n");
  }

  void Augment() {
    std::string lines = ToJsonl(dataset_);
    std::vector<Rejection> log;
    for (const TransformRun& r : Validated(config_.validator, &log)) {
      for (const TransformOutput& o : r.outputs) {
        lines += SampleToJson(o.transformed).dump() + "\n";
      }
    }
    Write("train.jsonl", lines);
  }

  static std::string OutputsJsonl(const std::vector<TransformOutput>& outputs) {
    std::string out;
    for (const TransformOutput& o : outputs) out += OutputToJson(o).dump() + "\n";
    return out;
  }

  void Write(const std::string& file, const std::string& text, ojson extra = nullptr) {
    std::ofstream out((dir_ / file).string(), std::ios::binary);
    out << text;
    if (!out) throw ConfigError("cannot write " + (dir_ / file).string());
    ojson a;
    a["file"] = file;
    a["lines"] = CountLines(text);
    if (extra.is_object()) {
      for (const auto& [k, v] : extra.items()) a[k] = v;
    }
    manifest_["artifacts"].push_back(std::move(a));
  }

  const Config& config_;
  std::string mode_;
  fs::path dir_;
  std::unique_ptr<Resources> owned_resources_;
  Dataset dataset_;
  std::unique_ptr<Model> model_;
  std::mutex model_mu_;
  ojson manifest_;
  std::size_t kept_ = 0;
  std::size_t rejected_ = 0;
  std::map<std::string, std::size_t> rejected_by_metric_;
};

}  // namespace

RunResult RunPipeline(const Config& config, const std::string& mode) {
  return Run(config, mode).Execute();
}

}  // namespace flint
