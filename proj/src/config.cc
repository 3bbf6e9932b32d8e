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

#include "flint/config.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "flint/error.h"
#include "flint/random.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

void CheckKeys(const json& j, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (allowed.count(k) == 0) {
      throw ConfigError("unknown key \"" + k + "\" in " + where);
    }
  }
}

template <typename T>
T Get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

std::string Resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

const std::set<std::string> kPerturbKeys = {"word_ratio", "max_edits_per_word",
                                            "min_word_len"};

}  // namespace

TransformOptions TransformSpec::Options() const {
  TransformOptions o;
  o.max_outputs = max_outputs;
  for (const auto& [k, v] : params.items()) {
    try {
      if (k == "word_ratio") {
        o.perturb.word_ratio = v.get<double>();
      } else if (k == "max_edits_per_word") {
        o.perturb.max_edits_per_word = v.get<int>();
      } else if (k == "min_word_len") {
        o.perturb.min_word_len = v.get<std::size_t>();
      } else {
        o.extra[k] = v;
      }
    } catch (const json::exception&) {
      throw ConfigError(name + " parameter \"" + k + "\" has the wrong type");
    }
  }
  return o;
}

std::string CombinationName(const std::vector<std::string>& members) {
  std::string out;
  for (const std::string& m : members) {
    if (!out.empty()) out += '+';
    out += m;
  }
  return out;
}

void CheckCombination(const std::vector<std::string>& members, Task task) {
  if (members.size() < 2) {
    throw ConfigError("a combination needs at least two transformations");
  }
  std::map<std::string, std::string> label_editors;
  for (const std::string& name : members) {
    const auto t = MakeTransform(name);
    if (!t->Supports(task)) {
      throw ConfigError(name + " does not support task " + std::string(TaskName(task)));
    }
    if (t->kind() != TransformKind::kPerSample) {
      throw ConfigError(name + " transforms windows or generates samples and "
                        "cannot be combined");
    }
    const std::string key = t->label_key();
    if (key.empty()) continue;
    auto [it, fresh] = label_editors.emplace(key, name);
    if (!fresh) {
      throw ConfigError("combination " + CombinationName(members) + ": " +
                        it->second + " and " + name + " both rewrite " + key);
    }
  }
}

Config ParseConfig(const json& j, const std::string& base_dir) {
  Config c;
  if (j.is_null()) {
    c.transforms.clear();
    for (const std::string& name : DefaultTransforms(c.task)) {
      c.transforms.push_back({name, json::object(), 1});
    }
    return c;
  }
  CheckKeys(j, "config",
            {"task", "seed", "dataset", "transformations", "combinations",
             "subpopulations", "validators", "model", "attack", "report",
             "resources", "output_dir"});
  if (j.contains("task")) c.task = ParseTask(Get<std::string>(j, "task", "config"));
  if (j.contains("seed")) c.seed = Get<std::uint64_t>(j, "seed", "config");
  if (j.contains("dataset")) {
    const json& d = j["dataset"];
    if (d.is_string()) {
      c.dataset_path = Resolve(d.get<std::string>(), base_dir);
    } else {
      CheckKeys(d, "dataset", {"path", "format"});
      c.dataset_path = Resolve(Get<std::string>(d, "path", "dataset"), base_dir);
      if (d.contains("format")) {
        c.format = ParseDataFormat(Get<std::string>(d, "format", "dataset"));
      }
    }
  }
  if (j.contains("transformations")) {
    const json& list = j["transformations"];
    if (!list.is_array()) throw ConfigError("transformations must be a list");
    for (const json& t : list) {
      TransformSpec spec;
      if (t.is_string()) {
        spec.name = t.get<std::string>();
      } else {
        CheckKeys(t, "transformation", {"name", "params", "max_outputs"});
        spec.name = Get<std::string>(t, "name", "transformation");
        if (t.contains("params")) {
          spec.params = t["params"];
          if (!spec.params.is_object()) {
            throw ConfigError(spec.name + " params must be an object");
          }
        }
        if (t.contains("max_outputs")) {
          spec.max_outputs = Get<std::size_t>(t, "max_outputs", spec.name);
        }
      }
      const auto made = MakeTransform(spec.name, spec.Options());
      if (!made->Supports(c.task)) {
        throw ConfigError(spec.name + " does not support task " +
                          std::string(TaskName(c.task)));
      }
      c.transforms.push_back(std::move(spec));
    }
  } else {
    for (const std::string& name : DefaultTransforms(c.task)) {
      c.transforms.push_back({name, json::object(), 1});
    }
  }
  if (j.contains("combinations")) {
    if (!j["combinations"].is_array()) throw ConfigError("combinations must be a list");
    for (const json& combo : j["combinations"]) {
      std::vector<std::string> members;
      try {
        members = combo.get<std::vector<std::string>>();
      } catch (const json::exception&) {
        throw ConfigError("each combination is a list of transformation names");
      }
      CheckCombination(members, c.task);
      c.combinations.push_back(std::move(members));
    }
  }
  if (j.contains("subpopulations")) {
    if (!j["subpopulations"].is_array()) {
      throw ConfigError("subpopulations must be a list");
    }
    for (const json& s : j["subpopulations"]) c.slices.push_back(SliceSpec::FromJson(s));
  }
  if (j.contains("validators")) c.validator = ValidatorConfig::FromJson(j["validators"]);
  if (j.contains("model")) {
    const json& m = j["model"];
    if (m.is_string()) {
      c.model.spec = m.get<std::string>();
    } else {
      CheckKeys(m, "model",
                {"spec", "majority_class", "keywords", "batch_size", "timeout_ms"});
      if (m.contains("spec")) c.model.spec = Get<std::string>(m, "spec", "model");
      if (m.contains("majority_class")) {
        c.model.majority_class = Get<std::string>(m, "majority_class", "model");
      }
      if (m.contains("keywords")) {
        c.model.keywords =
            Get<std::map<std::string, std::vector<std::string>>>(m, "keywords", "model");
      }
      if (m.contains("batch_size")) {
        c.model.batch_size = Get<std::size_t>(m, "batch_size", "model");
        if (c.model.batch_size == 0) throw ConfigError("model.batch_size must be >= 1");
      }
      if (m.contains("timeout_ms")) {
        c.model.timeout_ms = Get<std::int64_t>(m, "timeout_ms", "model");
        if (c.model.timeout_ms <= 0) throw ConfigError("model.timeout_ms must be > 0");
      }
    }
  }
  if (j.contains("attack")) {
    const json& a = j["attack"];
    CheckKeys(a, "attack", {"enabled", "budget"});
    c.attack = a.value("enabled", true);
    if (a.contains("budget") && !a["budget"].is_null()) {
      c.attack_budget = Get<std::size_t>(a, "budget", "attack");
    }
  }
  if (j.contains("report")) {
    const json& r = j["report"];
    CheckKeys(r, "report", {"formats", "worst_k"});
    if (r.contains("formats")) {
      c.report_formats = Get<std::vector<std::string>>(r, "formats", "report");
      for (const std::string& f : c.report_formats) {
        if (f != "json" && f != "markdown" && f != "latex") {
          throw ConfigError("unknown report format \"" + f + "\"");
        }
      }
    }
    if (r.contains("worst_k")) c.worst_k = Get<std::size_t>(r, "worst_k", "report");
  }
  if (j.contains("resources")) {
    c.resource_dir = Resolve(Get<std::string>(j, "resources", "config"), base_dir);
  }
  if (j.contains("output_dir")) {
    c.output_dir = Resolve(Get<std::string>(j, "output_dir", "config"), base_dir);
  }
  return c;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json j;
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
  }
  return ParseConfig(j, fs::path(path).parent_path().string());
}

ojson Config::ToJson() const {
  ojson j;
  j["task"] = TaskName(task);
  j["seed"] = seed;
  ojson d;
  d["path"] = dataset_path;
  d["format"] = format == DataFormat::kCsv ? "csv" : "jsonl";
  j["dataset"] = std::move(d);
  ojson ts = ojson::array();
  for (const TransformSpec& t : transforms) {
    ojson tj;
    tj["name"] = t.name;
    tj["params"] = ojson(t.params);
    tj["max_outputs"] = t.max_outputs;
    ts.push_back(std::move(tj));
  }
  j["transformations"] = std::move(ts);
  j["combinations"] = combinations;
  ojson slices_json = ojson::array();
  for (const SliceSpec& s : slices) slices_json.push_back(s.ToJson());
  j["subpopulations"] = std::move(slices_json);
  j["validators"] = validator.ToJson();
  ojson m;
  m["spec"] = model.spec;
  if (model.majority_class) m["majority_class"] = *model.majority_class;
  if (!model.keywords.empty()) m["keywords"] = model.keywords;
  m["batch_size"] = model.batch_size;
  m["timeout_ms"] = model.timeout_ms;
  j["model"] = std::move(m);
  ojson a;
  a["enabled"] = attack;
  a["budget"] = attack_budget ? ojson(*attack_budget) : ojson();
  j["attack"] = std::move(a);
  ojson r;
  r["formats"] = report_formats;
  r["worst_k"] = worst_k;
  j["report"] = std::move(r);
  j["resources"] = resource_dir;
  j["output_dir"] = output_dir;
  return j;
}

std::string ConfigHash(const Config& config) {
  ojson j = config.ToJson();
  // Where results go does not change what they are.
  j.erase("output_dir");
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(j.dump())));
  return buf;
}

}  // namespace flint
