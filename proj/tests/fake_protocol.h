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

// Scripted adapter replies shared by the fake adapter process and the
// in-process TCP server used in tests.

#ifndef FLINT_TESTS_FAKE_PROTOCOL_H_
#define FLINT_TESTS_FAKE_PROTOCOL_H_

#include <string>
#include <vector>

#include "flint/dataset.h"
#include "flint/model.h"
#include "flint/text.h"
#include "json.hpp"

namespace flint::testing {

// Modes: ok | labels | wrong-id | count | error | malformed.
inline std::string FakeReply(const std::string& line, const std::string& mode) {
  using json = nlohmann::json;
  const json req = json::parse(line);
  const std::string id = req.at("id").get<std::string>();
  if (mode == "malformed") return "{not json";
  json resp;
  resp["id"] = mode == "wrong-id" ? "bogus" : id;
  if (mode == "error") {
    resp["error"] = "model exploded";
    return resp.dump();
  }
  const Task task = ParseTask(req.at("task").get<std::string>());
  const std::string type = req.at("type").get<std::string>();
  std::vector<Sample> samples;
  std::size_t record = 0;
  for (json s : req.at("samples")) {
    if (type == "rewrite") {
      resp["rewrites"].push_back(ToUpper(s.at("text").get<std::string>()));
      continue;
    }
    // Gold fields are never sent; fill placeholders so samples validate.
    if (task == Task::kSequenceLabeling) {
      s["tags"] = std::vector<std::string>(s.at("tokens").size(), "O");
    } else if (task == Task::kAspectSentiment) {
      for (json& a : s["aspects"]) a["polarity"] = "neutral";
    } else {
      s["label"] = "?";
    }
    samples.push_back(SampleFromJson(s, task, record++));
  }
  if (type == "rewrite") {
    if (mode == "count") resp["rewrites"].erase(resp["rewrites"].size() - 1);
    return resp.dump();
  }
  if (type == "score") {
    for (const Sample& s : samples) {
      resp["scores"].push_back(static_cast<double>(s.main_field().size()));
    }
    if (mode == "count") resp["scores"].erase(resp["scores"].size() - 1);
    return resp.dump();
  }
  std::vector<Prediction> preds;
  if (task == Task::kSequenceLabeling) {
    GazetteerTagger tagger(DefaultResources().gazetteer);
    preds = tagger.Predict(task, samples);
  } else {
    KeywordModel model(DefaultResources().keywords, "negative", true);
    preds = model.Predict(task, samples);
    if (mode != "labels") resp["classes"] = model.classes();
  }
  resp["predictions"] = json::array();
  for (const Prediction& p : preds) {
    if (task == Task::kSequenceLabeling) {
      resp["predictions"].push_back(p.tags);
    } else {
      resp["predictions"].push_back(p.label);
      if (mode != "labels") resp["scores"].push_back(p.scores);
    }
  }
  if (mode == "count") resp["predictions"].erase(resp["predictions"].size() - 1);
  return resp.dump();
}

}  // namespace flint::testing

#endif  // FLINT_TESTS_FAKE_PROTOCOL_H_
