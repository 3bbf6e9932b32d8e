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

// External model adapters: line-delimited JSON over a child process's
// standard streams or a TCP socket.
//
// Request, one line:
//   {"id":"<uuid>","type":"predict","task":"classification",
//    "samples":[{"id":..,"text":..},...]}
// Response, one line:
//   {"id":"<same>","predictions":["pos",...],"scores":[[0.9,0.1],...]}
// "score" requests answer "scores":[float,...] and "rewrite" requests
// answer "rewrites":[string,...]. Failures answer {"id":..,"error":".."}.
// Samples carry their task fields but never their gold labels.

#ifndef FLINT_ADAPTER_H_
#define FLINT_ADAPTER_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "flint/model.h"

namespace flint {

// A bidirectional line channel. Exchange sends one line and returns the
// next response line (without the newline).
class Transport {
 public:
  virtual ~Transport() = default;
  // Throws AdapterTimeout, AdapterUnavailable (peer gone) or ProtocolError
  // (peer closed mid-line).
  virtual std::string Exchange(const std::string& line,
                               std::chrono::milliseconds timeout) = 0;
  // Drops the connection; the next Exchange reconnects.
  virtual void Reset() = 0;
};

std::unique_ptr<Transport> MakeExecTransport(std::string command);
std::unique_ptr<Transport> MakeTcpTransport(std::string host, int port);

// Protocol encoding, exposed for tests and the fake adapter.
nlohmann::ordered_json RequestSample(const Sample& sample);
nlohmann::ordered_json MakeRequest(const std::string& id, const std::string& type,
                                   Task task, const nlohmann::ordered_json& samples);
// Parses a response line and checks its id and the count of `key` entries.
nlohmann::json ParseResponse(const std::string& line, const std::string& id,
                             const std::string& key, std::size_t count);

class ExternalModel : public Model {
 public:
  ExternalModel(std::string spec, std::unique_ptr<Transport> transport,
                std::size_t batch_size, std::chrono::milliseconds timeout);
  std::string id() const override { return spec_; }
  std::vector<Prediction> Predict(Task task,
                                  const std::vector<Sample>& samples) override;
  std::vector<double> Score(Task task, const std::vector<Sample>& samples,
                            const std::string& metric) override;
  std::vector<std::string> Rewrite(Task task,
                                   const std::vector<std::string>& texts) override;

 private:
  // Sends one request with a single retry on timeout or lost peer.
  nlohmann::json Call(const std::string& type, Task task,
                      const nlohmann::ordered_json& samples,
                      const std::string& key, std::size_t count,
                      const nlohmann::ordered_json& extra = nullptr);
  std::string NextId();

  std::string spec_;
  std::unique_ptr<Transport> transport_;
  std::size_t batch_size_;
  std::chrono::milliseconds timeout_;
  std::uint64_t counter_ = 0;
};

}  // namespace flint

#endif  // FLINT_ADAPTER_H_
