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

#include "flint/adapter.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <utility>

#include "flint/dataset.h"
#include "flint/error.h"
#include "flint/random.h"

namespace flint {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

// A dead peer must surface as EPIPE, not kill the process.
void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

int RemainingMs(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - Clock::now());
  return static_cast<int>(std::max<std::int64_t>(0, left.count()));
}

// Line I/O over a pair of descriptors (the same one for sockets).
class FdChannel : public Transport {
 public:
  std::string Exchange(const std::string& line,
                       std::chrono::milliseconds timeout) override {
    if (!connected()) Connect();
    const auto deadline = Clock::now() + timeout;
    WriteAll(line + "\n", deadline);
    return ReadLine(deadline);
  }

 protected:
  virtual bool connected() const = 0;
  virtual void Connect() = 0;
  virtual std::string Describe() const = 0;

  void WriteAll(const std::string& data, Clock::time_point deadline) {
    std::size_t done = 0;
    while (done < data.size()) {
      pollfd p{write_fd_, POLLOUT, 0};
      const int r = ::poll(&p, 1, RemainingMs(deadline));
      if (r == 0) throw AdapterTimeout(Describe() + ": timed out sending request");
      if (r < 0) {
        if (errno == EINTR) continue;
        throw AdapterUnavailable(Describe() + ": " + std::strerror(errno));
      }
      const ssize_t n = ::write(write_fd_, data.data() + done, data.size() - done);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw AdapterUnavailable(Describe() + ": " + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  std::string ReadLine(Clock::time_point deadline) {
    for (;;) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      pollfd p{read_fd_, POLLIN, 0};
      const int r = ::poll(&p, 1, RemainingMs(deadline));
      if (r == 0) throw AdapterTimeout(Describe() + ": no response in time");
      if (r < 0) {
        if (errno == EINTR) continue;
        throw AdapterUnavailable(Describe() + ": " + std::strerror(errno));
      }
      char chunk[4096];
      const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw AdapterUnavailable(Describe() + ": " + std::strerror(errno));
      }
      if (n == 0) {
        if (!buffer_.empty()) {
          buffer_.clear();
          throw ProtocolError(Describe() + ": truncated response line");
        }
        throw AdapterUnavailable(Describe() + ": connection closed");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  int read_fd_ = -1;
  int write_fd_ = -1;
  std::string buffer_;
};

class ExecTransport : public FdChannel {
 public:
  explicit ExecTransport(std::string command) : command_(std::move(command)) {}
  ~ExecTransport() override { Reset(); }

  void Reset() override {
    if (write_fd_ >= 0) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    read_fd_ = write_fd_ = -1;
    buffer_.clear();
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
  }

 protected:
  bool connected() const override { return pid_ > 0; }
  std::string Describe() const override { return "adapter \"" + command_ + "\""; }

  void Connect() override {
    IgnoreSigpipe();
    int to_child[2];
    int from_child[2];
    if (::pipe2(to_child, O_CLOEXEC) != 0) {
      throw AdapterUnavailable(Describe() + ": pipe: " + std::strerror(errno));
    }
    if (::pipe2(from_child, O_CLOEXEC) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw AdapterUnavailable(Describe() + ": pipe: " + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
      for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
        ::close(fd);
      }
      throw AdapterUnavailable(Describe() + ": fork: " + std::strerror(errno));
    }
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    pid_ = pid;
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
  }

 private:
  std::string command_;
  pid_t pid_ = -1;
};

class TcpTransport : public FdChannel {
 public:
  TcpTransport(std::string host, int port) : host_(std::move(host)), port_(port) {}
  ~TcpTransport() override { Reset(); }

  void Reset() override {
    if (read_fd_ >= 0) ::close(read_fd_);
    read_fd_ = write_fd_ = -1;
    buffer_.clear();
  }

 protected:
  bool connected() const override { return read_fd_ >= 0; }
  std::string Describe() const override {
    return "adapter tcp:" + host_ + ":" + std::to_string(port_);
  }

  void Connect() override {
    IgnoreSigpipe();
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    const int rc = ::getaddrinfo(host_.c_str(), std::to_string(port_).c_str(),
                                 &hints, &found);
    if (rc != 0) {
      throw AdapterUnavailable(Describe() + ": " + ::gai_strerror(rc));
    }
    int fd = -1;
    for (addrinfo* a = found; a != nullptr; a = a->ai_next) {
      fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(found);
    if (fd < 0) throw AdapterUnavailable(Describe() + ": connection refused");
    read_fd_ = write_fd_ = fd;
  }

 private:
  std::string host_;
  int port_;
};

}  // namespace

std::unique_ptr<Transport> MakeExecTransport(std::string command) {
  return std::make_unique<ExecTransport>(std::move(command));
}

std::unique_ptr<Transport> MakeTcpTransport(std::string host, int port) {
  return std::make_unique<TcpTransport>(std::move(host), port);
}

ojson RequestSample(const Sample& sample) {
  ojson j = SampleToJson(sample);
  j.erase("label");
  j.erase("tags");
  j.erase("frozen");
  if (j.contains("aspects")) {
    for (ojson& a : j["aspects"]) a.erase("polarity");
  }
  return j;
}

ojson MakeRequest(const std::string& id, const std::string& type, Task task,
                  const ojson& samples) {
  ojson j;
  j["id"] = id;
  j["type"] = type;
  j["task"] = TaskName(task);
  j["samples"] = samples;
  return j;
}

json ParseResponse(const std::string& line, const std::string& id,
                   const std::string& key, std::size_t count) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed response: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("response is not a JSON object");
  if (!j.contains("id") || !j["id"].is_string() || j["id"] != id) {
    throw ProtocolError("response id does not match request " + id);
  }
  if (j.contains("error")) {
    throw ProtocolError("adapter error: " +
                        (j["error"].is_string() ? j["error"].get<std::string>()
                                                : j["error"].dump()));
  }
  if (!j.contains(key) || !j[key].is_array()) {
    throw ProtocolError("response lacks \"" + key + "\"");
  }
  if (j[key].size() != count) {
    throw ProtocolError("response has " + std::to_string(j[key].size()) + " " +
                        key + " for " + std::to_string(count) + " samples");
  }
  return j;
}

ExternalModel::ExternalModel(std::string spec, std::unique_ptr<Transport> transport,
                             std::size_t batch_size,
                             std::chrono::milliseconds timeout)
    : spec_(std::move(spec)),
      transport_(std::move(transport)),
      batch_size_(std::max<std::size_t>(1, batch_size)),
      timeout_(timeout) {}

std::string ExternalModel::NextId() {
  // Version-4 shaped, but derived from a counter so runs are reproducible.
  const std::uint64_t n = counter_++;
  const std::uint64_t hi = Fnv1a64(spec_ + "/" + std::to_string(n));
  const std::uint64_t lo = Fnv1a64(std::to_string(n) + "/" + spec_);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%08x-%04x-4%03x-%04x-%012llx",
                static_cast<unsigned>(hi >> 32),
                static_cast<unsigned>((hi >> 16) & 0xffff),
                static_cast<unsigned>(hi & 0x0fff),
                static_cast<unsigned>(((lo >> 48) & 0x3fff) | 0x8000),
                static_cast<unsigned long long>(lo & 0xffffffffffffULL));
  return buf;
}

json ExternalModel::Call(const std::string& type, Task task, const ojson& samples,
                         const std::string& key, std::size_t count,
                         const ojson& extra) {
  const std::string id = NextId();
  ojson request = MakeRequest(id, type, task, samples);
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) request[k] = v;
  }
  const std::string line = request.dump();
  std::string response;
  try {
    response = transport_->Exchange(line, timeout_);
  } catch (const AdapterTimeout&) {
    transport_->Reset();
    response = transport_->Exchange(line, timeout_);
  } catch (const AdapterUnavailable&) {
    transport_->Reset();
    response = transport_->Exchange(line, timeout_);
  }
  return ParseResponse(response, id, key, count);
}

std::vector<Prediction> ExternalModel::Predict(Task task,
                                               const std::vector<Sample>& samples) {
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (std::size_t begin = 0; begin < samples.size(); begin += batch_size_) {
    const std::size_t end = std::min(samples.size(), begin + batch_size_);
    ojson batch = ojson::array();
    for (std::size_t i = begin; i < end; ++i) batch.push_back(RequestSample(samples[i]));
    const json r = Call("predict", task, batch, "predictions", end - begin);
    std::vector<std::string> classes;
    if (r.contains("classes")) {
      if (!r["classes"].is_array()) throw ProtocolError("\"classes\" must be a list");
      for (const json& c : r["classes"]) {
        if (!c.is_string()) throw ProtocolError("class names must be strings");
        classes.push_back(c.get<std::string>());
      }
    }
    const bool has_scores = r.contains("scores");
    if (has_scores && (!r["scores"].is_array() || r["scores"].size() != end - begin)) {
      throw ProtocolError("\"scores\" does not match the predictions");
    }
    for (std::size_t i = begin; i < end; ++i) {
      const json& pj = r["predictions"][i - begin];
      Prediction p;
      if (task == Task::kSequenceLabeling) {
        if (!pj.is_array()) throw ProtocolError("tag predictions must be lists");
        for (const json& t : pj) {
          if (!t.is_string()) throw ProtocolError("tags must be strings");
          p.tags.push_back(t.get<std::string>());
        }
        if (p.tags.size() != samples[i].field("text").size()) {
          throw ProtocolError("tag count does not match token count for " +
                              samples[i].id);
        }
      } else {
        if (!pj.is_string()) throw ProtocolError("label predictions must be strings");
        p.label = pj.get<std::string>();
      }
      if (has_scores) {
        const json& sj = r["scores"][i - begin];
        if (!sj.is_array()) throw ProtocolError("each score entry must be a list");
        for (const json& v : sj) {
          if (!v.is_number()) throw ProtocolError("scores must be numbers");
          p.scores.push_back(v.get<double>());
        }
        if (!classes.empty() && classes.size() != p.scores.size()) {
          throw ProtocolError("score vector does not match \"classes\"");
        }
        p.classes = classes;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<double> ExternalModel::Score(Task task, const std::vector<Sample>& samples,
                                         const std::string& metric) {
  std::vector<double> out;
  out.reserve(samples.size());
  ojson extra;
  extra["metric"] = metric;
  for (std::size_t begin = 0; begin < samples.size(); begin += batch_size_) {
    const std::size_t end = std::min(samples.size(), begin + batch_size_);
    ojson batch = ojson::array();
    for (std::size_t i = begin; i < end; ++i) {
      ojson s = RequestSample(samples[i]);
      if (auto it = samples[i].meta.find("reference"); it != samples[i].meta.end()) {
        s["reference"] = it->second;
      }
      batch.push_back(std::move(s));
    }
    const json r = Call("score", task, batch, "scores", end - begin, extra);
    for (const json& v : r["scores"]) {
      if (!v.is_number()) throw ProtocolError("scores must be numbers");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

std::vector<std::string> ExternalModel::Rewrite(Task task,
                                                const std::vector<std::string>& texts) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += batch_size_) {
    const std::size_t end = std::min(texts.size(), begin + batch_size_);
    ojson batch = ojson::array();
    for (std::size_t i = begin; i < end; ++i) {
      ojson s;
      s["id"] = std::to_string(i);
      s["text"] = texts[i];
      batch.push_back(std::move(s));
    }
    const json r = Call("rewrite", task, batch, "rewrites", end - begin);
    for (const json& v : r["rewrites"]) {
      if (!v.is_string()) throw ProtocolError("rewrites must be strings");
      out.push_back(v.get<std::string>());
    }
  }
  return out;
}

}  // namespace flint
