// Copyright 2026 The Hetsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetsum/bridge.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>

extern char** environ;

namespace hetsum {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void write_all(int fd, const std::string& data, bool socket) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = socket ? ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL)
                             : ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BridgeError(errno_text("bridge write"));
    }
    off += static_cast<std::size_t>(n);
  }
}

// Buffered line reader over a file descriptor with a deadline.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}

  std::string read_line(std::chrono::milliseconds timeout) {
    const auto deadline = Clock::now() + timeout;
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      if (left.count() <= 0) throw BridgeTimeout("bridge did not answer within " + std::to_string(timeout.count()) + " ms");
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw BridgeError(errno_text("bridge poll"));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw BridgeError(errno_text("bridge read"));
      }
      if (n == 0) throw BridgeProtocolError("bridge closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

class ProcessTransport : public BridgeTransport {
 public:
  explicit ProcessTransport(const std::vector<std::string>& argv) {
    if (argv.empty()) throw InvalidArgument("bridge command is empty");
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) throw BridgeError(errno_text("pipe"));
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw BridgeError(errno_text("pipe"));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, to_child[1]);
    posix_spawn_file_actions_addclose(&actions, from_child[0]);

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    const int rc = ::posix_spawnp(&pid_, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(to_child[0]);
    ::close(from_child[1]);
    if (rc != 0) {
      ::close(to_child[1]);
      ::close(from_child[0]);
      throw BridgeError("cannot launch bridge '" + argv[0] + "': " + std::strerror(rc));
    }
    in_ = to_child[1];
    out_ = from_child[0];
    ::fcntl(in_, F_SETFD, FD_CLOEXEC);
    ::fcntl(out_, F_SETFD, FD_CLOEXEC);
    reader_ = std::make_unique<LineReader>(out_);
    static const bool ignored = [] {
      ::signal(SIGPIPE, SIG_IGN);
      return true;
    }();
    (void)ignored;
  }

  ~ProcessTransport() override {
    ::close(in_);
    ::close(out_);
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }

  void write_line(const std::string& line) override { write_all(in_, line + "\n", false); }
  std::string read_line(std::chrono::milliseconds timeout) override { return reader_->read_line(timeout); }

 private:
  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::unique_ptr<LineReader> reader_;
};

class TcpTransport : public BridgeTransport {
 public:
  TcpTransport(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    const std::string service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
      throw BridgeError("cannot resolve " + host + ": " + ::gai_strerror(rc));
    }
    for (addrinfo* ai = res; ai != nullptr && fd_ < 0; ai = ai->ai_next) {
      const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
      if (fd < 0) continue;
      if (connect_with_timeout(fd, ai->ai_addr, ai->ai_addrlen, timeout)) {
        fd_ = fd;
      } else {
        ::close(fd);
      }
    }
    ::freeaddrinfo(res);
    if (fd_ < 0) throw BridgeError("cannot connect to bridge at " + host + ":" + service);
    reader_ = std::make_unique<LineReader>(fd_);
  }

  ~TcpTransport() override {
    if (fd_ >= 0) ::close(fd_);
  }

  void write_line(const std::string& line) override { write_all(fd_, line + "\n", true); }
  std::string read_line(std::chrono::milliseconds timeout) override { return reader_->read_line(timeout); }

 private:
  static bool connect_with_timeout(int fd, const sockaddr* addr, socklen_t len, std::chrono::milliseconds timeout) {
    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, addr, len);
    if (rc != 0 && errno == EINPROGRESS) {
      pollfd pfd{fd, POLLOUT, 0};
      rc = ::poll(&pfd, 1, static_cast<int>(timeout.count())) == 1 ? 0 : -1;
      if (rc == 0) {
        int err = 0;
        socklen_t err_len = sizeof err;
        ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &err_len);
        rc = err == 0 ? 0 : -1;
      }
    }
    ::fcntl(fd, F_SETFL, flags);
    return rc == 0;
  }

  int fd_ = -1;
  std::unique_ptr<LineReader> reader_;
};

std::vector<double> to_reals(const json& array, const char* what) {
  std::vector<double> out;
  if (!array.is_array()) throw BridgeProtocolError(std::string(what) + " is not an array");
  out.reserve(array.size());
  for (const auto& v : array) {
    if (!v.is_number()) throw BridgeProtocolError(std::string(what) + " contains a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::unique_ptr<BridgeTransport> spawn_transport(const std::vector<std::string>& argv) {
  return std::make_unique<ProcessTransport>(argv);
}

std::unique_ptr<BridgeTransport> tcp_transport(const std::string& host, std::uint16_t port,
                                               std::chrono::milliseconds timeout) {
  return std::make_unique<TcpTransport>(host, port, timeout);
}

BridgeClient::BridgeClient(std::unique_ptr<BridgeTransport> transport, std::chrono::milliseconds timeout)
    : transport_(std::move(transport)), timeout_(timeout) {}

std::unique_ptr<BridgeClient> BridgeClient::open(const std::string& address, std::chrono::milliseconds timeout) {
  if (address.rfind("tcp:", 0) == 0) {
    const std::string rest = address.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("bridge address must be tcp:<host>:<port>");
    const int port = std::stoi(rest.substr(colon + 1));
    if (port <= 0 || port > 65535) throw InvalidArgument("bridge port out of range");
    return std::make_unique<BridgeClient>(tcp_transport(rest.substr(0, colon), static_cast<std::uint16_t>(port), timeout),
                                          timeout);
  }
  if (address.rfind("exec:", 0) == 0) {
    std::istringstream words(address.substr(5));
    std::vector<std::string> argv;
    for (std::string w; words >> w;) argv.push_back(w);
    return std::make_unique<BridgeClient>(spawn_transport(argv), timeout);
  }
  throw InvalidArgument("unrecognised bridge address '" + address + "'");
}

json BridgeClient::call(const json& request) {
  std::lock_guard<std::mutex> lock(mutex_);
  // After a timeout the stream may still deliver the stale answer, so the
  // connection cannot be reused.
  if (broken_) throw BridgeError("bridge connection is unusable after an earlier failure");
  std::string line;
  try {
    transport_->write_line(request.dump());
    line = transport_->read_line(timeout_);
  } catch (const BridgeError&) {
    broken_ = true;
    throw;
  }
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error&) {
    broken_ = true;
    throw BridgeProtocolError("bridge sent a non-JSON line");
  }
  if (!response.is_object()) throw BridgeProtocolError("bridge response is not an object");
  if (auto err = response.find("error"); err != response.end()) {
    throw BridgeRemoteError(err->is_string() ? err->get<std::string>() : err->dump());
  }
  return response;
}

void BridgeClient::ping() {
  const json r = call({{"op", "ping"}});
  if (auto p = r.find("protocol"); p != r.end()) {
    if (!p->is_number_integer() || p->get<int>() != kProtocolVersion) {
      throw BridgeVersionMismatch("bridge speaks protocol " + p->dump() + ", expected " +
                                  std::to_string(kProtocolVersion));
    }
  }
  if (r.value("ok", false) != true) throw BridgeProtocolError("ping response lacks \"ok\":true");
}

json BridgeClient::info() { return call({{"op", "info"}}); }

std::vector<Vector> BridgeClient::embed(const std::vector<std::string>& texts) {
  const json r = call({{"op", "embed"}, {"texts", texts}});
  auto it = r.find("vectors");
  if (it == r.end() || !it->is_array()) throw BridgeProtocolError("embed response lacks \"vectors\"");
  if (it->size() != texts.size()) throw BridgeProtocolError("embed returned the wrong number of vectors");
  std::vector<Vector> out;
  for (const auto& v : *it) {
    out.push_back(to_reals(v, "vector"));
    if (out.back().size() != out.front().size()) throw BridgeProtocolError("embed vectors differ in dimension");
  }
  return out;
}

std::vector<double> BridgeClient::logprob(const std::vector<std::string>& prefix,
                                          const std::vector<std::string>& candidates) {
  const json r = call({{"op", "logprob"}, {"prefix", prefix}, {"candidates", candidates}});
  auto it = r.find("logps");
  if (it == r.end()) throw BridgeProtocolError("logprob response lacks \"logps\"");
  auto out = to_reals(*it, "logps");
  if (out.size() != candidates.size()) throw BridgeProtocolError("logprob returned the wrong number of values");
  return out;
}

std::string BridgeClient::rcr(const std::string& sentence) {
  const json r = call({{"op", "rcr"}, {"sentence", sentence}});
  auto it = r.find("text");
  if (it == r.end() || !it->is_string()) throw BridgeProtocolError("rcr response lacks \"text\"");
  return it->get<std::string>();
}

std::vector<Vector> BridgeEmbedder::embed_all(std::span<const Sentence> sentences) const {
  std::vector<std::string> texts;
  texts.reserve(sentences.size());
  for (const auto& s : sentences) texts.push_back(s.text);
  return client_.embed(texts);
}

std::vector<double> BridgeScorer::logprobs(std::span<const std::string> prefix,
                                           std::span<const std::string> candidates) const {
  if (context_size_ > 0 && prefix.size() > context_size_) prefix = prefix.last(context_size_);
  auto raw = client_.logprob({prefix.begin(), prefix.end()}, {candidates.begin(), candidates.end()});
  for (double& lp : raw) {
    if (std::isnan(lp)) throw BridgeProtocolError("logprob returned NaN");
    lp = clamped_log(std::exp(lp));
  }
  return raw;
}

std::vector<double> FallbackScorer::logprobs(std::span<const std::string> prefix,
                                             std::span<const std::string> candidates) const {
  if (!failed_.load()) {
    try {
      return primary_.logprobs(prefix, candidates);
    } catch (const BridgeError&) {
      failed_.store(true);
    }
  }
  return fallback_.logprobs(prefix, candidates);
}

std::size_t FallbackScorer::context_size() const {
  return failed_.load() ? fallback_.context_size() : primary_.context_size();
}

std::vector<Vector> FallbackEmbedder::embed_all(std::span<const Sentence> sentences) const {
  if (!failed_.load()) {
    try {
      return primary_.embed_all(sentences);
    } catch (const BridgeError&) {
      failed_.store(true);
    }
  }
  return fallback_.embed_all(sentences);
}

}  // namespace hetsum
