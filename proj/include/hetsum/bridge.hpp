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

#ifndef HETSUM_BRIDGE_HPP_
#define HETSUM_BRIDGE_HPP_

// Client for the optional model sidecar. The wire format is newline
// delimited UTF-8 JSON, one response line per request line:
//
//   {"op":"ping"}                                   -> {"ok":true}
//   {"op":"info"}                                   -> {"dimension":int, ...}
//   {"op":"embed","texts":[str]}                    -> {"vectors":[[float]]}
//   {"op":"logprob","prefix":[str],"candidates":[str]} -> {"logps":[float]}
//   {"op":"rcr","sentence":str}                     -> {"text":str}
//
// Errors come back as {"error":str}. A ping response may carry
// "protocol":int; anything other than kProtocolVersion is rejected.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hetsum/embedder.hpp"
#include "hetsum/error.hpp"
#include "hetsum/ngram_lm.hpp"
#include "json.hpp"

namespace hetsum {

inline constexpr int kProtocolVersion = 1;

class BridgeError : public Error {
 public:
  using Error::Error;
};

class BridgeTimeout : public BridgeError {
 public:
  using BridgeError::BridgeError;
};

class BridgeProtocolError : public BridgeError {
 public:
  using BridgeError::BridgeError;
};

class BridgeVersionMismatch : public BridgeError {
 public:
  using BridgeError::BridgeError;
};

// The server answered with {"error": ...}.
class BridgeRemoteError : public BridgeError {
 public:
  BridgeRemoteError(const std::string& code) : BridgeError("bridge error: " + code), code_(code) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class BridgeTransport {
 public:
  virtual ~BridgeTransport() = default;
  virtual void write_line(const std::string& line) = 0;
  // Blocks until a full line arrives; the newline is stripped.
  virtual std::string read_line(std::chrono::milliseconds timeout) = 0;
};

// Child process speaking the protocol on its stdin/stdout.
std::unique_ptr<BridgeTransport> spawn_transport(const std::vector<std::string>& argv);
// TCP connection to host:port.
std::unique_ptr<BridgeTransport> tcp_transport(const std::string& host, std::uint16_t port,
                                               std::chrono::milliseconds timeout);

class BridgeClient {
 public:
  BridgeClient(std::unique_ptr<BridgeTransport> transport, std::chrono::milliseconds timeout);

  // "tcp:<host>:<port>" or "exec:<program> [args...]" (split on spaces).
  static std::unique_ptr<BridgeClient> open(const std::string& address, std::chrono::milliseconds timeout);

  // One request line out, one response line back. Serialized across threads.
  nlohmann::json call(const nlohmann::json& request);

  void ping();
  nlohmann::json info();
  std::vector<Vector> embed(const std::vector<std::string>& texts);
  std::vector<double> logprob(const std::vector<std::string>& prefix, const std::vector<std::string>& candidates);
  std::string rcr(const std::string& sentence);

  std::chrono::milliseconds timeout() const { return timeout_; }

 private:
  std::unique_ptr<BridgeTransport> transport_;
  std::chrono::milliseconds timeout_;
  std::mutex mutex_;
  bool broken_ = false;
};

class BridgeEmbedder : public EmbeddingProvider {
 public:
  explicit BridgeEmbedder(BridgeClient& client) : client_(client) {}
  std::vector<Vector> embed_all(std::span<const Sentence> sentences) const override;

 private:
  BridgeClient& client_;
};

class BridgeScorer : public TokenScorer {
 public:
  // `context_size` bounds how many trailing prefix tokens are sent; it is
  // also the history the fusion search keys its states on.
  BridgeScorer(BridgeClient& client, std::size_t context_size) : client_(client), context_size_(context_size) {}

  std::vector<double> logprobs(std::span<const std::string> prefix,
                               std::span<const std::string> candidates) const override;
  std::size_t context_size() const override { return context_size_; }

 private:
  BridgeClient& client_;
  std::size_t context_size_;
};

// Uses `primary` until it raises a BridgeError, then `fallback` for that
// call and every later one.
class FallbackScorer : public TokenScorer {
 public:
  FallbackScorer(const TokenScorer& primary, const TokenScorer& fallback) : primary_(primary), fallback_(fallback) {}

  std::vector<double> logprobs(std::span<const std::string> prefix,
                               std::span<const std::string> candidates) const override;
  std::size_t context_size() const override;
  bool fell_back() const { return failed_.load(); }

 private:
  const TokenScorer& primary_;
  const TokenScorer& fallback_;
  mutable std::atomic<bool> failed_{false};
};

class FallbackEmbedder : public EmbeddingProvider {
 public:
  FallbackEmbedder(const EmbeddingProvider& primary, const EmbeddingProvider& fallback)
      : primary_(primary), fallback_(fallback) {}

  std::vector<Vector> embed_all(std::span<const Sentence> sentences) const override;
  bool fell_back() const { return failed_.load(); }

 private:
  const EmbeddingProvider& primary_;
  const EmbeddingProvider& fallback_;
  mutable std::atomic<bool> failed_{false};
};

}  // namespace hetsum

#endif  // HETSUM_BRIDGE_HPP_
