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

// Minimal bridge server for client tests.
//
//   stub_bridge [--mode normal|garbage|hang|version|unavailable] [--tcp PORT]
//
// Without --tcp it serves stdin/stdout. With --tcp it prints the bound port on
// stdout (PORT 0 picks a free one), accepts a single connection and serves it.
// Modes: garbage answers every request with a non-JSON line, hang never
// answers, version reports protocol 2 from ping, unavailable answers every
// model op with {"error":"unavailable"}.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <thread>

#include "json.hpp"

namespace {

using nlohmann::json;

constexpr std::size_t kDim = 8;

std::string mode = "normal";

std::vector<double> embed_text(const std::string& text) {
  std::vector<double> v(kDim, 0.0);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h = (h ^ c) * 1099511628211ULL;
    v[h % kDim] += 1.0;
  }
  return v;
}

std::string answer(const std::string& line) {
  json req;
  try {
    req = json::parse(line);
  } catch (const json::exception&) {
    return json{{"error", "bad_request"}}.dump();
  }
  if (!req.is_object() || !req.contains("op") || !req["op"].is_string()) return json{{"error", "bad_request"}}.dump();
  const std::string op = req["op"];
  try {
    if (op == "ping") return json{{"ok", true}, {"protocol", mode == "version" ? 2 : 1}}.dump();
    if (op == "info") return json{{"dimension", kDim}, {"pooling", "mean"}, {"protocol", 1}}.dump();
    if (mode == "unavailable" && (op == "embed" || op == "logprob" || op == "rcr")) {
      return json{{"error", "unavailable"}}.dump();
    }
    if (op == "embed") {
      json vectors = json::array();
      for (const auto& t : req.at("texts")) vectors.push_back(embed_text(t.get<std::string>()));
      return json{{"vectors", vectors}}.dump();
    }
    if (op == "logprob") {
      const auto prefix = req.at("prefix").get<std::vector<std::string>>();
      json logps = json::array();
      for (const auto& c : req.at("candidates")) {
        const auto s = c.get<std::string>();
        logps.push_back(-std::log(2.0 + static_cast<double>(s.size() + prefix.size() % 3)));
      }
      return json{{"logps", logps}}.dump();
    }
    if (op == "rcr") {
      // Replaces a repeated capitalised word ("Ann met Bob and Ann left") by
      // "she"; enough to see the post-pass take effect.
      const auto s = req.at("sentence").get<std::string>();
      std::string first;
      std::size_t i = 0;
      while (i < s.size() && s[i] != ' ') first += s[i++];
      const auto again = s.find(" " + first + " ", i);
      if (first.empty() || again == std::string::npos) return json{{"text", s}}.dump();
      return json{{"text", s.substr(0, again) + " she " + s.substr(again + first.size() + 2)}}.dump();
    }
  } catch (const json::exception&) {
    return json{{"error", "bad_request"}}.dump();
  }
  return json{{"error", "unknown_op"}}.dump();
}

void serve(const std::function<bool(std::string&)>& read_line, const std::function<void(const std::string&)>& write) {
  std::string line;
  while (read_line(line)) {
    if (mode == "hang") {
      std::this_thread::sleep_for(std::chrono::hours(1));
      return;
    }
    if (mode == "garbage") {
      write("this is not json");
      continue;
    }
    write(answer(line));
  }
}

}  // namespace

int main(int argc, char** argv) {
  int port = -1;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--mode" && i + 1 < argc) mode = argv[++i];
    else if (a == "--tcp" && i + 1 < argc) port = std::stoi(argv[++i]);
    else if (a == "--stdio") port = -1;
  }
  if (port < 0) {
    serve([](std::string& l) { return static_cast<bool>(std::getline(std::cin, l)); },
          [](const std::string& s) { std::cout << s << '\n' << std::flush; });
    return 0;
  }

  const int srv = ::socket(AF_INET, SOCK_STREAM, 0);
  int one = 1;
  ::setsockopt(srv, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(srv, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(srv, 1) != 0) {
    std::perror("bind");
    return 1;
  }
  socklen_t len = sizeof addr;
  ::getsockname(srv, reinterpret_cast<sockaddr*>(&addr), &len);
  std::cout << ntohs(addr.sin_port) << std::endl;
  const int fd = ::accept(srv, nullptr, nullptr);
  if (fd < 0) return 1;
  std::string buffer;
  serve(
      [&](std::string& l) {
        for (;;) {
          const auto nl = buffer.find('\n');
          if (nl != std::string::npos) {
            l = buffer.substr(0, nl);
            buffer.erase(0, nl + 1);
            return true;
          }
          char chunk[4096];
          const ssize_t n = ::read(fd, chunk, sizeof chunk);
          if (n <= 0) return false;
          buffer.append(chunk, static_cast<std::size_t>(n));
        }
      },
      [&](const std::string& s) {
        const std::string out = s + "\n";
        std::size_t off = 0;
        while (off < out.size()) {
          const ssize_t n = ::send(fd, out.data() + off, out.size() - off, MSG_NOSIGNAL);
          if (n <= 0) return;
          off += static_cast<std::size_t>(n);
        }
      });
  ::close(fd);
  ::close(srv);
  return 0;
}
