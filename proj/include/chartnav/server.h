#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartnav/interaction.h"

namespace chartnav {

// Frames are a 4-byte big-endian payload length followed by that many bytes
// of UTF-8 JSON.
inline constexpr std::size_t kMaxFrameBytes = 1 << 20;

std::string EncodeFrame(std::string_view payload);

// Incremental decoder for a byte stream.
class FrameDecoder {
 public:
  void Feed(std::string_view bytes) { buffer_.append(bytes); }
  // Next complete payload, if any. Throws std::length_error for a frame
  // longer than kMaxFrameBytes.
  std::optional<std::string> Next();

 private:
  std::string buffer_;
};

// One client's session, independent of the transport. Inbound payloads are
// {"seq": n, "event": {...}} with strictly increasing n; every reply is a
// JSON object with "type" "batch" or "error".
class ServiceSession {
 public:
  explicit ServiceSession(std::shared_ptr<const Engine> engine);

  // The seq -1 batch: chart overview plus the geometry to draw.
  nlohmann::json Open();
  // After an error reply the session is closed and must be dropped.
  nlohmann::json Handle(std::string_view payload);
  bool closed() const { return closed_; }

 private:
  nlohmann::json Error(long seq, const std::string& message);

  Session session_;
  long last_seq_ = -1;
  bool closed_ = false;
  nlohmann::json last_geometry_;
};

// TCP endpoint: one session per connection, each on its own thread.
class Server {
 public:
  // Binds immediately; port 0 picks a free port.
  Server(std::shared_ptr<const Engine> engine, std::uint16_t port,
         const std::string& host = "127.0.0.1");
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const { return port_; }
  // Accepts connections until Stop() is called.
  void Run();
  void Stop();

 private:
  void Serve(int fd);

  std::shared_ptr<const Engine> engine_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::atomic<int> active_{0};
};

// Minimal blocking client, used by tests and tooling.
class FrameClient {
 public:
  FrameClient(const std::string& host, std::uint16_t port);
  ~FrameClient();
  FrameClient(const FrameClient&) = delete;
  FrameClient& operator=(const FrameClient&) = delete;

  void Send(std::string_view payload);
  // Empty once the server has closed the connection.
  std::optional<std::string> Receive();

 private:
  int fd_ = -1;
  FrameDecoder decoder_;
};

}  // namespace chartnav
