#include "chartnav/server.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <system_error>
#include <thread>

#include <spdlog/spdlog.h>

#include "chartnav/harness.h"

namespace chartnav {

using nlohmann::json;

namespace {

[[noreturn]] void ThrowErrno(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

bool WriteAll(int fd, std::string_view bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

std::string EncodeFrame(std::string_view payload) {
  if (payload.size() > kMaxFrameBytes) throw std::length_error("frame too large");
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::string out;
  out.reserve(4 + payload.size());
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out.append(payload);
  return out;
}

std::optional<std::string> FrameDecoder::Next() {
  if (buffer_.size() < 4) return std::nullopt;
  const auto* b = reinterpret_cast<const unsigned char*>(buffer_.data());
  const std::uint32_t n = (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
                          (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
  if (n > kMaxFrameBytes) throw std::length_error("frame too large");
  if (buffer_.size() < 4 + std::size_t{n}) return std::nullopt;
  std::string payload = buffer_.substr(4, n);
  buffer_.erase(0, 4 + std::size_t{n});
  return payload;
}

// ---------------------------------------------------------------------------

ServiceSession::ServiceSession(std::shared_ptr<const Engine> engine)
    : session_(std::move(engine)) {}

json ServiceSession::Open() {
  last_geometry_ = ToJson(session_.engine().Snapshot(session_.state()));
  return {{"type", "batch"},
          {"seq", -1},
          {"feedback", ToJson(session_.Open())},
          {"geometry", last_geometry_}};
}

json ServiceSession::Error(long seq, const std::string& message) {
  closed_ = true;
  return {{"type", "error"}, {"seq", seq}, {"message", message}};
}

json ServiceSession::Handle(std::string_view payload) {
  if (closed_) return Error(last_seq_, "session closed");
  json msg;
  try {
    msg = json::parse(payload);
  } catch (const json::parse_error& e) {
    return Error(last_seq_, std::string("malformed message: ") + e.what());
  }
  if (!msg.is_object() || msg.size() != 2 || !msg.contains("seq") || !msg.contains("event") ||
      !msg["seq"].is_number_integer()) {
    return Error(last_seq_, "message must be {\"seq\": n, \"event\": {...}}");
  }
  const long seq = msg["seq"].get<long>();
  if (seq <= last_seq_) {
    return Error(seq, "stale sequence number " + std::to_string(seq) + " after " +
                          std::to_string(last_seq_));
  }
  InputEvent event;
  try {
    event = EventFromJson(msg["event"]);
  } catch (const FormatError& e) {
    return Error(seq, e.what());
  }
  last_seq_ = seq;

  json reply = {{"type", "batch"}, {"seq", seq}, {"feedback", ToJson(session_.Dispatch(event))}};
  json geometry = ToJson(session_.engine().Snapshot(session_.state()));
  if (geometry != last_geometry_) {
    reply["geometry"] = geometry;
    last_geometry_ = std::move(geometry);
  }
  return reply;
}

// ---------------------------------------------------------------------------

Server::Server(std::shared_ptr<const Engine> engine, std::uint16_t port, const std::string& host)
    : engine_(std::move(engine)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) ThrowErrno("socket");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw std::invalid_argument("not an IPv4 address: " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    const int err = errno;
    ::close(listen_fd_);
    throw std::system_error(err, std::generic_category(),
                            "bind " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

Server::~Server() {
  Stop();
  // Connection threads hold no reference to *this beyond the counter.
  while (active_.load() > 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void Server::Stop() { stopping_ = true; }

void Server::Run() {
  spdlog::info("listening on port {}", port_);
  while (!stopping_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    ++active_;
    std::thread([this, fd] {
      try {
        Serve(fd);
      } catch (const std::exception& e) {
        spdlog::warn("connection dropped: {}", e.what());
      }
      ::close(fd);
      --active_;
    }).detach();
  }
}

void Server::Serve(int fd) {
  spdlog::debug("client connected");
  ServiceSession session(engine_);
  if (!WriteAll(fd, EncodeFrame(session.Open().dump()))) return;

  FrameDecoder decoder;
  char buf[4096];
  while (!stopping_) {
    pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready == 0) continue;
    if (ready < 0) {
      if (errno == EINTR) continue;
      return;
    }
    const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
    if (n == 0) break;
    if (n < 0) {
      if (errno == EINTR) continue;
      return;
    }
    decoder.Feed({buf, static_cast<std::size_t>(n)});
    for (;;) {
      std::optional<std::string> payload;
      try {
        payload = decoder.Next();
      } catch (const std::length_error&) {
        const json err = {{"type", "error"}, {"seq", -1}, {"message", "frame too large"}};
        WriteAll(fd, EncodeFrame(err.dump()));
        return;
      }
      if (!payload) break;
      const json reply = session.Handle(*payload);
      if (!WriteAll(fd, EncodeFrame(reply.dump()))) return;
      if (session.closed()) {
        spdlog::info("closing session: {}", reply.value("message", ""));
        return;
      }
    }
  }
  spdlog::debug("client disconnected");
}

// ---------------------------------------------------------------------------

FrameClient::FrameClient(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) ThrowErrno("socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw std::invalid_argument("not an IPv4 address: " + host);
  }
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    const int err = errno;
    ::close(fd_);
    throw std::system_error(err, std::generic_category(), "connect");
  }
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

FrameClient::~FrameClient() {
  if (fd_ >= 0) ::close(fd_);
}

void FrameClient::Send(std::string_view payload) {
  if (!WriteAll(fd_, EncodeFrame(payload))) ThrowErrno("send");
}

std::optional<std::string> FrameClient::Receive() {
  char buf[4096];
  for (;;) {
    if (auto payload = decoder_.Next()) return payload;
    const ssize_t n = ::recv(fd_, buf, sizeof buf, 0);
    if (n == 0) return std::nullopt;
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno("recv");
    }
    decoder_.Feed({buf, static_cast<std::size_t>(n)});
  }
}

}  // namespace chartnav
