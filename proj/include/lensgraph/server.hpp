#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <utility>

#include "lensgraph/error.hpp"
#include "lensgraph/protocol.hpp"
#include "lensgraph/session.hpp"

namespace lensgraph {

namespace detail {

class Fd {
public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  explicit operator bool() const { return fd_ >= 0; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

private:
  int fd_ = -1;
};

inline bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace detail

/// Newline-delimited protocol endpoint on a local TCP socket. Serves one
/// client at a time, each with a fresh session; a second concurrent client
/// receives an error event and is disconnected.
class ProtocolServer {
public:
  struct Options {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks an ephemeral port
    std::function<Session()> make_session = [] { return Session{}; };
  };

  explicit ProtocolServer(Options opts) : opts_(std::move(opts)) {
    listener_ = detail::Fd(::socket(AF_INET, SOCK_STREAM, 0));
    if (!listener_) throw Error(std::string("socket: ") + std::strerror(errno));
    const int yes = 1;
    ::setsockopt(listener_.get(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(opts_.port);
    if (::inet_pton(AF_INET, opts_.host.c_str(), &addr.sin_addr) != 1) {
      throw Error("invalid listen address '" + opts_.host + "'");
    }
    if (::bind(listener_.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      throw Error("bind " + opts_.host + ":" + std::to_string(opts_.port) + ": " + std::strerror(errno));
    }
    if (::listen(listener_.get(), 4) != 0) throw Error(std::string("listen: ") + std::strerror(errno));
    socklen_t len = sizeof addr;
    ::getsockname(listener_.get(), reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }

  std::uint16_t port() const { return port_; }

  /// Runs until `should_stop` returns true (polled every 50 ms).
  void run(const std::function<bool()>& should_stop) {
    detail::Fd client;
    Session session;
    std::string buffer;
    while (!should_stop()) {
      pollfd fds[2] = {{listener_.get(), POLLIN, 0}, {client.get(), POLLIN, 0}};
      const int ready = ::poll(fds, client ? 2 : 1, 50);
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw Error(std::string("poll: ") + std::strerror(errno));
      }
      if (ready == 0) continue;

      if (fds[0].revents & POLLIN) {
        detail::Fd incoming(::accept(listener_.get(), nullptr, nullptr));
        if (incoming) {
          if (client) {
            detail::send_all(incoming.get(),
                             serialize_event(Event::error("server busy: only one client at a time")) + "\n");
          } else {
            client = std::move(incoming);
            session = opts_.make_session();
            buffer.clear();
          }
        }
      }

      if (client && (fds[1].revents & (POLLIN | POLLHUP | POLLERR))) {
        char chunk[65536];
        const ssize_t n = ::recv(client.get(), chunk, sizeof chunk, 0);
        if (n <= 0) {
          if (n < 0 && errno == EINTR) continue;
          client.reset();
          continue;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (auto nl = buffer.find('\n', start); nl != std::string::npos; nl = buffer.find('\n', start)) {
          std::string_view line(buffer.data() + start, nl - start);
          start = nl + 1;
          if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
          if (line.empty()) continue;
          if (!handle_line(client.get(), session, line)) {
            client.reset();
            break;
          }
        }
        if (client) buffer.erase(0, start);
      }
    }
  }

private:
  static bool handle_line(int fd, Session& session, std::string_view line) {
    std::vector<Event> events;
    try {
      events = session.apply(parse_command(line));
    } catch (const Error& e) {
      events = {Event::error(e.what())};
    }
    std::string out;
    for (const auto& e : events) out += serialize_event(e) + "\n";
    return out.empty() || detail::send_all(fd, out);
  }

  Options opts_;
  detail::Fd listener_;
  std::uint16_t port_ = 0;
};

}  // namespace lensgraph
