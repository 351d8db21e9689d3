#ifndef POLYPOW_WIRE_HPP
#define POLYPOW_WIRE_HPP

// JSON-lines oracle protocol, one frame per line:
//   announce (server -> client, on connect):  {"p":"13","e":"3"}
//   request:   {"x":"2"}
//   response:  {"y":"1"}  or  {"error":"out_of_domain"|"parse"}
// Residues travel as decimal strings for bit-exact cross-language replay.

#include <cstdio>
#include <cstring>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <json.hpp>

#include "polypow/ff.hpp"
#include "polypow/oracle.hpp"

namespace polypow {

struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

namespace wire {

inline std::string announce_frame(const FieldCtx& ctx) {
    nlohmann::ordered_json j;
    j["p"] = std::to_string(ctx.p());
    j["e"] = std::to_string(ctx.e());
    return j.dump();
}

inline std::string request_frame(u64 x) {
    return nlohmann::json{{"x", std::to_string(x)}}.dump();
}

inline std::optional<u64> parse_decimal(const std::string& s) {
    if (s.empty() || s.size() > 20) return std::nullopt;
    u64 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        u64 nv = v * 10 + u64(c - '0');
        if (nv < v) return std::nullopt;
        v = nv;
    }
    return v;
}

/// Server-side handling of one request line.
inline std::string answer_line(const std::string& line, PowerOracle& oracle) {
    u64 x;
    {
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("x") || !j["x"].is_string())
            return R"({"error":"parse"})";
        auto parsed = parse_decimal(j["x"].get<std::string>());
        if (!parsed) return R"({"error":"parse"})";
        x = *parsed;
    }
    if (x >= oracle.ctx().p()) return R"({"error":"out_of_domain"})";
    return nlohmann::json{{"y", std::to_string(oracle.query(x).v)}}.dump();
}

/// Serve one connection: announce, then answer request lines until EOF.
inline void serve_stream(PowerOracle& oracle, std::istream& in, std::ostream& out) {
    out << announce_frame(oracle.ctx()) << "\n" << std::flush;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out << answer_line(line, oracle) << "\n" << std::flush;
    }
}

}  // namespace wire

namespace detail {

// Minimal line-buffered wrapper around a connected socket.
class SocketStream {
public:
    explicit SocketStream(int fd) : fd_(fd) {}
    ~SocketStream() {
        if (fd_ >= 0) ::close(fd_);
    }
    SocketStream(const SocketStream&) = delete;
    SocketStream& operator=(const SocketStream&) = delete;
    SocketStream(SocketStream&& o) noexcept : fd_(o.fd_), buf_(std::move(o.buf_)) { o.fd_ = -1; }

    void write_line(const std::string& s) {
        std::string msg = s + "\n";
        const char* p = msg.data();
        std::size_t left = msg.size();
        while (left > 0) {
            ssize_t n = ::send(fd_, p, left, 0);
            if (n <= 0) throw ProtocolError("socket write failed");
            p += n;
            left -= (std::size_t)n;
        }
    }

    std::optional<std::string> read_line() {
        for (;;) {
            auto pos = buf_.find('\n');
            if (pos != std::string::npos) {
                std::string line = buf_.substr(0, pos);
                buf_.erase(0, pos + 1);
                return line;
            }
            char tmp[4096];
            ssize_t n = ::recv(fd_, tmp, sizeof tmp, 0);
            if (n < 0) throw ProtocolError("socket read failed");
            if (n == 0) return std::nullopt;
            buf_.append(tmp, (std::size_t)n);
        }
    }

    int fd() const { return fd_; }

private:
    int fd_;
    std::string buf_;
};

inline void split_host_port(const std::string& addr, std::string& host, std::string& port) {
    auto pos = addr.rfind(':');
    if (pos == std::string::npos) throw ProtocolError("address must be host:port");
    host = addr.substr(0, pos);
    port = addr.substr(pos + 1);
}

}  // namespace detail

/// Client endpoint of the wire protocol; validates the announce frame against
/// the expected field parameters.
class RemoteOracle final : public PowerOracle {
public:
    RemoteOracle(const std::string& addr, const FieldCtx& ctx)
        : PowerOracle(ctx), sock_(connect_to(addr)) {
        auto line = sock_.read_line();
        if (!line) throw ProtocolError("no announce frame");
        auto j = nlohmann::json::parse(*line, nullptr, false);
        if (j.is_discarded() || !j.contains("p") || !j.contains("e"))
            throw ProtocolError("bad announce frame");
        auto p = wire::parse_decimal(j["p"].get<std::string>());
        auto e = wire::parse_decimal(j["e"].get<std::string>());
        if (!p || !e || *p != ctx.p() || *e != ctx.e())
            throw ProtocolError("announce mismatch: server has different (p, e)");
    }

protected:
    Felt do_query(Felt x) override {
        sock_.write_line(wire::request_frame(x.v));
        auto line = sock_.read_line();
        if (!line) throw ProtocolError("connection closed mid-query");
        auto j = nlohmann::json::parse(*line, nullptr, false);
        if (j.is_discarded()) throw ProtocolError("unparsable response");
        if (j.contains("error")) throw ProtocolError("oracle error: " + j["error"].get<std::string>());
        if (!j.contains("y") || !j["y"].is_string()) throw ProtocolError("malformed response");
        auto y = wire::parse_decimal(j["y"].get<std::string>());
        if (!y || *y >= ctx().p()) throw ProtocolError("response out of range");
        return Felt{*y};
    }

private:
    static detail::SocketStream connect_to(const std::string& addr) {
        std::string host, port;
        detail::split_host_port(addr, host, port);
        addrinfo hints{};
        hints.ai_family = AF_UNSPEC;
        hints.ai_socktype = SOCK_STREAM;
        addrinfo* res = nullptr;
        if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res) != 0 || !res)
            throw ProtocolError("cannot resolve " + addr);
        int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
        if (fd < 0 || ::connect(fd, res->ai_addr, res->ai_addrlen) != 0) {
            ::freeaddrinfo(res);
            if (fd >= 0) ::close(fd);
            throw ProtocolError("cannot connect to " + addr);
        }
        ::freeaddrinfo(res);
        return detail::SocketStream(fd);
    }

    detail::SocketStream sock_;
};

/// TCP server: accepts one connection at a time, announces, serves request
/// lines until the peer disconnects, then accepts the next connection.
/// Runs until the process is terminated. Logs the cumulative query count to
/// stderr after every connection.
inline void serve_tcp(PowerOracle& oracle, const std::string& addr) {
    std::string host, port;
    detail::split_host_port(addr, host, port);
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (::getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res) != 0 || !res)
        throw ProtocolError("cannot resolve listen address " + addr);
    int lfd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    int opt = 1;
    ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &opt, sizeof opt);
    if (lfd < 0 || ::bind(lfd, res->ai_addr, res->ai_addrlen) != 0 || ::listen(lfd, 1) != 0) {
        ::freeaddrinfo(res);
        throw ProtocolError("cannot listen on " + addr);
    }
    ::freeaddrinfo(res);
    std::cerr << "listening on " << addr << "\n";
    for (;;) {
        int cfd = ::accept(lfd, nullptr, nullptr);
        if (cfd < 0) continue;
        detail::SocketStream conn(cfd);
        try {
            conn.write_line(wire::announce_frame(oracle.ctx()));
            while (auto line = conn.read_line()) {
                if (line->empty()) continue;
                conn.write_line(wire::answer_line(*line, oracle));
            }
        } catch (const ProtocolError&) {
            // peer went away; keep accepting
        }
        std::cerr << "queries served: " << oracle.query_count() << "\n";
    }
}

/// stdio transport: serves a single session on stdin/stdout.
inline void serve_stdio(PowerOracle& oracle) {
    wire::serve_stream(oracle, std::cin, std::cout);
    std::cerr << "queries served: " << oracle.query_count() << "\n";
}

}  // namespace polypow

#endif
