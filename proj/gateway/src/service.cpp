#include "alchemy/gateway/service.hpp"

#include <sys/socket.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <atomic>
#include <list>
#include <mutex>
#include <thread>

#include "alchemy/gateway/errors.hpp"
#include "alchemy/gateway/json_codec.hpp"
#include "alchemy/gateway/wire.hpp"

namespace alchemy::gateway {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

constexpr auto kFeedPoll = std::chrono::milliseconds(200);

}  // namespace

struct Service::Impl {
    Impl(Session& s, ControlApi& a) : session(s), api(a) {}

    Session& session;
    ControlApi& api;
    net::io_context ioc;
    std::optional<tcp::acceptor> acceptor;
    std::thread io_thread;
    std::atomic<bool> stopping{false};

    struct Connection {
        std::shared_ptr<tcp::socket> socket;
        std::thread worker;
        std::atomic<bool> done{false};
    };
    std::mutex connections_mutex;
    std::list<Connection> connections;

    void accept_next() {
        acceptor->async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec || stopping) return;
            spawn(std::move(socket));
            accept_next();
        });
    }

    void spawn(tcp::socket socket) {
        std::lock_guard lock(connections_mutex);
        reap_locked();
        auto& conn = connections.emplace_back();
        conn.socket = std::make_shared<tcp::socket>(std::move(socket));
        conn.worker = std::thread([this, &conn] {
            serve(*conn.socket);
            conn.done = true;
        });
    }

    void reap_locked() {
        for (auto it = connections.begin(); it != connections.end();) {
            if (it->done) {
                it->worker.join();
                it = connections.erase(it);
            } else {
                ++it;
            }
        }
    }

    void serve(tcp::socket& socket) {
        beast::error_code ec;
        beast::flat_buffer buffer;
        while (!stopping) {
            http::request<http::string_body> req;
            http::read(socket, buffer, req, ec);
            if (ec) return;

            if (websocket::is_upgrade(req)) {
                const std::string target(req.target());
                if (target == "/frames" || target == "/telemetry") {
                    serve_feed(socket, req, target == "/frames");
                    return;
                }
            }

            const ApiResponse res = api.handle(std::string_view(req.method_string().data(), req.method_string().size()),
                                               std::string_view(req.target().data(), req.target().size()), req.body());
            http::response<http::string_body> out{static_cast<http::status>(res.status), req.version()};
            out.set(http::field::content_type, "application/json");
            out.set(http::field::access_control_allow_origin, "*");
            out.keep_alive(req.keep_alive());
            out.body() = res.body.dump();
            out.prepare_payload();
            http::write(socket, out, ec);
            if (ec || !out.keep_alive()) break;
        }
        socket.shutdown(tcp::socket::shutdown_send, ec);
    }

    void serve_feed(tcp::socket& socket, const http::request<http::string_body>& req, bool frames) {
        websocket::stream<tcp::socket&> ws(socket);
        beast::error_code ec;
        ws.accept(req, ec);
        if (ec) return;
        ws.binary(frames);

        auto send = [&](const PublishedFrame& pub) {
            if (frames) {
                const auto bytes = encode_frame(*pub.frame, static_cast<std::uint32_t>(pub.snapshot.frame_index));
                ws.write(net::buffer(bytes), ec);
            } else {
                ws.write(net::buffer(to_json(pub.snapshot).dump()), ec);
            }
        };

        std::uint64_t seen = 0;
        if (!frames) {
            PublishedFrame initial;
            initial.snapshot = session.telemetry();
            send(initial);
            if (ec) return;
        }
        while (!stopping && !session.closed()) {
            auto pub = session.wait_for_frame(seen, kFeedPoll);
            if (!pub) continue;
            seen = pub->generation;
            send(*pub);
            if (ec) return;
        }
        ws.close(websocket::close_code::going_away, ec);
    }
};

Service::Service(Session& session, std::shared_ptr<Recorder> recorder, ServiceOptions opts)
    : session_(session), api_(session, std::move(recorder)), opts_(std::move(opts)) {}

Service::~Service() { stop(); }

void Service::start() {
    if (impl_) return;
    auto impl = std::make_unique<Impl>(session_, api_);
    beast::error_code ec;
    const auto address = net::ip::make_address(opts_.address, ec);
    if (ec) throw GatewayError("bad listen address " + opts_.address);
    const tcp::endpoint endpoint{address, opts_.port};

    impl->acceptor.emplace(impl->ioc);
    impl->acceptor->open(endpoint.protocol(), ec);
    if (!ec) impl->acceptor->set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) impl->acceptor->bind(endpoint, ec);
    if (ec == net::error::address_in_use) {
        throw PortInUse("port " + std::to_string(opts_.port) + " is already in use");
    }
    if (!ec) impl->acceptor->listen(net::socket_base::max_listen_connections, ec);
    if (ec) throw GatewayError("cannot listen on " + opts_.address + ":" + std::to_string(opts_.port) + ": " + ec.message());

    bound_port_ = impl->acceptor->local_endpoint().port();
    impl->accept_next();
    impl->io_thread = std::thread([raw = impl.get()] { raw->ioc.run(); });
    impl_ = std::move(impl);
}

void Service::stop() {
    if (!impl_) return;
    impl_->stopping = true;
    net::post(impl_->ioc, [raw = impl_.get()] {
        beast::error_code ec;
        raw->acceptor->close(ec);
    });
    impl_->ioc.stop();
    if (impl_->io_thread.joinable()) impl_->io_thread.join();

    {
        std::lock_guard lock(impl_->connections_mutex);
        for (auto& conn : impl_->connections) {
            // Unblocks a worker sitting in a read; safe across threads at the fd level.
            ::shutdown(conn.socket->native_handle(), SHUT_RDWR);
        }
    }
    std::list<Impl::Connection> remaining;
    {
        std::lock_guard lock(impl_->connections_mutex);
        remaining.splice(remaining.end(), impl_->connections);
    }
    for (auto& conn : remaining) {
        if (conn.worker.joinable()) conn.worker.join();
    }
    remaining.clear();  // sockets must go before the io_context
    impl_.reset();
}

}  // namespace alchemy::gateway
