#include "seqscreen/service.hpp"

#include <csignal>
#include <charconv>
#include <cstdio>
#include <thread>

#include "seqscreen/report.hpp"

namespace seqscreen {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidProbability:
        case ErrorCode::InvalidArgument:
        case ErrorCode::ValidationError: return 400;
        case ErrorCode::SessionNotFound: return 404;
        case ErrorCode::ConflictingCertainty: return 409;
        case ErrorCode::UndefinedPosterior:
        case ErrorCode::UninformativeTest:
        case ErrorCode::TargetUnreachable:
        case ErrorCode::InvalidTarget:
        case ErrorCode::NoUniqueIntersection:
        case ErrorCode::NumericalFailure:
        case ErrorCode::QuadratureFailure: return 422;
    }
    return 500;
}

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(render_json(body), kJson);
}

void send_error(httplib::Response& res, const ScreeningError& e) { send(res, http_status(e.code()), error_body(e)); }

// Runs a handler body and converts every failure into the error body shape.
template <typename F>
httplib::Server::Handler guarded(F&& body) {
    return [body = std::forward<F>(body)](const httplib::Request& req, httplib::Response& res) {
        try {
            body(req, res);
        } catch (const ScreeningError& e) {
            send_error(res, e);
        } catch (const std::exception& e) {
            send(res, 500, error_body(ErrorCode::NumericalFailure, e.what()));
        }
    };
}

json parse_body(const httplib::Request& req) {
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw ScreeningError(ErrorCode::ValidationError, std::string("request body is not valid JSON: ") + e.what());
    }
}

double query_number(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) {
        throw ScreeningError(ErrorCode::ValidationError, std::string("missing query parameter '") + key + "'");
    }
    const std::string text = req.get_param_value(key);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw ScreeningError(ErrorCode::ValidationError,
                             std::string("query parameter '") + key + "' is not a number: '" + text + "'");
    }
    return value;
}

TestCharacteristics query_test(const httplib::Request& req) {
    return TestCharacteristics("query", query_number(req, "a"), query_number(req, "b"));
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
    server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
        send(res, 200, json{{"status", "ok"}});
    });

    server.Post("/v1/compute", guarded([](const httplib::Request& req, httplib::Response& res) {
        send(res, 200, compute_report(scenario_from_json(parse_body(req))));
    }));

    server.Post("/v1/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send(res, 201, to_json(store.create(scenario_from_json(parse_body(req)))));
    }));

    server.Get(R"(/v1/sessions/([0-9a-f]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
        send(res, 200, to_json(store.get(req.matches[1])));
    }));

    server.Post(R"(/v1/sessions/([0-9a-f]+)/outcomes)",
                guarded([&store](const httplib::Request& req, httplib::Response& res) {
                    const auto state = store.append(req.matches[1], sequence_entry_from_json(parse_body(req)));
                    send(res, 200, to_json(*state.posterior));
                }));

    server.Delete(R"(/v1/sessions/([0-9a-f]+)/outcomes/last)",
                  guarded([&store](const httplib::Request& req, httplib::Response& res) {
                      send(res, 200, to_json(store.undo_last(req.matches[1])));
                  }));

    server.Post(R"(/v1/sessions/([0-9a-f]+)/whatif)",
                guarded([&store](const httplib::Request& req, httplib::Response& res) {
                    send(res, 200, to_json(store.what_if(req.matches[1], sequence_entry_from_json(parse_body(req)))));
                }));

    server.Get("/v1/curves", guarded([](const httplib::Request& req, httplib::Response& res) {
        const double n = query_number(req, "n");
        if (!(n >= 2.0 && n <= 1e6) || n != static_cast<double>(static_cast<std::size_t>(n))) {
            throw ScreeningError(ErrorCode::ValidationError, "n must be an integer in [2, 1000000]");
        }
        send(res, 200, to_json(sample_curves(query_test(req), static_cast<std::size_t>(n))));
    }));

    server.Get("/v1/geometry", guarded([](const httplib::Request& req, httplib::Response& res) {
        send(res, 200, geometry_report(query_test(req)));
    }));

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            const json body = {{"error", {{"code", res.status == 404 ? "NotFound" : "BadRequest"},
                                          {"message", "no such endpoint or method"}}}};
            res.set_content(render_json(body), kJson);
        }
    });
}

int run_service(const ServiceOptions& options) {
    SessionStore store;
    if (options.snapshot_path) {
        const auto loaded = store.load(*options.snapshot_path);
        std::fprintf(stderr, "loaded %zu session(s) from %s\n", loaded, options.snapshot_path->c_str());
    }

    // Block the shutdown signals before any worker thread exists so only the
    // waiter below receives them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    httplib::Server server;
    register_routes(server, store);
    if (!server.bind_to_port(options.bind_address, options.port)) {
        std::fprintf(stderr, "cannot bind %s:%d\n", options.bind_address.c_str(), options.port);
        return 1;
    }

    std::thread waiter([&server, signals] {
        int received = 0;
        sigwait(&signals, &received);
        server.stop();
    });

    std::fprintf(stderr, "listening on %s:%d\n", options.bind_address.c_str(), options.port);
    if (!server.listen_after_bind()) {
        // Listener failed on its own; wake the waiter so it can be joined.
        pthread_kill(waiter.native_handle(), SIGTERM);
    }
    waiter.join();

    if (options.snapshot_path) {
        store.save(*options.snapshot_path);
        std::fprintf(stderr, "saved %zu session(s) to %s\n", store.size(), options.snapshot_path->c_str());
    }
    return 0;
}

}  // namespace seqscreen
