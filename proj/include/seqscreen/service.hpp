#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "httplib.h"

#include "seqscreen/session.hpp"

namespace seqscreen {

// HTTP status for a typed library error.
int http_status(ErrorCode code) noexcept;

// Installs the /v1 routes on `server`. `store` must outlive the server.
void register_routes(httplib::Server& server, SessionStore& store);

struct ServiceOptions {
    std::string bind_address = "127.0.0.1";
    int port = 8080;
    std::optional<std::filesystem::path> snapshot_path;
};

// Blocks until SIGINT/SIGTERM. The session journal, when configured, is
// loaded before listening and written on shutdown.
int run_service(const ServiceOptions& options);

}  // namespace seqscreen
