#pragma once

#include <map>
#include <memory>
#include <string>

#include "courtlab/analysis.hpp"
#include "courtlab/frames.hpp"

namespace httplib {
class Server;
}

namespace courtlab {

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Frame stream for the snapshot at `options.rate_hz`, resampling on
/// demand when it differs from the analysis rate. Shared by the CLI
/// exporter and GET /frames so both emit identical bytes.
std::string frame_payload(const Analysis& analysis, const FrameExportOptions& options);

using QueryParams = std::map<std::string, std::string>;

/// Read-only JSON API over one analysis snapshot. `handle` is a pure
/// function of the snapshot, the path and the query.
class Service {
public:
    explicit Service(std::shared_ptr<const Analysis> analysis);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Response handle(const std::string& path, const QueryParams& query) const;

    /// Binds and serves until stop(). Returns false if binding failed.
    bool listen(const std::string& host, int port);
    /// Binds to an ephemeral port; returns it, or -1 on failure. Call
    /// listen_after_bind() to start serving.
    int bind_any_port(const std::string& host);
    bool listen_after_bind();
    void stop();

private:
    Response players() const;
    Response frames(const QueryParams& q) const;
    Response heatmap(const std::string& player, const QueryParams& q) const;
    Response spacing(const QueryParams& q) const;
    Response quintets() const;
    Response buckets() const;
    Response court() const;

    void install_routes();

    std::shared_ptr<const Analysis> analysis_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace courtlab
