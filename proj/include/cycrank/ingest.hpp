#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "cycrank/snapshot.hpp"

namespace cycrank {

/// Where and how to fetch the newform tables. Templates expand {base},
/// {lo} and {hi}; pages chain through the "next" field of each response.
struct SourceConfig {
    std::string base;
    std::string newspaces;
    std::string newforms;
    std::string twists;
    std::string source_name;  // recorded in the snapshot instead of the resolved base
    std::string retrieved;    // fixed retrieval date; empty means today (UTC)
    int max_in_flight = 4;
    std::chrono::milliseconds spacing{250};
    int retries = 3;
    std::chrono::milliseconds timeout{30000};
};

/// Reads a JSON config; "{config_dir}" in any template is replaced by the
/// directory containing the file.
SourceConfig load_source_config(const std::filesystem::path& path);

/// Caps concurrent requests and enforces a minimum gap between request starts.
class RateLimiter {
public:
    RateLimiter(int max_in_flight, std::chrono::milliseconds spacing);

    class Permit {
    public:
        explicit Permit(RateLimiter& owner) : owner_(&owner) {}
        Permit(Permit&& other) noexcept : owner_(std::exchange(other.owner_, nullptr)) {}
        Permit(const Permit&) = delete;
        Permit& operator=(const Permit&) = delete;
        Permit& operator=(Permit&&) = delete;
        ~Permit() {
            if (owner_) owner_->release();
        }

    private:
        RateLimiter* owner_;
    };

    Permit acquire();

private:
    void release();

    std::mutex mu_;
    std::condition_variable cv_;
    int max_in_flight_;
    int in_flight_ = 0;
    std::chrono::milliseconds spacing_;
    std::chrono::steady_clock::time_point next_start_{};
};

class Fetcher {
public:
    virtual ~Fetcher() = default;
    /// Body of `url`. Throws IngestError; retriable for transport failures and 5xx.
    virtual std::string get(const std::string& url) = 0;
};

/// http://, https:// and file:// URLs. HTTP requests honour the usual proxy
/// environment variables and go through a shared RateLimiter.
class UrlFetcher : public Fetcher {
public:
    explicit UrlFetcher(const SourceConfig& config);
    std::string get(const std::string& url) override;

private:
    std::string get_http(const std::string& url);

    std::chrono::milliseconds timeout_;
    RateLimiter limiter_;
};

struct IngestOptions {
    std::int64_t level_lo = 1;
    std::int64_t level_hi = 1;
    /// Pages fetched so far are kept here; a rerun after a retriable failure
    /// reuses them instead of refetching.
    std::optional<std::filesystem::path> journal_dir;
};

Snapshot ingest(const SourceConfig& config, const IngestOptions& options, Fetcher& fetcher);

/// Resolves a "next" link against the page it came from.
std::string resolve_url(const std::string& current, const std::string& next);

}  // namespace cycrank
