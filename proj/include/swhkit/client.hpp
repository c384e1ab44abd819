// Copyright 2026 The swhkit Authors
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

#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "swhkit/errors.hpp"
#include "swhkit/resolve.hpp"
#include "swhkit/swhid.hpp"

// REST client for the archive's public API v1: submit save-code-now
// requests, poll their status, and check whether an identifier resolves.
// Every endpoint path is rendered by one builder function, and all tests
// run against recorded transcripts through the HttpTransport seam.

namespace swhkit {

/// Version control systems the archive ingests on demand.
enum class VisitType : std::uint8_t { git, svn, hg };

constexpr auto to_string(VisitType type) noexcept -> std::string_view {
    switch (type) {
        case VisitType::git: return "git";
        case VisitType::svn: return "svn";
        case VisitType::hg: return "hg";
    }
    return "?";
}

constexpr auto visit_type_from_string(std::string_view text) noexcept
    -> std::optional<VisitType> {
    if (text == "git") { return VisitType::git; }
    if (text == "svn") { return VisitType::svn; }
    if (text == "hg") { return VisitType::hg; }
    return std::nullopt;
}

/// One archival request, as the caller sees it.
struct SaveRequest {
    VisitType visit_type = VisitType::git;
    std::string origin_url;  // clone/checkout URL, absolute
    std::optional<std::string> request_id;
    std::chrono::system_clock::time_point submitted_at{};
};

/// Caller-facing request lifecycle states. The mapping from server payloads
/// is total: anything unrecognized lands in `other` with the payload kept.
enum class RequestState : std::uint8_t {
    accepted,
    pending,  // waiting for manual screening of an unknown forge
    rejected,
    succeeded,
    failed,
    not_found,
    other,
};

constexpr auto to_string(RequestState state) noexcept -> std::string_view {
    switch (state) {
        case RequestState::accepted: return "accepted";
        case RequestState::pending: return "pending";
        case RequestState::rejected: return "rejected";
        case RequestState::succeeded: return "succeeded";
        case RequestState::failed: return "failed";
        case RequestState::not_found: return "not-found";
        case RequestState::other: return "other";
    }
    return "?";
}

struct SaveStatus {
    RequestState request_state = RequestState::other;
    std::optional<std::string> task_state;  // server's task status, verbatim
    std::string raw;                        // full server payload, verbatim
};

struct KnownResult {
    bool known = false;
    std::optional<std::string> resolved_url;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_backoff{10000};
};

struct ClientConfig {
    std::string base_api = "https://archive.softwareheritage.org/api/1/";
    std::optional<std::string> auth_token;
    std::chrono::milliseconds timeout{30000};
    RetryPolicy retry;
    /// Delay hook; tests substitute a recorder. Defaults to sleeping.
    std::function<void(std::chrono::milliseconds)> sleeper;
};

struct HttpRequest {
    std::string method;  // "GET" or "POST"
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::map<std::string, std::string> headers;  // keys lowercased
};

/// Transport seam: performs one HTTP exchange. Throws ApiError with kind
/// `network` on transport failure; HTTP-level failures come back as
/// responses and are policy-handled by the client.
class HttpTransport {
  public:
    virtual ~HttpTransport() = default;
    [[nodiscard]] virtual auto execute(const HttpRequest& request)
        -> HttpResponse = 0;
};

/// Real transport over cpp-httplib (TLS included).
class HttplibTransport final : public HttpTransport {
  public:
    explicit HttplibTransport(std::chrono::milliseconds timeout)
        : timeout_{timeout} {}

    [[nodiscard]] auto execute(const HttpRequest& request)
        -> HttpResponse override {
        auto scheme_end = request.url.find("://");
        if (scheme_end == std::string::npos) {
            throw ApiError{ApiErrorKind::network,
                           "unsupported url: " + request.url};
        }
        auto path_start = request.url.find('/', scheme_end + 3);
        auto origin = request.url.substr(0, path_start);
        auto path = path_start == std::string::npos
                        ? std::string{"/"}
                        : request.url.substr(path_start);

        httplib::Client client{origin};
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);
        client.set_write_timeout(timeout_);
        client.set_follow_location(true);

        httplib::Headers headers;
        for (const auto& [key, value] : request.headers) {
            headers.emplace(key, value);
        }
        auto result = request.method == "POST"
                          ? client.Post(path, headers, request.body,
                                        "application/json")
                          : client.Get(path, headers);
        if (!result) {
            throw ApiError{ApiErrorKind::network,
                           request.url + ": " + httplib::to_string(result.error())};
        }
        HttpResponse response{result->status, result->body, {}};
        for (const auto& [key, value] : result->headers) {
            auto lower = key;
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            response.headers.emplace(std::move(lower), value);
        }
        return response;
    }

  private:
    std::chrono::milliseconds timeout_;
};

namespace detail {

// "clone/checkout url as given by the development platform": any absolute
// URL with a scheme and a host.
[[nodiscard]] inline auto is_absolute_url(std::string_view url) -> bool {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0) { return false; }
    for (char c : url.substr(0, scheme_end)) {
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '+' &&
            c != '-' && c != '.') {
            return false;
        }
    }
    auto rest = url.substr(scheme_end + 3);
    auto host = rest.substr(0, rest.find('/'));
    return !host.empty();
}

[[nodiscard]] inline auto parse_retry_after(const HttpResponse& response)
    -> std::optional<std::chrono::seconds> {
    auto it = response.headers.find("retry-after");
    if (it == response.headers.end()) { return std::nullopt; }
    try {
        return std::chrono::seconds{std::stol(it->second)};
    } catch (const std::exception&) {
        return std::nullopt;  // HTTP-date form; treat as unknown
    }
}

}  // namespace detail

/// Archive API client. Safe for concurrent use; the only shared mutable
/// state is the rate-limit clock, guarded by a mutex.
class ArchiveClient {
  public:
    explicit ArchiveClient(ClientConfig config,
                           std::shared_ptr<HttpTransport> transport = nullptr)
        : config_{std::move(config)}, transport_{std::move(transport)} {
        if (config_.retry.max_attempts < 1) {
            throw ValidationError{"retry.max_attempts must be >= 1"};
        }
        if (config_.timeout.count() <= 0) {
            throw ValidationError{"timeout must be positive"};
        }
        if (config_.base_api.empty() || config_.base_api.back() != '/' ||
            !detail::is_absolute_url(config_.base_api)) {
            throw ValidationError{
                "base_api must be an absolute URL ending in '/'"};
        }
        if (!transport_) {
            transport_ = std::make_shared<HttplibTransport>(config_.timeout);
        }
    }

    /// `<base>origin/save/<visit_type>/url/<origin_url>/` — the documented
    /// save-code-now endpoint. The origin URL is embedded as given.
    [[nodiscard]] auto save_endpoint(VisitType type,
                                     std::string_view origin) const
        -> std::string {
        std::string url = config_.base_api;
        url += "origin/save/";
        url += to_string(type);
        url += "/url/";
        url += origin;
        url += '/';
        return url;
    }

    /// `<base>resolve/<canonical id>/`
    [[nodiscard]] auto resolve_endpoint(const QualifiedSwhid& id) const
        -> std::string {
        return config_.base_api + "resolve/" + format_swhid(id) + "/";
    }

    /// Requests archival of an origin. Re-submitting the same origin is
    /// fine from the caller's view; the archive deduplicates visits.
    [[nodiscard]] auto submit_save(const SaveRequest& request) -> SaveStatus {
        require_valid_origin(request.origin_url);
        auto response = perform(
            {"POST", save_endpoint(request.visit_type, request.origin_url),
             common_headers(), ""});
        if (response.status >= 400) { throw client_error(response); }
        return map_save_payload(response.body);
    }

    /// Fetches the current status of a previously submitted origin.
    [[nodiscard]] auto poll_save(const SaveRequest& request) -> SaveStatus {
        require_valid_origin(request.origin_url);
        auto response = perform(
            {"GET", save_endpoint(request.visit_type, request.origin_url),
             common_headers(), ""});
        if (response.status == 404) {
            return {RequestState::not_found, std::nullopt, response.body};
        }
        if (response.status >= 400) { throw client_error(response); }
        return map_save_payload(response.body);
    }

    /// Asks the archive to resolve an identifier; known iff it does.
    [[nodiscard]] auto check_known(const QualifiedSwhid& id) -> KnownResult {
        auto response =
            perform({"GET", resolve_endpoint(id), common_headers(), ""});
        if (response.status == 404) { return {false, std::nullopt}; }
        if (response.status >= 400) { throw client_error(response); }
        auto payload = nlohmann::json::parse(response.body, nullptr, false);
        if (payload.is_discarded() || !payload.is_object()) {
            throw ApiError{ApiErrorKind::parse,
                           "unintelligible resolve payload", response.status};
        }
        KnownResult result{true, std::nullopt};
        if (auto it = payload.find("browse_url");
            it != payload.end() && it->is_string()) {
            result.resolved_url = it->get<std::string>();
        }
        return result;
    }

    /// Total mapping from a save payload (object, or list of requests with
    /// the newest first) to a SaveStatus. Unknown shapes and states map to
    /// `other`; the payload is always preserved verbatim.
    [[nodiscard]] static auto map_save_payload(const std::string& body)
        -> SaveStatus {
        SaveStatus status;
        status.raw = body;
        auto payload = nlohmann::json::parse(body, nullptr, false);
        if (payload.is_array()) {
            if (payload.empty()) {
                status.request_state = RequestState::not_found;
                return status;
            }
            payload = payload.front();
        }
        if (!payload.is_object()) { return status; }  // other

        std::string task_state;
        if (auto it = payload.find("save_task_status");
            it != payload.end() && it->is_string()) {
            task_state = it->get<std::string>();
            status.task_state = task_state;
        }
        std::string request_state;
        if (auto it = payload.find("save_request_status");
            it != payload.end() && it->is_string()) {
            request_state = it->get<std::string>();
        }

        if (task_state == "succeeded") {
            status.request_state = RequestState::succeeded;
        } else if (task_state == "failed") {
            status.request_state = RequestState::failed;
        } else if (request_state == "accepted") {
            status.request_state = RequestState::accepted;
        } else if (request_state == "pending") {
            status.request_state = RequestState::pending;
        } else if (request_state == "rejected") {
            status.request_state = RequestState::rejected;
        }  // anything else stays `other`
        return status;
    }

  private:
    [[nodiscard]] auto common_headers() const
        -> std::vector<std::pair<std::string, std::string>> {
        std::vector<std::pair<std::string, std::string>> headers{
            {"Accept", "application/json"}};
        if (config_.auth_token) {
            headers.emplace_back("Authorization", "Bearer " + *config_.auth_token);
        }
        return headers;
    }

    static void require_valid_origin(std::string_view origin) {
        if (!detail::is_absolute_url(origin)) {
            throw ApiError{ApiErrorKind::client,
                           "origin is not an absolute URL: \"" +
                               std::string{origin} + "\""};
        }
    }

    [[nodiscard]] static auto client_error(const HttpResponse& response)
        -> ApiError {
        return ApiError{ApiErrorKind::client,
                        "archive rejected the request (HTTP " +
                            std::to_string(response.status) + "): " +
                            response.body,
                        response.status};
    }

    void sleep(std::chrono::milliseconds delay) const {
        if (config_.sleeper) {
            config_.sleeper(delay);
        } else {
            std::this_thread::sleep_for(delay);
        }
    }

    // One retry loop per in-flight request. Only transport failures, 5xx
    // and 429 are retried; the backoff schedule never decreases.
    [[nodiscard]] auto perform(HttpRequest request) -> HttpResponse {
        wait_for_rate_limit();
        auto delay = config_.retry.initial_backoff;
        auto bump = [this, &delay] {
            sleep(delay);
            delay = std::min(
                std::chrono::milliseconds{static_cast<std::int64_t>(
                    static_cast<double>(delay.count()) *
                    config_.retry.multiplier)},
                config_.retry.max_backoff);
        };
        for (int attempt = 1;; ++attempt) {
            std::optional<HttpResponse> response;
            try {
                response = transport_->execute(request);
            } catch (const ApiError& error) {
                if (error.kind() != ApiErrorKind::network ||
                    attempt >= config_.retry.max_attempts) {
                    throw;
                }
                bump();
                continue;
            }
            if (response->status == 429) {
                auto retry_after = detail::parse_retry_after(*response);
                note_rate_limit(retry_after);
                if (attempt >= config_.retry.max_attempts) {
                    throw ApiError{ApiErrorKind::rate_limited,
                                   "rate limited by the archive", 429,
                                   retry_after};
                }
                if (retry_after) {
                    delay = std::max(
                        delay, std::chrono::duration_cast<
                                   std::chrono::milliseconds>(*retry_after));
                }
                bump();
                continue;
            }
            if (response->status >= 500) {
                if (attempt >= config_.retry.max_attempts) {
                    throw ApiError{ApiErrorKind::server,
                                   "archive error (HTTP " +
                                       std::to_string(response->status) + ")",
                                   response->status};
                }
                bump();
                continue;
            }
            return *response;
        }
    }

    void wait_for_rate_limit() {
        std::chrono::milliseconds wait{0};
        {
            std::lock_guard lock{rate_mutex_};
            auto now = std::chrono::steady_clock::now();
            if (not_before_ > now) {
                wait = std::chrono::duration_cast<std::chrono::milliseconds>(
                           not_before_ - now) +
                       std::chrono::milliseconds{1};
            }
        }
        if (wait.count() > 0) { sleep(wait); }
    }

    void note_rate_limit(std::optional<std::chrono::seconds> retry_after) {
        if (!retry_after) { return; }
        std::lock_guard lock{rate_mutex_};
        not_before_ = std::max(not_before_,
                               std::chrono::steady_clock::now() + *retry_after);
    }

    ClientConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::mutex rate_mutex_;
    std::chrono::steady_clock::time_point not_before_{};
};

}  // namespace swhkit
