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

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swhkit {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A model value would violate one of its invariants.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Two directory entries share a tree sort key.
class DuplicateEntryError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Two snapshot branches share a name.
class DuplicateBranchError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

enum class ParseErrorCode {
    bad_scheme,           // identifier does not start with "swh"
    bad_version,          // schema version is not "1"
    bad_type,             // object tag outside {cnt,dir,rev,rel,snp}
    bad_hash,             // digest is not 40 lowercase hex characters
    bad_qualifier,        // malformed key=value, sub-id, escape or lines syntax
    unknown_qualifier,    // strict mode only
    duplicate_qualifier,  // same key given twice
};

constexpr auto to_string(ParseErrorCode code) noexcept -> std::string_view {
    switch (code) {
        case ParseErrorCode::bad_scheme: return "bad-scheme";
        case ParseErrorCode::bad_version: return "bad-version";
        case ParseErrorCode::bad_type: return "bad-type";
        case ParseErrorCode::bad_hash: return "bad-hash";
        case ParseErrorCode::bad_qualifier: return "bad-qualifier";
        case ParseErrorCode::unknown_qualifier: return "unknown-qualifier";
        case ParseErrorCode::duplicate_qualifier: return "duplicate-qualifier";
    }
    return "?";
}

/// Rejection of an identifier string, with the specific grammar rule broken.
class ParseError : public Error {
  public:
    ParseError(ParseErrorCode code, const std::string& message)
        : Error(std::string{to_string(code)} + ": " + message), code_{code} {}

    [[nodiscard]] auto code() const noexcept -> ParseErrorCode { return code_; }

  private:
    ParseErrorCode code_;
};

enum class WalkErrorCode {
    not_found,
    permission_denied,
    file_too_large,
    broken_symlink,      // only reachable when symlinks are followed
    symlink_cycle,       // only reachable when symlinks are followed
    unsupported_type,    // socket, fifo, device node
    not_a_repository,
    unborn_head,         // repository exists but has no commit yet
    io_error,
};

/// Failure while identifying on-disk artifacts.
class WalkError : public Error {
  public:
    WalkError(WalkErrorCode code, const std::string& message)
        : Error(message), code_{code} {}

    [[nodiscard]] auto code() const noexcept -> WalkErrorCode { return code_; }

  private:
    WalkErrorCode code_;
};

enum class UrlErrorCode {
    bad_base,             // base is not an absolute http(s) URI ending in '/'
    no_identifier_found,  // URL carries no "swh:1:" segment
};

class UrlError : public Error {
  public:
    UrlError(UrlErrorCode code, const std::string& message)
        : Error(message), code_{code} {}

    [[nodiscard]] auto code() const noexcept -> UrlErrorCode { return code_; }

  private:
    UrlErrorCode code_;
};

enum class ApiErrorKind {
    network,       // transport failure, retryable
    rate_limited,  // HTTP 429, retryable; carries the server's retry-after
    client,        // other 4xx, never retried
    server,        // 5xx after retries were exhausted
    parse,         // unintelligible payload where one was required
};

/// Failure talking to the archive API.
class ApiError : public Error {
  public:
    ApiError(ApiErrorKind kind, const std::string& message, int http_status = 0,
             std::optional<std::chrono::seconds> retry_after = std::nullopt)
        : Error(message),
          kind_{kind},
          http_status_{http_status},
          retry_after_{retry_after} {}

    [[nodiscard]] auto kind() const noexcept -> ApiErrorKind { return kind_; }
    [[nodiscard]] auto http_status() const noexcept -> int { return http_status_; }
    [[nodiscard]] auto retry_after() const noexcept
        -> std::optional<std::chrono::seconds> {
        return retry_after_;
    }

  private:
    ApiErrorKind kind_;
    int http_status_;
    std::optional<std::chrono::seconds> retry_after_;
};

}  // namespace swhkit
