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

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swhkit/core.hpp"
#include "swhkit/errors.hpp"

// Grammar of full identifiers:
//
//   swh:1:<tag>:<40-hex> ( ';' <key> '=' <value> )*
//
// with the qualifiers origin, visit, anchor, path and lines carrying
// extrinsic context. Canonical output always orders them
// origin, visit, anchor, path, lines; origin and path values are
// percent-encoded so that ';' and '=' stay unambiguous separators.

namespace swhkit {

/// 1-based inclusive line range of interest inside a content object.
struct LineRange {
    std::uint32_t start = 1;
    std::optional<std::uint32_t> end;  // absent: a single line

    /// Number of lines denoted; "101-143" spans 43 lines.
    [[nodiscard]] auto count() const noexcept -> std::uint32_t {
        return end ? *end - start + 1 : 1;
    }

    auto operator<=>(const LineRange&) const = default;
};

enum class ParseMode : std::uint8_t {
    strict,  // unknown qualifiers are rejected
    lax,     // unknown qualifiers are preserved verbatim, in declaration order
};

struct ParsePolicy {
    ParseMode mode = ParseMode::strict;
};

namespace detail {

// Bytes emitted raw by the qualifier-value encoder: RFC 3986 unreserved
// plus '/' and ':'. Everything else, notably '%', ';' and '=', escapes.
constexpr auto is_unescaped_qualifier_byte(unsigned char c) noexcept -> bool {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
           c == '~' || c == '/' || c == ':';
}

[[nodiscard]] inline auto percent_encode(std::string_view bytes) -> std::string {
    std::string out;
    out.reserve(bytes.size());
    for (unsigned char c : bytes) {
        if (is_unescaped_qualifier_byte(c)) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += "0123456789ABCDEF"[c >> 4U];
            out += "0123456789ABCDEF"[c & 0x0FU];
        }
    }
    return out;
}

constexpr auto hex_value(char c) noexcept -> std::optional<std::uint8_t> {
    if (c >= '0' && c <= '9') { return static_cast<std::uint8_t>(c - '0'); }
    if (c >= 'a' && c <= 'f') { return static_cast<std::uint8_t>(c - 'a' + 10); }
    if (c >= 'A' && c <= 'F') { return static_cast<std::uint8_t>(c - 'A' + 10); }
    return std::nullopt;
}

// Decodes %XX escapes (either hex case); nullopt on truncated or non-hex
// escapes. All other bytes pass through untouched.
[[nodiscard]] inline auto percent_decode(std::string_view text)
    -> std::optional<std::string> {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '%') {
            out += text[i];
            continue;
        }
        if (i + 2 >= text.size()) { return std::nullopt; }
        auto hi = hex_value(text[i + 1]);
        auto lo = hex_value(text[i + 2]);
        if (!hi || !lo) { return std::nullopt; }
        out += static_cast<char>((*hi << 4U) | *lo);
        i += 2;
    }
    return out;
}

}  // namespace detail

/// A core identifier plus optional origin/visit/anchor/path/lines context.
/// Setters enforce the structural invariants; semantically dubious but
/// grammatical combinations are left to validate_semantics().
class QualifiedSwhid {
  public:
    QualifiedSwhid() = default;
    explicit QualifiedSwhid(CoreSwhid core) : core_{core} {}

    [[nodiscard]] auto core() const noexcept -> const CoreSwhid& { return core_; }
    [[nodiscard]] auto origin() const noexcept
        -> const std::optional<std::string>& {
        return origin_;
    }
    [[nodiscard]] auto visit() const noexcept
        -> const std::optional<CoreSwhid>& {
        return visit_;
    }
    [[nodiscard]] auto anchor() const noexcept
        -> const std::optional<CoreSwhid>& {
        return anchor_;
    }
    [[nodiscard]] auto path() const noexcept
        -> const std::optional<std::string>& {
        return path_;
    }
    [[nodiscard]] auto lines() const noexcept -> const std::optional<LineRange>& {
        return lines_;
    }
    /// Unknown qualifiers preserved by lax parsing, in declaration order,
    /// values verbatim (not percent-decoded).
    [[nodiscard]] auto extra_qualifiers() const noexcept
        -> const std::vector<std::pair<std::string, std::string>>& {
        return extra_;
    }

    auto set_core(CoreSwhid core) -> QualifiedSwhid& {
        core_ = core;
        return *this;
    }

    auto set_origin(std::string origin) -> QualifiedSwhid& {
        if (origin.empty()) {
            throw ValidationError{"origin must not be empty"};
        }
        origin_ = std::move(origin);
        return *this;
    }

    auto set_visit(CoreSwhid visit) -> QualifiedSwhid& {
        if (visit.type != ObjectType::snapshot) {
            throw ValidationError{"visit must reference a snapshot"};
        }
        visit_ = visit;
        return *this;
    }

    auto set_anchor(CoreSwhid anchor) -> QualifiedSwhid& {
        anchor_ = anchor;
        return *this;
    }

    auto set_path(std::string path) -> QualifiedSwhid& {
        if (path.empty() || path.front() != '/') {
            throw ValidationError{"path must be absolute (start with '/')"};
        }
        path_ = std::move(path);
        return *this;
    }

    auto set_lines(LineRange lines) -> QualifiedSwhid& {
        if (lines.start < 1 || (lines.end && *lines.end < lines.start)) {
            throw ValidationError{"lines must be 1-based with end >= start"};
        }
        lines_ = lines;
        return *this;
    }

    auto add_extra_qualifier(std::string key, std::string value)
        -> QualifiedSwhid& {
        if (key.empty() || key.find_first_of(";=") != std::string::npos) {
            throw ValidationError{"invalid extra qualifier key"};
        }
        if (value.empty() || value.find(';') != std::string::npos) {
            throw ValidationError{"invalid extra qualifier value"};
        }
        extra_.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    auto operator<=>(const QualifiedSwhid&) const = default;

  private:
    CoreSwhid core_;
    std::optional<std::string> origin_;
    std::optional<CoreSwhid> visit_;
    std::optional<CoreSwhid> anchor_;
    std::optional<std::string> path_;
    std::optional<LineRange> lines_;
    std::vector<std::pair<std::string, std::string>> extra_;
};

namespace detail {

// Core grammar: swh ':' 1 ':' tag ':' 40-lowercase-hex. Each field failing
// maps to its own error code so rejections stay diagnosable.
[[nodiscard]] inline auto parse_core(std::string_view text) -> CoreSwhid {
    auto take = [&text]() -> std::string_view {
        auto colon = text.find(':');
        auto field = text.substr(0, colon);
        text = colon == std::string_view::npos ? std::string_view{}
                                               : text.substr(colon + 1);
        return field;
    };
    auto scheme = take();
    if (scheme != "swh") {
        throw ParseError{ParseErrorCode::bad_scheme,
                         "expected scheme \"swh\", got \"" + std::string{scheme} +
                             "\""};
    }
    auto version = take();
    if (version != "1") {
        throw ParseError{ParseErrorCode::bad_version,
                         "unsupported schema version \"" + std::string{version} +
                             "\""};
    }
    auto tag = take();
    auto type = object_type_from_tag(tag);
    if (!type) {
        throw ParseError{ParseErrorCode::bad_type,
                         "unknown object type \"" + std::string{tag} + "\""};
    }
    auto digest = Digest::try_from_hex(text);
    if (!digest) {
        throw ParseError{ParseErrorCode::bad_hash,
                         "digest is not 40 lowercase hex characters"};
    }
    return {*type, *digest};
}

[[nodiscard]] inline auto parse_positive_int(std::string_view text)
    -> std::optional<std::uint32_t> {
    if (text.empty()) { return std::nullopt; }
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
        return std::nullopt;
    }
    return value;
}

[[nodiscard]] inline auto parse_lines(std::string_view text) -> LineRange {
    auto dash = text.find('-');
    auto bad = [&] {
        return ParseError{ParseErrorCode::bad_qualifier,
                          "lines must be L or L1-L2, decimal and 1-based"};
    };
    if (dash == std::string_view::npos) {
        auto start = parse_positive_int(text);
        if (!start) { throw bad(); }
        return {*start, std::nullopt};
    }
    auto start = parse_positive_int(text.substr(0, dash));
    auto end = parse_positive_int(text.substr(dash + 1));
    if (!start || !end || *end < *start) { throw bad(); }
    return {*start, *end};
}

}  // namespace detail

/// Parses a textual identifier. Total over the grammar: every input either
/// yields a value or throws a ParseError carrying the specific rule broken.
[[nodiscard]] inline auto parse_swhid(std::string_view text,
                                      ParsePolicy policy = {}) -> QualifiedSwhid {
    auto semicolon = text.find(';');
    QualifiedSwhid id{detail::parse_core(text.substr(0, semicolon))};

    bool seen[5] = {};  // origin, visit, anchor, path, lines
    auto claim = [&seen](int slot, std::string_view key) {
        if (seen[slot]) {
            throw ParseError{ParseErrorCode::duplicate_qualifier,
                             "qualifier given twice: " + std::string{key}};
        }
        seen[slot] = true;
    };

    while (semicolon != std::string_view::npos) {
        text = text.substr(semicolon + 1);
        semicolon = text.find(';');
        auto pair = text.substr(0, semicolon);

        auto eq = pair.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == pair.size()) {
            throw ParseError{ParseErrorCode::bad_qualifier,
                             "qualifier is not of the form key=value: \"" +
                                 std::string{pair} + "\""};
        }
        auto key = pair.substr(0, eq);
        auto value = pair.substr(eq + 1);

        if (key == "origin") {
            claim(0, key);
            auto decoded = detail::percent_decode(value);
            if (!decoded) {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 "invalid percent-escape in origin"};
            }
            id.set_origin(std::move(*decoded));
        } else if (key == "visit") {
            claim(1, key);
            CoreSwhid sub;
            try {
                sub = detail::parse_core(value);
            } catch (const ParseError& nested) {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 std::string{"bad visit sub-identifier ("} +
                                     nested.what() + ")"};
            }
            if (sub.type != ObjectType::snapshot) {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 "visit must reference a snapshot"};
            }
            id.set_visit(sub);
        } else if (key == "anchor") {
            claim(2, key);
            try {
                id.set_anchor(detail::parse_core(value));
            } catch (const ParseError& nested) {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 std::string{"bad anchor sub-identifier ("} +
                                     nested.what() + ")"};
            }
        } else if (key == "path") {
            claim(3, key);
            auto decoded = detail::percent_decode(value);
            if (!decoded) {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 "invalid percent-escape in path"};
            }
            if (decoded->empty() || decoded->front() != '/') {
                throw ParseError{ParseErrorCode::bad_qualifier,
                                 "path must be absolute (start with '/')"};
            }
            id.set_path(std::move(*decoded));
        } else if (key == "lines") {
            claim(4, key);
            id.set_lines(detail::parse_lines(value));
        } else {
            if (policy.mode == ParseMode::strict) {
                throw ParseError{ParseErrorCode::unknown_qualifier,
                                 "unknown qualifier: " + std::string{key}};
            }
            for (const auto& [existing, _] : id.extra_qualifiers()) {
                if (existing == key) {
                    throw ParseError{ParseErrorCode::duplicate_qualifier,
                                     "qualifier given twice: " + std::string{key}};
                }
            }
            id.add_extra_qualifier(std::string{key}, std::string{value});
        }
    }
    return id;
}

/// Serializes to canonical form: qualifiers in the fixed order origin,
/// visit, anchor, path, lines (then any lax-preserved extras), with
/// percent-encoded origin and path values. Idempotent through reparsing.
[[nodiscard]] inline auto format_swhid(const QualifiedSwhid& id) -> std::string {
    std::string out = id.core().to_string();
    if (id.origin()) {
        out += ";origin=";
        out += detail::percent_encode(*id.origin());
    }
    if (id.visit()) {
        out += ";visit=";
        out += id.visit()->to_string();
    }
    if (id.anchor()) {
        out += ";anchor=";
        out += id.anchor()->to_string();
    }
    if (id.path()) {
        out += ";path=";
        out += detail::percent_encode(*id.path());
    }
    if (id.lines()) {
        out += ";lines=";
        out += std::to_string(id.lines()->start);
        if (id.lines()->end) {
            out += '-';
            out += std::to_string(*id.lines()->end);
        }
    }
    for (const auto& [key, value] : id.extra_qualifiers()) {
        out += ';';
        out += key;
        out += '=';
        out += value;
    }
    return out;
}

enum class Severity : std::uint8_t { warning, error };

/// One semantic finding about an otherwise grammatical identifier.
struct Diagnostic {
    Severity severity;
    std::string code;
    std::string message;

    auto operator<=>(const Diagnostic&) const = default;
};

/// Flags semantically dubious qualifier combinations without mutating the
/// identifier. An empty result means no reservations.
[[nodiscard]] inline auto validate_semantics(const QualifiedSwhid& id)
    -> std::vector<Diagnostic> {
    std::vector<Diagnostic> out;
    if (id.lines() && id.core().type != ObjectType::content) {
        out.push_back({Severity::error, "lines-requires-content",
                       "lines requires content; this identifier names a " +
                           std::string{name_of(id.core().type)}});
    }
    if (id.anchor() && id.anchor()->type == ObjectType::snapshot) {
        out.push_back({Severity::error, "anchor-snapshot",
                       "anchor cannot reference a snapshot"});
    }
    if (id.anchor() && id.anchor()->type == ObjectType::content) {
        out.push_back({Severity::warning, "anchor-content",
                       "a content anchor has no directory to resolve paths in"});
    }
    if (id.path() && id.core().type == ObjectType::content && !id.anchor()) {
        out.push_back({Severity::warning, "path-without-anchor",
                       "path on a content identifier is ambiguous without an "
                       "anchor"});
    }
    return out;
}

}  // namespace swhkit
