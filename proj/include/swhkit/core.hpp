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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "swhkit/errors.hpp"

namespace swhkit {

/// Schema version of the identifiers this library produces and accepts.
inline constexpr int kSchemaVersion = 1;

/// The five node kinds of the archive's Merkle DAG.
enum class ObjectType : std::uint8_t {
    content,
    directory,
    revision,
    release,
    snapshot,
};

/// Canonical 3-letter tag, as it appears inside identifiers.
constexpr auto tag_of(ObjectType type) noexcept -> std::string_view {
    switch (type) {
        case ObjectType::content: return "cnt";
        case ObjectType::directory: return "dir";
        case ObjectType::revision: return "rev";
        case ObjectType::release: return "rel";
        case ObjectType::snapshot: return "snp";
    }
    return "?";
}

/// Full object kind name ("content", "directory", ...).
constexpr auto name_of(ObjectType type) noexcept -> std::string_view {
    switch (type) {
        case ObjectType::content: return "content";
        case ObjectType::directory: return "directory";
        case ObjectType::revision: return "revision";
        case ObjectType::release: return "release";
        case ObjectType::snapshot: return "snapshot";
    }
    return "?";
}

constexpr auto object_type_from_tag(std::string_view tag) noexcept
    -> std::optional<ObjectType> {
    if (tag == "cnt") { return ObjectType::content; }
    if (tag == "dir") { return ObjectType::directory; }
    if (tag == "rev") { return ObjectType::revision; }
    if (tag == "rel") { return ObjectType::release; }
    if (tag == "snp") { return ObjectType::snapshot; }
    return std::nullopt;
}

namespace detail {

constexpr auto hex_nibble(std::uint8_t value) noexcept -> char {
    return "0123456789abcdef"[value & 0x0FU];
}

// Value of a lowercase hex digit, or nullopt. Uppercase is deliberately
// not accepted here: digests render lowercase only.
constexpr auto lower_hex_value(char c) noexcept -> std::optional<std::uint8_t> {
    if (c >= '0' && c <= '9') { return static_cast<std::uint8_t>(c - '0'); }
    if (c >= 'a' && c <= 'f') { return static_cast<std::uint8_t>(c - 'a' + 10); }
    return std::nullopt;
}

}  // namespace detail

/// A 20-byte cryptographic digest (SHA-1 width).
class Digest {
  public:
    static constexpr std::size_t kSize = 20;

    Digest() = default;
    explicit Digest(const std::array<std::uint8_t, kSize>& bytes)
        : bytes_{bytes} {}

    /// Parses exactly 40 lowercase hex characters; nullopt otherwise.
    [[nodiscard]] static auto try_from_hex(std::string_view hex) noexcept
        -> std::optional<Digest> {
        if (hex.size() != 2 * kSize) { return std::nullopt; }
        Digest out;
        for (std::size_t i = 0; i < kSize; ++i) {
            auto hi = detail::lower_hex_value(hex[2 * i]);
            auto lo = detail::lower_hex_value(hex[2 * i + 1]);
            if (!hi || !lo) { return std::nullopt; }
            out.bytes_[i] = static_cast<std::uint8_t>((*hi << 4U) | *lo);
        }
        return out;
    }

    [[nodiscard]] static auto from_hex(std::string_view hex) -> Digest {
        auto parsed = try_from_hex(hex);
        if (!parsed) {
            throw ValidationError{
                "digest must be exactly 40 lowercase hex characters"};
        }
        return *parsed;
    }

    /// 40 lowercase hex characters.
    [[nodiscard]] auto hex() const -> std::string {
        std::string out;
        out.reserve(2 * kSize);
        for (auto byte : bytes_) {
            out.push_back(detail::hex_nibble(byte >> 4U));
            out.push_back(detail::hex_nibble(byte));
        }
        return out;
    }

    [[nodiscard]] auto bytes() const noexcept
        -> const std::array<std::uint8_t, kSize>& {
        return bytes_;
    }

    /// The digest as a raw byte string, for embedding into manifests.
    [[nodiscard]] auto raw() const -> std::string {
        return {reinterpret_cast<const char*>(bytes_.data()), bytes_.size()};
    }

    auto operator<=>(const Digest&) const = default;

  private:
    std::array<std::uint8_t, kSize> bytes_{};
};

/// The (version, object type, digest) triple naming one Merkle node,
/// e.g. swh:1:cnt:e69de29bb2d1d6434b8b29ae775ad8c2e48c5391.
struct CoreSwhid {
    ObjectType type{ObjectType::content};
    Digest digest;

    [[nodiscard]] auto to_string() const -> std::string {
        std::string out = "swh:1:";
        out += tag_of(type);
        out += ':';
        out += digest.hex();
        return out;
    }

    auto operator<=>(const CoreSwhid&) const = default;
};

}  // namespace swhkit
