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

#include <string>
#include <string_view>

#include "swhkit/errors.hpp"
#include "swhkit/swhid.hpp"

namespace swhkit {

inline constexpr std::string_view kDefaultArchiveBase =
    "https://archive.softwareheritage.org/";

/// A browsable archive URL for an identifier.
struct ResolvedUrl {
    std::string url;
    std::string base;

    auto operator<=>(const ResolvedUrl&) const = default;
};

namespace detail {

// Base must be an absolute http(s) URI with a host, ending in '/'.
[[nodiscard]] inline auto is_valid_base(std::string_view base) -> bool {
    auto rest = base;
    if (rest.starts_with("https://")) {
        rest.remove_prefix(8);
    } else if (rest.starts_with("http://")) {
        rest.remove_prefix(7);
    } else {
        return false;
    }
    auto host = rest.substr(0, rest.find('/'));
    return !host.empty() && base.back() == '/';
}

}  // namespace detail

/// Prepends the archive base to the canonical identifier text; no other
/// transformation. The identifier's own percent-encoding is preserved.
[[nodiscard]] inline auto resolve_to_url(const QualifiedSwhid& id,
                                         std::string_view base =
                                             kDefaultArchiveBase) -> ResolvedUrl {
    if (!detail::is_valid_base(base)) {
        throw UrlError{UrlErrorCode::bad_base,
                       "base must be an absolute http(s) URL ending in '/': \"" +
                           std::string{base} + "\""};
    }
    return {std::string{base} + format_swhid(id), std::string{base}};
}

/// Inverse convenience: pulls the identifier back out of a resolved URL.
/// The identifier starts at the first "swh:1:" occurrence (later ones are
/// qualifier sub-identifiers) and runs to the end of the string.
[[nodiscard]] inline auto extract_swhid_from_url(std::string_view url)
    -> QualifiedSwhid {
    auto pos = url.find("swh:1:");
    if (pos == std::string_view::npos) {
        throw UrlError{UrlErrorCode::no_identifier_found,
                       "no \"swh:1:\" segment in \"" + std::string{url} + "\""};
    }
    return parse_swhid(url.substr(pos), {ParseMode::strict});
}

}  // namespace swhkit
