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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "swhkit/core.hpp"
#include "swhkit/errors.hpp"

// Payloads of the five Merkle DAG node kinds. Names, messages and person
// strings are opaque byte strings throughout: no encoding validation or
// normalization happens anywhere, since transcoding would change hashes.

namespace swhkit {

/// Permission modes a tree entry can carry, with their git octal values.
enum class EntryMode : std::uint32_t {
    regular = 0100644,
    executable = 0100755,
    symlink = 0120000,
    subdirectory = 0040000,
    submodule = 0160000,  // pointer to a revision in another repository
};

/// Mode rendering inside tree manifests. Git drops the leading zero of
/// directory modes ("40000", not "040000").
constexpr auto octal_of(EntryMode mode) noexcept -> std::string_view {
    switch (mode) {
        case EntryMode::regular: return "100644";
        case EntryMode::executable: return "100755";
        case EntryMode::symlink: return "120000";
        case EntryMode::subdirectory: return "40000";
        case EntryMode::submodule: return "160000";
    }
    return "?";
}

/// Kind of object a tree entry points at, implied by its mode.
constexpr auto target_kind_of(EntryMode mode) noexcept -> ObjectType {
    switch (mode) {
        case EntryMode::subdirectory: return ObjectType::directory;
        case EntryMode::submodule: return ObjectType::revision;
        default: return ObjectType::content;
    }
}

/// One edge of a directory node: (name, mode, target digest).
class DirectoryEntry {
  public:
    DirectoryEntry(std::string name, EntryMode mode, Digest target)
        : name_{std::move(name)}, mode_{mode}, target_{target} {
        if (name_.empty()) {
            throw ValidationError{"directory entry name must not be empty"};
        }
        if (name_.find('/') != std::string::npos ||
            name_.find('\0') != std::string::npos) {
            throw ValidationError{
                "directory entry name must not contain '/' or NUL"};
        }
        switch (mode_) {
            case EntryMode::regular:
            case EntryMode::executable:
            case EntryMode::symlink:
            case EntryMode::subdirectory:
            case EntryMode::submodule: break;
            default: throw ValidationError{"invalid directory entry mode"};
        }
    }

    [[nodiscard]] auto name() const noexcept -> const std::string& { return name_; }
    [[nodiscard]] auto mode() const noexcept -> EntryMode { return mode_; }
    [[nodiscard]] auto target() const noexcept -> const Digest& { return target_; }
    [[nodiscard]] auto target_kind() const noexcept -> ObjectType {
        return target_kind_of(mode_);
    }

    /// Git tree ordering compares names with a '/' appended to directories.
    [[nodiscard]] auto sort_key() const -> std::string {
        auto key = name_;
        if (mode_ == EntryMode::subdirectory) { key.push_back('/'); }
        return key;
    }

    auto operator<=>(const DirectoryEntry&) const = default;

  private:
    std::string name_;
    EntryMode mode_;
    Digest target_;
};

/// An author or committer byte string plus its timestamp.
class PersonTimestamp {
  public:
    PersonTimestamp(std::string person, std::int64_t seconds,
                    std::int32_t offset_minutes)
        : person_{std::move(person)},
          seconds_{seconds},
          offset_minutes_{offset_minutes} {
        if (person_.find('\n') != std::string::npos) {
            throw ValidationError{"person string must not contain newlines"};
        }
        if (offset_minutes_ <= -6000 || offset_minutes_ >= 6000) {
            throw ValidationError{"utc offset does not fit sign + 4 digits"};
        }
    }

    [[nodiscard]] auto person() const noexcept -> const std::string& {
        return person_;
    }
    [[nodiscard]] auto seconds() const noexcept -> std::int64_t { return seconds_; }
    [[nodiscard]] auto offset_minutes() const noexcept -> std::int32_t {
        return offset_minutes_;
    }

    /// "<person> <unix-seconds> <sign><HH><MM>", e.g. "A <a@b> 1577882096 +0100".
    [[nodiscard]] auto render() const -> std::string {
        auto abs_offset = offset_minutes_ < 0 ? -offset_minutes_ : offset_minutes_;
        std::string out = person_;
        out += ' ';
        out += std::to_string(seconds_);
        out += ' ';
        out += offset_minutes_ < 0 ? '-' : '+';
        auto two_digits = [&out](std::int32_t value) {
            out += static_cast<char>('0' + value / 10);
            out += static_cast<char>('0' + value % 10);
        };
        two_digits(abs_offset / 60);
        two_digits(abs_offset % 60);
        return out;
    }

    auto operator<=>(const PersonTimestamp&) const = default;

  private:
    std::string person_;
    std::int64_t seconds_;
    std::int32_t offset_minutes_;
};

/// A commit: root tree, ordered parents, people, and free-form headers.
/// Parent order is significant and preserved; extra headers are kept
/// verbatim and in order so that real-world commits (gpgsig, encoding, ...)
/// reproduce their original hashes.
struct RevisionRecord {
    Digest tree;
    std::vector<Digest> parents;
    PersonTimestamp author;
    PersonTimestamp committer;
    std::string message;
    std::vector<std::pair<std::string, std::string>> extra_headers;
};

/// A tag node over another object.
class ReleaseRecord {
  public:
    ReleaseRecord(Digest target, ObjectType target_kind, std::string name,
                  std::optional<PersonTimestamp> author, std::string message)
        : target_{target},
          target_kind_{target_kind},
          name_{std::move(name)},
          author_{std::move(author)},
          message_{std::move(message)} {
        if (name_.empty() || name_.find('\0') != std::string::npos) {
            throw ValidationError{"release name must be non-empty and NUL-free"};
        }
        // The tag manifest's "type" field has git vocabulary only; there is
        // no word for snapshots, so parity with the oracle cannot hold.
        if (target_kind_ == ObjectType::snapshot) {
            throw ValidationError{"a release cannot target a snapshot"};
        }
    }

    [[nodiscard]] auto target() const noexcept -> const Digest& { return target_; }
    [[nodiscard]] auto target_kind() const noexcept -> ObjectType {
        return target_kind_;
    }
    [[nodiscard]] auto name() const noexcept -> const std::string& { return name_; }
    [[nodiscard]] auto author() const noexcept
        -> const std::optional<PersonTimestamp>& {
        return author_;
    }
    [[nodiscard]] auto message() const noexcept -> const std::string& {
        return message_;
    }

  private:
    Digest target_;
    ObjectType target_kind_;
    std::string name_;
    std::optional<PersonTimestamp> author_;
    std::string message_;
};

/// Branch targets: a Merkle object, an alias to another branch, or nothing.
struct BranchObjectTarget {
    Digest digest;
    ObjectType kind;
    auto operator<=>(const BranchObjectTarget&) const = default;
};
struct BranchAliasTarget {
    std::string branch;
    auto operator<=>(const BranchAliasTarget&) const = default;
};
struct BranchDanglingTarget {
    auto operator<=>(const BranchDanglingTarget&) const = default;
};

using BranchTarget =
    std::variant<BranchObjectTarget, BranchAliasTarget, BranchDanglingTarget>;

/// One named branch of a snapshot.
class SnapshotBranch {
  public:
    SnapshotBranch(std::string name, BranchTarget target)
        : name_{std::move(name)}, target_{std::move(target)} {
        if (name_.empty() || name_.find('\0') != std::string::npos) {
            throw ValidationError{"branch name must be non-empty and NUL-free"};
        }
    }

    [[nodiscard]] auto name() const noexcept -> const std::string& { return name_; }
    [[nodiscard]] auto target() const noexcept -> const BranchTarget& {
        return target_;
    }

    auto operator<=>(const SnapshotBranch&) const = default;

  private:
    std::string name_;
    BranchTarget target_;
};

}  // namespace swhkit
