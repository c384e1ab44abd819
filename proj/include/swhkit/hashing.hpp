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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swhkit/core.hpp"
#include "swhkit/errors.hpp"
#include "swhkit/objects.hpp"
#include "swhkit/sha1.hpp"

// Intrinsic identifiers of the five Merkle node kinds, computed by hashing
// byte-exact manifests. Content, directory, revision and release manifests
// are the git object formats (blob/tree/commit/tag), so the resulting ids
// equal git's object ids; snapshots follow the published archive layout.
// All functions here are pure; equal inputs give equal ids.

namespace swhkit {

namespace detail {

// Git object framing: "<type> <decimal-length>\0" + payload.
[[nodiscard]] inline auto frame_header(std::string_view type,
                                       std::uint64_t payload_size) -> std::string {
    std::string header{type};
    header += ' ';
    header += std::to_string(payload_size);
    header += '\0';
    return header;
}

[[nodiscard]] inline auto hash_object(std::string_view type,
                                      std::string_view payload) -> Digest {
    Sha1 hasher;
    hasher.update(frame_header(type, payload.size()));
    hasher.update(payload);
    return Digest{hasher.finish()};
}

// The tag manifest's type field uses git vocabulary.
[[nodiscard]] constexpr auto git_type_of(ObjectType kind) noexcept
    -> std::string_view {
    switch (kind) {
        case ObjectType::content: return "blob";
        case ObjectType::directory: return "tree";
        case ObjectType::revision: return "commit";
        case ObjectType::release: return "tag";
        case ObjectType::snapshot: break;  // rejected at construction
    }
    return "?";
}

// Multi-line header values continue with a space after each newline,
// e.g. gpgsig blocks inside commits.
inline void append_header(std::string& out, std::string_view key,
                          std::string_view value) {
    out += key;
    out += ' ';
    for (char c : value) {
        out += c;
        if (c == '\n') { out += ' '; }
    }
    out += '\n';
}

}  // namespace detail

/// Identifies a blob of bytes: SHA-1 over "blob <length>\0<data>".
[[nodiscard]] inline auto compute_content_id(std::string_view data) -> CoreSwhid {
    return {ObjectType::content, detail::hash_object("blob", data)};
}

/// Incremental variant of compute_content_id for callers that stream the
/// data in chunks. The blob framing needs the total size up front; finish()
/// checks that exactly that many bytes were fed.
class ContentHasher {
  public:
    explicit ContentHasher(std::uint64_t expected_size)
        : expected_size_{expected_size} {
        hasher_.update(detail::frame_header("blob", expected_size));
    }

    void update(std::string_view chunk) {
        hasher_.update(chunk);
        fed_ += chunk.size();
    }

    [[nodiscard]] auto finish() -> CoreSwhid {
        if (fed_ != expected_size_) {
            throw Error{"content hasher fed " + std::to_string(fed_) +
                        " bytes, expected " + std::to_string(expected_size_)};
        }
        return {ObjectType::content, Digest{hasher_.finish()}};
    }

  private:
    Sha1 hasher_;
    std::uint64_t expected_size_;
    std::uint64_t fed_ = 0;
};

/// Identifies a directory from its immediate entries. Entries are sorted
/// internally by the git tree key, so the result does not depend on input
/// order. Throws DuplicateEntryError when two entries share a sort key.
[[nodiscard]] inline auto compute_directory_id(std::vector<DirectoryEntry> entries)
    -> CoreSwhid {
    std::sort(entries.begin(), entries.end(),
              [](const DirectoryEntry& lhs, const DirectoryEntry& rhs) {
                  return lhs.sort_key() < rhs.sort_key();
              });
    std::string payload;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        if (i > 0 && entries[i - 1].sort_key() == entry.sort_key()) {
            throw DuplicateEntryError{"duplicate tree entry: " + entry.name()};
        }
        payload += octal_of(entry.mode());
        payload += ' ';
        payload += entry.name();
        payload += '\0';
        payload += entry.target().raw();
    }
    return {ObjectType::directory, detail::hash_object("tree", payload)};
}

/// Identifies a revision; reproduces git's commit hash for the same data.
[[nodiscard]] inline auto compute_revision_id(const RevisionRecord& rev)
    -> CoreSwhid {
    std::string payload;
    detail::append_header(payload, "tree", rev.tree.hex());
    for (const auto& parent : rev.parents) {
        detail::append_header(payload, "parent", parent.hex());
    }
    detail::append_header(payload, "author", rev.author.render());
    detail::append_header(payload, "committer", rev.committer.render());
    for (const auto& [key, value] : rev.extra_headers) {
        detail::append_header(payload, key, value);
    }
    payload += '\n';
    payload += rev.message;
    return {ObjectType::revision, detail::hash_object("commit", payload)};
}

/// Identifies a release; reproduces git's tag hash. Releases without an
/// author serialize with no tagger line.
[[nodiscard]] inline auto compute_release_id(const ReleaseRecord& rel)
    -> CoreSwhid {
    std::string payload;
    detail::append_header(payload, "object", rel.target().hex());
    detail::append_header(payload, "type", detail::git_type_of(rel.target_kind()));
    detail::append_header(payload, "tag", rel.name());
    if (rel.author()) {
        detail::append_header(payload, "tagger", rel.author()->render());
    }
    payload += '\n';
    payload += rel.message();
    return {ObjectType::release, detail::hash_object("tag", payload)};
}

/// Identifies a snapshot from its branches, sorted by name. Per branch the
/// manifest holds "<target-type> <name>\0<length>:<target-bytes>", where the
/// target bytes are the raw digest for objects, the referenced name for
/// aliases, and empty for dangling branches. Throws DuplicateBranchError.
[[nodiscard]] inline auto compute_snapshot_id(std::vector<SnapshotBranch> branches)
    -> CoreSwhid {
    std::sort(branches.begin(), branches.end(),
              [](const SnapshotBranch& lhs, const SnapshotBranch& rhs) {
                  return lhs.name() < rhs.name();
              });
    std::string payload;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const auto& branch = branches[i];
        if (i > 0 && branches[i - 1].name() == branch.name()) {
            throw DuplicateBranchError{"duplicate branch: " + branch.name()};
        }
        std::string_view type_word;
        std::string target_bytes;
        if (const auto* object =
                std::get_if<BranchObjectTarget>(&branch.target())) {
            type_word = name_of(object->kind);
            target_bytes = object->digest.raw();
        } else if (const auto* alias =
                       std::get_if<BranchAliasTarget>(&branch.target())) {
            type_word = "alias";
            target_bytes = alias->branch;
        } else {
            type_word = "dangling";
        }
        payload += type_word;
        payload += ' ';
        payload += branch.name();
        payload += '\0';
        payload += std::to_string(target_bytes.size());
        payload += ':';
        payload += target_bytes;
    }
    return {ObjectType::snapshot, detail::hash_object("snapshot", payload)};
}

}  // namespace swhkit
