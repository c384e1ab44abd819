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
#include <cstdint>
#include <string_view>

#include <openssl/evp.h>

#include "swhkit/errors.hpp"

namespace swhkit {

using Sha1Bytes = std::array<std::uint8_t, 20>;

/// Incremental SHA-1, backed by OpenSSL's EVP interface.
class Sha1 {
  public:
    Sha1() : ctx_{EVP_MD_CTX_new()} {
        if (ctx_ == nullptr ||
            EVP_DigestInit_ex(ctx_, EVP_sha1(), nullptr) != 1) {
            EVP_MD_CTX_free(ctx_);
            throw Error{"sha1: digest context initialization failed"};
        }
    }

    Sha1(const Sha1&) = delete;
    auto operator=(const Sha1&) -> Sha1& = delete;

    Sha1(Sha1&& other) noexcept : ctx_{other.ctx_} { other.ctx_ = nullptr; }
    auto operator=(Sha1&& other) noexcept -> Sha1& {
        if (this != &other) {
            EVP_MD_CTX_free(ctx_);
            ctx_ = other.ctx_;
            other.ctx_ = nullptr;
        }
        return *this;
    }

    ~Sha1() { EVP_MD_CTX_free(ctx_); }

    void update(const void* data, std::size_t size) {
        if (EVP_DigestUpdate(ctx_, data, size) != 1) {
            throw Error{"sha1: digest update failed"};
        }
    }

    void update(std::string_view bytes) { update(bytes.data(), bytes.size()); }

    /// Finalizes and returns the 20-byte digest. The hasher is spent afterwards.
    [[nodiscard]] auto finish() -> Sha1Bytes {
        Sha1Bytes out{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, out.data(), &len) != 1 || len != out.size()) {
            throw Error{"sha1: digest finalization failed"};
        }
        return out;
    }

  private:
    EVP_MD_CTX* ctx_;
};

[[nodiscard]] inline auto sha1(std::string_view bytes) -> Sha1Bytes {
    Sha1 hasher;
    hasher.update(bytes);
    return hasher.finish();
}

}  // namespace swhkit
