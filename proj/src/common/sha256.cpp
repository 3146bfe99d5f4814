// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#include "liss/sha256.hpp"

#include <openssl/sha.h>

namespace liss {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out += hex[b >> 4];
    out += hex[b & 0xf];
  }
  return out;
}

std::string sha256_hex(const std::vector<uint8_t>& data) {
  return sha256_hex(std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

}  // namespace liss
