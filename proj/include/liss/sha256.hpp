// Copyright (c) 2026 The Lissom Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace liss {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_hex(const std::vector<uint8_t>& data);

}  // namespace liss
