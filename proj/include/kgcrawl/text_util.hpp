// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgcrawl {

/// Strips ASCII whitespace from both ends.
std::string trim(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Everything before the first '\n', or the whole string.
std::string_view first_line(std::string_view text);

}  // namespace kgcrawl
