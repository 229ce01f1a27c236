#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geomdet/channel.hpp"
#include "geomdet/sequence.hpp"

namespace geomdet {

// A channel spec file:
//   {"type": "discrete" | "awgn" | "laplace",
//    "symbols": [...], "prior": [...] (optional, default uniform),
//    "observations": [...], "transition": [[...], ...]   (discrete)
//    "sigma2": <real>                                    (awgn)
//    "lambda": <real>}                                   (laplace)
// The transition matrix is row-major, one row per symbol.
struct ChannelSpec {
  Channel channel;
  Prior prior;
  std::string digest;  // 16 hex digits of the raw file bytes
};

// Throws SpecError on malformed JSON, a missing field, or any violation
// reported by validate().
ChannelSpec parse_channel_spec(const std::string& json_text);
ChannelSpec load_channel_spec(const std::filesystem::path& path);

// One codeword per line as comma-separated 1-based symbol indices. Blank
// lines and lines starting with '#' are skipped.
std::vector<Codeword> parse_codebook(const std::string& text, std::size_t n);
std::vector<Codeword> load_codebook(const std::filesystem::path& path, std::size_t n);

// FNV-1a 64 of the bytes, as 16 lowercase hex digits.
std::string content_digest(const std::string& bytes);

}  // namespace geomdet
