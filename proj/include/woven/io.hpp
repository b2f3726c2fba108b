#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "woven/frame.hpp"

namespace woven {

inline constexpr const char* kToolVersion = "woven 0.1.0";

// On-disk frame document: {"dim": d, "vectors": [[...], ...], "name": "..."}.
struct FrameFile {
  Frame frame;
  std::optional<std::string> name;
};

FrameFile read_frame_file(const std::filesystem::path& path);

void write_frame_file(const std::filesystem::path& path, const Frame& frame,
                      const std::optional<std::string>& name = std::nullopt);

// Square operators reuse the frame document layout; "vectors" holds the
// matrix columns.
Mat read_matrix_file(const std::filesystem::path& path);

// Deterministic JSON text: keys sorted, floats at 17 significant digits,
// scalar-only arrays inlined. Throws on non-finite numbers.
std::string dump_deterministic(const nlohmann::json& j);

std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);

// 16 hex digits of fnv1a64 over the file bytes.
std::string digest_file(const std::filesystem::path& path);

// Machine-readable result envelope emitted by every CLI command.
struct Report {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json results;

  std::string to_json() const;
};

}  // namespace woven
