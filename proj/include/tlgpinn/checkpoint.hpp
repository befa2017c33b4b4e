#pragma once

// Binary checkpoint of a list of networks:
//
//   "TLGP" | u32 version | u32 count |
//   count x ( u32 input_dim, output_dim, depth, width, activation | f64 params... ) |
//   u64 checksum
//
// All integers and floats are little-endian.  The checksum is the sum of the
// parameter bit patterns modulo 2^64.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlgpinn/model.hpp"
#include "tlgpinn/network.hpp"

namespace tlgpinn::ckpt {

inline constexpr std::uint32_t kVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BadMagic : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class VersionMismatch : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class ChecksumMismatch : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class Truncated : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

std::string encode(std::span<const nn::Mlp> nets);
std::vector<nn::Mlp> decode(std::string_view bytes);

void save(const std::filesystem::path& path, std::span<const nn::Mlp> nets);
std::vector<nn::Mlp> load(const std::filesystem::path& path);

/// Trunk first, then the branches in registry order.
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace tlgpinn::ckpt
