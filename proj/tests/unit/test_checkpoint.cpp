#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "tlgpinn/checkpoint.hpp"

namespace tlgpinn::ckpt {
namespace {

std::vector<nn::Mlp> sample_nets() {
  return {nn::Mlp::xavier({2, 2, 8, 40, nn::Activation::Tanh}, 11),
          nn::Mlp::xavier({1, 1, 4, 30, nn::Activation::Identity}, 12),
          nn::Mlp::xavier({1, 1, 2, 10, nn::Activation::Tanh}, 13)};
}

void expect_bit_identical(const std::vector<nn::Mlp>& a, const std::vector<nn::Mlp>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].spec(), b[k].spec());
    const auto fa = a[k].flatten(), fb = b[k].flatten();
    ASSERT_EQ(fa.size(), fb.size());
    EXPECT_EQ(std::memcmp(fa.data(), fb.data(), fa.size() * sizeof(double)), 0);
  }
}

TEST(Checkpoint, RoundTripIsBitExact) {
  auto nets = sample_nets();
  // Values whose bit patterns matter: negative zero, subnormal, extremes.
  auto p = nets[2].flatten();
  p[0] = -0.0;
  p[1] = 4.9e-324;
  p[2] = 1.7976931348623157e308;
  p[3] = -1.0 / 3.0;
  nets[2].assign(p);
  expect_bit_identical(nets, decode(encode(nets)));
}

TEST(Checkpoint, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "tlgpinn_ckpt_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "model.tlgp";
  const auto& c = physics::find_case("3.2.2b");
  const auto model = Model::xavier(c, 4);
  save_model(path, model);
  const auto back = load_model(path);
  EXPECT_EQ(back.flatten(), model.flatten());
  ASSERT_EQ(back.branches.size(), 3u);
  EXPECT_EQ(back.branches[1].spec(), model.branches[1].spec());
  std::filesystem::remove_all(dir);
}

TEST(Checkpoint, HeaderLayout) {
  const auto bytes = encode(sample_nets());
  EXPECT_EQ(bytes.substr(0, 4), "TLGP");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), kVersion);
  EXPECT_EQ(bytes[8], 3);
  // input_dim, output_dim, depth, width, activation of the first network
  EXPECT_EQ(bytes[12], 2);
  EXPECT_EQ(bytes[16], 2);
  EXPECT_EQ(bytes[20], 8);
  EXPECT_EQ(bytes[24], 40);
  EXPECT_EQ(bytes[28], 0);
  // first parameter, little-endian
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{static_cast<unsigned char>(bytes[32 + i])} << (8 * i);
  EXPECT_EQ(std::bit_cast<double>(bits), sample_nets()[0].flatten()[0]);
}

TEST(Checkpoint, ChecksumIsSumOfBitPatterns) {
  const auto nets = sample_nets();
  std::uint64_t sum = 0;
  for (const auto& n : nets)
    for (double p : n.flatten()) sum += std::bit_cast<std::uint64_t>(p);
  const auto bytes = encode(nets);
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i)
    stored |= std::uint64_t{static_cast<unsigned char>(bytes[bytes.size() - 8 + static_cast<std::size_t>(i)])}
              << (8 * i);
  EXPECT_EQ(stored, sum);
}

TEST(Checkpoint, FlippedParameterByteIsRejected) {
  auto bytes = encode(sample_nets());
  for (std::size_t pos : {std::size_t{40}, bytes.size() / 2, bytes.size() - 9}) {
    auto bad = bytes;
    bad[pos] = static_cast<char>(bad[pos] ^ 0x10);
    EXPECT_THROW(decode(bad), ChecksumMismatch) << pos;
  }
}

TEST(Checkpoint, HeaderErrors) {
  const auto bytes = encode(sample_nets());
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode(magic), BadMagic);
  auto version = bytes;
  version[4] = static_cast<char>(kVersion + 1);
  EXPECT_THROW(decode(version), VersionMismatch);
  EXPECT_THROW(decode(bytes.substr(0, bytes.size() - 3)), Truncated);
  EXPECT_THROW(decode(bytes.substr(0, 2)), Truncated);
  EXPECT_THROW(decode(bytes + "x"), CheckpointError);
  auto activation = bytes;
  activation[28] = 7;
  EXPECT_THROW(decode(activation), CheckpointError);
  EXPECT_THROW(load("/nonexistent/dir/model.tlgp"), CheckpointError);
}

}  // namespace
}  // namespace tlgpinn::ckpt
