#include "tlgpinn/checkpoint.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

namespace tlgpinn::ckpt {

namespace {

constexpr std::string_view kMagic = "TLGP";

template <typename U>
void put(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename U>
  U get(const char* what) {
    if (bytes_.size() - pos_ < sizeof(U)) throw Truncated(fmt::format("checkpoint truncated while reading {}", what));
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
      value |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(U);
    return value;
  }

  std::string_view take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) throw Truncated(fmt::format("checkpoint truncated while reading {}", what));
    const auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode(std::span<const nn::Mlp> nets) {
  std::string out(kMagic);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(nets.size()));
  std::uint64_t checksum = 0;
  for (const auto& net : nets) {
    const auto& s = net.spec();
    for (int field : {s.input_dim, s.output_dim, s.depth, s.width, static_cast<int>(s.hidden_activation)})
      put<std::uint32_t>(out, static_cast<std::uint32_t>(field));
    for (double p : net.flatten()) {
      const auto bits = std::bit_cast<std::uint64_t>(p);
      checksum += bits;
      put<std::uint64_t>(out, bits);
    }
  }
  put<std::uint64_t>(out, checksum);
  return out;
}

std::vector<nn::Mlp> decode(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(kMagic.size(), "magic") != kMagic) throw BadMagic("not a checkpoint (bad magic)");
  const auto version = in.get<std::uint32_t>("version");
  if (version != kVersion)
    throw VersionMismatch(fmt::format("checkpoint version {} unsupported (expected {})", version, kVersion));
  const auto count = in.get<std::uint32_t>("network count");
  std::vector<nn::Mlp> nets;
  std::uint64_t checksum = 0;
  for (std::uint32_t k = 0; k < count; ++k) {
    nn::NetworkSpec spec;
    spec.input_dim = static_cast<int>(in.get<std::uint32_t>("spec"));
    spec.output_dim = static_cast<int>(in.get<std::uint32_t>("spec"));
    spec.depth = static_cast<int>(in.get<std::uint32_t>("spec"));
    spec.width = static_cast<int>(in.get<std::uint32_t>("spec"));
    const auto act = in.get<std::uint32_t>("spec");
    if (act > static_cast<std::uint32_t>(nn::Activation::Identity))
      throw CheckpointError(fmt::format("checkpoint has unknown activation code {}", act));
    spec.hidden_activation = static_cast<nn::Activation>(act);
    try {
      spec.validate();
    } catch (const nn::ShapeError& e) {
      throw CheckpointError(fmt::format("checkpoint network {} has invalid spec: {}", k, e.what()));
    }
    const std::size_t n = spec.parameter_count();
    if (in.remaining() / 8 < n) throw Truncated("checkpoint truncated while reading parameters");
    std::vector<double> params(n);
    for (auto& p : params) {
      const auto bits = in.get<std::uint64_t>("parameters");
      checksum += bits;
      p = std::bit_cast<double>(bits);
    }
    nets.push_back(nn::Mlp::unflatten(spec, params));
  }
  const auto stored = in.get<std::uint64_t>("checksum");
  if (stored != checksum) throw ChecksumMismatch("checkpoint checksum mismatch");
  if (in.remaining() != 0) throw CheckpointError("trailing bytes after checkpoint");
  return nets;
}

void save(const std::filesystem::path& path, std::span<const nn::Mlp> nets) {
  const std::string bytes = encode(nets);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(fmt::format("cannot write checkpoint {}", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(fmt::format("failed writing checkpoint {}", path.string()));
}

std::vector<nn::Mlp> load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(fmt::format("cannot open checkpoint {}", path.string()));
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode(bytes);
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::vector<nn::Mlp> nets{model.trunk};
  nets.insert(nets.end(), model.branches.begin(), model.branches.end());
  save(path, nets);
}

Model load_model(const std::filesystem::path& path) {
  auto nets = load(path);
  if (nets.empty()) throw CheckpointError("checkpoint holds no networks");
  Model m;
  m.trunk = std::move(nets.front());
  m.branches.assign(std::make_move_iterator(nets.begin() + 1), std::make_move_iterator(nets.end()));
  return m;
}

}  // namespace tlgpinn::ckpt
