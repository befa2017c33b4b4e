#include "tlgpinn/model.hpp"

namespace tlgpinn {

Model Model::xavier(const physics::CaseDefinition& c, std::uint64_t seed) {
  Model m;
  m.trunk = nn::Mlp::xavier(c.trunk_spec(), seed);
  std::uint64_t k = 1;
  for (auto coeff : c.learned_coefficients()) m.branches.push_back(nn::Mlp::xavier(c.branch_spec(coeff), seed + k++));
  return m;
}

void Model::scale_inputs(const physics::CaseDefinition& c) {
  const std::array<double, 2> x{c.domain.x0, c.domain.x1};
  const std::array<double, 2> t{c.domain.t0, c.domain.t1};
  const std::array<std::array<double, 2>, 2> xt{x, t};
  trunk.set_input_map(nn::InputMap::to_unit(xt));
  for (auto& b : branches) b.set_input_map(nn::InputMap::to_unit(std::span(&t, 1)));
}

std::size_t Model::parameter_count() const {
  std::size_t n = trunk.parameter_count();
  for (const auto& b : branches) n += b.parameter_count();
  return n;
}

std::vector<double> Model::flatten() const {
  std::vector<double> flat = trunk.flatten();
  for (const auto& b : branches) {
    const auto part = b.flatten();
    flat.insert(flat.end(), part.begin(), part.end());
  }
  return flat;
}

void Model::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw nn::ShapeError("model parameter vector has the wrong length");
  std::size_t off = trunk.parameter_count();
  trunk.assign(flat.first(off));
  for (auto& b : branches) {
    const std::size_t n = b.parameter_count();
    b.assign(flat.subspan(off, n));
    off += n;
  }
}

}  // namespace tlgpinn
