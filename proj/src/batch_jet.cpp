#include "tlgpinn/batch_jet.hpp"

namespace tlgpinn::nn {

void validate_mask(ComponentMask m) {
  auto need = [&](int c, std::initializer_list<int> deps) {
    if (!has(m, c)) return;
    for (int d : deps)
      if (!has(m, d)) throw ShapeError("derivative component set is not closed under lower orders");
  };
  if (!has(m, kValue) || m >= (ComponentMask{1} << kComponents)) throw ShapeError("invalid component set");
  need(kDxx, {kDx});
  need(kDxt, {kDx, kDt});
  need(kDtt, {kDt});
  need(kDxxt, {kDx, kDt, kDxx, kDxt});
}

namespace {

using Arr = Eigen::ArrayXXd;

// tanh through the vectorized exponential, 1 - 2/(e^{2z} + 1), which loses
// relative accuracy only near zero; there the odd series through z^15 is
// exact to double precision for |z| < 1/8.
Arr vector_tanh(const Arr& z) {
  const Arr via_exp = 1.0 - 2.0 / ((2.0 * z).exp() + 1.0);
  const Arr w = z * z;
  const Arr series =
      z * (1.0 + w * (-1.0 / 3.0 +
                      w * (2.0 / 15.0 +
                           w * (-17.0 / 315.0 +
                                w * (62.0 / 2835.0 +
                                     w * (-1382.0 / 155925.0 +
                                          w * (21844.0 / 6081075.0 + w * (-929569.0 / 638512875.0))))))));
  return (z.abs() < 0.125).select(series, via_exp);
}

// a = tanh(z) with derivatives by the chain rule; d_k is the k-th derivative
// of tanh at z.
void tanh_forward(ComponentMask m, const ComponentStack& z, ComponentStack& a) {
  a[kValue] = vector_tanh(z[kValue].array()).matrix();
  if (m == kValueOnly) return;
  const auto y = a[kValue].array();
  const Arr d1 = 1.0 - y * y;
  const Arr d2 = -2.0 * y * d1;
  const auto zx = z[kDx].array();
  const auto zt = z[kDt].array();
  if (has(m, kDx)) a[kDx] = (d1 * zx).matrix();
  if (has(m, kDt)) a[kDt] = (d1 * zt).matrix();
  if (has(m, kDxx)) a[kDxx] = (d1 * z[kDxx].array() + d2 * zx * zx).matrix();
  if (has(m, kDxt)) a[kDxt] = (d1 * z[kDxt].array() + d2 * zx * zt).matrix();
  if (has(m, kDtt)) a[kDtt] = (d1 * z[kDtt].array() + d2 * zt * zt).matrix();
  if (has(m, kDxxt)) {
    const Arr d3 = -2.0 * d1 * (1.0 - 3.0 * y * y);
    a[kDxxt] = (d1 * z[kDxxt].array() + d2 * (z[kDxx].array() * zt + 2.0 * zx * z[kDxt].array()) +
                d3 * zx * zx * zt)
                   .matrix();
  }
}

// Adjoint of tanh_forward: maps the activation adjoint `g` (in place) to the
// pre-activation adjoint.
void tanh_backward(ComponentMask m, const ComponentStack& z, const Eigen::MatrixXd& y_mat, ComponentStack& g) {
  const auto y = y_mat.array();
  const Arr d1 = 1.0 - y * y;
  const Arr d2 = -2.0 * y * d1;
  const Arr d3 = -2.0 * d1 * (1.0 - 3.0 * y * y);
  Arr g0 = g[kValue].array() * d1;
  if (m == kValueOnly) {
    g[kValue] = g0.matrix();
    return;
  }
  const auto zx = z[kDx].array();
  const auto zt = z[kDt].array();
  Arr gx, gt;
  if (has(m, kDx)) {
    const Arr ax = g[kDx].array();
    g0 += ax * d2 * zx;
    gx = ax * d1;
  }
  if (has(m, kDt)) {
    const Arr at = g[kDt].array();
    g0 += at * d2 * zt;
    gt = at * d1;
  }
  if (has(m, kDxx)) {
    const Arr axx = g[kDxx].array();
    g0 += axx * (d2 * z[kDxx].array() + d3 * zx * zx);
    gx += axx * 2.0 * d2 * zx;
    g[kDxx] = (axx * d1).matrix();
  }
  if (has(m, kDxt)) {
    const Arr axt = g[kDxt].array();
    g0 += axt * (d2 * z[kDxt].array() + d3 * zx * zt);
    gx += axt * d2 * zt;
    gt += axt * d2 * zx;
    g[kDxt] = (axt * d1).matrix();
  }
  if (has(m, kDtt)) {
    const Arr att = g[kDtt].array();
    g0 += att * (d2 * z[kDtt].array() + d3 * zt * zt);
    gt += att * 2.0 * d2 * zt;
    g[kDtt] = (att * d1).matrix();
  }
  if (has(m, kDxxt)) {
    const Arr a3 = g[kDxxt].array();
    const Arr d4 = 8.0 * y * d1 * (2.0 - 3.0 * y * y);
    const auto zxx = z[kDxx].array();
    const auto zxt = z[kDxt].array();
    g0 += a3 * (d2 * z[kDxxt].array() + d3 * (zxx * zt + 2.0 * zx * zxt) + d4 * zx * zx * zt);
    gx += a3 * (2.0 * d2 * zxt + 2.0 * d3 * zx * zt);
    gt += a3 * (d2 * zxx + d3 * zx * zx);
    g[kDxx] += (a3 * d2 * zt).matrix();
    g[kDxt] += (a3 * 2.0 * d2 * zx).matrix();
    g[kDxxt] = (a3 * d1).matrix();
  }
  g[kValue] = g0.matrix();
  if (has(m, kDx)) g[kDx] = gx.matrix();
  if (has(m, kDt)) g[kDt] = gt.matrix();
}

}  // namespace

void batch_forward(const Mlp& net, ComponentMask mask, const Eigen::MatrixXd& inputs, BatchTrace& trace) {
  validate_mask(mask);
  const auto& spec = net.spec();
  if (inputs.rows() != spec.input_dim) throw ShapeError("batch_forward: input dimension mismatch");
  const auto& layers = net.layers();
  const std::size_t n_layers = layers.size();
  const Eigen::Index batch = inputs.cols();
  trace.mask = mask;
  trace.pre.resize(n_layers);
  trace.post.resize(n_layers + 1);

  const auto& map = net.input_map();
  auto& in = trace.post[0];
  in[kValue] = inputs;
  if (!map.is_identity()) {
    for (Eigen::Index k = 0; k < in[kValue].rows(); ++k) {
      const auto i = static_cast<std::size_t>(k);
      in[kValue].row(k) = (in[kValue].row(k).array() * map.scale[i] + map.shift[i]).matrix();
    }
  }
  for (int c = 1; c < kComponents; ++c) {
    if (has(mask, c)) in[c].setZero(spec.input_dim, batch);
  }
  const auto last = static_cast<std::size_t>(spec.input_dim - 1);
  if (has(mask, kDx) && spec.input_dim == 2) in[kDx].row(0).setConstant(map.scale[0]);
  if (has(mask, kDt)) in[kDt].row(spec.input_dim - 1).setConstant(map.scale[last]);

  for (std::size_t l = 0; l < n_layers; ++l) {
    const auto& w = layers[l].weight;
    auto& z = trace.pre[l];
    const auto& a = trace.post[l];
    for (int c = 0; c < kComponents; ++c) {
      if (has(mask, c)) z[c].noalias() = w * a[c];
    }
    z[kValue].colwise() += layers[l].bias;
    if (l + 1 == n_layers) break;
    auto& next = trace.post[l + 1];
    if (spec.hidden_activation == Activation::Tanh) {
      tanh_forward(mask, z, next);
    } else {
      for (int c = 0; c < kComponents; ++c)
        if (has(mask, c)) next[c] = z[c];
    }
  }
}

void batch_backward(const Mlp& net, BatchTrace& trace, ComponentStack& adj, std::span<double> grad) {
  const auto& layers = net.layers();
  if (grad.size() != net.parameter_count()) throw ShapeError("batch_backward: gradient length mismatch");
  const ComponentMask mask = trace.mask;
  const std::size_t n_layers = layers.size();

  std::vector<std::size_t> offsets(n_layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < n_layers; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(layers[l].weight.size() + layers[l].bias.size());
  }

  Eigen::MatrixXd gw, tmp;
  for (std::size_t l = n_layers; l-- > 0;) {
    const auto& w = layers[l].weight;
    const auto& a = trace.post[l];
    gw.setZero(w.rows(), w.cols());
    for (int c = 0; c < kComponents; ++c) {
      if (has(mask, c)) gw.noalias() += adj[c] * a[c].transpose();
    }
    const Eigen::VectorXd gb = adj[kValue].rowwise().sum();
    std::size_t k = offsets[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) grad[k++] += gw(r, c);
    for (Eigen::Index r = 0; r < gb.size(); ++r) grad[k++] += gb(r);
    if (l == 0) break;

    for (int c = 0; c < kComponents; ++c) {
      if (!has(mask, c)) continue;
      tmp.noalias() = w.transpose() * adj[c];
      adj[c].swap(tmp);
    }
    if (net.spec().hidden_activation == Activation::Tanh) {
      tanh_backward(mask, trace.pre[l - 1], trace.post[l][kValue], adj);
    }
  }
}

}  // namespace tlgpinn::nn
