#include "hpd/nn/nets.hpp"

#include <algorithm>
#include <cmath>

#include "hpd/error.hpp"
#include "hpd/hash.hpp"

namespace hpd::nn {

namespace {

Eigen::RowVectorXd sigmoid_row(const Eigen::RowVectorXd& z) {
  return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Eigen::RowVectorXd tanh_row(const Eigen::RowVectorXd& z) {
  return z.array().tanh().matrix();
}

}  // namespace

// ---------------------------------------------------------------------------
// CnnNet

CnnNet::CnnNet(const CnnSpec& spec, Eigen::Index input_dim, std::uint64_t seed)
    : spec_(spec), input_dim_(input_dim), dropout_(spec.dropout),
      rng_(derive_seed(seed, 0x6374)) {
  if (spec_.filter_sizes.empty()) {
    throw ConfigError("cnn requires at least one filter size");
  }
  for (int w : spec_.filter_sizes) {
    if (w < 1) throw ConfigError("cnn filter sizes must be >= 1");
  }
  if (spec_.filters_per_size < 1) {
    throw ConfigError("cnn filters_per_size must be >= 1");
  }
  Rng init(derive_seed(seed, 0x696e69));
  const Eigen::Index k = spec_.filters_per_size;
  for (std::size_t si = 0; si < spec_.filter_sizes.size(); ++si) {
    const Eigen::Index w = spec_.filter_sizes[si];
    convs_.emplace_back(w * input_dim_, k, init,
                        "conv" + std::to_string(spec_.filter_sizes[si]));
    norms_.emplace_back(k, "bn" + std::to_string(spec_.filter_sizes[si]));
  }
  head_ = Dense(static_cast<Eigen::Index>(spec_.filter_sizes.size()) * k, 1,
                init, "head");
}

Eigen::Index CnnNet::concat_width() const {
  return static_cast<Eigen::Index>(spec_.filter_sizes.size()) *
         spec_.filters_per_size;
}

Vector CnnNet::forward(const std::vector<SeqExample>& batch, bool train) {
  const Eigen::Index n = static_cast<Eigen::Index>(batch.size());
  const Eigen::Index k = spec_.filters_per_size;
  caches_.assign(spec_.filter_sizes.size(), SizeCache{});

  Matrix pooled = Matrix::Zero(n, concat_width());
  for (std::size_t si = 0; si < spec_.filter_sizes.size(); ++si) {
    const Eigen::Index w = spec_.filter_sizes[si];
    SizeCache& cache = caches_[si];

    // Window extraction; sequences shorter than the window are zero-padded
    // to the minimum viable length, so every example has >= 1 position.
    cache.offsets.assign(batch.size() + 1, 0);
    Eigen::Index total_positions = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Eigen::Index valid = batch[i].valid;
      const Eigen::Index padded = std::max(valid, w);
      cache.offsets[i] = total_positions;
      total_positions += padded - w + 1;
    }
    cache.offsets[batch.size()] = total_positions;

    Matrix windows = Matrix::Zero(total_positions, w * input_dim_);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const SeqExample& example = batch[i];
      const Eigen::Index positions =
          cache.offsets[i + 1] - cache.offsets[i];
      for (Eigen::Index t = 0; t < positions; ++t) {
        for (Eigen::Index j = 0; j < w; ++j) {
          const Eigen::Index row = t + j;
          if (row < example.valid) {
            windows.block(cache.offsets[i] + t, j * input_dim_, 1,
                          input_dim_) = example.rows->row(row);
          }
        }
      }
    }

    Matrix activations = cache.relu.forward(convs_[si].forward(windows));
    cache.bn_out = norms_[si].forward(activations, train);

    cache.argmax.assign(batch.size(), std::vector<Eigen::Index>(
                                          static_cast<std::size_t>(k), 0));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Eigen::Index begin = cache.offsets[i];
      const Eigen::Index end = cache.offsets[i + 1];
      for (Eigen::Index col = 0; col < k; ++col) {
        Eigen::Index best = begin;
        double best_value = cache.bn_out(begin, col);
        for (Eigen::Index row = begin + 1; row < end; ++row) {
          if (cache.bn_out(row, col) > best_value) {
            best_value = cache.bn_out(row, col);
            best = row;
          }
        }
        cache.argmax[i][static_cast<std::size_t>(col)] = best;
        pooled(static_cast<Eigen::Index>(i),
               static_cast<Eigen::Index>(si) * k + col) = best_value;
      }
    }
  }

  Matrix dropped = dropout_.forward(pooled, train, rng_);
  return head_.forward(dropped).col(0);
}

void CnnNet::backward(const Vector& dlogits) {
  const Eigen::Index k = spec_.filters_per_size;
  Matrix dhead = head_.backward(dlogits);
  Matrix dpooled = dropout_.backward(dhead);

  for (std::size_t si = 0; si < spec_.filter_sizes.size(); ++si) {
    SizeCache& cache = caches_[si];
    Matrix dbn = Matrix::Zero(cache.bn_out.rows(), cache.bn_out.cols());
    for (std::size_t i = 0; i + 1 < cache.offsets.size(); ++i) {
      for (Eigen::Index col = 0; col < k; ++col) {
        dbn(cache.argmax[i][static_cast<std::size_t>(col)], col) +=
            dpooled(static_cast<Eigen::Index>(i),
                    static_cast<Eigen::Index>(si) * k + col);
      }
    }
    Matrix dact = norms_[si].backward(dbn);
    Matrix dconv = cache.relu.backward(dact);
    convs_[si].backward(dconv);  // input gradient unused: windows are data
  }
}

std::vector<Parameter*> CnnNet::parameters() {
  std::vector<Parameter*> params;
  for (std::size_t si = 0; si < convs_.size(); ++si) {
    params.push_back(&convs_[si].weight);
    params.push_back(&convs_[si].bias);
    params.push_back(&norms_[si].gamma);
    params.push_back(&norms_[si].beta);
  }
  params.push_back(&head_.weight);
  params.push_back(&head_.bias);
  return params;
}

nlohmann::json CnnNet::architecture() const {
  return nlohmann::json{{"type", "cnn"},
                        {"filter_sizes", spec_.filter_sizes},
                        {"filters_per_size", spec_.filters_per_size},
                        {"dropout", spec_.dropout},
                        {"input_dim", input_dim_}};
}

// ---------------------------------------------------------------------------
// LstmCell

LstmCell::LstmCell(Eigen::Index input_dim, Eigen::Index hidden, Rng& rng,
                   const std::string& name) {
  weight.name = name + ".weight";
  weight.init_zero(input_dim + hidden, 4 * hidden);
  glorot_init(weight.value, rng);
  bias.name = name + ".bias";
  bias.init_zero(1, 4 * hidden);
  // Forget-gate bias starts at 1 so early training keeps long-range state.
  bias.value.block(0, hidden, 1, hidden).setOnes();
}

Vector LstmCell::forward(const Matrix& x, Eigen::Index steps,
                         Cache& cache) const {
  const Eigen::Index h = hidden();
  const Eigen::Index d = input_dim();
  cache.inputs.resize(steps, d + h);
  cache.gates.resize(steps, 4 * h);
  cache.cells.resize(steps, h);
  cache.tanh_cells.resize(steps, h);

  Eigen::RowVectorXd hidden_state = Eigen::RowVectorXd::Zero(h);
  Eigen::RowVectorXd cell_state = Eigen::RowVectorXd::Zero(h);

  for (Eigen::Index t = 0; t < steps; ++t) {
    cache.inputs.block(t, 0, 1, d) = x.row(t);
    cache.inputs.block(t, d, 1, h) = hidden_state;
    Eigen::RowVectorXd pre =
        cache.inputs.row(t) * weight.value + bias.value.row(0);
    Eigen::RowVectorXd gate_i = sigmoid_row(pre.segment(0, h));
    Eigen::RowVectorXd gate_f = sigmoid_row(pre.segment(h, h));
    Eigen::RowVectorXd gate_g = tanh_row(pre.segment(2 * h, h));
    Eigen::RowVectorXd gate_o = sigmoid_row(pre.segment(3 * h, h));
    cell_state =
        gate_f.cwiseProduct(cell_state) + gate_i.cwiseProduct(gate_g);
    Eigen::RowVectorXd tanh_cell = tanh_row(cell_state);
    hidden_state = gate_o.cwiseProduct(tanh_cell);

    cache.gates.block(t, 0, 1, h) = gate_i;
    cache.gates.block(t, h, 1, h) = gate_f;
    cache.gates.block(t, 2 * h, 1, h) = gate_g;
    cache.gates.block(t, 3 * h, 1, h) = gate_o;
    cache.cells.row(t) = cell_state;
    cache.tanh_cells.row(t) = tanh_cell;
  }
  return hidden_state.transpose();
}

void LstmCell::backward(const Cache& cache, const Vector& dh_final) {
  const Eigen::Index h = hidden();
  const Eigen::Index d = input_dim();
  const Eigen::Index steps = cache.inputs.rows();

  Eigen::RowVectorXd dh = dh_final.transpose();
  Eigen::RowVectorXd dc = Eigen::RowVectorXd::Zero(h);

  for (Eigen::Index t = steps - 1; t >= 0; --t) {
    Eigen::RowVectorXd gate_i = cache.gates.block(t, 0, 1, h);
    Eigen::RowVectorXd gate_f = cache.gates.block(t, h, 1, h);
    Eigen::RowVectorXd gate_g = cache.gates.block(t, 2 * h, 1, h);
    Eigen::RowVectorXd gate_o = cache.gates.block(t, 3 * h, 1, h);
    Eigen::RowVectorXd tanh_cell = cache.tanh_cells.row(t);
    Eigen::RowVectorXd cell_prev = t > 0
                                       ? cache.cells.row(t - 1)
                                       : Eigen::RowVectorXd::Zero(h).eval();

    Eigen::RowVectorXd dout = dh.cwiseProduct(tanh_cell);
    dc += dh.cwiseProduct(gate_o).cwiseProduct(
        (1.0 - tanh_cell.array().square()).matrix());

    Eigen::RowVectorXd din = dc.cwiseProduct(gate_g);
    Eigen::RowVectorXd dforget = dc.cwiseProduct(cell_prev);
    Eigen::RowVectorXd dcell_in = dc.cwiseProduct(gate_i);

    Eigen::RowVectorXd dpre(4 * h);
    dpre.segment(0, h) =
        din.cwiseProduct(gate_i).cwiseProduct((1.0 - gate_i.array()).matrix());
    dpre.segment(h, h) = dforget.cwiseProduct(gate_f).cwiseProduct(
        (1.0 - gate_f.array()).matrix());
    dpre.segment(2 * h, h) =
        dcell_in.cwiseProduct((1.0 - gate_g.array().square()).matrix());
    dpre.segment(3 * h, h) =
        dout.cwiseProduct(gate_o).cwiseProduct((1.0 - gate_o.array()).matrix());

    weight.grad += cache.inputs.row(t).transpose() * dpre;
    bias.grad.row(0) += dpre;

    Eigen::RowVectorXd dz = dpre * weight.value.transpose();
    dh = dz.segment(d, h);
    dc = dc.cwiseProduct(gate_f);
  }
}

// ---------------------------------------------------------------------------
// LstmNet

LstmNet::LstmNet(const LstmSpec& spec, Eigen::Index input_dim,
                 std::uint64_t seed)
    : spec_(spec), input_dim_(input_dim), dropout_(spec.dropout),
      rng_(derive_seed(seed, 0x6c73)) {
  if (spec_.hidden < 1) {
    throw ConfigError("lstm hidden size must be >= 1");
  }
  Rng init(derive_seed(seed, 0x696e69));
  forward_cell_ = LstmCell(input_dim_, spec_.hidden, init, "forward");
  Eigen::Index width = spec_.hidden;
  if (spec_.bidirectional) {
    backward_cell_ = LstmCell(input_dim_, spec_.hidden, init, "backward");
    width = 2 * spec_.hidden;
  }
  head_ = Dense(width, 1, init, "head");
}

Vector LstmNet::forward(const std::vector<SeqExample>& batch, bool train) {
  const Eigen::Index n = static_cast<Eigen::Index>(batch.size());
  const Eigen::Index h = spec_.hidden;
  forward_caches_.assign(batch.size(), LstmCell::Cache{});
  if (spec_.bidirectional) {
    backward_caches_.assign(batch.size(), LstmCell::Cache{});
    reversed_inputs_.assign(batch.size(), Matrix());
  }

  Matrix features = Matrix::Zero(n, head_.in_dim());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const SeqExample& example = batch[i];
    Vector final_forward = forward_cell_.forward(
        *example.rows, example.valid, forward_caches_[i]);
    features.block(static_cast<Eigen::Index>(i), 0, 1, h) =
        final_forward.transpose();
    if (spec_.bidirectional) {
      Matrix& reversed = reversed_inputs_[i];
      reversed.resize(example.valid, input_dim_);
      for (Eigen::Index t = 0; t < example.valid; ++t) {
        reversed.row(t) = example.rows->row(example.valid - 1 - t);
      }
      Vector final_backward = backward_cell_->forward(
          reversed, example.valid, backward_caches_[i]);
      features.block(static_cast<Eigen::Index>(i), h, 1, h) =
          final_backward.transpose();
    }
  }

  Matrix dropped = dropout_.forward(features, train, rng_);
  return head_.forward(dropped).col(0);
}

void LstmNet::backward(const Vector& dlogits) {
  const Eigen::Index h = spec_.hidden;
  Matrix dhead = head_.backward(dlogits);
  Matrix dfeatures = dropout_.backward(dhead);

  for (std::size_t i = 0; i < forward_caches_.size(); ++i) {
    Vector dh_forward =
        dfeatures.block(static_cast<Eigen::Index>(i), 0, 1, h).transpose();
    forward_cell_.backward(forward_caches_[i], dh_forward);
    if (spec_.bidirectional) {
      Vector dh_backward =
          dfeatures.block(static_cast<Eigen::Index>(i), h, 1, h).transpose();
      backward_cell_->backward(backward_caches_[i], dh_backward);
    }
  }
}

std::vector<Parameter*> LstmNet::parameters() {
  std::vector<Parameter*> params{&forward_cell_.weight, &forward_cell_.bias};
  if (backward_cell_) {
    params.push_back(&backward_cell_->weight);
    params.push_back(&backward_cell_->bias);
  }
  params.push_back(&head_.weight);
  params.push_back(&head_.bias);
  return params;
}

nlohmann::json LstmNet::architecture() const {
  return nlohmann::json{{"type", spec_.bidirectional ? "bilstm" : "lstm"},
                        {"hidden", spec_.hidden},
                        {"bidirectional", spec_.bidirectional},
                        {"dropout", spec_.dropout},
                        {"input_dim", input_dim_}};
}

// ---------------------------------------------------------------------------
// MlpNet

MlpNet::MlpNet(const MlpSpec& spec, Eigen::Index input_dim, std::uint64_t seed)
    : spec_(spec), rng_(derive_seed(seed, 0x6d6c70)) {
  Rng init(derive_seed(seed, 0x696e69));
  Eigen::Index width = input_dim;
  for (std::size_t i = 0; i < spec_.hidden_sizes.size(); ++i) {
    if (spec_.hidden_sizes[i] < 1) {
      throw ConfigError("mlp hidden sizes must be >= 1");
    }
    hidden_.emplace_back(width, spec_.hidden_sizes[i], init,
                         "hidden" + std::to_string(i));
    relus_.emplace_back();
    dropouts_.emplace_back(spec_.dropout);
    width = spec_.hidden_sizes[i];
  }
  out_ = Dense(width, 1, init, "out");
}

Vector MlpNet::forward(const Matrix& batch, bool train) {
  Matrix x = batch;
  for (std::size_t i = 0; i < hidden_.size(); ++i) {
    x = hidden_[i].forward(x);
    x = relus_[i].forward(x);
    x = dropouts_[i].forward(x, train, rng_);
  }
  return out_.forward(x).col(0);
}

void MlpNet::backward(const Vector& dlogits) {
  Matrix dx = out_.backward(dlogits);
  for (std::size_t i = hidden_.size(); i-- > 0;) {
    dx = dropouts_[i].backward(dx);
    dx = relus_[i].backward(dx);
    dx = hidden_[i].backward(dx);
  }
}

std::vector<Parameter*> MlpNet::parameters() {
  std::vector<Parameter*> params;
  for (auto& layer : hidden_) {
    params.push_back(&layer.weight);
    params.push_back(&layer.bias);
  }
  params.push_back(&out_.weight);
  params.push_back(&out_.bias);
  return params;
}

std::size_t MlpNet::parameter_count() const {
  std::size_t count = 0;
  for (const auto& layer : hidden_) {
    count += static_cast<std::size_t>(layer.weight.value.size() +
                                      layer.bias.value.size());
  }
  count += static_cast<std::size_t>(out_.weight.value.size() +
                                    out_.bias.value.size());
  return count;
}

nlohmann::json MlpNet::architecture() const {
  return nlohmann::json{{"type", "mlp_head"},
                        {"hidden_sizes", spec_.hidden_sizes},
                        {"dropout", spec_.dropout},
                        {"input_dim", hidden_.empty() ? out_.in_dim()
                                                      : hidden_[0].in_dim()}};
}

// ---------------------------------------------------------------------------
// Parameter serialization

nlohmann::json parameters_to_json(
    const std::vector<const Parameter*>& parameters) {
  nlohmann::json encoded = nlohmann::json::array();
  for (const Parameter* param : parameters) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index r = 0; r < param->value.rows(); ++r) {
      for (Eigen::Index c = 0; c < param->value.cols(); ++c) {
        values.push_back(param->value(r, c));
      }
    }
    encoded.push_back(nlohmann::json{{"name", param->name},
                                     {"rows", param->value.rows()},
                                     {"cols", param->value.cols()},
                                     {"values", std::move(values)}});
  }
  return encoded;
}

void parameters_from_json(const nlohmann::json& encoded,
                          const std::vector<Parameter*>& parameters) {
  if (!encoded.is_array() || encoded.size() != parameters.size()) {
    throw ValidationError("parameter archive does not match architecture");
  }
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const auto& entry = encoded[i];
    Parameter* param = parameters[i];
    const auto rows = entry.at("rows").get<Eigen::Index>();
    const auto cols = entry.at("cols").get<Eigen::Index>();
    if (entry.at("name").get<std::string>() != param->name ||
        rows != param->value.rows() || cols != param->value.cols()) {
      throw ValidationError("parameter " + param->name +
                            " does not match the stored archive");
    }
    const auto& values = entry.at("values");
    if (static_cast<Eigen::Index>(values.size()) != rows * cols) {
      throw ValidationError("parameter " + param->name +
                            " has a malformed value list");
    }
    std::size_t flat = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        param->value(r, c) = values[flat++].get<double>();
      }
    }
  }
}

}  // namespace hpd::nn
