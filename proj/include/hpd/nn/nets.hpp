#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpd/nn/layers.hpp"

namespace hpd::nn {

/// View of one variable-length example: the first `valid` rows of `rows`
/// are sentence embeddings; anything past them is padding and is never
/// read, which is what makes mask handling exact.
struct SeqExample {
  const Matrix* rows = nullptr;
  Eigen::Index valid = 0;
};

/// Networks over sequences of sentence embeddings (CNN, LSTM).
class SequenceNet {
 public:
  virtual ~SequenceNet() = default;
  virtual Vector forward(const std::vector<SeqExample>& batch, bool train) = 0;
  virtual void backward(const Vector& dlogits) = 0;
  virtual std::vector<Parameter*> parameters() = 0;
  virtual nlohmann::json architecture() const = 0;
};

/// Networks over fixed-width feature rows (MLP head).
class DenseNet {
 public:
  virtual ~DenseNet() = default;
  virtual Vector forward(const Matrix& batch, bool train) = 0;
  virtual void backward(const Vector& dlogits) = 0;
  virtual std::vector<Parameter*> parameters() = 0;
  virtual nlohmann::json architecture() const = 0;
};

struct CnnSpec {
  std::vector<int> filter_sizes{2, 3, 4, 5, 6};
  int filters_per_size = 64;
  double dropout = 0.5;
};

/// Parallel 1-D convolutions over the sentence axis, each followed by a
/// rectifier, batch normalization and global max pooling over the valid
/// positions; the pooled vectors are concatenated and fed through dropout
/// into a fully connected sigmoid head. Sequences shorter than a window
/// are zero-padded to the minimum viable length.
class CnnNet : public SequenceNet {
 public:
  CnnNet(const CnnSpec& spec, Eigen::Index input_dim, std::uint64_t seed);

  Vector forward(const std::vector<SeqExample>& batch, bool train) override;
  void backward(const Vector& dlogits) override;
  std::vector<Parameter*> parameters() override;
  nlohmann::json architecture() const override;

  Eigen::Index concat_width() const;

 private:
  struct SizeCache {
    std::vector<Eigen::Index> offsets;  // per example +1: row in the stack
    Relu relu;
    Matrix bn_out;  // stacked activations after batch norm
    std::vector<std::vector<Eigen::Index>> argmax;  // per example, per filter
  };

  CnnSpec spec_;
  Eigen::Index input_dim_;
  std::vector<Dense> convs_;  // (w*D) x K as a dense map over windows
  std::vector<BatchNorm> norms_;
  Dropout dropout_;
  Dense head_;
  Rng rng_;
  std::vector<SizeCache> caches_;
};

struct LstmSpec {
  int hidden = 128;
  bool bidirectional = false;
  double dropout = 0.5;
};

/// Single LSTM cell with gate order [input, forget, cell, output].
class LstmCell {
 public:
  LstmCell() = default;
  LstmCell(Eigen::Index input_dim, Eigen::Index hidden, Rng& rng,
           const std::string& name);

  struct Cache {
    Matrix inputs;      // T x (D+H) concatenated [x_t, h_{t-1}]
    Matrix gates;       // T x 4H post-activation [i f g o]
    Matrix cells;       // T x H
    Matrix tanh_cells;  // T x H
  };

  /// Consumes `steps` rows of x (top-down); returns the final hidden state
  /// (zeros when steps == 0).
  Vector forward(const Matrix& x, Eigen::Index steps, Cache& cache) const;
  /// Backpropagates from the gradient at the final hidden state.
  void backward(const Cache& cache, const Vector& dh_final);

  Eigen::Index hidden() const { return weight.value.cols() / 4; }
  Eigen::Index input_dim() const { return weight.value.rows() - hidden(); }

  Parameter weight;  // (D+H) x 4H
  Parameter bias;    // 1 x 4H
};

/// Recurrent encoder over the sentence-embedding sequence; the final state
/// (both directions concatenated when bidirectional) goes through dropout
/// into a fully connected sigmoid head.
class LstmNet : public SequenceNet {
 public:
  LstmNet(const LstmSpec& spec, Eigen::Index input_dim, std::uint64_t seed);

  Vector forward(const std::vector<SeqExample>& batch, bool train) override;
  void backward(const Vector& dlogits) override;
  std::vector<Parameter*> parameters() override;
  nlohmann::json architecture() const override;

  Eigen::Index head_width() const { return head_.in_dim(); }

 private:
  LstmSpec spec_;
  Eigen::Index input_dim_;
  LstmCell forward_cell_;
  std::optional<LstmCell> backward_cell_;
  Dropout dropout_;
  Dense head_;
  Rng rng_;
  std::vector<LstmCell::Cache> forward_caches_;
  std::vector<LstmCell::Cache> backward_caches_;
  std::vector<Matrix> reversed_inputs_;
};

struct MlpSpec {
  std::vector<int> hidden_sizes;
  double dropout = 0.5;
};

/// Fully connected layers with rectifier activations and dropout, sigmoid
/// output. An empty hidden list degenerates to logistic regression.
class MlpNet : public DenseNet {
 public:
  MlpNet(const MlpSpec& spec, Eigen::Index input_dim, std::uint64_t seed);

  Vector forward(const Matrix& batch, bool train) override;
  void backward(const Vector& dlogits) override;
  std::vector<Parameter*> parameters() override;
  nlohmann::json architecture() const override;

  std::size_t parameter_count() const;

 private:
  MlpSpec spec_;
  std::vector<Dense> hidden_;
  std::vector<Relu> relus_;
  std::vector<Dropout> dropouts_;
  Dense out_;
  Rng rng_;
};

nlohmann::json parameters_to_json(
    const std::vector<const Parameter*>& parameters);
void parameters_from_json(const nlohmann::json& encoded,
                          const std::vector<Parameter*>& parameters);

}  // namespace hpd::nn
