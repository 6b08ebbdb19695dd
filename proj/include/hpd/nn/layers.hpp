#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hpd/rng.hpp"

namespace hpd::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One learnable tensor with its gradient accumulator. Biases are stored as
/// 1 x n matrices so the optimizer can treat everything uniformly.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;

  void init_zero(Eigen::Index rows, Eigen::Index cols) {
    value = Matrix::Zero(rows, cols);
    grad = Matrix::Zero(rows, cols);
  }
};

/// Glorot-uniform fill, deterministic through Rng.
void glorot_init(Matrix& weights, Rng& rng);

/// Fully connected layer; rows of the input are examples (or positions).
class Dense {
 public:
  Dense() = default;
  Dense(Eigen::Index in, Eigen::Index out, Rng& rng, const std::string& name);

  Matrix forward(const Matrix& x);
  /// Accumulates parameter gradients and returns the input gradient.
  Matrix backward(const Matrix& dy);

  Eigen::Index in_dim() const { return weight.value.rows(); }
  Eigen::Index out_dim() const { return weight.value.cols(); }

  Parameter weight;  // in x out
  Parameter bias;    // 1 x out

 private:
  Matrix input_;
};

class Relu {
 public:
  Matrix forward(const Matrix& x);
  Matrix backward(const Matrix& dy) const;

 private:
  Matrix mask_;
};

/// Inverted dropout; active only in training mode.
class Dropout {
 public:
  explicit Dropout(double rate = 0.5);

  Matrix forward(const Matrix& x, bool train, Rng& rng);
  Matrix backward(const Matrix& dy) const;

  double rate() const { return rate_; }

 private:
  double rate_;
  bool applied_ = false;
  Matrix mask_;
};

/// Batch normalization over columns (channels); rows are examples or
/// positions. Batch statistics are used in training mode and exponential
/// running statistics at evaluation, so evaluation output is independent
/// of batch composition.
class BatchNorm {
 public:
  BatchNorm() = default;
  explicit BatchNorm(Eigen::Index channels, const std::string& name);

  Matrix forward(const Matrix& x, bool train);
  Matrix backward(const Matrix& dy);

  Parameter gamma;  // 1 x C
  Parameter beta;   // 1 x C
  Eigen::RowVectorXd running_mean;
  Eigen::RowVectorXd running_var;
  double momentum = 0.1;
  double eps = 1e-5;

 private:
  Matrix xhat_;
  Eigen::RowVectorXd inv_std_;
  bool trained_forward_ = false;
};

}  // namespace hpd::nn
