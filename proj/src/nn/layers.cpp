#include "hpd/nn/layers.hpp"

#include <cmath>

#include "hpd/error.hpp"

namespace hpd::nn {

void glorot_init(Matrix& weights, Rng& rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(weights.rows() + weights.cols()));
  for (Eigen::Index r = 0; r < weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < weights.cols(); ++c) {
      weights(r, c) = rng.uniform(-limit, limit);
    }
  }
}

Dense::Dense(Eigen::Index in, Eigen::Index out, Rng& rng,
             const std::string& name) {
  weight.name = name + ".weight";
  weight.init_zero(in, out);
  glorot_init(weight.value, rng);
  bias.name = name + ".bias";
  bias.init_zero(1, out);
}

Matrix Dense::forward(const Matrix& x) {
  input_ = x;
  return (x * weight.value).rowwise() + bias.value.row(0);
}

Matrix Dense::backward(const Matrix& dy) {
  weight.grad += input_.transpose() * dy;
  bias.grad.row(0) += dy.colwise().sum();
  return dy * weight.value.transpose();
}

Matrix Relu::forward(const Matrix& x) {
  mask_ = (x.array() > 0.0).cast<double>();
  return x.cwiseProduct(mask_);
}

Matrix Relu::backward(const Matrix& dy) const {
  return dy.cwiseProduct(mask_);
}

Dropout::Dropout(double rate) : rate_(rate) {
  if (rate_ < 0.0 || rate_ >= 1.0) {
    throw ConfigError("dropout rate must lie in [0, 1)");
  }
}

Matrix Dropout::forward(const Matrix& x, bool train, Rng& rng) {
  applied_ = train && rate_ > 0.0;
  if (!applied_) return x;
  const double keep = 1.0 - rate_;
  mask_.resize(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      mask_(r, c) = rng.uniform() < keep ? 1.0 / keep : 0.0;
    }
  }
  return x.cwiseProduct(mask_);
}

Matrix Dropout::backward(const Matrix& dy) const {
  if (!applied_) return dy;
  return dy.cwiseProduct(mask_);
}

BatchNorm::BatchNorm(Eigen::Index channels, const std::string& name) {
  gamma.name = name + ".gamma";
  gamma.init_zero(1, channels);
  gamma.value.setOnes();
  beta.name = name + ".beta";
  beta.init_zero(1, channels);
  running_mean = Eigen::RowVectorXd::Zero(channels);
  running_var = Eigen::RowVectorXd::Ones(channels);
}

Matrix BatchNorm::forward(const Matrix& x, bool train) {
  trained_forward_ = train;
  if (train) {
    const double m = static_cast<double>(x.rows());
    Eigen::RowVectorXd mean = x.colwise().mean();
    Eigen::RowVectorXd var =
        ((x.rowwise() - mean).array().square().colwise().sum() / m).matrix();
    running_mean = (1.0 - momentum) * running_mean + momentum * mean;
    running_var = (1.0 - momentum) * running_var + momentum * var;
    inv_std_ = (var.array() + eps).sqrt().inverse().matrix();
    xhat_ = ((x.rowwise() - mean).array().rowwise() * inv_std_.array()).matrix();
  } else {
    inv_std_ = (running_var.array() + eps).sqrt().inverse().matrix();
    xhat_ = ((x.rowwise() - running_mean).array().rowwise() * inv_std_.array())
                .matrix();
  }
  Matrix y = (xhat_.array().rowwise() * gamma.value.row(0).array()).matrix();
  y.rowwise() += beta.value.row(0);
  return y;
}

Matrix BatchNorm::backward(const Matrix& dy) {
  gamma.grad.row(0) += dy.cwiseProduct(xhat_).colwise().sum();
  beta.grad.row(0) += dy.colwise().sum();

  Matrix dxhat = (dy.array().rowwise() * gamma.value.row(0).array()).matrix();
  if (!trained_forward_) {
    // Running statistics are constants at evaluation.
    return (dxhat.array().rowwise() * inv_std_.array()).matrix();
  }
  const double m = static_cast<double>(dy.rows());
  Eigen::RowVectorXd sum_dxhat = dxhat.colwise().sum();
  Eigen::RowVectorXd sum_dxhat_xhat =
      dxhat.cwiseProduct(xhat_).colwise().sum();
  Matrix dx = m * dxhat;
  dx.rowwise() -= sum_dxhat;
  dx -= (xhat_.array().rowwise() * sum_dxhat_xhat.array()).matrix();
  dx = ((dx / m).array().rowwise() * inv_std_.array()).matrix();
  return dx;
}

}  // namespace hpd::nn
