// src/mlp.cc

// Copyright 2026  SDSV Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sdsv/mlp.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "sdsv/binary-io.h"
#include "sdsv/rng.h"

namespace sdsv {

namespace {

constexpr char kMlpMagic[4] = {'S', 'M', 'L', 'P'};
constexpr uint32_t kVersion = 1;

Matrix Sigmoid(const Matrix &z) {
  return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

// Row-wise softmax with the max subtracted for stability.
Matrix Softmax(const Matrix &z) {
  Matrix shifted = z.colwise() - z.rowwise().maxCoeff();
  Matrix e = shifted.array().exp();
  return e.array().colwise() / e.rowwise().sum().array();
}

// Activations of every layer; out[0] is the input, out[l] the post-activation
// output of layer l, the last being softmax posteriors.
std::vector<Matrix> ForwardAll(const MlpModel &model, const Matrix &inputs) {
  std::vector<Matrix> acts(model.NumLayers() + 1);
  acts[0] = inputs;
  for (int l = 0; l < model.NumLayers(); ++l) {
    Matrix z = (acts[l] * model.weights[l]).rowwise() + model.biases[l].transpose();
    acts[l + 1] = (l + 1 == model.NumLayers()) ? Softmax(z) : Sigmoid(z);
  }
  return acts;
}

}  // namespace

void MlpModel::Check() const {
  Require(!weights.empty() && weights.size() == biases.size(), "malformed MLP");
  for (int l = 0; l < NumLayers(); ++l) {
    Require(weights[l].cols() == biases[l].size(), "weight/bias shape mismatch");
    if (l > 0)
      Require(weights[l].rows() == weights[l - 1].cols(), "layer dims do not chain");
    Require(weights[l].allFinite() && biases[l].allFinite(), "non-finite MLP parameters");
  }
}

Matrix MlpModel::ForwardHidden(const Matrix &inputs, int layer_index,
                               bool post_activation) const {
  Require(layer_index >= 1 && layer_index <= NumHiddenLayers(),
          "hidden layer index out of range");
  Require(inputs.cols() == InputDim(), "MLP input dim mismatch");
  Matrix act = inputs;
  for (int l = 0; l < layer_index; ++l) {
    Matrix z = (act * weights[l]).rowwise() + biases[l].transpose();
    if (l + 1 == layer_index && !post_activation) return z;
    act = Sigmoid(z);
  }
  return act;
}

Matrix MlpModel::ForwardSoftmax(const Matrix &inputs) const {
  Require(inputs.cols() == InputDim(), "MLP input dim mismatch");
  return ForwardAll(*this, inputs).back();
}

void MlpModel::WriteToFile(const std::string &path) const {
  Check();
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kMlpMagic, kVersion);
  WriteU32(os, static_cast<uint32_t>(NumLayers()));
  WriteU32(os, static_cast<uint32_t>(InputDim()));
  for (int l = 0; l < NumLayers(); ++l)
    WriteU32(os, static_cast<uint32_t>(weights[l].cols()));
  for (int l = 0; l < NumLayers(); ++l) {
    WriteMatrixF64(os, weights[l]);
    WriteVectorF64(os, biases[l]);
  }
}

MlpModel MlpModel::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kMlpMagic);
  if (version != kVersion) SDSV_ERR << path << ": unsupported MLP file version " << version;
  int n_layers = static_cast<int>(ReadU32(is));
  Require(n_layers >= 1 && n_layers < 1000, "corrupt MLP header");
  std::vector<int> dims(n_layers + 1);
  dims[0] = static_cast<int>(ReadU32(is));
  for (int l = 0; l < n_layers; ++l) dims[l + 1] = static_cast<int>(ReadU32(is));
  MlpModel model;
  for (int l = 0; l < n_layers; ++l) {
    model.weights.push_back(ReadMatrixF64(is, dims[l], dims[l + 1]));
    model.biases.push_back(ReadVectorF64(is, dims[l + 1]));
  }
  model.Check();
  return model;
}

double MlpLossAndGradients(const MlpModel &model, const Matrix &inputs,
                           const std::vector<int> &labels,
                           std::vector<Matrix> *grad_weights,
                           std::vector<Vector> *grad_biases) {
  const Eigen::Index n = inputs.rows();
  Require(static_cast<Eigen::Index>(labels.size()) == n, "label count mismatch");
  const int L = model.NumLayers();
  std::vector<Matrix> acts = ForwardAll(model, inputs);

  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Require(labels[i] >= 0 && labels[i] < model.OutputDim(), "label out of range");
    loss -= std::log(std::max(acts[L](i, labels[i]), 1e-300));
  }
  loss /= static_cast<double>(n);

  grad_weights->assign(L, Matrix());
  grad_biases->assign(L, Vector());
  // delta carries dLoss/dz of the current layer; softmax + cross-entropy
  // starts it at (p - onehot)/n.
  Matrix delta = acts[L];
  for (Eigen::Index i = 0; i < n; ++i) delta(i, labels[i]) -= 1.0;
  delta /= static_cast<double>(n);
  for (int l = L - 1; l >= 0; --l) {
    (*grad_weights)[l].noalias() = acts[l].transpose() * delta;
    (*grad_biases)[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Matrix d_act = (acts[l].array() * (1.0 - acts[l].array())).matrix();
      delta = (delta * model.weights[l].transpose()).cwiseProduct(d_act);
    }
  }
  return loss;
}

MlpModel TrainMlp(const Matrix &inputs, const std::vector<int> &labels,
                  const std::vector<int> &hidden_dims, int n_classes,
                  const SgdConfig &sgd, std::vector<double> *epoch_loss) {
  const Eigen::Index n = inputs.rows();
  Require(n >= 1, "no training examples");
  Require(static_cast<Eigen::Index>(labels.size()) == n, "label count mismatch");
  Require(n_classes >= 2, "need at least two classes");
  Require(!hidden_dims.empty(), "need at least one hidden layer");
  Require(sgd.epochs >= 1 && sgd.batch_size >= 1, "bad SGD config");
  std::vector<int64_t> class_count(n_classes, 0);
  for (int y : labels) {
    Require(y >= 0 && y < n_classes, "label out of range");
    ++class_count[y];
  }
  for (int c = 0; c < n_classes; ++c)
    Require(class_count[c] >= 1, "every class needs at least one example");

  std::vector<int> dims;
  dims.push_back(static_cast<int>(inputs.cols()));
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(n_classes);

  // Glorot-uniform init.
  Rng rng(sgd.seed);
  MlpModel model;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    double bound = std::sqrt(6.0 / (dims[l] + dims[l + 1]));
    Matrix w(dims[l], dims[l + 1]);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        w(r, c) = bound * (2.0 * rng.Uniform() - 1.0);
    model.weights.push_back(std::move(w));
    model.biases.push_back(Vector::Zero(dims[l + 1]));
  }

  if (epoch_loss) epoch_loss->clear();
  double lr = sgd.learning_rate;
  double prev_epoch_loss = std::numeric_limits<double>::infinity();
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<Matrix> gw;
  std::vector<Vector> gb;
  for (int epoch = 0; epoch < sgd.epochs; ++epoch) {
    Rng epoch_rng = rng.Fork(epoch);
    epoch_rng.Shuffle(&order);
    double loss_sum = 0.0;
    int64_t seen = 0;
    for (Eigen::Index start = 0; start < n; start += sgd.batch_size) {
      Eigen::Index b = std::min<Eigen::Index>(sgd.batch_size, n - start);
      Matrix batch(b, inputs.cols());
      std::vector<int> batch_labels(b);
      for (Eigen::Index i = 0; i < b; ++i) {
        batch.row(i) = inputs.row(order[start + i]);
        batch_labels[i] = labels[order[start + i]];
      }
      double loss = MlpLossAndGradients(model, batch, batch_labels, &gw, &gb);
      for (int l = 0; l < model.NumLayers(); ++l) {
        model.weights[l].noalias() -= lr * gw[l];
        model.biases[l].noalias() -= lr * gb[l];
      }
      loss_sum += loss * static_cast<double>(b);
      seen += b;
    }
    double mean_loss = loss_sum / static_cast<double>(seen);
    if (epoch_loss) epoch_loss->push_back(mean_loss);
    if (mean_loss > prev_epoch_loss * (1.0 - sgd.plateau_tol)) lr *= sgd.lr_decay;
    prev_epoch_loss = mean_loss;
  }
  return model;
}

}  // namespace sdsv
