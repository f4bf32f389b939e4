// include/sdsv/mlp.h

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

#ifndef SDSV_MLP_H_
#define SDSV_MLP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sdsv/common.h"

namespace sdsv {

// Fully-connected frame classifier: sigmoid hidden layers, softmax output,
// trained with mini-batch SGD on cross-entropy.
struct MlpModel {
  // weights[l] is (in_dim x out_dim) for layer l; biases[l] has out_dim.
  std::vector<Matrix> weights;
  std::vector<Vector> biases;

  int NumLayers() const { return static_cast<int>(weights.size()); }
  int NumHiddenLayers() const { return NumLayers() - 1; }
  int InputDim() const { return static_cast<int>(weights.front().rows()); }
  int OutputDim() const { return static_cast<int>(weights.back().cols()); }

  void Check() const;

  // Post- (default) or pre-activation output of hidden layer layer_index
  // (1-based).
  Matrix ForwardHidden(const Matrix &inputs, int layer_index,
                       bool post_activation = true) const;

  // Softmax class posteriors, one row per input row.
  Matrix ForwardSoftmax(const Matrix &inputs) const;

  void WriteToFile(const std::string &path) const;
  static MlpModel ReadFromFile(const std::string &path);
};

struct SgdConfig {
  double learning_rate = 0.1;
  double lr_decay = 0.5;          // applied when the epoch loss plateaus
  double plateau_tol = 1e-4;      // relative improvement threshold
  int epochs = 20;
  int batch_size = 256;
  uint64_t seed = 0;
};

// hidden_dims lists the hidden layer widths.  epoch_loss, when given,
// receives the mean cross-entropy of each epoch.
MlpModel TrainMlp(const Matrix &inputs, const std::vector<int> &labels,
                  const std::vector<int> &hidden_dims, int n_classes,
                  const SgdConfig &sgd, std::vector<double> *epoch_loss = nullptr);

// Mean cross-entropy over the batch and its exact gradients; exposed so the
// analytic gradients can be checked against finite differences.
double MlpLossAndGradients(const MlpModel &model, const Matrix &inputs,
                           const std::vector<int> &labels,
                           std::vector<Matrix> *grad_weights,
                           std::vector<Vector> *grad_biases);

}  // namespace sdsv

#endif  // SDSV_MLP_H_
