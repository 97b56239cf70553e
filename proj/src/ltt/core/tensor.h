// ltt/core/tensor.h

// Copyright 2026  LTT Authors

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

#ifndef LTT_CORE_TENSOR_H_
#define LTT_CORE_TENSOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ltt/core/common.h"
#include "ltt/core/rng.h"

namespace ltt {

using Shape = std::vector<int64_t>;

int64_t NumElements(const Shape& shape);
std::string ShapeStr(const Shape& shape);

struct TensorNode;

// Dense real tensor, row-major, with reverse-mode autodiff. A Tensor is a
// cheap shared handle; the graph is held alive by parent links and freed
// when the handles go out of scope. Shapes are explicit everywhere: no
// implicit broadcasting (see ExpandCols / AddRowwise / PairwiseSum).
class Tensor {
 public:
  Tensor() = default;

  static Tensor Zeros(Shape shape, bool requires_grad = false);
  static Tensor Full(Shape shape, double value);
  static Tensor FromData(Shape shape, std::vector<double> data);
  static Tensor Scalar(double value);

  bool Defined() const { return node_ != nullptr; }
  const Shape& GetShape() const;
  int64_t Rank() const;
  int64_t Dim(int i) const;
  int64_t NumEl() const;

  const std::vector<double>& Data() const;
  // Leaves only (parameters and inputs); mutating an op output invalidates
  // the recorded graph.
  std::vector<double>& MutableData();

  bool RequiresGrad() const;
  void SetRequiresGrad(bool b);
  // Allocates a zero gradient buffer on first access.
  const std::vector<double>& Grad() const;
  void ZeroGrad();

  double Item() const;
  double At(int64_t i) const;
  double At(int64_t i, int64_t j) const;
  double At(int64_t i, int64_t j, int64_t k) const;

  TensorNode* Node() const { return node_.get(); }

 private:
  explicit Tensor(std::shared_ptr<TensorNode> node) : node_(std::move(node)) {}
  std::shared_ptr<TensorNode> node_;

  friend Tensor MakeOp(Shape shape, std::vector<double> data,
                       std::vector<Tensor> parents,
                       std::function<void(const TensorNode&)> backward);
};

struct TensorNode {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until first accumulation
  bool requires_grad = false;
  std::vector<Tensor> parents;
  std::function<void(const TensorNode&)> backward;

  void EnsureGrad() {
    if (grad.empty()) grad.assign(data.size(), 0.0);
  }
};

// Runs reverse-mode accumulation from a scalar loss. Every requires_grad
// node reachable from the loss receives d(loss)/d(node), added on top of
// whatever its grad buffer already holds.
void Backward(const Tensor& loss);

// Builds an op node: output data plus the closure that scatters its gradient
// into the parents. Parent links and the closure are only recorded when some
// parent requires grad and grads are enabled. Custom fused ops (the lattice
// losses) are built on this.
Tensor MakeOp(Shape shape, std::vector<double> data,
              std::vector<Tensor> parents,
              std::function<void(const TensorNode&)> backward);

// ---------------------------------------------------------------------------
// Forward ops. All of them validate shapes and input finiteness, and record
// backward closures unless grads are disabled (NoGradGuard).
// ---------------------------------------------------------------------------

Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor LogAddExp(const Tensor& a, const Tensor& b);
Tensor Neg(const Tensor& x);
Tensor Scale(const Tensor& x, double c);
Tensor AddConst(const Tensor& x, double c);

Tensor MatMul(const Tensor& a, const Tensor& b);  // (m,k) x (k,n) -> (m,n)
Tensor Transpose(const Tensor& x);                // 2-D
Tensor AddRowwise(const Tensor& x, const Tensor& row);  // (m,n) + (n)
// Pairwise row sums: a is (m,d), b is (n,d); output is (m*n, d) with row
// index i*n + j holding a[i] + b[j]. Used to build the joint lattice input.
Tensor PairwiseSum(const Tensor& a, const Tensor& b);
// (m,1) -> (m,n), repeating the single column.
Tensor ExpandCols(const Tensor& x, int64_t n);

Tensor Tanh(const Tensor& x);
Tensor Sigmoid(const Tensor& x);
Tensor Relu(const Tensor& x);

Tensor Softmax(const Tensor& x);      // rows of a 2-D tensor (or a 1-D vector)
Tensor LogSoftmax(const Tensor& x);   // ditto
Tensor LayerNorm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                 double eps = 1e-6);  // normalizes the last axis

Tensor EmbeddingLookup(const Tensor& table, const std::vector<int>& ids);
// Per-row column pick: out[i] = x[i, ids[i]].
Tensor GatherCols(const Tensor& x, const std::vector<int>& ids);

Tensor Dropout(const Tensor& x, double p, Rng* rng, bool train);

Tensor Concat(const std::vector<Tensor>& xs, int axis);
Tensor Slice(const Tensor& x, int axis, int64_t start, int64_t len);

// Fills positions with column index > row index; no gradient flows through
// the filled entries. Used for causal attention masks.
Tensor CausalMaskFill(const Tensor& x, double fill);

// im2col over the time axis: x is (T, C); output is (T', kernel*C) where
// T' = floor((T + pad_left + pad_right - kernel) / stride) + 1 and
// out-of-range taps read zero. Convolution = FrameGather then MatMul.
Tensor FrameGather(const Tensor& x, int64_t kernel, int64_t stride,
                   int64_t pad_left, int64_t pad_right);

Tensor SumAll(const Tensor& x);
Tensor MeanAll(const Tensor& x);

}  // namespace ltt

#endif  // LTT_CORE_TENSOR_H_
