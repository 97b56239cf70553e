// ltt/core/tensor.cc

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

#include "ltt/core/tensor.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ltt {

int64_t NumElements(const Shape& shape) {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return n;
}

std::string ShapeStr(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

namespace {

void ValidateShape(const Shape& shape, const char* who) {
  for (int64_t d : shape)
    LTT_CHECK(d > 0, who, ": dimensions must be positive, got ",
              ShapeStr(shape));
}

void CheckFinite(const Tensor& t, const char* op) {
  for (double v : t.Data())
    if (!std::isfinite(v))
      throw NumericError(Str(op, ": non-finite input value ", v));
}

void QuantizeInPlace(std::vector<double>* v) {
  if (!internal::g_quantize_f32) return;
  for (double& x : *v) x = static_cast<double>(static_cast<float>(x));
}

inline void AccumGrad(std::vector<double>& g, int64_t i, double v) {
  g[i] = Quantize(g[i] + v);
}

}  // namespace

Tensor MakeOp(Shape shape, std::vector<double> data,
              std::vector<Tensor> parents,
              std::function<void(const TensorNode&)> backward) {
  auto node = std::make_shared<TensorNode>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  QuantizeInPlace(&node->data);
  if (GradEnabled()) {
    bool need = false;
    for (const Tensor& p : parents)
      if (p.RequiresGrad()) need = true;
    if (need) {
      node->requires_grad = true;
      node->parents = std::move(parents);
      node->backward = std::move(backward);
    }
  }
  return Tensor(std::move(node));
}

// ---------------------------------------------------------------------------
// Tensor basics
// ---------------------------------------------------------------------------

Tensor Tensor::Zeros(Shape shape, bool requires_grad) {
  ValidateShape(shape, "Zeros");
  auto node = std::make_shared<TensorNode>();
  node->data.assign(NumElements(shape), 0.0);
  node->shape = std::move(shape);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::Full(Shape shape, double value) {
  ValidateShape(shape, "Full");
  auto node = std::make_shared<TensorNode>();
  node->data.assign(NumElements(shape), Quantize(value));
  node->shape = std::move(shape);
  return Tensor(std::move(node));
}

Tensor Tensor::FromData(Shape shape, std::vector<double> data) {
  ValidateShape(shape, "FromData");
  LTT_CHECK(NumElements(shape) == static_cast<int64_t>(data.size()),
            "FromData: shape ", ShapeStr(shape), " wants ", NumElements(shape),
            " values, got ", data.size());
  auto node = std::make_shared<TensorNode>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  QuantizeInPlace(&node->data);
  return Tensor(std::move(node));
}

Tensor Tensor::Scalar(double value) { return FromData({1}, {value}); }

const Shape& Tensor::GetShape() const { return node_->shape; }
int64_t Tensor::Rank() const { return static_cast<int64_t>(node_->shape.size()); }
int64_t Tensor::Dim(int i) const { return node_->shape[i]; }
int64_t Tensor::NumEl() const { return static_cast<int64_t>(node_->data.size()); }
const std::vector<double>& Tensor::Data() const { return node_->data; }
std::vector<double>& Tensor::MutableData() { return node_->data; }
bool Tensor::RequiresGrad() const { return node_ && node_->requires_grad; }
void Tensor::SetRequiresGrad(bool b) { node_->requires_grad = b; }

const std::vector<double>& Tensor::Grad() const {
  node_->EnsureGrad();
  return node_->grad;
}

void Tensor::ZeroGrad() {
  node_->grad.assign(node_->data.size(), 0.0);
}

double Tensor::Item() const {
  LTT_CHECK(NumEl() == 1, "Item: tensor has shape ", ShapeStr(GetShape()));
  return node_->data[0];
}

double Tensor::At(int64_t i) const { return node_->data[i]; }
double Tensor::At(int64_t i, int64_t j) const {
  return node_->data[i * node_->shape[1] + j];
}
double Tensor::At(int64_t i, int64_t j, int64_t k) const {
  return node_->data[(i * node_->shape[1] + j) * node_->shape[2] + k];
}

// ---------------------------------------------------------------------------
// Backward
// ---------------------------------------------------------------------------

void Backward(const Tensor& loss) {
  LTT_CHECK(loss.Defined() && loss.NumEl() == 1,
            "backward: loss must be a scalar, got shape ",
            loss.Defined() ? ShapeStr(loss.GetShape()) : "<undefined>");
  if (!loss.RequiresGrad()) return;

  // Post-order DFS over parent links; reversed, it runs every consumer
  // before the nodes it feeds.
  std::vector<TensorNode*> order;
  std::unordered_set<TensorNode*> visited;
  struct Frame {
    TensorNode* node;
    size_t next_parent;
  };
  std::vector<Frame> stack;
  stack.push_back({loss.Node(), 0});
  visited.insert(loss.Node());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_parent < f.node->parents.size()) {
      TensorNode* p = f.node->parents[f.next_parent++].Node();
      if (p->requires_grad && !visited.count(p)) {
        visited.insert(p);
        stack.push_back({p, 0});
      }
    } else {
      order.push_back(f.node);
      stack.pop_back();
    }
  }

  loss.Node()->EnsureGrad();
  loss.Node()->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TensorNode* node = *it;
    if (node->backward && !node->grad.empty()) node->backward(*node);
  }
}

// ---------------------------------------------------------------------------
// Elementwise ops
// ---------------------------------------------------------------------------

namespace {

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  LTT_CHECK(a.GetShape() == b.GetShape(), op, ": shape mismatch ",
            ShapeStr(a.GetShape()), " vs ", ShapeStr(b.GetShape()));
}

}  // namespace

Tensor Add(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "add");
  CheckFinite(a, "add");
  CheckFinite(b, "add");
  const auto& av = a.Data();
  const auto& bv = b.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) out[i] = av[i] + bv[i];
  return MakeOp(a.GetShape(), std::move(out), {a, b},
                [a, b](const TensorNode& self) {
                  for (const Tensor& p : {a, b}) {
                    if (!p.RequiresGrad()) continue;
                    p.Node()->EnsureGrad();
                    auto& g = p.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, self.grad[i]);
                  }
                });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "sub");
  CheckFinite(a, "sub");
  CheckFinite(b, "sub");
  const auto& av = a.Data();
  const auto& bv = b.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) out[i] = av[i] - bv[i];
  return MakeOp(a.GetShape(), std::move(out), {a, b},
                [a, b](const TensorNode& self) {
                  if (a.RequiresGrad()) {
                    a.Node()->EnsureGrad();
                    auto& g = a.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, self.grad[i]);
                  }
                  if (b.RequiresGrad()) {
                    b.Node()->EnsureGrad();
                    auto& g = b.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, -self.grad[i]);
                  }
                });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "mul");
  CheckFinite(a, "mul");
  CheckFinite(b, "mul");
  const auto& av = a.Data();
  const auto& bv = b.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) out[i] = av[i] * bv[i];
  return MakeOp(a.GetShape(), std::move(out), {a, b},
                [a, b](const TensorNode& self) {
                  const auto& av = a.Data();
                  const auto& bv = b.Data();
                  if (a.RequiresGrad()) {
                    a.Node()->EnsureGrad();
                    auto& g = a.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, self.grad[i] * bv[i]);
                  }
                  if (b.RequiresGrad()) {
                    b.Node()->EnsureGrad();
                    auto& g = b.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, self.grad[i] * av[i]);
                  }
                });
}

Tensor LogAddExp(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "log_add_exp");
  CheckFinite(a, "log_add_exp");
  CheckFinite(b, "log_add_exp");
  const auto& av = a.Data();
  const auto& bv = b.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) {
    double hi = std::max(av[i], bv[i]);
    double lo = std::min(av[i], bv[i]);
    out[i] = hi + std::log1p(std::exp(lo - hi));
  }
  return MakeOp(a.GetShape(), std::move(out), {a, b},
                [a, b](const TensorNode& self) {
                  const auto& av = a.Data();
                  const auto& bv = b.Data();
                  if (a.RequiresGrad()) {
                    a.Node()->EnsureGrad();
                    auto& g = a.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i,
                                self.grad[i] * std::exp(av[i] - self.data[i]));
                  }
                  if (b.RequiresGrad()) {
                    b.Node()->EnsureGrad();
                    auto& g = b.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i,
                                self.grad[i] * std::exp(bv[i] - self.data[i]));
                  }
                });
}

Tensor Neg(const Tensor& x) { return Scale(x, -1.0); }

Tensor Scale(const Tensor& x, double c) {
  CheckFinite(x, "scale");
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) out[i] = xv[i] * c;
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x, c](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < g.size(); ++i)
                    AccumGrad(g, i, self.grad[i] * c);
                });
}

Tensor AddConst(const Tensor& x, double c) {
  CheckFinite(x, "add_const");
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) out[i] = xv[i] + c;
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < g.size(); ++i)
                    AccumGrad(g, i, self.grad[i]);
                });
}

// ---------------------------------------------------------------------------
// Matrix ops
// ---------------------------------------------------------------------------

namespace {

// C (m,n) += A (m,k) * B (k,n); ikj order keeps B row-contiguous.
void GemmNN(const double* A, const double* B, double* C, int64_t m, int64_t k,
            int64_t n) {
  for (int64_t i = 0; i < m; ++i) {
    const double* a_row = A + i * k;
    double* c_row = C + i * n;
    for (int64_t p = 0; p < k; ++p) {
      double a = a_row[p];
      if (a == 0.0) continue;
      const double* b_row = B + p * n;
      for (int64_t j = 0; j < n; ++j) c_row[j] += a * b_row[j];
    }
  }
}

// C (m,k) += A (m,n) * B^T where B is (k,n): row-by-row dot products.
void GemmNT(const double* A, const double* B, double* C, int64_t m, int64_t n,
            int64_t k) {
  for (int64_t i = 0; i < m; ++i) {
    const double* a_row = A + i * n;
    double* c_row = C + i * k;
    for (int64_t j = 0; j < k; ++j) {
      const double* b_row = B + j * n;
      double acc = 0.0;
      for (int64_t p = 0; p < n; ++p) acc += a_row[p] * b_row[p];
      c_row[j] += acc;
    }
  }
}

// C (k,n) += A^T * B where A is (m,k), B is (m,n).
void GemmTN(const double* A, const double* B, double* C, int64_t m, int64_t k,
            int64_t n) {
  for (int64_t i = 0; i < m; ++i) {
    const double* a_row = A + i * k;
    const double* b_row = B + i * n;
    for (int64_t p = 0; p < k; ++p) {
      double a = a_row[p];
      if (a == 0.0) continue;
      double* c_row = C + p * n;
      for (int64_t j = 0; j < n; ++j) c_row[j] += a * b_row[j];
    }
  }
}

void QuantizeRange(std::vector<double>& v) {
  if (!internal::g_quantize_f32) return;
  for (double& x : v) x = static_cast<double>(static_cast<float>(x));
}

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  LTT_CHECK(a.Rank() == 2 && b.Rank() == 2, "matmul: expects 2-D operands, got ",
            ShapeStr(a.GetShape()), " and ", ShapeStr(b.GetShape()));
  LTT_CHECK(a.Dim(1) == b.Dim(0), "matmul: inner dimensions differ: ",
            ShapeStr(a.GetShape()), " vs ", ShapeStr(b.GetShape()));
  CheckFinite(a, "matmul");
  CheckFinite(b, "matmul");
  int64_t m = a.Dim(0), k = a.Dim(1), n = b.Dim(1);
  std::vector<double> out(m * n, 0.0);
  GemmNN(a.Data().data(), b.Data().data(), out.data(), m, k, n);
  return MakeOp({m, n}, std::move(out), {a, b},
                [a, b, m, k, n](const TensorNode& self) {
                  if (a.RequiresGrad()) {
                    a.Node()->EnsureGrad();
                    // dA = dC * B^T
                    GemmNT(self.grad.data(), b.Data().data(),
                           a.Node()->grad.data(), m, n, k);
                    QuantizeRange(a.Node()->grad);
                  }
                  if (b.RequiresGrad()) {
                    b.Node()->EnsureGrad();
                    // dB = A^T * dC
                    GemmTN(a.Data().data(), self.grad.data(),
                           b.Node()->grad.data(), m, k, n);
                    QuantizeRange(b.Node()->grad);
                  }
                });
}

Tensor Transpose(const Tensor& x) {
  LTT_CHECK(x.Rank() == 2, "transpose: expects a 2-D tensor, got ",
            ShapeStr(x.GetShape()));
  CheckFinite(x, "transpose");
  int64_t m = x.Dim(0), n = x.Dim(1);
  std::vector<double> out(m * n);
  const auto& xv = x.Data();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) out[j * m + i] = xv[i * n + j];
  return MakeOp({n, m}, std::move(out), {x},
                [x, m, n](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t i = 0; i < m; ++i)
                    for (int64_t j = 0; j < n; ++j)
                      AccumGrad(g, i * n + j, self.grad[j * m + i]);
                });
}

Tensor AddRowwise(const Tensor& x, const Tensor& row) {
  LTT_CHECK(x.Rank() == 2 && row.Rank() == 1 && x.Dim(1) == row.Dim(0),
            "add_rowwise: incompatible shapes ", ShapeStr(x.GetShape()),
            " and ", ShapeStr(row.GetShape()));
  CheckFinite(x, "add_rowwise");
  CheckFinite(row, "add_rowwise");
  int64_t m = x.Dim(0), n = x.Dim(1);
  std::vector<double> out(m * n);
  const auto& xv = x.Data();
  const auto& rv = row.Data();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) out[i * n + j] = xv[i * n + j] + rv[j];
  return MakeOp({m, n}, std::move(out), {x, row},
                [x, row, m, n](const TensorNode& self) {
                  if (x.RequiresGrad()) {
                    x.Node()->EnsureGrad();
                    auto& g = x.Node()->grad;
                    for (size_t i = 0; i < g.size(); ++i)
                      AccumGrad(g, i, self.grad[i]);
                  }
                  if (row.RequiresGrad()) {
                    row.Node()->EnsureGrad();
                    auto& g = row.Node()->grad;
                    for (int64_t i = 0; i < m; ++i)
                      for (int64_t j = 0; j < n; ++j)
                        AccumGrad(g, j, self.grad[i * n + j]);
                  }
                });
}

Tensor PairwiseSum(const Tensor& a, const Tensor& b) {
  LTT_CHECK(a.Rank() == 2 && b.Rank() == 2 && a.Dim(1) == b.Dim(1),
            "pairwise_sum: incompatible shapes ", ShapeStr(a.GetShape()),
            " and ", ShapeStr(b.GetShape()));
  CheckFinite(a, "pairwise_sum");
  CheckFinite(b, "pairwise_sum");
  int64_t m = a.Dim(0), n = b.Dim(0), d = a.Dim(1);
  std::vector<double> out(m * n * d);
  const auto& av = a.Data();
  const auto& bv = b.Data();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) {
      double* o = out.data() + (i * n + j) * d;
      const double* ar = av.data() + i * d;
      const double* br = bv.data() + j * d;
      for (int64_t c = 0; c < d; ++c) o[c] = ar[c] + br[c];
    }
  return MakeOp({m * n, d}, std::move(out), {a, b},
                [a, b, m, n, d](const TensorNode& self) {
                  if (a.RequiresGrad()) {
                    a.Node()->EnsureGrad();
                    auto& g = a.Node()->grad;
                    for (int64_t i = 0; i < m; ++i)
                      for (int64_t j = 0; j < n; ++j) {
                        const double* go = self.grad.data() + (i * n + j) * d;
                        for (int64_t c = 0; c < d; ++c)
                          AccumGrad(g, i * d + c, go[c]);
                      }
                  }
                  if (b.RequiresGrad()) {
                    b.Node()->EnsureGrad();
                    auto& g = b.Node()->grad;
                    for (int64_t i = 0; i < m; ++i)
                      for (int64_t j = 0; j < n; ++j) {
                        const double* go = self.grad.data() + (i * n + j) * d;
                        for (int64_t c = 0; c < d; ++c)
                          AccumGrad(g, j * d + c, go[c]);
                      }
                  }
                });
}

Tensor ExpandCols(const Tensor& x, int64_t n) {
  LTT_CHECK(x.Rank() == 2 && x.Dim(1) == 1, "expand_cols: expects (m,1), got ",
            ShapeStr(x.GetShape()));
  LTT_CHECK(n > 0, "expand_cols: n must be positive, got ", n);
  CheckFinite(x, "expand_cols");
  int64_t m = x.Dim(0);
  std::vector<double> out(m * n);
  const auto& xv = x.Data();
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) out[i * n + j] = xv[i];
  return MakeOp({m, n}, std::move(out), {x},
                [x, m, n](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t i = 0; i < m; ++i) {
                    double acc = 0.0;
                    for (int64_t j = 0; j < n; ++j) acc += self.grad[i * n + j];
                    AccumGrad(g, i, acc);
                  }
                });
}

// ---------------------------------------------------------------------------
// Nonlinearities
// ---------------------------------------------------------------------------

Tensor Tanh(const Tensor& x) {
  CheckFinite(x, "tanh");
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) out[i] = std::tanh(xv[i]);
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < g.size(); ++i) {
                    double y = self.data[i];
                    AccumGrad(g, i, self.grad[i] * (1.0 - y * y));
                  }
                });
}

Tensor Sigmoid(const Tensor& x) {
  CheckFinite(x, "sigmoid");
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) {
    double v = xv[i];
    out[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                      : std::exp(v) / (1.0 + std::exp(v));
  }
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < g.size(); ++i) {
                    double y = self.data[i];
                    AccumGrad(g, i, self.grad[i] * y * (1.0 - y));
                  }
                });
}

Tensor Relu(const Tensor& x) {
  CheckFinite(x, "relu");
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) out[i] = xv[i] > 0.0 ? xv[i] : 0.0;
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  const auto& xv = x.Data();
                  for (size_t i = 0; i < g.size(); ++i)
                    if (xv[i] > 0.0) AccumGrad(g, i, self.grad[i]);
                });
}

// ---------------------------------------------------------------------------
// Row-normalizing ops
// ---------------------------------------------------------------------------

namespace {

// Treats a 1-D tensor as a single row, a 2-D tensor as independent rows.
void RowView(const Tensor& x, const char* op, int64_t* rows, int64_t* cols) {
  if (x.Rank() == 1) {
    *rows = 1;
    *cols = x.Dim(0);
  } else if (x.Rank() == 2) {
    *rows = x.Dim(0);
    *cols = x.Dim(1);
  } else {
    throw Error(Str(op, ": expects a 1-D or 2-D tensor, got ",
                    ShapeStr(x.GetShape())));
  }
}

}  // namespace

Tensor Softmax(const Tensor& x) {
  CheckFinite(x, "softmax");
  int64_t rows, cols;
  RowView(x, "softmax", &rows, &cols);
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (int64_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * cols;
    double* o = out.data() + r * cols;
    double mx = in[0];
    for (int64_t j = 1; j < cols; ++j) mx = std::max(mx, in[j]);
    double z = 0.0;
    for (int64_t j = 0; j < cols; ++j) {
      o[j] = std::exp(in[j] - mx);
      z += o[j];
    }
    for (int64_t j = 0; j < cols; ++j) o[j] /= z;
  }
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x, rows, cols](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t r = 0; r < rows; ++r) {
                    const double* y = self.data.data() + r * cols;
                    const double* dy = self.grad.data() + r * cols;
                    double dot = 0.0;
                    for (int64_t j = 0; j < cols; ++j) dot += dy[j] * y[j];
                    for (int64_t j = 0; j < cols; ++j)
                      AccumGrad(g, r * cols + j, (dy[j] - dot) * y[j]);
                  }
                });
}

Tensor LogSoftmax(const Tensor& x) {
  CheckFinite(x, "log_softmax");
  int64_t rows, cols;
  RowView(x, "log_softmax", &rows, &cols);
  const auto& xv = x.Data();
  std::vector<double> out(xv.size());
  for (int64_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * cols;
    double* o = out.data() + r * cols;
    double mx = in[0];
    for (int64_t j = 1; j < cols; ++j) mx = std::max(mx, in[j]);
    double z = 0.0;
    for (int64_t j = 0; j < cols; ++j) z += std::exp(in[j] - mx);
    double lse = mx + std::log(z);
    for (int64_t j = 0; j < cols; ++j) o[j] = in[j] - lse;
  }
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x, rows, cols](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t r = 0; r < rows; ++r) {
                    const double* y = self.data.data() + r * cols;
                    const double* dy = self.grad.data() + r * cols;
                    double sum = 0.0;
                    for (int64_t j = 0; j < cols; ++j) sum += dy[j];
                    for (int64_t j = 0; j < cols; ++j)
                      AccumGrad(g, r * cols + j,
                                dy[j] - std::exp(y[j]) * sum);
                  }
                });
}

Tensor LayerNorm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                 double eps) {
  int64_t rows, cols;
  RowView(x, "layer_norm", &rows, &cols);
  LTT_CHECK(gain.Rank() == 1 && gain.Dim(0) == cols && bias.Rank() == 1 &&
                bias.Dim(0) == cols,
            "layer_norm: gain/bias must be [", cols, "], got ",
            ShapeStr(gain.GetShape()), " and ", ShapeStr(bias.GetShape()));
  CheckFinite(x, "layer_norm");
  CheckFinite(gain, "layer_norm");
  CheckFinite(bias, "layer_norm");
  const auto& xv = x.Data();
  const auto& gv = gain.Data();
  const auto& bv = bias.Data();
  std::vector<double> out(xv.size());
  // Cache per-row mean and inverse stddev for the backward pass.
  auto stats = std::make_shared<std::vector<double>>(2 * rows);
  for (int64_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * cols;
    double* o = out.data() + r * cols;
    double mean = 0.0;
    for (int64_t j = 0; j < cols; ++j) mean += in[j];
    mean /= cols;
    double var = 0.0;
    for (int64_t j = 0; j < cols; ++j) var += (in[j] - mean) * (in[j] - mean);
    var /= cols;
    double inv = 1.0 / std::sqrt(var + eps);
    (*stats)[2 * r] = mean;
    (*stats)[2 * r + 1] = inv;
    for (int64_t j = 0; j < cols; ++j)
      o[j] = (in[j] - mean) * inv * gv[j] + bv[j];
  }
  return MakeOp(
      x.GetShape(), std::move(out), {x, gain, bias},
      [x, gain, bias, rows, cols, stats](const TensorNode& self) {
        const auto& xv = x.Data();
        const auto& gv = gain.Data();
        for (int64_t r = 0; r < rows; ++r) {
          double mean = (*stats)[2 * r];
          double inv = (*stats)[2 * r + 1];
          const double* in = xv.data() + r * cols;
          const double* dy = self.grad.data() + r * cols;
          // dxhat = dy . gain; reduce terms once per row.
          double sum_dxhat = 0.0, sum_dxhat_xhat = 0.0;
          for (int64_t j = 0; j < cols; ++j) {
            double xhat = (in[j] - mean) * inv;
            double dxhat = dy[j] * gv[j];
            sum_dxhat += dxhat;
            sum_dxhat_xhat += dxhat * xhat;
          }
          if (x.RequiresGrad()) {
            x.Node()->EnsureGrad();
            auto& g = x.Node()->grad;
            for (int64_t j = 0; j < cols; ++j) {
              double xhat = (in[j] - mean) * inv;
              double dxhat = dy[j] * gv[j];
              AccumGrad(g, r * cols + j,
                        inv * (dxhat - sum_dxhat / cols -
                               xhat * sum_dxhat_xhat / cols));
            }
          }
          if (gain.RequiresGrad()) {
            gain.Node()->EnsureGrad();
            auto& g = gain.Node()->grad;
            for (int64_t j = 0; j < cols; ++j) {
              double xhat = (in[j] - mean) * inv;
              AccumGrad(g, j, dy[j] * xhat);
            }
          }
          if (bias.RequiresGrad()) {
            bias.Node()->EnsureGrad();
            auto& g = bias.Node()->grad;
            for (int64_t j = 0; j < cols; ++j) AccumGrad(g, j, dy[j]);
          }
        }
      });
}

// ---------------------------------------------------------------------------
// Indexing ops
// ---------------------------------------------------------------------------

Tensor EmbeddingLookup(const Tensor& table, const std::vector<int>& ids) {
  LTT_CHECK(table.Rank() == 2, "embedding_lookup: table must be 2-D, got ",
            ShapeStr(table.GetShape()));
  LTT_CHECK(!ids.empty(), "embedding_lookup: empty id list");
  CheckFinite(table, "embedding_lookup");
  int64_t v = table.Dim(0), d = table.Dim(1);
  for (int id : ids)
    LTT_CHECK(id >= 0 && id < v, "embedding_lookup: id ", id,
              " out of range [0,", v, ")");
  int64_t n = static_cast<int64_t>(ids.size());
  std::vector<double> out(n * d);
  const auto& tv = table.Data();
  for (int64_t i = 0; i < n; ++i)
    std::copy(tv.begin() + ids[i] * d, tv.begin() + (ids[i] + 1) * d,
              out.begin() + i * d);
  return MakeOp({n, d}, std::move(out), {table},
                [table, ids, d](const TensorNode& self) {
                  table.Node()->EnsureGrad();
                  auto& g = table.Node()->grad;
                  for (size_t i = 0; i < ids.size(); ++i)
                    for (int64_t c = 0; c < d; ++c)
                      AccumGrad(g, ids[i] * d + c,
                                self.grad[i * d + c]);
                });
}

Tensor GatherCols(const Tensor& x, const std::vector<int>& ids) {
  LTT_CHECK(x.Rank() == 2, "gather_cols: expects a 2-D tensor, got ",
            ShapeStr(x.GetShape()));
  LTT_CHECK(static_cast<int64_t>(ids.size()) == x.Dim(0),
            "gather_cols: need one column id per row: ", ids.size(), " vs ",
            x.Dim(0));
  CheckFinite(x, "gather_cols");
  int64_t n = x.Dim(0), c = x.Dim(1);
  for (int id : ids)
    LTT_CHECK(id >= 0 && id < c, "gather_cols: column ", id,
              " out of range [0,", c, ")");
  std::vector<double> out(n);
  const auto& xv = x.Data();
  for (int64_t i = 0; i < n; ++i) out[i] = xv[i * c + ids[i]];
  return MakeOp({n}, std::move(out), {x},
                [x, ids, c](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < ids.size(); ++i)
                    AccumGrad(g, static_cast<int64_t>(i) * c + ids[i],
                              self.grad[i]);
                });
}

// ---------------------------------------------------------------------------
// Dropout
// ---------------------------------------------------------------------------

Tensor Dropout(const Tensor& x, double p, Rng* rng, bool train) {
  LTT_CHECK(p >= 0.0 && p < 1.0, "dropout: p must be in [0,1), got ", p);
  if (!train || p == 0.0) return x;
  CheckFinite(x, "dropout");
  const auto& xv = x.Data();
  double keep = 1.0 - p;
  // Inverted scaling: surviving activations are divided by the keep
  // probability so the inference path needs no rescaling.
  auto mask = std::make_shared<std::vector<double>>(xv.size());
  std::vector<double> out(xv.size());
  for (size_t i = 0; i < xv.size(); ++i) {
    double m = rng->Uniform() < keep ? 1.0 / keep : 0.0;
    (*mask)[i] = m;
    out[i] = xv[i] * m;
  }
  return MakeOp(x.GetShape(), std::move(out), {x},
                [x, mask](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (size_t i = 0; i < g.size(); ++i)
                    AccumGrad(g, i, self.grad[i] * (*mask)[i]);
                });
}

// ---------------------------------------------------------------------------
// Shape ops
// ---------------------------------------------------------------------------

Tensor Concat(const std::vector<Tensor>& xs, int axis) {
  LTT_CHECK(!xs.empty(), "concat: empty input list");
  int64_t rank = xs[0].Rank();
  LTT_CHECK(axis >= 0 && axis < rank, "concat: axis ", axis,
            " out of range for rank ", rank);
  for (const Tensor& t : xs) {
    LTT_CHECK(t.Rank() == rank, "concat: rank mismatch ",
              ShapeStr(t.GetShape()), " vs ", ShapeStr(xs[0].GetShape()));
    for (int i = 0; i < rank; ++i)
      if (i != axis)
        LTT_CHECK(t.Dim(i) == xs[0].Dim(i), "concat: shape mismatch ",
                  ShapeStr(t.GetShape()), " vs ", ShapeStr(xs[0].GetShape()));
    CheckFinite(t, "concat");
  }
  Shape out_shape = xs[0].GetShape();
  int64_t total_axis = 0;
  for (const Tensor& t : xs) total_axis += t.Dim(axis);
  out_shape[axis] = total_axis;

  // Row-major: inner = product of dims after axis, outer = before.
  int64_t inner = 1, outer = 1;
  for (int i = axis + 1; i < rank; ++i) inner *= out_shape[i];
  for (int i = 0; i < axis; ++i) outer *= out_shape[i];

  std::vector<double> out(NumElements(out_shape));
  int64_t offset = 0;
  for (const Tensor& t : xs) {
    int64_t cnt = t.Dim(axis) * inner;
    const auto& tv = t.Data();
    for (int64_t o = 0; o < outer; ++o)
      std::copy(tv.begin() + o * cnt, tv.begin() + (o + 1) * cnt,
                out.begin() + o * total_axis * inner + offset);
    offset += cnt;
  }
  return MakeOp(out_shape, std::move(out), xs,
                [xs, inner, outer, total_axis](const TensorNode& self) {
                  int64_t offset = 0;
                  for (const Tensor& t : xs) {
                    int64_t axis_cnt = t.NumEl() / outer;
                    if (t.RequiresGrad()) {
                      t.Node()->EnsureGrad();
                      auto& g = t.Node()->grad;
                      for (int64_t o = 0; o < outer; ++o)
                        for (int64_t i = 0; i < axis_cnt; ++i)
                          AccumGrad(g, o * axis_cnt + i,
                                    self.grad[o * total_axis * inner + offset +
                                              i]);
                    }
                    offset += axis_cnt;
                  }
                });
}

Tensor Slice(const Tensor& x, int axis, int64_t start, int64_t len) {
  int64_t rank = x.Rank();
  LTT_CHECK(axis >= 0 && axis < rank, "slice: axis ", axis,
            " out of range for rank ", rank);
  LTT_CHECK(start >= 0 && len > 0 && start + len <= x.Dim(axis),
            "slice: range [", start, ",", start + len, ") invalid for dim ",
            x.Dim(axis));
  CheckFinite(x, "slice");
  Shape out_shape = x.GetShape();
  out_shape[axis] = len;
  int64_t inner = 1, outer = 1;
  for (int i = axis + 1; i < rank; ++i) inner *= x.Dim(i);
  for (int i = 0; i < axis; ++i) outer *= x.Dim(i);
  int64_t src_axis = x.Dim(axis);

  std::vector<double> out(NumElements(out_shape));
  const auto& xv = x.Data();
  for (int64_t o = 0; o < outer; ++o)
    std::copy(xv.begin() + (o * src_axis + start) * inner,
              xv.begin() + (o * src_axis + start + len) * inner,
              out.begin() + o * len * inner);
  return MakeOp(out_shape, std::move(out), {x},
                [x, inner, outer, src_axis, start, len](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t o = 0; o < outer; ++o)
                    for (int64_t i = 0; i < len * inner; ++i)
                      AccumGrad(g, (o * src_axis + start) * inner + i,
                                self.grad[o * len * inner + i]);
                });
}

Tensor CausalMaskFill(const Tensor& x, double fill) {
  LTT_CHECK(x.Rank() == 2, "causal_mask_fill: expects a 2-D tensor, got ",
            ShapeStr(x.GetShape()));
  CheckFinite(x, "causal_mask_fill");
  int64_t m = x.Dim(0), n = x.Dim(1);
  std::vector<double> out(x.Data());
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = i + 1; j < n; ++j) out[i * n + j] = fill;
  return MakeOp({m, n}, std::move(out), {x},
                [x, m, n](const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t i = 0; i < m; ++i)
                    for (int64_t j = 0; j < n && j <= i; ++j)
                      AccumGrad(g, i * n + j, self.grad[i * n + j]);
                });
}

Tensor FrameGather(const Tensor& x, int64_t kernel, int64_t stride,
                   int64_t pad_left, int64_t pad_right) {
  LTT_CHECK(x.Rank() == 2, "frame_gather: expects a 2-D tensor, got ",
            ShapeStr(x.GetShape()));
  LTT_CHECK(kernel > 0 && stride > 0 && pad_left >= 0 && pad_right >= 0,
            "frame_gather: bad kernel/stride/padding");
  CheckFinite(x, "frame_gather");
  int64_t t = x.Dim(0), c = x.Dim(1);
  int64_t padded = t + pad_left + pad_right;
  LTT_CHECK(padded >= kernel, "frame_gather: input of ", t,
            " frames too short for kernel ", kernel);
  int64_t t_out = (padded - kernel) / stride + 1;
  std::vector<double> out(t_out * kernel * c, 0.0);
  const auto& xv = x.Data();
  for (int64_t i = 0; i < t_out; ++i)
    for (int64_t a = 0; a < kernel; ++a) {
      int64_t src = i * stride + a - pad_left;
      if (src < 0 || src >= t) continue;
      std::copy(xv.begin() + src * c, xv.begin() + (src + 1) * c,
                out.begin() + (i * kernel + a) * c);
    }
  return MakeOp({t_out, kernel * c}, std::move(out), {x},
                [x, t, c, t_out, kernel, stride, pad_left](
                    const TensorNode& self) {
                  x.Node()->EnsureGrad();
                  auto& g = x.Node()->grad;
                  for (int64_t i = 0; i < t_out; ++i)
                    for (int64_t a = 0; a < kernel; ++a) {
                      int64_t src = i * stride + a - pad_left;
                      if (src < 0 || src >= t) continue;
                      for (int64_t ch = 0; ch < c; ++ch)
                        AccumGrad(g, src * c + ch,
                                  self.grad[(i * kernel + a) * c + ch]);
                    }
                });
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

Tensor SumAll(const Tensor& x) {
  CheckFinite(x, "sum");
  double acc = 0.0;
  for (double v : x.Data()) acc += v;
  return MakeOp({1}, {acc}, {x}, [x](const TensorNode& self) {
    x.Node()->EnsureGrad();
    auto& g = x.Node()->grad;
    for (size_t i = 0; i < g.size(); ++i) AccumGrad(g, i, self.grad[0]);
  });
}

Tensor MeanAll(const Tensor& x) {
  CheckFinite(x, "mean");
  double acc = 0.0;
  for (double v : x.Data()) acc += v;
  double inv = 1.0 / static_cast<double>(x.NumEl());
  return MakeOp({1}, {acc * inv}, {x}, [x, inv](const TensorNode& self) {
    x.Node()->EnsureGrad();
    auto& g = x.Node()->grad;
    for (size_t i = 0; i < g.size(); ++i) AccumGrad(g, i, self.grad[0] * inv);
  });
}

}  // namespace ltt
