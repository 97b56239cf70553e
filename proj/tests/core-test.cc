// ltt/tests/core-test.cc

// Copyright 2026  LTT Authors  (Apache 2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "ltt/core/checkpoint.h"
#include "ltt/core/grad-check.h"
#include "ltt/core/optim.h"
#include "ltt/core/param-store.h"
#include "ltt/core/tensor.h"

using namespace ltt;

namespace {

// Forces 64-bit arithmetic for the whole binary; individual cases flip to
// kF32 and restore.
struct ModeGuard {
  NumericMode prev;
  explicit ModeGuard(NumericMode m) : prev(GetNumericMode()) {
    SetNumericMode(m);
  }
  ~ModeGuard() { SetNumericMode(prev); }
};

Tensor RandomTensor(Shape shape, Rng* rng, double scale = 1.0) {
  std::vector<double> v(NumElements(shape));
  for (double& x : v) x = (rng->Uniform() * 2.0 - 1.0) * scale;
  return Tensor::FromData(std::move(shape), std::move(v));
}

// Central-difference check of d(f)/d(x) against x.Grad() for a scalar-valued
// builder f. Rebuilds the graph per evaluation.
double MaxRelErrVsFiniteDiff(const std::function<Tensor(const Tensor&)>& f,
                             Tensor x, double h = 1e-6) {
  x.SetRequiresGrad(true);
  x.ZeroGrad();
  Backward(f(x));
  std::vector<double> analytic = x.Grad();
  double worst = 0.0;
  auto& data = x.MutableData();
  for (size_t i = 0; i < data.size(); ++i) {
    double orig = data[i];
    data[i] = orig + h;
    double plus;
    {
      NoGradGuard g;
      plus = f(x).Item();
    }
    data[i] = orig - h;
    double minus;
    {
      NoGradGuard g;
      minus = f(x).Item();
    }
    data[i] = orig;
    double numeric = (plus - minus) / (2.0 * h);
    double denom = std::max({std::fabs(analytic[i]), std::fabs(numeric), 1e-3});
    worst = std::max(worst, std::fabs(analytic[i] - numeric) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("forward op spot values") {
  ModeGuard mode(NumericMode::kF64);
  CHECK(Tanh(Tensor::Scalar(0.0)).Item() == 0.0);
  CHECK(Sigmoid(Tensor::Scalar(0.0)).Item() == doctest::Approx(0.5));
  Tensor sm = Softmax(Tensor::FromData({3}, {1.0, 1.0, 1.0}));
  for (int i = 0; i < 3; ++i)
    CHECK(sm.At(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("softmax rows normalize and log_softmax agrees") {
  ModeGuard mode(NumericMode::kF64);
  Rng rng(7);
  Tensor x = RandomTensor({5, 9}, &rng, 3.0);
  Tensor sm = Softmax(x);
  Tensor lsm = LogSoftmax(x);
  for (int64_t r = 0; r < 5; ++r) {
    double sum = 0.0;
    for (int64_t c = 0; c < 9; ++c) sum += sm.At(r, c);
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
    for (int64_t c = 0; c < 9; ++c)
      CHECK(std::fabs(std::log(sm.At(r, c)) - lsm.At(r, c)) <= 1e-12);
  }
}

TEST_CASE("log_add_exp is overflow-safe") {
  ModeGuard mode(NumericMode::kF64);
  Tensor a = Tensor::FromData({3}, {1e4, -1e4, 9999.0});
  Tensor b = Tensor::FromData({3}, {1e4, 5.0, 1e4});
  Tensor y = LogAddExp(a, b);
  CHECK(y.At(0) == doctest::Approx(1e4 + std::log(2.0)));
  CHECK(y.At(1) == doctest::Approx(5.0));
  CHECK(y.At(2) == doctest::Approx(1e4 + std::log1p(std::exp(-1.0))));
  for (int i = 0; i < 3; ++i) CHECK(std::isfinite(y.At(i)));
}

TEST_CASE("backward: d(sum w*w)/dw = 2w") {
  ModeGuard mode(NumericMode::kF64);
  Tensor w = Tensor::FromData({3}, {1.0, 2.0, 3.0});
  w.SetRequiresGrad(true);
  Tensor loss = SumAll(Mul(w, w));
  Backward(loss);
  CHECK(w.Grad()[0] == doctest::Approx(2.0));
  CHECK(w.Grad()[1] == doctest::Approx(4.0));
  CHECK(w.Grad()[2] == doctest::Approx(6.0));
}

TEST_CASE("backward: matmul chain matches finite differences") {
  ModeGuard mode(NumericMode::kF64);
  Rng rng(11);
  Tensor b = RandomTensor({3, 3}, &rng);
  Tensor c = RandomTensor({3, 3}, &rng);
  Tensor a = RandomTensor({3, 3}, &rng);
  double err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& x) { return SumAll(Tanh(MatMul(MatMul(x, b), c))); },
      a);
  CHECK(err < 1e-6);
}

TEST_CASE("backward: disconnected parameter keeps zero grad") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor used = store.Create("used", {2});
  Tensor unused = store.Create("unused", {2});
  used.MutableData() = {1.0, -2.0};
  unused.MutableData() = {3.0, 4.0};
  store.ZeroGrad();
  Backward(SumAll(Mul(used, used)));
  CHECK(unused.Grad()[0] == 0.0);
  CHECK(unused.Grad()[1] == 0.0);
  CHECK(used.Grad()[0] == doctest::Approx(2.0));
}

TEST_CASE("backward rejects non-scalar loss") {
  ModeGuard mode(NumericMode::kF64);
  Tensor w = Tensor::Zeros({2}, true);
  CHECK_THROWS_AS(Backward(Add(w, w)), Error);
}

TEST_CASE("ops reject shape mismatches with both shapes named") {
  ModeGuard mode(NumericMode::kF64);
  Tensor a = Tensor::Zeros({2, 3});
  Tensor b = Tensor::Zeros({3, 2});
  try {
    Add(a, b);
    FAIL("expected a shape error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("[2,3]") != std::string::npos);
    CHECK(msg.find("[3,2]") != std::string::npos);
  }
}

TEST_CASE("ops reject non-finite inputs") {
  ModeGuard mode(NumericMode::kF64);
  Tensor a = Tensor::FromData({2}, {1.0, std::nan("")});
  CHECK_THROWS_AS(Tanh(a), NumericError);
}

TEST_CASE("per-op gradients on random small shapes") {
  ModeGuard mode(NumericMode::kF64);
  Rng rng(1234);
  int checked = 0;
  for (int round = 0; round < 50; ++round) {
    int64_t m = 1 + rng.UniformInt(4);
    int64_t n = 1 + rng.UniformInt(4);
    int64_t k = 1 + rng.UniformInt(4);
    Tensor x = RandomTensor({m, n}, &rng);
    Tensor y = RandomTensor({m, n}, &rng);
    Tensor z = RandomTensor({n, k}, &rng);
    Tensor row = RandomTensor({n}, &rng);

    auto check = [&](const std::function<Tensor(const Tensor&)>& f, Tensor in) {
      double err = MaxRelErrVsFiniteDiff(f, in);
      CHECK_MESSAGE(err < 1e-5, "round ", round, " err ", err);
      ++checked;
    };

    switch (round % 10) {
      case 0:
        check([&](const Tensor& t) { return SumAll(Mul(Add(t, y), y)); }, x);
        break;
      case 1:
        check([&](const Tensor& t) { return SumAll(MatMul(t, z)); }, x);
        break;
      case 2:
        check([&](const Tensor& t) { return SumAll(Tanh(t)); }, x);
        break;
      case 3:
        check([&](const Tensor& t) { return SumAll(Mul(Sigmoid(t), Relu(t))); },
              x);
        break;
      case 4:
        check([&](const Tensor& t) { return SumAll(Softmax(t)); }, x);
        break;
      case 5:
        check([&](const Tensor& t) { return SumAll(Mul(LogSoftmax(t), y)); },
              x);
        break;
      case 6: {
        Tensor gain = RandomTensor({n}, &rng);
        Tensor bias = RandomTensor({n}, &rng);
        check(
            [&](const Tensor& t) {
              return SumAll(Mul(LayerNorm(t, gain, bias), y));
            },
            x);
        break;
      }
      case 7:
        check([&](const Tensor& t) { return SumAll(LogAddExp(t, y)); }, x);
        break;
      case 8:
        check(
            [&](const Tensor& t) {
              return SumAll(Slice(Concat({t, y}, 0), 0, m, m));
            },
            x);
        break;
      case 9:
        check(
            [&](const Tensor& t) {
              return SumAll(Mul(Transpose(t), Transpose(y)));
            },
            x);
        break;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("gradients for structural ops") {
  ModeGuard mode(NumericMode::kF64);
  Rng rng(77);
  Tensor x = RandomTensor({6, 3}, &rng);

  double err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) {
        return SumAll(Mul(FrameGather(t, 3, 2, 1, 1),
                          Tensor::Full({3, 9}, 0.7)));
      },
      x);
  CHECK(err < 1e-6);

  Tensor table = RandomTensor({5, 4}, &rng);
  std::vector<int> ids = {0, 3, 3, 1};
  err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) { return SumAll(EmbeddingLookup(t, ids)); }, table);
  CHECK(err < 1e-6);

  Tensor sq = RandomTensor({4, 4}, &rng);
  err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) {
        return SumAll(Softmax(CausalMaskFill(t, -1e30)));
      },
      sq);
  CHECK(err < 1e-6);

  Tensor logits = RandomTensor({4, 5}, &rng);
  std::vector<int> cols = {1, 0, 4, 2};
  err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) {
        return MeanAll(Neg(GatherCols(LogSoftmax(t), cols)));
      },
      logits);
  CHECK(err < 1e-6);

  Tensor a = RandomTensor({3, 4}, &rng);
  Tensor b = RandomTensor({2, 4}, &rng);
  err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) { return SumAll(Tanh(PairwiseSum(t, b))); }, a);
  CHECK(err < 1e-6);

  Tensor col = RandomTensor({5, 1}, &rng);
  err = MaxRelErrVsFiniteDiff(
      [&](const Tensor& t) {
        return SumAll(Mul(ExpandCols(t, 3), Tensor::Full({5, 3}, 0.3)));
      },
      col);
  CHECK(err < 1e-6);
}

TEST_CASE("dropout: inverted scaling and determinism per stream") {
  ModeGuard mode(NumericMode::kF64);
  Tensor x = Tensor::Full({1000}, 1.0);
  Rng r1(99), r2(99);
  Tensor y1 = Dropout(x, 0.25, &r1, true);
  Tensor y2 = Dropout(x, 0.25, &r2, true);
  CHECK(y1.Data() == y2.Data());
  double mean = 0.0;
  int64_t zeros = 0;
  for (double v : y1.Data()) {
    mean += v;
    if (v == 0.0) ++zeros;
    else CHECK(v == doctest::Approx(1.0 / 0.75));
  }
  mean /= 1000.0;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.08));
  CHECK(zeros > 180);
  CHECK(zeros < 320);
  // Eval mode and p = 0 are pass-throughs.
  CHECK(Dropout(x, 0.25, &r1, false).Node() == x.Node());
  CHECK(Dropout(x, 0.0, &r1, true).Node() == x.Node());
}

TEST_CASE("rng: determinism and state round-trip") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  Rng c(42);
  c.SetState(a.key(), a.counter());
  CHECK(c.NextU64() == b.NextU64());
  // Distinct derived streams.
  Rng d1 = a.Derive(1), d2 = a.Derive(2);
  CHECK(d1.NextU64() != d2.NextU64());
  // Uniform in range, normal roughly standard.
  Rng u(7);
  double acc = 0.0, acc2 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double v = u.Uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    double n = u.Normal();
    acc += n;
    acc2 += n * n;
  }
  CHECK(std::fabs(acc / 10000.0) < 0.05);
  CHECK(acc2 / 10000.0 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("adam: hand-computed first step") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor w = store.Create("w", {1});
  store.ZeroGrad();
  // Plant g = 1 by running a forward whose gradient is exactly 1.
  Backward(SumAll(w));
  AdamOptimizer opt({0.9, 0.999, 1e-8});
  opt.Step(&store, 0.1);
  // Bias-corrected mhat = vhat = 1 at t = 1.
  CHECK(w.Data()[0] == doctest::Approx(-0.1).epsilon(1e-6));
}

TEST_CASE("adam: zero grad leaves parameters unchanged") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor w = store.Create("w", {3});
  w.MutableData() = {1.0, 2.0, 3.0};
  store.ZeroGrad();
  AdamOptimizer opt;
  opt.Step(&store, 0.1);
  CHECK(w.Data() == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("adam: non-finite gradient skips the parameter") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor w = store.Create("w", {1});
  w.MutableData() = {1.0};
  store.ZeroGrad();
  w.Node()->EnsureGrad();
  w.Node()->grad[0] = std::nan("");
  AdamOptimizer opt;
  opt.Step(&store, 0.1);
  CHECK(w.Data()[0] == 1.0);
  CHECK(opt.skipped_params() == 1);
}

TEST_CASE("adam: identical seeds give bitwise-equal trajectories") {
  auto run = [](uint64_t seed) {
    ModeGuard mode(NumericMode::kF32);
    ParameterStore store;
    Tensor w = store.Create("w", {4});
    Rng rng(seed);
    InitUniform(w, 0.5, &rng);
    AdamOptimizer opt;
    for (int step = 0; step < 2; ++step) {
      store.ZeroGrad();
      Backward(SumAll(Mul(w, w)));
      opt.Step(&store, 0.05);
    }
    return w.Data();
  };
  CHECK(run(3) == run(3));
}

TEST_CASE("noam schedule") {
  // Branches meet at step == warmup.
  double at_warmup = NoamLr(100, 64, 100, 2.0);
  CHECK(at_warmup == doctest::Approx(2.0 * 0.125 * 0.1));
  CHECK(at_warmup == doctest::Approx(0.025));
  CHECK_THROWS_AS(NoamLr(0, 64, 100, 2.0), Error);
  // Strictly increasing before warmup, strictly decreasing after.
  for (int64_t s = 1; s < 100; ++s)
    CHECK(NoamLr(s, 64, 100, 2.0) < NoamLr(s + 1, 64, 100, 2.0));
  for (int64_t s = 100; s < 200; ++s)
    CHECK(NoamLr(s, 64, 100, 2.0) > NoamLr(s + 1, 64, 100, 2.0));
}

TEST_CASE("check_gradients: quadratic passes tightly") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor w = store.Create("w", {5});
  Rng rng(5);
  InitUniform(w, 2.0, &rng);
  GradCheckOptions opts;
  opts.tol = 1e-8;
  opts.denom_floor = 1.0;
  auto report = CheckGradients(
      [&]() { return Scale(SumAll(Mul(w, w)), 0.5); }, &store, opts);
  CHECK(report.pass);
  CHECK(report.max_rel_err < 1e-8);
}

TEST_CASE("check_gradients: negative control fails") {
  ModeGuard mode(NumericMode::kF64);
  ParameterStore store;
  Tensor w = store.Create("w", {3});
  w.MutableData() = {0.5, -1.0, 2.0};
  // Forward value is sum(w^2) but the recorded backward deliberately uses
  // 3w instead of 2w.
  auto broken = [&]() {
    std::vector<double> out = {0.0};
    for (double v : w.Data()) out[0] += v * v;
    Tensor t = Tensor::FromData({1}, std::move(out));
    t.Node()->requires_grad = true;
    t.Node()->parents = {w};
    Tensor w_copy = w;
    t.Node()->backward = [w_copy](const TensorNode& self) {
      w_copy.Node()->EnsureGrad();
      for (size_t i = 0; i < w_copy.Node()->grad.size(); ++i)
        w_copy.Node()->grad[i] += self.grad[0] * 3.0 * w_copy.Data()[i];
    };
    return t;
  };
  auto report = CheckGradients(broken, &store, {});
  CHECK(!report.pass);
}

TEST_CASE("checkpoint: LTCK round-trip and format errors") {
  ModeGuard mode(NumericMode::kF32);
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ltt-core-test";
  fs::create_directories(dir);
  std::string path = (dir / "params.ltck").string();

  ParameterStore store;
  Tensor a = store.Create("enc.w", {2, 3});
  Tensor b = store.Create("enc.b", {3});
  Rng rng(13);
  InitUniform(a, 1.0, &rng);
  InitUniform(b, 1.0, &rng);
  SaveParams(path, store);

  ParameterStore loaded;
  loaded.Create("enc.w", {2, 3});
  loaded.Create("enc.b", {3});
  LoadParamsInto(path, &loaded);
  // In kF32 mode params already sit on the binary32 grid: exact round-trip.
  CHECK(loaded.Get("enc.w").Data() == a.Data());
  CHECK(loaded.Get("enc.b").Data() == b.Data());

  ParameterStore wrong;
  wrong.Create("enc.w", {3, 2});
  wrong.Create("enc.b", {3});
  CHECK_THROWS_AS(LoadParamsInto(path, &wrong), DataError);

  std::string bogus = (dir / "bogus.ltck").string();
  {
    std::ofstream os(bogus, std::ios::binary);
    os << "NOPE";
  }
  CHECK_THROWS_AS(LoadCheckpoint(bogus), DataError);
}

TEST_CASE("f32 mode rounds op outputs to binary32") {
  ModeGuard mode(NumericMode::kF32);
  Tensor a = Tensor::Scalar(1.0 / 3.0);
  CHECK(a.Item() == static_cast<double>(static_cast<float>(1.0 / 3.0)));
  Tensor c = Mul(Tensor::Scalar(1.0 / 3.0), Tensor::Scalar(1.0 / 7.0));
  float want = static_cast<float>(static_cast<double>(static_cast<float>(1.0 / 3.0)) *
                                  static_cast<double>(static_cast<float>(1.0 / 7.0)));
  CHECK(c.Item() == static_cast<double>(want));
}
