/**
 * @file elman.hpp
 *
 * Elman classifier and its EH-augmented variant.
 *
 *   h_t = tanh(W_h x_t + U_h h_{t-1} + b_h)
 *   z_t = h_t                                   (vanilla)
 *   z_t = [h_t ; E(avgpool(h_t))]               (ehrnn)
 *   y_t = softmax(W_y z_t + b_y)
 *
 * The EH statistics enter the output layer as constants: no gradient flows
 * through the sketches.
 */

#ifndef EHSTREAM_RNN_ELMAN_HPP_
#define EHSTREAM_RNN_ELMAN_HPP_

#include "ehstream/rnn/eh_matrix.hpp"
#include "ehstream/rnn/pooling.hpp"
#include "ehstream/window/summarizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ehstream {

enum class Arch
{
  Vanilla,
  Ehrnn
};

inline Arch parse_arch(std::string_view s)
{
  if (s == "vanilla" || s == "elman")
    return Arch::Vanilla;
  if (s == "ehrnn")
    return Arch::Ehrnn;
  throw std::invalid_argument("unknown architecture '" + std::string(s) + "'");
}

inline const char* to_string(Arch a)
{
  return a == Arch::Vanilla ? "vanilla" : "ehrnn";
}

struct RnnConfig
{
  Arch arch = Arch::Ehrnn;
  std::size_t input = 1;
  std::size_t hidden = 32;
  std::size_t output = 2;
  std::size_t kernel = 0; ///< 0 selects floor(sqrt(hidden))
  std::vector<std::int64_t> resolutions{ 48 };
  StatSet stats{ true, true };
  double eps = 0.05;

  std::size_t pool_kernel() const { return kernel == 0 ? default_pool_kernel(hidden) : kernel; }
  std::size_t pooled() const { return pooled_size(hidden, pool_kernel()); }

  /// n_p * r * s, or 0 for the vanilla network.
  std::size_t stat_width() const
  {
    return arch == Arch::Vanilla ? 0 : pooled() * resolutions.size() * stats.size();
  }

  /// Width of the output layer's input: h + n_p * r * s.
  std::size_t concat_width() const { return hidden + stat_width(); }

  void validate() const
  {
    if (input == 0 || hidden == 0)
      throw std::invalid_argument("input and hidden sizes must be >= 1");
    if (output < 2)
      throw std::invalid_argument("at least two output classes are required");
    if (arch == Arch::Ehrnn) {
      if (resolutions.empty())
        throw std::invalid_argument("ehrnn needs at least one resolution; use the vanilla architecture instead");
      if (pool_kernel() > hidden)
        throw std::invalid_argument("pool kernel larger than the hidden size");
      ResolutionConfig{ resolutions, stats, eps, false }.validate();
    }
  }
};

/// All trainable tensors. Gradients and optimizer state use the same layout.
struct ElmanParams
{
  Eigen::MatrixXd W_h; ///< hidden x input
  Eigen::MatrixXd U_h; ///< hidden x hidden
  Eigen::VectorXd b_h;
  Eigen::MatrixXd W_y; ///< output x concat
  Eigen::VectorXd b_y;

  static ElmanParams zeros(const RnnConfig& c)
  {
    const auto h = static_cast<Eigen::Index>(c.hidden);
    const auto n = static_cast<Eigen::Index>(c.input);
    const auto m = static_cast<Eigen::Index>(c.output);
    const auto d = static_cast<Eigen::Index>(c.concat_width());
    return ElmanParams{ Eigen::MatrixXd::Zero(h, n), Eigen::MatrixXd::Zero(h, h), Eigen::VectorXd::Zero(h),
                        Eigen::MatrixXd::Zero(m, d), Eigen::VectorXd::Zero(m) };
  }

  /// Uniform in +-1/sqrt(hidden).
  static ElmanParams init(const RnnConfig& c, std::uint64_t seed)
  {
    auto p = zeros(c);
    const double a = 1.0 / std::sqrt(static_cast<double>(c.hidden));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-a, a);
    p.visit([&](const char*, auto& m) {
      for (Eigen::Index i = 0; i < m.size(); ++i)
        m.data()[i] = u(rng);
    });
    return p;
  }

  /// Calls f(name, tensor) for every tensor in a fixed order.
  template<typename F>
  void visit(F&& f)
  {
    f("W_h", W_h);
    f("U_h", U_h);
    f("b_h", b_h);
    f("W_y", W_y);
    f("b_y", b_y);
  }

  template<typename F>
  void visit(F&& f) const
  {
    f("W_h", W_h);
    f("U_h", U_h);
    f("b_h", b_h);
    f("W_y", W_y);
    f("b_y", b_y);
  }

  std::size_t size() const
  {
    std::size_t n = 0;
    visit([&](const char*, const auto& m) { n += static_cast<std::size_t>(m.size()); });
    return n;
  }

  void set_zero()
  {
    visit([](const char*, auto& m) { m.setZero(); });
  }

  ElmanParams& operator+=(const ElmanParams& o)
  {
    W_h += o.W_h;
    U_h += o.U_h;
    b_h += o.b_h;
    W_y += o.W_y;
    b_y += o.b_y;
    return *this;
  }

  ElmanParams& operator*=(double s)
  {
    visit([s](const char*, auto& m) { m *= s; });
    return *this;
  }

  friend bool operator==(const ElmanParams& a, const ElmanParams& b)
  {
    return a.W_h == b.W_h && a.U_h == b.U_h && a.b_h == b.b_h && a.W_y == b.W_y && a.b_y == b.b_y;
  }
};

inline Eigen::VectorXd softmax(const Eigen::VectorXd& o)
{
  const Eigen::VectorXd e = (o.array() - o.maxCoeff()).exp();
  return e / e.sum();
}

/// Index of the largest entry; ties go to the lowest index.
inline int argmax(const Eigen::VectorXd& v)
{
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v[i] > v[best])
      best = i;
  return static_cast<int>(best);
}

struct StepOutput
{
  Eigen::VectorXd y; ///< class probabilities
  Eigen::VectorXd h; ///< new hidden state
};

/// Hidden-state update shared by both architectures.
inline Eigen::VectorXd hidden_step(const ElmanParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev)
{
  if (x.size() != p.W_h.cols() || h_prev.size() != p.U_h.cols())
    throw std::invalid_argument("elman step: dimension mismatch");
  return (p.W_h * x + p.U_h * h_prev + p.b_h).array().tanh().matrix();
}

inline Eigen::VectorXd output_step(const ElmanParams& p, const Eigen::VectorXd& z)
{
  if (z.size() != p.W_y.cols())
    throw std::invalid_argument("output layer: expected input width " + std::to_string(p.W_y.cols()) + ", got " +
                                std::to_string(z.size()));
  return softmax(p.W_y * z + p.b_y);
}

inline StepOutput elman_step(const ElmanParams& p, const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev)
{
  StepOutput s;
  s.h = hidden_step(p, x, h_prev);
  s.y = output_step(p, s.h);
  return s;
}

inline Eigen::VectorXd concat(const Eigen::VectorXd& h, const Eigen::VectorXd& stats)
{
  Eigen::VectorXd z(h.size() + stats.size());
  z << h, stats;
  return z;
}

inline StepOutput ehrnn_step(const ElmanParams& p, EhMatrix& E, std::size_t kernel, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& h_prev)
{
  StepOutput s;
  s.h = hidden_step(p, x, h_prev);
  s.y = output_step(p, concat(s.h, E.eval(avg_pool(s.h, kernel))));
  return s;
}

/// A network: configuration plus parameters.
struct RnnModel
{
  RnnConfig config;
  ElmanParams params;

  static RnnModel create(const RnnConfig& c, std::uint64_t seed)
  {
    c.validate();
    return RnnModel{ c, ElmanParams::init(c, seed) };
  }

  std::size_t param_count() const { return params.size(); }

  /// m * (h + n_p r s) + m.
  std::size_t output_param_count() const { return config.output * config.concat_width() + config.output; }

  std::optional<EhMatrix> make_eh_matrix() const
  {
    if (config.arch == Arch::Vanilla)
      return std::nullopt;
    return EhMatrix(config.pooled(), config.resolutions, config.stats, config.eps);
  }
};

/// Statistics source for the forward pass: live sketches, or values replayed
/// from an earlier pass (used to hold them fixed for finite differences).
struct StatsSource
{
  EhMatrix* live = nullptr;
  const std::vector<Eigen::VectorXd>* replay = nullptr;
};

/// Everything the backward pass needs from one segment.
struct SegmentTape
{
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> h; ///< h[0] is the incoming state, h[t+1] follows x[t]
  std::vector<Eigen::VectorXd> stats;
  std::vector<Eigen::VectorXd> y;
  std::vector<int> labels;
  double loss = 0.0; ///< mean cross-entropy over the segment
  std::size_t correct = 0;

  std::size_t length() const { return x.size(); }
  const Eigen::VectorXd& final_state() const { return h.back(); }
};

/// Runs one segment. `labels` may be empty for prediction only.
inline SegmentTape forward_segment(const RnnModel& model,
                                   std::span<const Eigen::VectorXd> xs,
                                   std::span<const int> labels,
                                   const Eigen::VectorXd& h0,
                                   StatsSource src = {})
{
  const auto& c = model.config;
  const bool eh = c.arch == Arch::Ehrnn;
  if (eh && !src.live && !src.replay)
    throw std::invalid_argument("ehrnn forward pass needs a statistics source");
  if (src.replay && src.replay->size() != xs.size())
    throw std::invalid_argument("replayed statistics do not match the segment length");
  if (!labels.empty() && labels.size() != xs.size())
    throw std::invalid_argument("label count does not match the segment length");

  SegmentTape tape;
  const auto T = xs.size();
  tape.x.assign(xs.begin(), xs.end());
  tape.labels.assign(labels.begin(), labels.end());
  tape.h.reserve(T + 1);
  tape.h.push_back(h0);
  tape.y.reserve(T);
  if (eh)
    tape.stats.reserve(T);
  const std::size_t kernel = c.pool_kernel();
  for (std::size_t t = 0; t < T; ++t) {
    Eigen::VectorXd h = hidden_step(model.params, xs[t], tape.h.back());
    Eigen::VectorXd z;
    if (eh) {
      tape.stats.push_back(src.replay ? (*src.replay)[t] : src.live->eval(avg_pool(h, kernel)));
      z = concat(h, tape.stats.back());
    } else {
      z = h;
    }
    tape.y.push_back(output_step(model.params, z));
    tape.h.push_back(std::move(h));
    if (!labels.empty()) {
      const auto y = labels[t];
      if (y < 0 || y >= tape.y.back().size())
        throw std::invalid_argument("label out of range");
      tape.loss -= std::log(std::max(tape.y.back()[y], 1e-300));
      tape.correct += argmax(tape.y.back()) == y;
    }
  }
  if (T > 0)
    tape.loss /= static_cast<double>(T);
  return tape;
}

/// Adds the gradient of tape.loss to `grad` (backpropagation through the
/// segment; the incoming state h[0] is treated as a constant).
inline void backward_segment(const RnnModel& model, const SegmentTape& tape, ElmanParams& grad)
{
  const auto& p = model.params;
  const auto T = tape.length();
  if (T == 0)
    return;
  if (tape.labels.size() != T)
    throw std::invalid_argument("backward pass needs labels");
  const auto h = static_cast<Eigen::Index>(model.config.hidden);
  const double inv_t = 1.0 / static_cast<double>(T);
  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(h);
  for (std::size_t t = T; t-- > 0;) {
    Eigen::VectorXd d_out = tape.y[t];
    d_out[tape.labels[t]] -= 1.0;
    d_out *= inv_t;
    const Eigen::VectorXd& h_t = tape.h[t + 1];
    if (tape.stats.empty()) {
      grad.W_y.noalias() += d_out * h_t.transpose();
    } else {
      grad.W_y.leftCols(h).noalias() += d_out * h_t.transpose();
      grad.W_y.rightCols(tape.stats[t].size()).noalias() += d_out * tape.stats[t].transpose();
    }
    grad.b_y += d_out;
    Eigen::VectorXd dh = p.W_y.leftCols(h).transpose() * d_out + dh_next;
    const Eigen::VectorXd da = dh.array() * (1.0 - h_t.array().square());
    grad.W_h.noalias() += da * tape.x[t].transpose();
    grad.U_h.noalias() += da * tape.h[t].transpose();
    grad.b_h += da;
    dh_next.noalias() = p.U_h.transpose() * da;
  }
}

/// Streaming inference state: hidden vector plus sketches.
class RnnRunner
{
public:
  explicit RnnRunner(const RnnModel& model)
    : model_(&model)
    , eh_(model.make_eh_matrix())
  {
    reset();
  }

  void reset()
  {
    h_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model_->config.hidden));
    if (eh_)
      eh_->reset();
  }

  /// Consumes one input and returns the class probabilities.
  Eigen::VectorXd step(const Eigen::VectorXd& x)
  {
    StepOutput s = eh_ ? ehrnn_step(model_->params, *eh_, model_->config.pool_kernel(), x, h_)
                       : elman_step(model_->params, x, h_);
    h_ = std::move(s.h);
    return s.y;
  }

  const Eigen::VectorXd& hidden() const { return h_; }
  EhMatrix* eh_matrix() { return eh_ ? &*eh_ : nullptr; }

private:
  const RnnModel* model_;
  std::optional<EhMatrix> eh_;
  Eigen::VectorXd h_;
};

} // namespace ehstream

#endif // EHSTREAM_RNN_ELMAN_HPP_
