/**
 * @file train.hpp
 *
 * Truncated backpropagation over one temporal stream with RMSProp, plus
 * forward-only validation.
 *
 * The stream is cut into contiguous segments of tbptt_len steps. Gradients
 * of batch_size consecutive segments are averaged before each optimizer
 * step, so the hidden state and the sketches follow a single timeline.
 */

#ifndef EHSTREAM_RNN_TRAIN_HPP_
#define EHSTREAM_RNN_TRAIN_HPP_

#include "ehstream/data/record.hpp"
#include "ehstream/rnn/elman.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehstream {

struct TrainConfig
{
  double lr = 0.01;
  double decay = 0.9;
  double stabilizer = 1e-8;
  std::size_t batch_size = 32;
  std::size_t epochs = 15;
  std::size_t tbptt_len = 32;
  std::uint64_t seed = 1;

  void validate() const
  {
    if (!(lr > 0.0))
      throw std::invalid_argument("learning rate must be positive");
    if (!(decay >= 0.0 && decay < 1.0))
      throw std::invalid_argument("decay must lie in [0, 1)");
    if (epochs == 0 || batch_size == 0 || tbptt_len == 0)
      throw std::invalid_argument("epochs, batch size and segment length must be >= 1");
  }
};

class RmsProp
{
public:
  RmsProp(const ElmanParams& like, const TrainConfig& cfg)
    : cache_(like)
    , lr_(cfg.lr)
    , decay_(cfg.decay)
    , stabilizer_(cfg.stabilizer)
  {
    cache_.set_zero();
  }

  void step(ElmanParams& params, const ElmanParams& grad)
  {
    apply(params.W_h, grad.W_h, cache_.W_h);
    apply(params.U_h, grad.U_h, cache_.U_h);
    apply(params.b_h, grad.b_h, cache_.b_h);
    apply(params.W_y, grad.W_y, cache_.W_y);
    apply(params.b_y, grad.b_y, cache_.b_y);
  }

private:
  template<typename M>
  void apply(M& p, const M& g, M& c) const
  {
    c.array() = decay_ * c.array() + (1.0 - decay_) * g.array().square();
    p.array() -= lr_ * g.array() / (c.array().sqrt() + stabilizer_);
  }

  ElmanParams cache_;
  double lr_;
  double decay_;
  double stabilizer_;
};

/// Inputs and labels of a labeled dataset as Eigen vectors.
struct SequenceData
{
  std::vector<Eigen::VectorXd> x;
  std::vector<int> y;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }

  static SequenceData from(const Dataset& d)
  {
    SequenceData s;
    s.x.reserve(d.size());
    s.y.reserve(d.size());
    for (const auto& r : d.records) {
      if (!r.label)
        throw std::invalid_argument("unlabeled record at t=" + std::to_string(r.t));
      s.x.push_back(Eigen::Map<const Eigen::VectorXd>(r.features.data(), static_cast<Eigen::Index>(r.features.size())));
      s.y.push_back(*r.label);
    }
    return s;
  }
};

struct EpochMetrics
{
  std::size_t epoch = 0; ///< 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  double seconds = 0.0;
};

struct TrainResult
{
  RnnModel model; ///< parameters of the best-validation epoch
  std::size_t best_epoch = 0;
  double best_val_accuracy = -1.0;
  std::vector<EpochMetrics> history;
};

/// Accuracy over `stream` after warming the hidden state and sketches up on
/// `warmup`. Both are consumed forward-only, in order, from a reset state.
inline double evaluate(const RnnModel& model, const SequenceData& warmup, const SequenceData& stream)
{
  if (stream.empty())
    throw std::invalid_argument("evaluate: empty stream");
  RnnRunner run(model);
  for (const auto& x : warmup.x)
    run.step(x);
  std::size_t correct = 0;
  for (std::size_t t = 0; t < stream.size(); ++t)
    correct += argmax(run.step(stream.x[t])) == stream.y[t];
  return static_cast<double>(correct) / static_cast<double>(stream.size());
}

/// Accuracy of a forward pass over `stream` from a reset state.
inline double validate(const RnnModel& model, const SequenceData& stream)
{
  return evaluate(model, SequenceData{}, stream);
}

/// Trains `init` and returns the epoch with the best validation accuracy.
/// Validation continues the training timeline: each epoch's validation pass
/// replays the training stream forward-only and then scores `val`.
inline TrainResult train(const RnnModel& init,
                         const SequenceData& train_data,
                         const SequenceData& val_data,
                         const TrainConfig& cfg,
                         const std::function<void(const EpochMetrics&)>& on_epoch = {})
{
  cfg.validate();
  init.config.validate();
  if (train_data.empty() || val_data.empty())
    throw std::invalid_argument("train: empty stream");

  RnnModel model = init;
  TrainResult result{ init, 0, -1.0, {} };
  RmsProp opt(model.params, cfg);
  ElmanParams grad = ElmanParams::zeros(model.config);
  auto eh = model.make_eh_matrix();
  const auto h_dim = static_cast<Eigen::Index>(model.config.hidden);
  const std::size_t n = train_data.size();

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    Eigen::VectorXd h = Eigen::VectorXd::Zero(h_dim);
    if (eh)
      eh->reset();
    grad.set_zero();
    std::size_t pending = 0;
    double loss_sum = 0.0;
    std::size_t correct = 0;

    for (std::size_t begin = 0; begin < n; begin += cfg.tbptt_len) {
      const std::size_t len = std::min(cfg.tbptt_len, n - begin);
      const std::span<const Eigen::VectorXd> xs(train_data.x.data() + begin, len);
      const std::span<const int> ys(train_data.y.data() + begin, len);
      const SegmentTape tape = forward_segment(model, xs, ys, h, StatsSource{ eh ? &*eh : nullptr, nullptr });
      backward_segment(model, tape, grad);
      h = tape.final_state();
      loss_sum += tape.loss * static_cast<double>(len);
      correct += tape.correct;
      if (++pending == cfg.batch_size || begin + len == n) {
        grad *= 1.0 / static_cast<double>(pending);
        opt.step(model.params, grad);
        grad.set_zero();
        pending = 0;
      }
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(n);
    m.train_accuracy = static_cast<double>(correct) / static_cast<double>(n);
    m.val_accuracy = evaluate(model, train_data, val_data);
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.history.push_back(m);
    if (m.val_accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = m.val_accuracy;
      result.best_epoch = epoch;
      result.model = model;
    }
    if (on_epoch)
      on_epoch(m);
  }
  return result;
}

inline constexpr const char* kMetricsHeader = "config_id,epoch,train_loss,val_accuracy,epoch_seconds,param_count";

inline void write_metrics_rows(std::ostream& out, const std::string& config_id, const TrainResult& r,
                               std::size_t param_count)
{
  char buf[256];
  for (const auto& m : r.history) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%.9g,%.9g,%.6f,%zu\n", config_id.c_str(), m.epoch, m.train_loss,
                  m.val_accuracy, m.seconds, param_count);
    out << buf;
  }
}

} // namespace ehstream

#endif // EHSTREAM_RNN_TRAIN_HPP_
