// ehstream command-line driver: data generation, windowing, prequential
// evaluation, recurrent training and sketch benchmarks.

#include "ehstream/data/arff.hpp"
#include "ehstream/data/csv.hpp"
#include "ehstream/data/electricity.hpp"
#include "ehstream/data/sine_mixed.hpp"
#include "ehstream/learn/gaussian_nb.hpp"
#include "ehstream/learn/prequential.hpp"
#include "ehstream/rnn/checkpoint.hpp"
#include "ehstream/rnn/train.hpp"
#include "ehstream/sketch.hpp"
#include "ehstream/window/summarizer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ehstream;

namespace {

// ---------------------------------------------------------------- options

struct GenerateOpts
{
  std::string kind = "sine-mixed";
  std::string drift = "sudden";
  std::int64_t n = 10000;
  std::int64_t tau = -1;
  std::int64_t chunk = 500;
  double step = 2.0 * M_PI / 100.0;
  std::vector<double> offsets{ 2.0, 3.0 };
  std::vector<double> ramp{ 1.0 / 3.0, 2.0 / 3.0 };
  std::string out;
};

struct WindowOpts
{
  std::string in;
  std::string out;
  std::string res;
  std::string stats = "mean,var";
  double eps = 0.05;
  bool raw = true;
};

struct EvalOpts
{
  std::string in;
  std::string res;
  std::string stats = "mean,var";
  double eps = 0.05;
  bool raw = true;
  std::size_t trace_window = 1000;
  std::string trace_out;
};

struct TrainOpts
{
  std::string in;
  std::string electricity;
  std::string arch = "ehrnn";
  std::size_t hidden = 32;
  std::size_t kernel = 0;
  std::string res = "48";
  std::string stats = "mean,var";
  double eps = 0.05;
  double lr = 0.01;
  std::size_t batch = 32;
  std::size_t epochs = 15;
  std::size_t tbptt = 32;
  double val_fraction = 0.15;
  std::size_t limit = 0;
  bool windowed_input = false;
  std::string input_res;
  std::string input_stats = "mean,var";
  std::string sweep_res;
  std::string sweep_hidden;
  std::size_t jobs = 1;
  std::string metrics;
  std::string checkpoint;
  std::string config_id;
  bool quiet = false;
};

struct BenchOpts
{
  std::string dist = "gaussian";
  std::string sketch = "variance";
  std::int64_t window = 1000;
  double eps = 0.05;
  std::size_t n = 100000;
};

// ---------------------------------------------------------------- helpers

std::vector<std::string> split_list(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty())
      out.push_back(item);
  return out;
}

bool is_stdout(const std::string& path)
{
  return path.empty() || path == "-";
}

void emit(const Dataset& d, const std::string& path)
{
  if (is_stdout(path))
    write_csv(d, std::cout);
  else
    write_dataset(d, path);
}

Dataset load_input(const std::string& path)
{
  if (path.empty())
    throw std::invalid_argument("an input file is required (--in)");
  if (!fs::exists(path))
    throw FormatError("input file not found: " + path);
  return read_dataset(path);
}

ResolutionConfig make_resolution_config(const std::string& res, const std::string& stats, double eps, bool raw)
{
  ResolutionConfig c;
  c.resolutions = parse_resolutions(res);
  c.stats = StatSet::parse(stats);
  c.eps = eps;
  c.include_raw = raw;
  c.validate();
  return c;
}

/// Adds `key=value` lines from a config file to argv unless the option was
/// given on the command line.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args)
{
  auto at = std::find(args.begin(), args.end(), "--config");
  if (at == args.end())
    return args;
  if (at + 1 == args.end())
    throw CLI::ValidationError("--config", "missing file name");
  const std::string path = *(at + 1);
  args.erase(at, at + 2);

  std::ifstream in(path);
  if (!in)
    throw CLI::ValidationError("--config", "cannot open " + path);
  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && !sub; ++i)
    sub = app.get_subcommand_no_throw(args[i]);
  if (!sub)
    throw CLI::ValidationError("--config", "a subcommand is required");

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = std::string(detail::trim(line));
    if (s.empty() || s[0] == '#')
      continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key(detail::trim(std::string_view(s).substr(0, eq)));
    const std::string value(detail::trim(std::string_view(s).substr(eq + 1)));
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt)
      throw CLI::ValidationError("--config", path + ": unknown key '" + key + "'");
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given)
      continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes")
        args.push_back(flag);
      else if (value != "false" && value != "0" && value != "no")
        throw CLI::ValidationError("--config", path + ": '" + key + "' expects true or false");
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

// ---------------------------------------------------------------- generate

int run_generate(const GenerateOpts& o, std::uint64_t seed)
{
  if (o.kind != "sine-mixed")
    throw CLI::ValidationError("kind", "unknown generator '" + o.kind + "' (available: sine-mixed)");
  if (o.offsets.size() != 2 || o.ramp.size() != 2)
    throw CLI::ValidationError("--offsets/--ramp", "two values are required");
  SineConceptSpec spec;
  spec.n = o.n;
  spec.step = o.step;
  spec.offsets = { o.offsets[0], o.offsets[1] };
  spec.seed = seed;
  DriftSpec drift;
  drift.kind = parse_drift_kind(o.drift);
  if (o.tau >= 0)
    drift.tau = o.tau;
  drift.chunk_len = o.chunk;
  drift.ramp_begin = o.ramp[0];
  drift.ramp_end = o.ramp[1];
  const auto d = gen_sine_mixed(spec, drift);
  emit(d, o.out);
  if (!is_stdout(o.out))
    std::cerr << "wrote " << d.size() << " records to " << o.out << '\n';
  return 0;
}

// ---------------------------------------------------------------- window

int run_window(const WindowOpts& o)
{
  const auto cfg = make_resolution_config(o.res, o.stats, o.eps, o.raw);
  const auto d = summarize(load_input(o.in), cfg);
  emit(d, o.out);
  if (!is_stdout(o.out))
    std::cerr << "wrote " << d.size() << " records with " << d.feature_count() << " features to " << o.out << '\n';
  return 0;
}

// ---------------------------------------------------------------- eval-stream

int run_eval(const EvalOpts& o)
{
  auto d = load_input(o.in);
  if (!o.res.empty())
    d = summarize(d, make_resolution_config(o.res, o.stats, o.eps, o.raw));
  if (!d.labeled())
    throw std::invalid_argument("eval-stream needs a labeled stream (a 'class' column)");
  GaussianNB nb(d.feature_count(), d.class_names.size());
  PrequentialOptions po;
  po.trace_window = o.trace_out.empty() ? 0 : o.trace_window;
  const auto r = prequential_eval(nb, d, po);
  std::cout << "stream: " << d.relation << ", features: " << d.feature_count() << ", classes: " << d.class_names.size()
            << '\n';
  std::cout << "prequential accuracy: " << r.accuracy * 100.0 << "% (" << r.correct << "/" << r.n << ")\n";
  std::cout << format_report(r) << '\n';
  if (!o.trace_out.empty()) {
    std::ofstream out(o.trace_out);
    if (!out)
      throw std::runtime_error("cannot write " + o.trace_out);
    out << "t,sliding_accuracy\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i)
      out << i << ',' << detail::format_real(r.trace[i]) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- train-rnn

struct SweepPoint
{
  std::size_t hidden;
  std::string res;
};

struct SweepOutcome
{
  std::string id;
  TrainResult result;
  std::size_t params = 0;
  std::size_t output_params = 0;
};

int run_train(const TrainOpts& o, std::uint64_t seed)
{
  Dataset d;
  if (!o.electricity.empty()) {
    if (!fs::exists(o.electricity))
      throw FormatError("input file not found: " + o.electricity);
    d = load_electricity(o.electricity);
  } else {
    d = load_input(o.in);
  }
  if (!d.labeled())
    throw std::invalid_argument("train-rnn needs a labeled stream");
  if (o.limit > 0 && o.limit < d.size())
    d = d.slice(0, o.limit);
  if (o.windowed_input)
    d = summarize(d, make_resolution_config(o.input_res.empty() ? o.res : o.input_res, o.input_stats, o.eps, true));
  const auto [head, tail] = split_tail(d, o.val_fraction);
  const auto tr = SequenceData::from(head);
  const auto va = SequenceData::from(tail);

  std::vector<SweepPoint> points;
  const auto hiddens = o.sweep_hidden.empty() ? std::vector<std::string>{ std::to_string(o.hidden) }
                                              : split_list(o.sweep_hidden, ',');
  const auto resolutions = o.sweep_res.empty() ? std::vector<std::string>{ o.res } : split_list(o.sweep_res, ';');
  for (const auto& h : hiddens)
    for (const auto& r : resolutions)
      points.push_back(SweepPoint{ static_cast<std::size_t>(std::stoul(h)), r });

  TrainConfig tc;
  tc.lr = o.lr;
  tc.batch_size = o.batch;
  tc.epochs = o.epochs;
  tc.tbptt_len = o.tbptt;
  tc.seed = seed;

  auto run_one = [&](const SweepPoint& p) {
    RnnConfig rc;
    rc.arch = parse_arch(o.arch);
    rc.input = d.feature_count();
    rc.hidden = p.hidden;
    rc.output = std::max<std::size_t>(2, d.class_names.size());
    rc.kernel = o.kernel;
    rc.resolutions = parse_resolutions(p.res);
    rc.stats = StatSet::parse(o.stats);
    rc.eps = o.eps;
    const auto init = RnnModel::create(rc, seed);
    SweepOutcome out;
    out.id = !o.config_id.empty() && points.size() == 1
               ? o.config_id
               : std::string(to_string(rc.arch)) + (o.windowed_input ? "-win" : "") + "-h" + std::to_string(p.hidden) +
                   (rc.arch == Arch::Ehrnn ? "-r" + p.res : "");
    out.params = init.param_count();
    out.output_params = init.output_param_count();
    const bool verbose = !o.quiet && points.size() == 1;
    out.result = train(init, tr, va, tc, [&](const EpochMetrics& m) {
      if (verbose)
        std::fprintf(stderr, "epoch %2zu  loss %.4f  train_acc %.4f  val_acc %.4f  (%.1fs)\n", m.epoch, m.train_loss,
                     m.train_accuracy, m.val_accuracy, m.seconds);
    });
    return out;
  };

  std::vector<SweepOutcome> outcomes;
  if (o.jobs <= 1 || points.size() == 1) {
    for (const auto& p : points)
      outcomes.push_back(run_one(p));
  } else {
    for (std::size_t begin = 0; begin < points.size(); begin += o.jobs) {
      std::vector<std::future<SweepOutcome>> batch;
      for (std::size_t i = begin; i < std::min(points.size(), begin + o.jobs); ++i)
        batch.push_back(std::async(std::launch::async, run_one, points[i]));
      for (auto& f : batch)
        outcomes.push_back(f.get());
    }
  }

  std::cout << "train records: " << tr.size() << ", validation records: " << va.size() << '\n';
  for (const auto& r : outcomes)
    std::printf("config=%s best_epoch=%zu val_accuracy=%.6f param_count=%zu output_param_count=%zu\n", r.id.c_str(),
                r.result.best_epoch, r.result.best_val_accuracy, r.params, r.output_params);

  if (!o.metrics.empty()) {
    std::ofstream out(o.metrics);
    if (!out)
      throw std::runtime_error("cannot write " + o.metrics);
    out << kMetricsHeader << '\n';
    for (const auto& r : outcomes)
      write_metrics_rows(out, r.id, r.result, r.params);
  }
  if (!o.checkpoint.empty()) {
    if (outcomes.size() != 1)
      throw std::invalid_argument("--checkpoint needs a single configuration");
    save_checkpoint(outcomes.front().result.model, fs::path(o.checkpoint));
  }
  return 0;
}

// ---------------------------------------------------------------- sketch-bench

std::vector<double> bench_stream(const std::string& dist, std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist == "gaussian")
      xs[i] = g(rng);
    else if (dist == "uniform")
      xs[i] = u(rng);
    else if (dist == "sine")
      xs[i] = 10.0 * std::sin(2.0 * M_PI * static_cast<double>(i) / 100.0) + 0.5 * g(rng);
    else
      throw CLI::ValidationError("--dist", "unknown distribution '" + dist + "'");
  }
  return xs;
}

int run_bench(const BenchOpts& o, std::uint64_t seed)
{
  if (o.n == 0)
    throw CLI::ValidationError("--n", "must be >= 1");
  const auto xs = bench_stream(o.dist, o.n, seed);
  const auto W = static_cast<std::size_t>(o.window);
  std::deque<double> win;
  double max_err = 0.0;
  std::size_t max_buckets = 0, final_buckets = 0, checked = 0;

  auto track = [&](double est, double exact) {
    if (win.size() < W)
      return;
    ++checked;
    if (exact > 1e-12)
      max_err = std::max(max_err, std::abs(est - exact) / exact);
    else if (std::abs(est - exact) > 1e-9)
      max_err = INFINITY;
  };

  if (o.sketch == "variance") {
    VarianceEH eh(o.eps, o.window);
    for (double x : xs) {
      eh.add(x);
      win.push_back(x);
      if (win.size() > W)
        win.pop_front();
      const double mu = std::accumulate(win.begin(), win.end(), 0.0) / static_cast<double>(win.size());
      double v = 0.0;
      for (double y : win)
        v += (y - mu) * (y - mu);
      track(eh.estimate().sq_dev, v);
      max_buckets = std::max(max_buckets, eh.memory_footprint().buckets);
    }
    final_buckets = eh.memory_footprint().buckets;
  } else if (o.sketch == "bitcount") {
    BitCountEH eh(o.eps, o.window);
    const double threshold = o.dist == "uniform" ? 0.5 : 0.0;
    double ones = 0.0;
    for (double x : xs) {
      const bool bit = x > threshold;
      eh.add(bit);
      win.push_back(bit);
      ones += bit;
      if (win.size() > W) {
        ones -= win.front();
        win.pop_front();
      }
      track(eh.count_estimate(), ones);
      max_buckets = std::max(max_buckets, eh.memory_footprint().buckets);
    }
    final_buckets = eh.memory_footprint().buckets;
  } else {
    throw CLI::ValidationError("--sketch", "unknown sketch '" + o.sketch + "' (variance, bitcount)");
  }

  const bool warmup_only = o.n < W;
  std::printf("sketch=%s dist=%s window=%lld eps=%g n=%zu\n", o.sketch.c_str(), o.dist.c_str(),
              static_cast<long long>(o.window), o.eps, o.n);
  if (warmup_only)
    std::printf("warning: n < window, the stream never fills the window (warm-up only)\n");
  std::printf("checked_steps=%zu max_rel_error=%.6g within_eps=%s\n", checked, max_err,
              warmup_only ? "n/a" : (max_err <= o.eps + 1e-9 ? "yes" : "no"));
  std::printf("buckets_final=%zu buckets_max=%zu bytes_final=%zu\n", final_buckets, max_buckets,
              footprint_of(final_buckets).bytes);
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Sliding-window sketches and streaming learners" };
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed")->envname("EHSTREAM_SEED");
  std::string config_file;
  app.add_option("--config", config_file, "key=value file of subcommand options (flags override it)");

  GenerateOpts gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic drift stream");
  g->add_option("kind", gen.kind, "Generator (sine-mixed)")->required();
  g->add_option("--drift", gen.drift, "sudden, incremental or reoccurring");
  g->add_option("--n", gen.n, "Samples per concept");
  g->add_option("--tau", gen.tau, "Sudden switch point (default: n)");
  g->add_option("--chunk", gen.chunk, "Reoccurring chunk length");
  g->add_option("--step", gen.step, "Phase increment per sample");
  g->add_option("--offsets", gen.offsets, "Concept offsets a_0 a_1")->delimiter(',')->expected(2);
  g->add_option("--ramp", gen.ramp, "Incremental ramp start,end as stream fractions")->delimiter(',')->expected(2);
  g->add_option("--out", gen.out, "Output file (.csv or .arff; '-' for stdout)");
  g->add_option("--seed", seed, "Random seed")->envname("EHSTREAM_SEED");

  WindowOpts win;
  auto* w = app.add_subcommand("window", "Append multi-resolution windowed features");
  w->add_option("--in", win.in, "Input stream")->required();
  w->add_option("--out", win.out, "Output file (.csv or .arff; '-' for stdout)");
  w->add_option("--res", win.res, "Comma-separated window lengths")->required();
  w->add_option("--stats", win.stats, "mean, var or mean,var");
  w->add_option("--eps", win.eps, "Sketch accuracy");
  w->add_flag("--raw,!--no-raw", win.raw, "Keep the raw features (default on)");

  EvalOpts ev;
  auto* e = app.add_subcommand("eval-stream", "Prequential Naive Bayes evaluation");
  e->add_option("--in", ev.in, "Labeled input stream")->required();
  e->add_option("--res", ev.res, "Window the input on the fly with these lengths");
  e->add_option("--stats", ev.stats, "Statistics for on-the-fly windowing");
  e->add_option("--eps", ev.eps, "Sketch accuracy for on-the-fly windowing");
  e->add_flag("--raw,!--no-raw", ev.raw, "Keep raw features when windowing");
  e->add_option("--trace-window", ev.trace_window, "Sliding accuracy window");
  e->add_option("--trace-out", ev.trace_out, "Write the sliding accuracy trace as CSV");

  TrainOpts tr;
  auto* t = app.add_subcommand("train-rnn", "Train a vanilla or EH-augmented Elman network");
  t->add_option("--in", tr.in, "Labeled input stream (.csv or .arff)");
  t->add_option("--electricity", tr.electricity, "Electricity file (keeps its six real features)");
  t->add_option("--arch", tr.arch, "vanilla or ehrnn");
  t->add_option("--hidden", tr.hidden, "Hidden size");
  t->add_option("--kernel", tr.kernel, "Pooling kernel (0: floor(sqrt(hidden)))");
  t->add_option("--res", tr.res, "Sketch window lengths");
  t->add_option("--stats", tr.stats, "Sketch statistics");
  t->add_option("--eps", tr.eps, "Sketch accuracy");
  t->add_option("--lr", tr.lr, "RMSProp learning rate");
  t->add_option("--batch", tr.batch, "Segments per optimizer step");
  t->add_option("--epochs", tr.epochs, "Training epochs");
  t->add_option("--tbptt", tr.tbptt, "Truncated backpropagation length");
  t->add_option("--val-fraction", tr.val_fraction, "Most recent fraction held out for validation");
  t->add_option("--limit", tr.limit, "Use only the first N records");
  t->add_flag("--windowed-input", tr.windowed_input, "Append windowed mean/var of every input attribute");
  t->add_option("--input-res", tr.input_res, "Window lengths for --windowed-input (default: --res)");
  t->add_option("--input-stats", tr.input_stats, "Statistics for --windowed-input");
  t->add_option("--sweep-res", tr.sweep_res, "Semicolon-separated resolution sets, e.g. '32;48;16,64'");
  t->add_option("--sweep-hidden", tr.sweep_hidden, "Comma-separated hidden sizes");
  t->add_option("--jobs", tr.jobs, "Parallel sweep workers");
  t->add_option("--metrics", tr.metrics, "Per-epoch metrics CSV");
  t->add_option("--checkpoint", tr.checkpoint, "Save the best model here");
  t->add_option("--config-id", tr.config_id, "Identifier written to the metrics CSV");
  t->add_flag("--quiet", tr.quiet, "No per-epoch progress");
  t->add_option("--seed", seed, "Random seed")->envname("EHSTREAM_SEED");

  BenchOpts be;
  auto* b = app.add_subcommand("sketch-bench", "Compare a sketch against exact window statistics");
  b->add_option("--dist", be.dist, "gaussian, uniform or sine");
  b->add_option("--sketch", be.sketch, "variance or bitcount");
  b->add_option("--window", be.window, "Window length");
  b->add_option("--eps", be.eps, "Sketch accuracy");
  b->add_option("--n", be.n, "Stream length");
  b->add_option("--seed", seed, "Random seed")->envname("EHSTREAM_SEED");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(app, std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (*g)
      return run_generate(gen, seed);
    if (*w)
      return run_window(win);
    if (*e)
      return run_eval(ev);
    if (*t) {
      if (tr.in.empty() == tr.electricity.empty())
        throw CLI::ValidationError("train-rnn", "exactly one of --in and --electricity is required");
      return run_train(tr, seed);
    }
    if (*b)
      return run_bench(be, seed);
  } catch (const CLI::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
