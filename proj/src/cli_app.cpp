// Copyright 2026 The rmtq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmtq/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "rmtq/channels.hpp"
#include "rmtq/criteria.hpp"
#include "rmtq/emit.hpp"
#include "rmtq/ensembles.hpp"
#include "rmtq/freeprob.hpp"
#include "rmtq/parallel.hpp"
#include "rmtq/permutation.hpp"
#include "rmtq/tensorlin.hpp"
#include "rmtq/version.hpp"
#include "rmtq/weingarten.hpp"

namespace rmtq {

namespace {

// ---------------------------------------------------------------------------
// small flag parsers

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const char* flag) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw std::invalid_argument(std::string("bad number in ") + flag + ": " + tok);
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& s, const char* flag) {
  std::vector<int> out;
  for (double v : parse_doubles(s, flag)) {
    if (v != std::floor(v))
      throw std::invalid_argument(std::string("expected integers in ") + flag);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::pair<int, int>> parse_edges(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& tok : split(s, ',')) {
    const auto ends = split(tok, '-');
    if (ends.size() != 2)
      throw std::invalid_argument("bad edge in --edges (use \"1-2,2-3\"): " + tok);
    out.push_back({std::stoi(ends[0]), std::stoi(ends[1])});
  }
  return out;
}

std::vector<bool> parse_keep(const std::string& s) {
  std::vector<bool> out;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') continue;
    if (ch == 'S' || ch == 's') out.push_back(true);
    else if (ch == 'T' || ch == 't') out.push_back(false);
    else throw std::invalid_argument("bad label in --keep (use S/T): " + std::string(1, ch));
  }
  return out;
}

Eigen::MatrixXd parse_real_matrix(const std::string& s, const char* flag) {
  const auto rows = split(s, ';');
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd out;
  for (int r = 0; r < m; ++r) {
    const auto vals = parse_doubles(rows[r], flag);
    if (r == 0) out.resize(m, static_cast<int>(vals.size()));
    if (static_cast<int>(vals.size()) != out.cols())
      throw std::invalid_argument(std::string("ragged matrix in ") + flag);
    for (int c = 0; c < out.cols(); ++c) out(r, c) = vals[c];
  }
  return out;
}

SpectralLaw parse_law(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 2 && parts[0] == "mp") {
    const auto v = parse_doubles(parts[1], "--law");
    if (v.size() == 1) return SpectralLaw::marchenko_pastur(v[0]);
  }
  if (parts.size() == 2 && parts[0] == "sc") {
    const auto v = parse_doubles(parts[1], "--law");
    if (v.size() == 2) return SpectralLaw::semicircle(v[0], v[1]);
  }
  throw std::invalid_argument("bad --law (use \"mp:C\" or \"sc:MEAN,VAR\"): " + s);
}

// ---------------------------------------------------------------------------
// result emission: CSV rows are pure data (byte-identical on replay);
// json-lines rows are full records with the config echo, version, seed and a
// wall-time field that replay comparison excludes.

struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = nullptr;
};

Sink open_sink(const std::string& path) {
  Sink s;
  if (path == "-") {
    s.os = &std::cout;
    return s;
  }
  s.file = std::make_unique<std::ofstream>(path);
  if (!*s.file) throw std::runtime_error("cannot open output path: " + path);
  s.os = s.file.get();
  return s;
}

class Emitter {
 public:
  Emitter(const std::string& out_path, const std::string& format,
          std::vector<std::string> data_columns, std::string config_echo,
          std::optional<std::uint64_t> seed)
      : sink_(open_sink(out_path)),
        format_(emit_format_from_string(format)),
        config_(std::move(config_echo)),
        seed_(seed),
        start_(std::chrono::steady_clock::now()) {
    std::vector<std::string> cols;
    if (format_ == EmitFormat::JsonLines) {
      cols.push_back("config");
      cols.push_back("version");
      if (seed_) cols.push_back("seed");
    }
    cols.insert(cols.end(), data_columns.begin(), data_columns.end());
    if (format_ == EmitFormat::JsonLines) cols.push_back("wall_time_ms");
    writer_ = std::make_unique<ResultWriter>(*sink_.os, format_, std::move(cols));
  }

  void row(std::vector<Field> data) {
    if (format_ == EmitFormat::JsonLines) {
      std::vector<Field> full;
      full.emplace_back(config_);
      full.emplace_back(std::string(kVersion));
      if (seed_) full.emplace_back(static_cast<std::int64_t>(*seed_));
      for (auto& f : data) full.push_back(std::move(f));
      const auto elapsed = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
      full.emplace_back(elapsed);
      writer_->row(full);
    } else {
      writer_->row(data);
    }
  }

 private:
  Sink sink_;
  EmitFormat format_;
  std::string config_;
  std::optional<std::uint64_t> seed_;
  std::chrono::steady_clock::time_point start_;
  std::unique_ptr<ResultWriter> writer_;
};

// canonical config echo: the command with every flag explicit, so that the
// echoed line can be re-executed verbatim
class ConfigEcho {
 public:
  explicit ConfigEcho(std::string command) : text_(std::move(command)) {}
  ConfigEcho& flag(const std::string& name, const std::string& value) {
    text_ += " --" + name + " " + value;
    return *this;
  }
  ConfigEcho& flag(const std::string& name, std::int64_t v) {
    return flag(name, std::to_string(v));
  }
  ConfigEcho& flag(const std::string& name, std::uint64_t v) {
    return flag(name, std::to_string(v));
  }
  ConfigEcho& flag(const std::string& name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return flag(name, std::string(buf));
  }
  ConfigEcho& switch_on(const std::string& name, bool on) {
    if (on) text_ += " --" + name;
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

// ---------------------------------------------------------------------------
// command handlers

struct CommonOut {
  std::string out = "-";
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, const std::shared_ptr<CommonOut>& common) {
  cmd->add_option("--out", common->out, "output path, '-' for stdout");
  cmd->add_option("--format", common->format, "output format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

void register_wg(CLI::App* cmd) {
  struct Opt : CommonOut {
    int n = 0;
    std::string cycle_type;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--n", opt->n, "unitary group dimension")->required();
  cmd->add_option("--cycle-type", opt->cycle_type,
                  "cycle type, e.g. \"2\" or \"2,1,1\"")
      ->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    auto parts = parse_ints(opt->cycle_type, "--cycle-type");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    const IntegerPartition type(parts);
    const Rational exact = wg_exact(opt->n, type);
    // representative permutation for the asymptotic value
    std::vector<int> img(type.weight());
    int base = 0;
    for (int part : type.parts) {
      for (int i = 0; i < part; ++i) img[base + i] = base + (i + 1) % part + 1;
      base += part;
    }
    const double asym =
        wg_asymptotic(opt->n, Permutation::from_one_line(img));
    const auto echo = ConfigEcho("wg")
                          .flag("n", static_cast<std::int64_t>(opt->n))
                          .flag("cycle-type", opt->cycle_type)
                          .flag("format", opt->format);
    Emitter emit(opt->out, opt->format,
                 {"n", "p", "cycle_type", "wg_exact", "wg_asymptotic"}, echo.str(),
                 std::nullopt);
    emit.row({static_cast<std::int64_t>(opt->n),
              static_cast<std::int64_t>(type.weight()), type.to_string(),
              to_string(exact), asym});
  });
}

void register_wick(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string cov;
    int dim = 0;
    std::string indices;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--cov", opt->cov, "covariance rows, e.g. \"1,0.5;0.5,1\"");
  cmd->add_option("--dim", opt->dim, "number of standard independent Gaussians");
  cmd->add_option("--indices", opt->indices, "factor indices, e.g. \"1,1,2,2\"")
      ->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    if (opt->cov.empty() == (opt->dim == 0))
      throw std::invalid_argument("wick: give exactly one of --cov or --dim");
    const CovarianceForm form = opt->cov.empty()
                                    ? CovarianceForm::standard(opt->dim)
                                    : CovarianceForm(parse_real_matrix(opt->cov, "--cov"));
    const auto idx = parse_ints(opt->indices, "--indices");
    const double value = wick_moment(form, idx);
    auto echo = ConfigEcho("wick").flag("indices", opt->indices);
    if (!opt->cov.empty()) echo.flag("cov", opt->cov);
    else echo.flag("dim", static_cast<std::int64_t>(opt->dim));
    echo.flag("format", opt->format);
    Emitter emit(opt->out, opt->format, {"indices", "order", "value"}, echo.str(),
                 std::nullopt);
    emit.row({opt->indices, static_cast<std::int64_t>(idx.size()), value});
  });
}

void register_sample(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string ensemble;
    int d = 0, s = 0, trials = 1;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--ensemble", opt->ensemble, "ginibre|wishart|haar|pure|induced|bures")
      ->required()
      ->check(CLI::IsMember({"ginibre", "wishart", "haar", "pure", "induced", "bures"}));
  cmd->add_option("--d", opt->d, "dimension (rows)")->required();
  cmd->add_option("--s", opt->s, "second parameter (columns), defaults to d");
  cmd->add_option("--trials", opt->trials, "number of draws");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    const int s = opt->s > 0 ? opt->s : opt->d;
    const auto echo = ConfigEcho("sample")
                          .flag("ensemble", opt->ensemble)
                          .flag("d", static_cast<std::int64_t>(opt->d))
                          .flag("s", static_cast<std::int64_t>(s))
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    Emitter emit(opt->out, opt->format, {"trial", "row", "col", "re", "im"},
                 echo.str(), opt->seed);
    const RandomStream root(opt->seed);
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      Matrix m;
      if (opt->ensemble == "ginibre") m = sample_ginibre(opt->d, s, rs);
      else if (opt->ensemble == "wishart") m = sample_wishart(opt->d, s, rs);
      else if (opt->ensemble == "haar") m = sample_haar_unitary(opt->d, rs);
      else if (opt->ensemble == "pure")
        m = sample_pure_uniform(opt->d, rs).amplitudes();
      else if (opt->ensemble == "induced")
        m = sample_induced(opt->d, s, rs).matrix();
      else m = sample_bures(opt->d, rs).matrix();
      for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
          emit.row({static_cast<std::int64_t>(trial), static_cast<std::int64_t>(i),
                    static_cast<std::int64_t>(j), m(i, j).real(), m(i, j).imag()});
    }
  });
}

void register_spectrum(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string ensemble;
    int d = 0, s = 0, n = 0, k = 0, trials = 1;
    std::uint64_t seed = 0;
    std::string law;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--ensemble", opt->ensemble, "wishart|induced|induced-pt")
      ->required()
      ->check(CLI::IsMember({"wishart", "induced", "induced-pt"}));
  cmd->add_option("--d", opt->d, "dimension (wishart/induced)");
  cmd->add_option("--s", opt->s, "induced-measure parameter / wishart columns");
  cmd->add_option("--n", opt->n, "first factor dimension (induced-pt)");
  cmd->add_option("--k", opt->k, "second factor dimension (induced-pt)");
  cmd->add_option("--trials", opt->trials, "number of draws");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  cmd->add_option("--law", opt->law,
                  "reference law mp:C or sc:MEAN,VAR; emits per-trial KS rows");
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    auto echo = ConfigEcho("spectrum").flag("ensemble", opt->ensemble);
    if (opt->d) echo.flag("d", static_cast<std::int64_t>(opt->d));
    if (opt->s) echo.flag("s", static_cast<std::int64_t>(opt->s));
    if (opt->n) echo.flag("n", static_cast<std::int64_t>(opt->n));
    if (opt->k) echo.flag("k", static_cast<std::int64_t>(opt->k));
    echo.flag("trials", static_cast<std::int64_t>(opt->trials)).flag("seed", opt->seed);
    if (!opt->law.empty()) echo.flag("law", opt->law);
    echo.flag("format", opt->format);

    const bool with_ks = !opt->law.empty();
    std::optional<SpectralLaw> law;
    if (with_ks) law = parse_law(opt->law);

    std::vector<std::string> cols =
        with_ks ? std::vector<std::string>{"trial", "count", "ks"}
                : std::vector<std::string>{"trial", "index", "value"};
    Emitter emit(opt->out, opt->format, cols, echo.str(), opt->seed);
    const RandomStream root(opt->seed);
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      EmpiricalSpectrum spec;
      if (opt->ensemble == "wishart") {
        if (opt->d < 1 || opt->s < 1)
          throw std::invalid_argument("spectrum wishart: --d and --s required");
        spec = EmpiricalSpectrum::from_eigenvalues(
            hermitian_eigenvalues(sample_wishart(opt->d, opt->s, rs)),
            1.0 / opt->d);
      } else if (opt->ensemble == "induced") {
        if (opt->d < 1 || opt->s < 1)
          throw std::invalid_argument("spectrum induced: --d and --s required");
        spec = EmpiricalSpectrum::from_eigenvalues(
            sample_induced(opt->d, opt->s, rs).spectrum());
      } else {
        if (opt->n < 1 || opt->k < 1 || opt->s < 1)
          throw std::invalid_argument("spectrum induced-pt: --n, --k, --s required");
        const DensityMatrix rho =
            sample_induced(opt->n * opt->k, opt->s, rs).with_split(
                Split{opt->n, opt->k});
        spec = rescaled_pt_spectrum(rho, Regime::Balanced);
      }
      if (with_ks) {
        emit.row({static_cast<std::int64_t>(trial),
                  static_cast<std::int64_t>(spec.values.size()),
                  ks_distance(spec, *law)});
      } else {
        for (std::size_t i = 0; i < spec.values.size(); ++i)
          emit.row({static_cast<std::int64_t>(trial), static_cast<std::int64_t>(i),
                    spec.values[i]});
      }
    }
  });
}

void register_criteria(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string criterion = "all";
    int n = 0, k = 0, s = 0, trials = 1;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--criterion", opt->criterion, "ppt|red|rln|all")
      ->check(CLI::IsMember({"ppt", "red", "rln", "all"}));
  cmd->add_option("--n", opt->n, "first factor dimension")->required();
  cmd->add_option("--k", opt->k, "second factor dimension")->required();
  cmd->add_option("--s", opt->s, "induced-measure parameter")->required();
  cmd->add_option("--trials", opt->trials, "number of sampled states");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    const auto echo = ConfigEcho("criteria")
                          .flag("criterion", opt->criterion)
                          .flag("n", static_cast<std::int64_t>(opt->n))
                          .flag("k", static_cast<std::int64_t>(opt->k))
                          .flag("s", static_cast<std::int64_t>(opt->s))
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    std::vector<Criterion> which;
    if (opt->criterion == "all")
      which = {Criterion::PPT, Criterion::RED, Criterion::RLN};
    else
      which = {criterion_from_string(opt->criterion)};
    Emitter emit(opt->out, opt->format, {"trial", "criterion", "margin", "pass"},
                 echo.str(), opt->seed);
    const RandomStream root(opt->seed);
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      const DensityMatrix rho =
          sample_induced(opt->n * opt->k, opt->s, rs).with_split(Split{opt->n, opt->k});
      for (Criterion c : which) {
        const CriterionVerdict v = evaluate_criterion(rho, c);
        emit.row({static_cast<std::int64_t>(trial), to_string(c), v.margin,
                  static_cast<std::int64_t>(v.pass ? 1 : 0)});
      }
    }
  });
}

void register_threshold(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string criterion = "ppt", regime = "balanced", c_list;
    int n = 0, k = 0, trials = 100, threads = 0;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--criterion", opt->criterion, "ppt|red|rln")
      ->check(CLI::IsMember({"ppt", "red", "rln"}));
  cmd->add_option("--regime", opt->regime,
                  "balanced|unbalanced-k-fixed|unbalanced-n-fixed");
  cmd->add_option("--n", opt->n, "first factor dimension")->required();
  cmd->add_option("--k", opt->k, "second factor dimension")->required();
  cmd->add_option("--c", opt->c_list, "comma-separated grid of c values")->required();
  cmd->add_option("--trials", opt->trials, "trials per grid point");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  cmd->add_option("--threads", opt->threads, "worker threads (0 = all cores)");
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    ThresholdConfig config;
    config.criterion = criterion_from_string(opt->criterion);
    config.regime = regime_from_string(opt->regime);
    config.n = opt->n;
    config.k = opt->k;
    config.c_values = parse_doubles(opt->c_list, "--c");
    config.trials = opt->trials;
    config.seed = opt->seed;
    config.threads = opt->threads > 0 ? opt->threads : default_thread_count();
    const auto echo = ConfigEcho("threshold")
                          .flag("criterion", opt->criterion)
                          .flag("regime", opt->regime)
                          .flag("n", static_cast<std::int64_t>(opt->n))
                          .flag("k", static_cast<std::int64_t>(opt->k))
                          .flag("c", opt->c_list)
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    const ThresholdCurve curve = threshold_experiment(config);
    Emitter emit(opt->out, opt->format,
                 {"criterion", "regime", "n", "k", "c", "s", "trials",
                  "pass_fraction", "seed"},
                 echo.str(), opt->seed);
    for (const auto& pt : curve.points)
      emit.row({to_string(config.criterion), to_string(config.regime),
                static_cast<std::int64_t>(config.n),
                static_cast<std::int64_t>(config.k), pt.c,
                static_cast<std::int64_t>(pt.s),
                static_cast<std::int64_t>(pt.trials), pt.pass_fraction,
                static_cast<std::int64_t>(config.seed)});
  });
}

void register_channel(CLI::App* cmd) {
  struct Opt : CommonOut {
    int n = 0, k = 0, d = 0, trials = 1, restarts = 50, iterations = 60;
    std::uint64_t seed = 0;
    bool bell = false;
    double moe_p = 0.0;
    std::string import_path, export_path;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--n", opt->n, "ancilla dimension (random channel)");
  cmd->add_option("--k", opt->k, "output dimension (random channel)");
  cmd->add_option("--d", opt->d, "input dimension (random channel)");
  auto* seed_opt = cmd->add_option("--seed", opt->seed,
                                   "random seed (required unless --import)");
  cmd->add_option("--import", opt->import_path, "load a channel file instead of sampling");
  cmd->add_option("--export", opt->export_path, "write the channel to a file");
  cmd->add_flag("--bell-output", opt->bell,
                "eigenvalues of [Phi x conj(Phi)](Omega_d), one channel per trial");
  cmd->add_option("--moe", opt->moe_p, "estimate the minimum output entropy of order P");
  cmd->add_option("--restarts", opt->restarts, "MOE restarts");
  cmd->add_option("--iterations", opt->iterations, "MOE iterations per restart");
  cmd->add_option("--trials", opt->trials, "draws for --bell-output");
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt, seed_opt] {
    const bool random = opt->import_path.empty();
    if (random && (opt->n < 1 || opt->k < 1 || opt->d < 1))
      throw std::invalid_argument("channel: give --n, --k, --d or --import");
    if (random && seed_opt->count() == 0)
      throw CLI::RequiredError("--seed");  // sampling without a seed is a usage error
    const int modes = (opt->export_path.empty() ? 0 : 1) + (opt->bell ? 1 : 0) +
                      (opt->moe_p > 0.0 ? 1 : 0);
    if (modes != 1)
      throw std::invalid_argument(
          "channel: choose exactly one of --export, --bell-output, --moe");

    auto echo = ConfigEcho("channel");
    if (random)
      echo.flag("n", static_cast<std::int64_t>(opt->n))
          .flag("k", static_cast<std::int64_t>(opt->k))
          .flag("d", static_cast<std::int64_t>(opt->d))
          .flag("seed", opt->seed);
    else
      echo.flag("import", opt->import_path);
    if (opt->bell) echo.switch_on("bell-output", true)
                       .flag("trials", static_cast<std::int64_t>(opt->trials));
    if (opt->moe_p > 0.0)
      echo.flag("moe", opt->moe_p)
          .flag("restarts", static_cast<std::int64_t>(opt->restarts))
          .flag("iterations", static_cast<std::int64_t>(opt->iterations));
    echo.flag("format", opt->format);

    const RandomStream root(opt->seed);
    const auto make_channel = [&](int trial) {
      if (!random) return read_channel(opt->import_path).to(ChannelForm::Stinespring);
      RandomStream rs = root.substream(trial);
      return sample_random_isometry_channel(opt->n, opt->k, opt->d, rs);
    };

    if (!opt->export_path.empty()) {
      const QuantumChannel ch = make_channel(0);
      write_channel(opt->export_path, ch);
      Emitter emit(opt->out, opt->format, {"d", "k", "n", "path"}, echo.str(),
                   random ? std::optional<std::uint64_t>(opt->seed) : std::nullopt);
      emit.row({static_cast<std::int64_t>(ch.in_dim()),
                static_cast<std::int64_t>(ch.out_dim()),
                static_cast<std::int64_t>(ch.ancilla_dim()), opt->export_path});
      return;
    }
    if (opt->bell) {
      Emitter emit(opt->out, opt->format,
                   {"trial", "index", "eigenvalue", "hw_lower_bound"}, echo.str(),
                   random ? std::optional<std::uint64_t>(opt->seed) : std::nullopt);
      for (int trial = 0; trial < opt->trials; ++trial) {
        const QuantumChannel ch = make_channel(trial);
        const DensityMatrix z = conjugate_pair_bell_output(ch);
        const RealVector eigs = z.spectrum();
        const double bound = static_cast<double>(ch.in_dim()) /
                             (static_cast<double>(ch.ancilla_dim()) * ch.out_dim());
        for (int i = 0; i < eigs.size(); ++i)
          emit.row({static_cast<std::int64_t>(trial), static_cast<std::int64_t>(i),
                    eigs(eigs.size() - 1 - i), bound});  // descending
      }
      return;
    }
    // MOE estimate
    const QuantumChannel ch = make_channel(0);
    const MoeEstimate est = moe_estimate(ch, opt->moe_p, opt->restarts,
                                         opt->iterations, root.substream(1));
    Emitter emit(opt->out, opt->format, {"p", "restarts", "iterations", "moe_upper_bound"},
                 echo.str(), random ? std::optional<std::uint64_t>(opt->seed) : std::nullopt);
    emit.row({opt->moe_p, static_cast<std::int64_t>(opt->restarts),
              static_cast<std::int64_t>(opt->iterations), est.value});
  });
}

void register_tnorm(CLI::App* cmd) {
  struct Opt : CommonOut {
    std::string a, lambda;
    double t = 0.0, tolerance = 0.03;
    int n = 300, trials = 11, directions = 24;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--a", opt->a, "direction vector, e.g. \"1,0\"");
  cmd->add_option("--t", opt->t, "projection trace parameter in (0,1]")->required();
  cmd->add_option("--n", opt->n, "simulation size");
  cmd->add_option("--trials", opt->trials, "trials for the median");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  cmd->add_option("--membership-lambda", opt->lambda,
                  "probability vector: test K_{k,t} membership instead");
  cmd->add_option("--directions", opt->directions,
                  "low-discrepancy directions for membership");
  cmd->add_option("--tolerance", opt->tolerance, "membership margin tolerance");
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    if (opt->a.empty() == opt->lambda.empty())
      throw std::invalid_argument("tnorm: give exactly one of --a or --membership-lambda");
    auto echo = ConfigEcho("tnorm").flag("t", opt->t);
    if (!opt->a.empty()) echo.flag("a", opt->a);
    if (!opt->lambda.empty())
      echo.flag("membership-lambda", opt->lambda)
          .flag("directions", static_cast<std::int64_t>(opt->directions))
          .flag("tolerance", opt->tolerance);
    echo.flag("n", static_cast<std::int64_t>(opt->n))
        .flag("trials", static_cast<std::int64_t>(opt->trials))
        .flag("seed", opt->seed)
        .flag("format", opt->format);
    RandomStream rs(opt->seed);
    if (!opt->a.empty()) {
      TNormQuery q;
      q.a = parse_doubles(opt->a, "--a");
      q.t = opt->t;
      q.n = opt->n;
      q.trials = opt->trials;
      const double est = tnorm_estimate(q, rs);
      Emitter emit(opt->out, opt->format, {"t", "n", "trials", "tnorm"}, echo.str(),
                   opt->seed);
      emit.row({opt->t, static_cast<std::int64_t>(opt->n),
                static_cast<std::int64_t>(opt->trials), est});
      return;
    }
    const auto lambda = parse_doubles(opt->lambda, "--membership-lambda");
    const KktMembership m = kkt_membership(lambda, opt->t, opt->directions, rs,
                                           opt->n, opt->trials, opt->tolerance);
    Emitter emit(opt->out, opt->format,
                 {"t", "n", "directions", "member", "worst_margin"}, echo.str(),
                 opt->seed);
    emit.row({opt->t, static_cast<std::int64_t>(opt->n),
              static_cast<std::int64_t>(opt->directions),
              static_cast<std::int64_t>(m.member ? 1 : 0), m.worst_margin});
  });
}

void register_graph_state(CLI::App* cmd) {
  struct Opt : CommonOut {
    int vertices = 0, local_dim = 2, trials = 1;
    std::string edges, keep;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--vertices", opt->vertices, "number of vertices")->required();
  cmd->add_option("--edges", opt->edges, "edge list, e.g. \"1-2,2-3\"")->required();
  cmd->add_option("--N", opt->local_dim, "local dimension per edge endpoint");
  cmd->add_option("--keep", opt->keep,
                  "S/T label per edge endpoint (2 per edge), e.g. \"SSTT\"")
      ->required();
  cmd->add_option("--trials", opt->trials, "number of draws");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    GraphStateSpec spec;
    spec.vertex_count = opt->vertices;
    spec.edges = parse_edges(opt->edges);
    spec.local_dim = opt->local_dim;
    spec.keep = parse_keep(opt->keep);
    const auto echo = ConfigEcho("graph-state")
                          .flag("vertices", static_cast<std::int64_t>(opt->vertices))
                          .flag("edges", opt->edges)
                          .flag("N", static_cast<std::int64_t>(opt->local_dim))
                          .flag("keep", opt->keep)
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    Emitter emit(opt->out, opt->format,
                 {"trial", "entropy_nats", "boundary_area", "adapted",
                  "area_law_nats"},
                 echo.str(), opt->seed);
    const RandomStream root(opt->seed);
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      const DensityMatrix rho = sample_graph_state_marginal(spec, rs);
      emit.row({static_cast<std::int64_t>(trial), entropy(rho, 1.0),
                static_cast<std::int64_t>(spec.boundary_area()),
                static_cast<std::int64_t>(spec.is_adapted() ? 1 : 0),
                spec.boundary_area() * std::log(static_cast<double>(opt->local_dim))});
    }
  });
}

void register_mps(CLI::App* cmd) {
  struct Opt : CommonOut {
    int d = 2, bond = 4, window = 1, chain = 12, trials = 1;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--d", opt->d, "physical dimension");
  cmd->add_option("--D", opt->bond, "bond dimension");
  cmd->add_option("--l", opt->window, "window length");
  cmd->add_option("--chain", opt->chain, "chain length");
  cmd->add_option("--trials", opt->trials, "number of draws");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    const auto echo = ConfigEcho("mps")
                          .flag("d", static_cast<std::int64_t>(opt->d))
                          .flag("D", static_cast<std::int64_t>(opt->bond))
                          .flag("l", static_cast<std::int64_t>(opt->window))
                          .flag("chain", static_cast<std::int64_t>(opt->chain))
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    Emitter emit(opt->out, opt->format,
                 {"trial", "entropy_nats", "max_entropy_nats", "sup_dist_uniform"},
                 echo.str(), opt->seed);
    const MpsSpec spec = MpsSpec::standard(opt->d, opt->bond, opt->window, opt->chain);
    const RandomStream root(opt->seed);
    const int wd = static_cast<int>(std::lround(std::pow(opt->d, opt->window)));
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      const DensityMatrix rho = sample_mps_bulk_marginal(spec, rs);
      const Matrix dev =
          rho.matrix() - Matrix::Identity(wd, wd) / static_cast<double>(wd);
      const RealVector dev_eigs = hermitian_eigenvalues(dev);
      const double sup =
          std::max(std::abs(dev_eigs.minCoeff()), std::abs(dev_eigs.maxCoeff()));
      emit.row({static_cast<std::int64_t>(trial), entropy(rho, 1.0),
                opt->window * std::log(static_cast<double>(opt->d)), sup});
    }
  });
}

void register_projsum(CLI::App* cmd) {
  struct Opt : CommonOut {
    int d = 0, legs = 2, count = 0, trials = 1;
    std::uint64_t seed = 0;
  };
  auto opt = std::make_shared<Opt>();
  cmd->add_option("--d", opt->d, "local dimension")->required();
  cmd->add_option("--legs", opt->legs, "tensor legs");
  cmd->add_option("--p", opt->count, "number of product projections")->required();
  cmd->add_option("--trials", opt->trials, "number of draws");
  cmd->add_option("--seed", opt->seed, "random seed (required)")->required();
  add_output_flags(cmd, std::shared_ptr<CommonOut>(opt, opt.get()));
  cmd->callback([opt] {
    const auto echo = ConfigEcho("projsum")
                          .flag("d", static_cast<std::int64_t>(opt->d))
                          .flag("legs", static_cast<std::int64_t>(opt->legs))
                          .flag("p", static_cast<std::int64_t>(opt->count))
                          .flag("trials", static_cast<std::int64_t>(opt->trials))
                          .flag("seed", opt->seed)
                          .flag("format", opt->format);
    Emitter emit(opt->out, opt->format, {"trial", "top_eigenvalue", "mp_edge"},
                 echo.str(), opt->seed);
    const double ratio =
        static_cast<double>(opt->count) / std::pow(opt->d, opt->legs);
    const double edge = (1.0 + std::sqrt(ratio)) * (1.0 + std::sqrt(ratio));
    const RandomStream root(opt->seed);
    for (int trial = 0; trial < opt->trials; ++trial) {
      RandomStream rs = root.substream(trial);
      const Matrix m = sample_product_projection_sum(opt->d, opt->legs, opt->count, rs);
      emit.row({static_cast<std::int64_t>(trial),
                hermitian_eigenvalues(m).maxCoeff(), edge});
    }
  });
}

void register_list(CLI::App* cmd) {
  cmd->callback([] {
    for (const auto& [name, description] : command_catalog())
      std::cout << name << " - " << description << '\n';
  });
}

struct CommandSpec {
  const char* name;
  const char* description;
  void (*configure)(CLI::App*);
};

const std::vector<CommandSpec>& registry() {
  static const std::vector<CommandSpec> table = {
      {"wg", "exact and asymptotic Weingarten values", register_wg},
      {"wick", "Gaussian moments via the pairing sum", register_wick},
      {"sample", "draw matrices/states from the random ensembles", register_sample},
      {"spectrum", "eigenvalue samples and KS distances to limit laws",
       register_spectrum},
      {"criteria", "PPT/RED/RLN margins of sampled induced states", register_criteria},
      {"threshold", "Monte Carlo pass-probability curves for entanglement criteria",
       register_threshold},
      {"channel", "random isometry channels: export, Bell outputs, MOE estimates",
       register_channel},
      {"tnorm", "(t)-norm estimates and K_{k,t} membership", register_tnorm},
      {"graph-state", "marginals of random graph states and their entropy",
       register_graph_state},
      {"mps", "bulk window marginals of random matrix product states", register_mps},
      {"projsum", "top eigenvalue of sums of random product projections",
       register_projsum},
      {"list", "list all commands", register_list},
  };
  return table;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> command_catalog() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& cmd : registry()) out.push_back({cmd.name, cmd.description});
  return out;
}

int rmtq_main(int argc, char** argv) {
  CLI::App app{"random-matrix numerics for quantum information", "rmtq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  for (const auto& cmd : registry())
    cmd.configure(app.add_subcommand(cmd.name, cmd.description));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;  // guard or runtime failure
  }
  return 0;
}

}  // namespace rmtq
