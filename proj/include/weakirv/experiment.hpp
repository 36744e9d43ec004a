#pragma once

#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "weakirv/rules.hpp"
#include "weakirv/stv.hpp"
#include "weakirv/synth.hpp"

namespace weakirv {

enum class Dataset { ImpartialCulture, Mallows, Euclidean, Resample };
enum class Weakener { None, CoinFlip, Radius };

inline std::string to_string(Dataset d) {
  switch (d) {
    case Dataset::ImpartialCulture: return "impartial-culture";
    case Dataset::Mallows: return "mallows";
    case Dataset::Euclidean: return "euclidean";
    case Dataset::Resample: return "resample";
  }
  return {};
}

inline std::string to_string(Weakener w) {
  switch (w) {
    case Weakener::None: return "none";
    case Weakener::CoinFlip: return "coin-flip";
    case Weakener::Radius: return "radius";
  }
  return {};
}

struct ExperimentConfig {
  Dataset dataset = Dataset::ImpartialCulture;
  unsigned voters = 500;
  unsigned candidates = 10;
  unsigned seats = 0;  // 0: single-winner rules; otherwise the STV rules
  unsigned dim = 2;
  Shape shape = Shape::Square;
  unsigned mallows_centers = 4;
  double mallows_phi = 0.5;
  std::optional<Profile> source;  // Resample only
  bool full_rankings_only = true;
  Weakener weakener = Weakener::CoinFlip;
  double parameter = 0.0;  // coin probability p or radius r
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const {
    if (voters == 0) throw PreconditionError("experiment needs at least one voter");
    if (dataset != Dataset::Resample && (candidates < 1 || candidates > 20))
      throw PreconditionError("experiment candidate count must lie in 1..20");
    if (dataset == Dataset::Resample && !source) throw PreconditionError("resampling needs a source profile");
    if (weakener == Weakener::CoinFlip && !(parameter >= 0.0 && parameter < 1.0))
      throw PreconditionError("coin-flip probability must lie in [0, 1)");
    if (weakener == Weakener::Radius && !(parameter >= 0.0))
      throw PreconditionError("radius must be nonnegative");
    if (weakener == Weakener::Radius && dataset != Dataset::Euclidean)
      throw PreconditionError("the radius weakener needs a Euclidean dataset");
    if (dataset == Dataset::Euclidean && dim != 1 && dim != 2) throw PreconditionError("dimension must be 1 or 2");
    if (seats > 0 && dataset != Dataset::Resample && seats > candidates)
      throw PreconditionError("more seats than candidates");
  }
};

struct ExperimentRow {
  std::size_t sample = 0;
  std::uint64_t sample_seed = 0;
  std::string rule;
  std::vector<std::string> winners;
  std::optional<double> borda;  // mean over winners of Borda(original)/n
  std::optional<bool> condorcet_exists;
  std::optional<bool> condorcet_hit;
  std::optional<double> distortion;  // mean over winners
  std::optional<bool> agrees_irv;
  std::vector<Point> winner_positions;
};

namespace detail {

struct Sample {
  Profile original;  // linear
  Profile weak;
  std::optional<EuclideanInstance> geometry;
};

inline Sample draw_sample(const ExperimentConfig& cfg, std::uint64_t sample_seed) {
  const auto base_seed = mix_seed(sample_seed, 1);
  const auto weak_seed = mix_seed(sample_seed, 2);
  Sample s;
  switch (cfg.dataset) {
    case Dataset::ImpartialCulture:
      s.original = sample_impartial_culture(cfg.voters, cfg.candidates, base_seed);
      break;
    case Dataset::Mallows:
      s.original = sample_mallows_mixture(cfg.voters, cfg.candidates, cfg.mallows_centers, cfg.mallows_phi, base_seed);
      break;
    case Dataset::Euclidean:
      s.geometry = sample_euclidean(cfg.voters, cfg.candidates, cfg.dim, cfg.shape, base_seed);
      s.original = s.geometry->profile;
      break;
    case Dataset::Resample:
      s.original = resample(*cfg.source, cfg.voters, base_seed, cfg.full_rankings_only);
      break;
  }
  if (cfg.weakener == Weakener::CoinFlip && cfg.parameter > 0.0)
    s.weak = coin_flip_weaken(s.original, cfg.parameter, weak_seed);
  else if (cfg.weakener == Weakener::Radius && cfg.parameter > 0.0)
    s.weak = radius_weaken(*s.geometry, cfg.parameter);
  else
    s.weak = s.original;
  return s;
}

inline std::vector<ExperimentRow> evaluate_sample(const ExperimentConfig& cfg, std::size_t index) {
  const auto sample_seed = mix_seed(cfg.seed, index);
  auto s = draw_sample(cfg, sample_seed);
  const auto weak = canonicalize(s.weak);
  std::vector<ExperimentRow> rows;

  auto base_row = [&](std::string rule, CandidateSet winners) {
    ExperimentRow row;
    row.sample = index;
    row.sample_seed = sample_seed;
    row.rule = std::move(rule);
    for (auto c : winners) row.winners.push_back(weak.name(c));
    if (s.geometry)
      for (auto c : winners) row.winner_positions.push_back(s.geometry->candidates[c]);
    return row;
  };

  if (cfg.seats > 0) {
    StvConfig stv;
    rows.push_back(base_row("approval-stv", approval_stv(weak, cfg.seats, stv).committee));
    rows.push_back(base_row("split-stv", split_stv(weak, cfg.seats, stv).committee));
    return rows;
  }

  const bool linear = s.original.is_linear();
  std::optional<std::vector<Rational>> borda;
  std::optional<CandidateId> condorcet;
  std::optional<CandidateSet> irv;
  std::optional<std::vector<double>> cost;
  if (linear) {
    borda = borda_scores(s.original);
    condorcet = condorcet_winner(s.original);
    irv = linear_irv(canonicalize(s.original));
  }
  if (s.geometry) cost = candidate_costs(*s.geometry);
  const double n = s.original.total_weight().get_d();

  auto metrics = [&](std::string rule, CandidateSet winners) {
    auto row = base_row(std::move(rule), winners);
    if (borda) {
      double sum = 0;
      for (auto c : winners) sum += (*borda)[c].get_d() / n;
      row.borda = sum / winners.size();
      row.condorcet_exists = condorcet.has_value();
      row.condorcet_hit = condorcet && winners.contains(*condorcet);
      row.agrees_irv = winners.intersects(*irv);
    }
    if (cost) {
      double sum = 0;
      for (auto c : winners) sum += distortion_from_costs(*cost, c);
      row.distortion = sum / winners.size();
    }
    return row;
  };

  if (irv) rows.push_back(metrics("irv", *irv));
  rows.push_back(metrics("approval-irv", approval_irv(weak)));
  rows.push_back(metrics("split-irv", split_irv(weak)));
  return rows;
}

}  // namespace detail

// Rows ordered by sample, then rule. Samples are independent and seeded by
// mix_seed(seed, sample), so the output does not depend on `workers`. For a
// fixed seed the underlying linear profiles are the same for every weakener
// parameter.
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<ExperimentRow>> per_sample(cfg.samples);
  const unsigned workers = std::max(1u, cfg.workers);
  std::exception_ptr failure;
  std::mutex lock;
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < cfg.samples; i += workers) per_sample[i] = detail::evaluate_sample(cfg, i);
    } catch (...) {
      std::lock_guard guard(lock);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<ExperimentRow> rows;
  for (auto& part : per_sample)
    for (auto& r : part) rows.push_back(std::move(r));
  return rows;
}

inline std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "dataset=" << to_string(cfg.dataset) << ";n=" << cfg.voters << ";m=" << cfg.candidates
     << ";k=" << cfg.seats;
  if (cfg.dataset == Dataset::Euclidean) os << ";dim=" << cfg.dim << ";shape=" << to_string(cfg.shape);
  if (cfg.dataset == Dataset::Mallows) os << ";centers=" << cfg.mallows_centers << ";phi=" << cfg.mallows_phi;
  if (cfg.dataset == Dataset::Resample) os << ";full_rankings_only=" << (cfg.full_rankings_only ? 1 : 0);
  os << ";weakener=" << to_string(cfg.weakener) << ";parameter=" << cfg.parameter << ";samples=" << cfg.samples
     << ";seed=" << cfg.seed;
  return os.str();
}

inline constexpr const char* kExperimentCsvHeader =
    "sample,sample_seed,rule,winners,borda_norm,condorcet_exists,condorcet_hit,distortion,agrees_irv,"
    "winner_positions";

// One metadata comment line, the fixed header, then one row per
// (sample, rule). Lists inside a cell are ';'-separated; a position is x:y.
inline void write_experiment_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<ExperimentRow>& rows) {
  os << "# " << describe(cfg) << "\n" << kExperimentCsvHeader << "\n";
  auto opt_bool = [](const std::optional<bool>& b) { return b ? std::string(*b ? "1" : "0") : std::string(); };
  auto opt_num = [](const std::optional<double>& d) {
    if (!d) return std::string();
    std::ostringstream s;
    s.precision(17);
    s << *d;
    return s.str();
  };
  for (auto& r : rows) {
    os << r.sample << "," << r.sample_seed << "," << r.rule << ",";
    for (std::size_t i = 0; i < r.winners.size(); ++i) os << (i ? ";" : "") << r.winners[i];
    os << "," << opt_num(r.borda) << "," << opt_bool(r.condorcet_exists) << "," << opt_bool(r.condorcet_hit) << ","
       << opt_num(r.distortion) << "," << opt_bool(r.agrees_irv) << ",";
    for (std::size_t i = 0; i < r.winner_positions.size(); ++i) {
      std::ostringstream p;
      p.precision(17);
      p << r.winner_positions[i][0] << ":" << r.winner_positions[i][1];
      os << (i ? ";" : "") << p.str();
    }
    os << "\n";
  }
}

}  // namespace weakirv
