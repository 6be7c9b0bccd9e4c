#include "seqbias/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "seqbias/csv.hpp"

namespace seqbias {

namespace {

std::size_t triangle_offset(std::size_t t) { return t * (t - 1) / 2; }

} // namespace

double parametric_score(std::size_t t, long long r) {
  if (t < 1 || r < 1 || static_cast<std::size_t>(r) > t) {
    throw std::domain_error("parametric_score: need 1 <= r <= t, got t=" + std::to_string(t) +
                            " r=" + std::to_string(r));
  }
  return static_cast<double>(r) / static_cast<double>(t + 1);
}

ScoreTable ScoreTable::parametric() { return ScoreTable{}; }

ScoreTable ScoreTable::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::domain_error("ScoreTable: no rows");
  auto values = std::make_shared<std::vector<double>>();
  values->reserve(triangle_offset(rows.size() + 1));
  for (std::size_t t = 1; t <= rows.size(); ++t) {
    if (rows[t - 1].size() != t) {
      throw std::domain_error("ScoreTable: row " + std::to_string(t) + " has " +
                              std::to_string(rows[t - 1].size()) + " entries");
    }
    values->insert(values->end(), rows[t - 1].begin(), rows[t - 1].end());
  }
  ScoreTable table;
  table.values_ = std::move(values);
  table.size_ = rows.size();
  return table;
}

ScoreTable ScoreTable::load_csv(const std::filesystem::path& path) {
  const auto data = csv::read(path);
  const auto ct = data.column("t");
  const auto cr = data.column("r");
  const auto cx = data.column("x");
  std::size_t n = 0;
  for (const auto& row : data.rows) {
    const auto t = csv::parse_integer(row[ct]);
    if (t < 1) throw DataError("score table: position " + row[ct] + " < 1");
    n = std::max(n, static_cast<std::size_t>(t));
  }
  if (n == 0) throw DataError("score table '" + path.string() + "' has no rows");
  std::vector<std::vector<double>> rows(n);
  std::vector<std::vector<char>> filled(n);
  for (std::size_t t = 1; t <= n; ++t) {
    rows[t - 1].assign(t, 0.0);
    filled[t - 1].assign(t, 0);
  }
  for (const auto& row : data.rows) {
    const auto t = static_cast<std::size_t>(csv::parse_integer(row[ct]));
    const auto r = csv::parse_integer(row[cr]);
    if (r < 1 || static_cast<std::size_t>(r) > t) {
      throw DataError("score table: r=" + row[cr] + " outside [1, " + row[ct] + "]");
    }
    auto& slot = filled[t - 1][static_cast<std::size_t>(r - 1)];
    if (slot) throw DataError("score table: duplicate entry t=" + row[ct] + " r=" + row[cr]);
    slot = 1;
    rows[t - 1][static_cast<std::size_t>(r - 1)] = csv::parse_double(row[cx]);
  }
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t r = 1; r <= t; ++r) {
      if (!filled[t - 1][r - 1]) {
        throw DataError("score table: missing entry t=" + std::to_string(t) + " r=" + std::to_string(r));
      }
    }
  }
  return from_rows(rows);
}

std::optional<std::size_t> ScoreTable::max_size() const noexcept {
  if (is_parametric()) return std::nullopt;
  return size_;
}

double ScoreTable::operator()(std::size_t t, long long r) const {
  if (is_parametric()) return parametric_score(t, r);
  if (t < 1 || t > size_ || r < 1 || static_cast<std::size_t>(r) > t) {
    throw std::domain_error("ScoreTable: (t=" + std::to_string(t) + ", r=" + std::to_string(r) +
                            ") outside table of size " + std::to_string(size_));
  }
  return (*values_)[triangle_offset(t) + static_cast<std::size_t>(r - 1)];
}

std::span<const double> ScoreTable::row(std::size_t t) const {
  if (is_parametric()) throw std::domain_error("ScoreTable::row: parametric table has no storage");
  if (t < 1 || t > size_) throw std::domain_error("ScoreTable::row: position out of range");
  return std::span<const double>(*values_).subspan(triangle_offset(t), t);
}

std::optional<MonotonicityViolation> validate_table(const ScoreTable& table) {
  if (table.is_parametric()) return std::nullopt;
  for (std::size_t t = 1; t <= *table.max_size(); ++t) {
    const auto row = table.row(t);
    for (std::size_t r = 1; r < t; ++r) {
      // Written as a negated < so NaN entries are reported too.
      if (!(row[r - 1] < row[r])) {
        return MonotonicityViolation{t, static_cast<int>(r), static_cast<int>(r + 1)};
      }
    }
    if (t == 1 && !std::isfinite(row[0])) return MonotonicityViolation{1, 1, 1};
  }
  return std::nullopt;
}

NoiseSpec::NoiseSpec(Kind kind, double delta, std::vector<double> eps)
    : kind_(kind), delta_(delta), eps_(std::move(eps)) {
  if (!(delta_ >= 0.0 && delta_ <= 1.0)) {
    throw std::domain_error("NoiseSpec: delta " + std::to_string(delta_) + " outside [0, 1]");
  }
  for (const double e : eps_) {
    if (!(std::abs(e) <= delta_)) {
      throw std::domain_error("NoiseSpec: explicit noise " + std::to_string(e) + " outside [-delta, delta]");
    }
  }
}

NoiseSpec NoiseSpec::none() { return NoiseSpec(Kind::none, 0.0, {}); }

NoiseSpec NoiseSpec::uniform(double delta) { return NoiseSpec(Kind::uniform, delta, {}); }

NoiseSpec NoiseSpec::explicit_vector(std::vector<double> eps, double delta) {
  return NoiseSpec(Kind::explicit_vector, delta, std::move(eps));
}

NoiseSpec NoiseSpec::parse(std::string_view text) {
  if (text == "none") return none();
  if (text.starts_with("uniform:")) {
    double delta = 0;
    try {
      delta = csv::parse_double(text.substr(8));
    } catch (const DataError&) {
      throw std::invalid_argument("noise: bad delta in '" + std::string(text) + "'");
    }
    return uniform(delta);
  }
  if (text.starts_with("explicit:")) {
    auto eps = csv::read_values(std::filesystem::path(std::string(text.substr(9))));
    double bound = 0;
    for (const double e : eps) bound = std::max(bound, std::abs(e));
    return explicit_vector(std::move(eps), bound);
  }
  throw std::invalid_argument("noise: expected none | uniform:<delta> | explicit:<path>, got '" +
                              std::string(text) + "'");
}

std::string NoiseSpec::to_string() const {
  switch (kind_) {
  case Kind::none:
    return "none";
  case Kind::uniform:
    return "uniform:" + csv::format_double(delta_);
  case Kind::explicit_vector:
    return "explicit[" + std::to_string(eps_.size()) + "]:" + csv::format_double(delta_);
  }
  return {};
}

ScoreVector::ScoreVector(std::vector<double> values, std::optional<ScoreProvenance> provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::domain_error("ScoreVector: non-finite score at position " + std::to_string(i + 1));
    }
  }
}

std::vector<double> noiseless_scores(const Permutation& perm, const ScoreTable& table) {
  if (!table.covers(perm.size())) {
    throw std::domain_error("score table of size " + std::to_string(*table.max_size()) +
                            " does not cover n=" + std::to_string(perm.size()));
  }
  const auto rel = relative_ranks(perm);
  std::vector<double> x(perm.size());
  for (std::size_t t = 1; t <= perm.size(); ++t) x[t - 1] = table(t, rel.at(t));
  return x;
}

ScoreVector generate_scores(const Permutation& perm, const ScoreTable& table, const NoiseSpec& noise,
                            std::uint64_t seed) {
  auto y = noiseless_scores(perm, table);
  switch (noise.kind()) {
  case NoiseSpec::Kind::none:
    break;
  case NoiseSpec::Kind::uniform: {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> eps(-noise.delta(), noise.delta());
    for (auto& v : y) v += eps(rng);
    break;
  }
  case NoiseSpec::Kind::explicit_vector:
    if (noise.values().size() != y.size()) {
      throw std::domain_error("explicit noise has " + std::to_string(noise.values().size()) +
                              " entries for n=" + std::to_string(y.size()));
    }
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += noise.values()[i];
    break;
  }
  return ScoreVector(std::move(y), ScoreProvenance{noise, seed});
}

std::vector<ConflictPair> detect_conflicts(const ScoreTable& table, const Permutation& truth) {
  const auto x = noiseless_scores(truth, table);
  const auto ranks = truth.ranks();
  std::vector<ConflictPair> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool flipped = (x[i] > x[j] && ranks[i] < ranks[j]) || (x[i] < x[j] && ranks[i] > ranks[j]);
      if (flipped) out.push_back({i + 1, j + 1, x[i], x[j]});
    }
  }
  return out;
}

Permutation exists_conflict_ranking(const ScoreTable& table, std::size_t n) {
  if (n < 4) throw std::domain_error("exists_conflict_ranking: need n >= 4");
  if (!table.covers(n)) throw std::domain_error("exists_conflict_ranking: table does not cover n");

  // Only the first four items matter; later items keep their relative order.
  auto padded = [n](std::vector<int> head) {
    for (std::size_t t = 5; t <= n; ++t) head.push_back(static_cast<int>(t));
    return Permutation(std::move(head));
  };
  for (const auto& head : {std::vector<int>{1, 3, 4, 2}, std::vector<int>{4, 1, 2, 3}}) {
    auto candidate = padded(head);
    if (!detect_conflicts(table, candidate).empty()) return candidate;
  }
  std::vector<int> head{1, 2, 3, 4};
  do {
    auto candidate = padded(head);
    if (!detect_conflicts(table, candidate).empty()) return candidate;
  } while (std::next_permutation(head.begin(), head.end()));
  throw std::domain_error("exists_conflict_ranking: no conflict found; table is not strictly monotone");
}

Permutation adversarial_permutation(std::size_t n) {
  if (n < 8 || n % 4 != 0) {
    throw std::domain_error("adversarial_permutation: n must be a multiple of 4 and >= 8, got " +
                            std::to_string(n));
  }
  const std::size_t m = n / 4;
  std::vector<int> ranks(n);
  for (std::size_t t = 1; t <= n; ++t) {
    std::size_t rank = t;
    if (t > 2 * m) rank = (t % 2 == 1) ? (t + 1) / 2 + m : t / 2 + 2 * m;
    ranks[t - 1] = static_cast<int>(rank);
  }
  return Permutation(std::move(ranks));
}

std::vector<BayesLossRecord> bayes_loss_records(const ResponseFn& response, const Permutation& truth) {
  const auto rel = relative_ranks(truth);
  const double scale = static_cast<double>(truth.size() + 1);
  std::vector<BayesLossRecord> out;
  out.reserve(truth.size());
  for (std::size_t t = 1; t <= truth.size(); ++t) {
    const double v = static_cast<double>(truth.rank_at(t)) / scale;
    const double tau = response(t, rel.at(t));
    out.push_back({t, v, tau, (tau - v) * (tau - v)});
  }
  return out;
}

double exact_bayes_loss(const ResponseFn& response, std::size_t n) {
  if (n < 1 || n > kMaxEnumerationSize) {
    throw std::domain_error("exact_bayes_loss: n must be in [1, " + std::to_string(kMaxEnumerationSize) + "]");
  }
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  double total = 0;
  std::size_t count = 0;
  do {
    for (const auto& rec : bayes_loss_records(response, Permutation(ranks))) total += rec.sq_err;
    ++count;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return total / static_cast<double>(count);
}

} // namespace seqbias
