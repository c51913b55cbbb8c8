#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "culogic/carrier.hpp"
#include "culogic/rational.hpp"

namespace culogic {

/// A [0,1]-valued predicate on a finite carrier: one exact truth value per
/// element. 0 is truth. Immutable after construction.
class Predicate {
public:
  Predicate(Carrier carrier, std::vector<Value> values)
      : carrier_(std::move(carrier)), values_(std::move(values)) {
    if (values_.size() != carrier_.size())
      throw Error("predicate table size does not match carrier");
  }

  static Predicate constant(const Carrier& x, const Value& v) {
    return Predicate(x, std::vector<Value>(x.size(), v));
  }

  static Predicate tabulate(const Carrier& x,
                            const std::function<Value(std::size_t)>& f) {
    std::vector<Value> vs;
    vs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) vs.push_back(f(i));
    return Predicate(x, std::move(vs));
  }

  const Carrier& carrier() const { return carrier_; }
  const Value& at(std::size_t i) const { return values_.at(i); }
  const std::vector<Value>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.carrier_ == b.carrier_ && a.values_ == b.values_;
  }

private:
  Carrier carrier_;
  std::vector<Value> values_;
};

/// {x : alpha(x) = 0}, as sorted element indices.
inline std::vector<std::size_t> zero_set(const Predicate& alpha) {
  std::vector<std::size_t> zs;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha.at(i).is_zero()) zs.push_back(i);
  return zs;
}

/// A step modulus of uniform continuity: a finite increasing grid of
/// epsilon breakpoints with an increasing delta at each. Certifies one
/// ordering judgment alpha <= beta: whenever alpha(x) <= delta(eps),
/// beta(x) <= eps.
class Modulus {
public:
  Modulus(std::vector<Rat> grid, std::vector<Rat> deltas)
      : grid_(std::move(grid)), deltas_(std::move(deltas)) {
    if (grid_.empty() || grid_.size() != deltas_.size())
      throw Error("modulus grid/delta size mismatch");
    Rat zero(0, 1), one(1, 1);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (grid_[i] <= zero || grid_[i] > one) throw Error("modulus grid point outside (0,1]");
      if (deltas_[i] <= zero || deltas_[i] > one) throw Error("modulus delta outside (0,1]");
      if (i > 0 && (grid_[i] <= grid_[i - 1] || deltas_[i] < deltas_[i - 1]))
        throw Error("modulus must be increasing");
    }
  }

  const std::vector<Rat>& grid() const { return grid_; }
  const std::vector<Rat>& deltas() const { return deltas_; }

  /// Delta at the largest grid point <= eps; below the grid, the first delta.
  Rat operator()(const Rat& eps) const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid_.size(); ++i)
      if (grid_[i] <= eps) best = i;
    return deltas_[best];
  }

private:
  std::vector<Rat> grid_;
  std::vector<Rat> deltas_;
};

/// The default epsilon grid {1/2^k : k = 0..resolution}, ascending.
inline std::vector<Rat> dyadic_grid(unsigned resolution = 10) {
  std::vector<Rat> g;
  for (int k = (int)resolution; k >= 0; --k) g.push_back(Rat(1, 1LL << k));
  return g;
}

struct LeqVerdict {
  bool holds = false;
  std::optional<Modulus> modulus;          // present iff holds
  std::optional<std::size_t> witness;      // element with alpha=0, beta!=0
};

/// Decides alpha <= beta in the uniform-continuity preorder. On a finite
/// carrier this is exactly zero-set inclusion; when it holds, the verdict
/// carries the pointwise-largest step modulus on the given epsilon grid.
///
/// The delta chosen at eps is the largest attained value of alpha that
/// still satisfies "alpha(x) <= delta implies beta(x) <= eps"; if even the
/// least attained positive value fails, half of it is used instead, so the
/// certificate stays canonical and strictly positive.
inline LeqVerdict leq(const Predicate& alpha, const Predicate& beta,
                      const std::vector<Rat>& grid = dyadic_grid()) {
  require_same_carrier(alpha.carrier(), beta.carrier(), "leq");
  LeqVerdict verdict;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha.at(i).is_zero() && !beta.at(i).is_zero()) {
      verdict.holds = false;
      verdict.witness = i;
      return verdict;
    }
  }
  verdict.holds = true;

  std::set<Rat> attained;  // positive attained alpha values, ascending
  for (const Value& v : alpha.values())
    if (!v.is_zero()) attained.insert(v.rat());

  std::vector<Rat> deltas;
  deltas.reserve(grid.size());
  for (const Rat& eps : grid) {
    // m = min alpha over the bad set {x : beta(x) > eps}; feasible deltas
    // are exactly (0, m).
    std::optional<Rat> m;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (beta.at(i).rat() > eps)
        if (!m || alpha.at(i).rat() < *m) m = alpha.at(i).rat();
    if (!m) {
      deltas.push_back(Rat(1, 1));
      continue;
    }
    std::optional<Rat> best;
    for (const Rat& candidate : attained) {
      if (candidate < *m) best = candidate;
      else break;
    }
    deltas.push_back(best ? *best : *m / Rat(2, 1));
  }
  verdict.modulus = Modulus(grid, std::move(deltas));
  return verdict;
}

/// Exhaustively re-verifies a modulus certificate against its judgment.
inline bool verify_modulus(const Modulus& m, const Predicate& alpha,
                           const Predicate& beta) {
  if (alpha.carrier() != beta.carrier()) return false;
  for (const Rat& eps : m.grid()) {
    Rat delta = m(eps);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha.at(i).rat() <= delta && beta.at(i).rat() > eps) return false;
  }
  return true;
}

/// alpha and beta are isomorphic: each below the other (zero sets agree).
inline bool predicates_iso(const Predicate& alpha, const Predicate& beta) {
  return leq(alpha, beta).holds && leq(beta, alpha).holds;
}

/// An increasing, continuous, piecewise-linear residual bound F with
/// F(0) = 0: the third face of the ordering (beta(x) <= F(alpha(x))).
class ResidualBound {
public:
  /// Breakpoints must start at (0,0), have strictly increasing abscissae
  /// ending at 1, and non-decreasing ordinates.
  explicit ResidualBound(std::vector<std::pair<Rat, Rat>> points)
      : points_(std::move(points)) {
    if (points_.empty() || !points_.front().first.is_zero() ||
        !points_.front().second.is_zero())
      throw Error("residual bound must start at (0,0)");
    if (points_.back().first != Rat(1, 1))
      throw Error("residual bound must extend to 1");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (points_[i].first <= points_[i - 1].first)
        throw Error("residual breakpoints must be strictly increasing");
      if (points_[i].second < points_[i - 1].second)
        throw Error("residual bound must be increasing");
    }
  }

  const std::vector<std::pair<Rat, Rat>>& points() const { return points_; }

  /// Exact evaluation by linear interpolation.
  Rat operator()(const Rat& t) const {
    if (t <= points_.front().first) return points_.front().second;
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (t <= points_[i].first) {
        const auto& [t0, v0] = points_[i - 1];
        const auto& [t1, v1] = points_[i];
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      }
    }
    return points_.back().second;
  }

private:
  std::vector<std::pair<Rat, Rat>> points_;
};

/// Builds a residual bound for a holding judgment alpha <= beta by the
/// monotone completion of t |-> max { beta(x) : alpha(x) <= t }.
inline ResidualBound derive_residual(const Predicate& alpha, const Predicate& beta) {
  require_same_carrier(alpha.carrier(), beta.carrier(), "derive_residual");
  if (!leq(alpha, beta).holds)
    throw PreconditionError("derive_residual: ordering does not hold");

  std::set<Rat> ts;
  for (const Value& v : alpha.values()) ts.insert(v.rat());
  std::vector<std::pair<Rat, Rat>> pts;
  pts.emplace_back(Rat(0, 1), Rat(0, 1));
  Rat running(0, 1);
  for (const Rat& t : ts) {
    if (t.is_zero()) continue;  // max beta over {alpha = 0} is 0 when leq holds
    Rat best(0, 1);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha.at(i).rat() <= t) best = max(best, beta.at(i).rat());
    running = max(running, best);
    pts.emplace_back(t, running);
  }
  if (pts.back().first != Rat(1, 1)) pts.emplace_back(Rat(1, 1), running);
  return ResidualBound(std::move(pts));
}

/// Checks a residual bound against its judgment.
inline bool verify_residual(const ResidualBound& f, const Predicate& alpha,
                            const Predicate& beta) {
  if (!f(Rat(0, 1)).is_zero()) return false;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (f(alpha.at(i).rat()) < beta.at(i).rat()) return false;
  return true;
}

/// Deterministic 64-bit generator (splitmix64). Used everywhere randomness
/// is needed so that runs are reproducible bit-for-bit across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : (std::size_t)(next() % n); }

  bool coin() { return (next() & 1) != 0; }

private:
  std::uint64_t state_;
};

/// The sequence characterisation of the ordering: alpha <= beta iff every
/// sequence driving alpha to 0 drives beta to 0. On a finite carrier a
/// sequence converges to 0 only by eventually sitting inside the zero set,
/// so sampled sequences are random prefixes followed by a constant tail in
/// zeros(alpha). The first `trials` tails sweep zeros(alpha) in a seeded
/// permutation, so the test is exhaustive once trials >= |zeros(alpha)|.
inline bool check_sequence_characterization(const Predicate& alpha,
                                            const Predicate& beta,
                                            std::size_t trials,
                                            std::uint64_t seed) {
  require_same_carrier(alpha.carrier(), beta.carrier(), "sequence check");
  std::vector<std::size_t> zeros = zero_set(alpha);
  if (zeros.empty()) return true;  // no sequence has alpha -> 0

  Rng rng(seed);
  for (std::size_t i = zeros.size(); i > 1; --i)
    std::swap(zeros[i - 1], zeros[rng.below(i)]);

  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t tail = t < zeros.size() ? zeros[t] : zeros[rng.below(zeros.size())];
    // Random finite prefix; irrelevant to the limit but part of the sequence.
    std::size_t prefix = rng.below(8);
    for (std::size_t k = 0; k < prefix; ++k) (void)rng.below(alpha.size());
    if (!beta.at(tail).is_zero()) return false;  // beta(x_n) -> beta(tail) != 0
  }
  return true;
}

} // namespace culogic
