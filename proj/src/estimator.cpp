#include "schurmarc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <random>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "schurmarc/schatten.hpp"

namespace schurmarc {

namespace {

constexpr double kRelativeGain = 1e-9;
constexpr double kWarmNudge = 1e-2;

struct Svd {
  Eigen::MatrixXcd U, V;
  Eigen::VectorXd s;
};

Svd full_svd(const Eigen::MatrixXcd& A) {
  if (!A.allFinite()) throw std::domain_error("estimator: non-finite iterate");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
}

/// U diag((s / s_max)^{q-1}) V^*, the direction attaining ||A||_q in duality.
Eigen::MatrixXcd dual_direction(const Svd& f, double q) {
  const double top = f.s.size() ? f.s.maxCoeff() : 0.0;
  if (top == 0.0) return Eigen::MatrixXcd::Zero(f.U.rows(), f.V.rows());
  Eigen::VectorXd w = (f.s / top).array().pow(q - 1.0).matrix();
  return f.U * w.asDiagonal() * f.V.adjoint();
}

struct Iterate {
  Eigen::MatrixXcd A;  // ||A||_p = 1
  Svd image;           // SVD of W o A
  double value = 0.0;
};

class Search {
 public:
  Search(const Eigen::MatrixXcd& W, double p) : W_(W), Wbar_(W.conjugate()), p_(p), q_(p / (p - 1.0)) {}

  /// nullopt for a start that vanishes or that m kills
  std::optional<Iterate> prepare(const Eigen::MatrixXcd& A0) const {
    const double n = schatten_norm(A0, p_);
    if (!(n > 0.0)) return std::nullopt;
    return evaluate(A0 / n);
  }

  Iterate evaluate(Eigen::MatrixXcd A) const {
    Iterate it;
    it.A = std::move(A);
    it.image = full_svd(W_.cwiseProduct(it.A));
    it.value = schatten_from_singular_values(it.image.s, p_);
    return it;
  }

  std::optional<Iterate> normalized(const Eigen::MatrixXcd& A) const {
    const double n = schatten_norm(A, p_);
    if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    return evaluate(A / n);
  }

  /// One ascent step; false when nothing gains more than kRelativeGain.
  bool step(Iterate& cur) const {
    const double target = cur.value * (1.0 + kRelativeGain);
    const Eigen::MatrixXcd back = Wbar_.cwiseProduct(dual_direction(cur.image, p_));
    const Svd bs = full_svd(back);
    auto power = normalized(dual_direction(bs, q_));
    if (power && power->value > target) {
      Iterate best = std::move(*power);
      for (double eta = 2.0; eta <= 8.0; eta *= 2.0) {
        auto ext = normalized(cur.A + eta * (best.A - cur.A));
        if (!ext || ext->value <= best.value) break;
        best = std::move(*ext);
      }
      cur = std::move(best);
      return true;
    }
    // gradient of log ||W o A||_p - log ||A||_p at ||A||_p = 1
    const Svd as = full_svd(cur.A);
    const double vp = std::pow(cur.value, p_ - 1.0), top_b = cur.image.s.maxCoeff(), top_a = as.s.maxCoeff();
    Eigen::MatrixXcd grad = back * (std::pow(top_b, p_ - 1.0) / (vp * cur.value)) -
                            dual_direction(as, p_) * std::pow(top_a, p_ - 1.0);
    const double gn = grad.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) return false;
    const double scale = cur.A.norm() / gn;
    for (double t = 0.5; t >= 0x1p-8; t *= 0.5) {
      auto trial = normalized(cur.A + (t * scale) * grad);
      if (trial && trial->value > target) {
        cur = std::move(*trial);
        return true;
      }
    }
    return false;
  }

 private:
  const Eigen::MatrixXcd& W_;
  Eigen::MatrixXcd Wbar_;
  double p_, q_;
};

Eigen::MatrixXcd gaussian_start(Index n, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd A(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) A(i, j) = Complex(normal(gen), normal(gen));
  return A;
}

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("estimator: p must lie in (1, inf)");
}

struct Outcome {
  double value = 0.0;
  Eigen::MatrixXcd witness;
  int restarts = 0;
  int iterations = 0;
  bool zero = false;
};

Outcome run_search(const Eigen::MatrixXcd& W, double p, const SearchBudget& budget, std::uint64_t seed,
                   const Eigen::MatrixXcd* warm) {
  if (budget.restarts < 1) throw std::invalid_argument("estimator: need at least one restart");
  if (budget.iterations < 0) throw std::invalid_argument("estimator: negative iteration budget");
  Outcome out;
  const Index n = W.rows();
  Index bi = 0, bj = 0;
  const double top = n ? W.cwiseAbs().maxCoeff(&bi, &bj) : 0.0;
  if (top == 0.0) {
    out.zero = true;
    out.witness = Eigen::MatrixXcd::Zero(n, n);
    if (n) out.witness(0, 0) = 1.0;
    return out;
  }
  const Search search(W, p);
  struct Run {
    std::optional<Iterate> result;
    int iterations = 0;
  };
  std::vector<Run> runs(static_cast<std::size_t>(budget.restarts));
  auto run_one = [&](int r) {
    Eigen::MatrixXcd A0;
    if (r == 0 && warm) {
      // a padded witness is a fixed point of the power step; nudge it off the old window
      const Eigen::MatrixXcd noise = gaussian_start(n, seed, 0);
      A0 = *warm + (kWarmNudge * warm->norm() / noise.norm()) * noise;
    } else if (r == 0) {
      A0 = Eigen::MatrixXcd::Zero(n, n);
      A0(bi, bj) = 1.0;
    } else {
      A0 = gaussian_start(n, seed, r);
    }
    Run& run = runs[static_cast<std::size_t>(r)];
    run.result = search.prepare(A0);
    if (!run.result) return;
    for (int it = 0; it < budget.iterations; ++it) {
      ++run.iterations;
      if (!search.step(*run.result)) break;
    }
  };
  int workers = budget.threads > 0 ? budget.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, budget.restarts);
  if (workers == 1) {
    for (int r = 0; r < budget.restarts; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r; (r = next++) < budget.restarts;) {
          try {
            run_one(r);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  bool have = false;
  if (warm) {
    if (auto base = search.prepare(*warm)) {
      out.value = base->value;
      out.witness = std::move(base->A);
      have = true;
    }
  }
  // ordered by restart index, first maximum wins
  for (Run& run : runs) {
    ++out.restarts;
    out.iterations += run.iterations;
    if (run.result && (!have || run.result->value > out.value)) {
      out.value = run.result->value;
      out.witness = std::move(run.result->A);
      have = true;
    }
  }
  if (!have) {
    out.witness = Eigen::MatrixXcd::Zero(n, n);
    out.witness(bi, bj) = 1.0;
  }
  // the reported value is the ratio of the reported witness
  out.value = schatten_norm(W.cwiseProduct(out.witness), p) / schatten_norm(out.witness, p);
  return out;
}

void check_window(const Box& window, Index cap) {
  if (window.empty()) throw std::invalid_argument("estimator: empty window");
  if (window.size() > cap)
    throw std::length_error("estimator: window of " + std::to_string(window.size()) + " points exceeds the cap " +
                            std::to_string(cap));
}

Box amplified_window(const Box& window, int k) {
  Point lo = window.lo(), hi = window.hi();
  lo.push_back(0);
  hi.push_back(k);
  return Box(lo, hi);
}

}  // namespace

LabeledMatrix apply_schur(const DiscreteSymbol& m, const LabeledMatrix& A) {
  if (m.dim() != A.rows().dim() || m.dim() != A.cols().dim())
    throw std::invalid_argument("apply_schur: symbol and matrix dimensions differ");
  return LabeledMatrix(A.rows(), A.cols(), tabulate(m, A.rows(), A.cols()).cwiseProduct(A.entries()));
}

DiscreteSymbol amplify(const DiscreteSymbol& m) {
  return DiscreteSymbol::callback(
      m.dim() + 1,
      [m](const Point& s, const Point& t) {
        return m(Point(s.begin(), s.end() - 1), Point(t.begin(), t.end() - 1));
      },
      m.name() + "(x)1");
}

EstimateResult norm_lower_bound(const DiscreteSymbol& m, const Box& window, double p, const SearchBudget& budget,
                                std::uint64_t seed, const LabeledMatrix* warm_start, Index window_cap) {
  require_exponent(p);
  if (window.dim() != m.dim()) throw std::invalid_argument("norm_lower_bound: window dimension mismatch");
  check_window(window, window_cap);
  if (warm_start && (warm_start->rows() != window || warm_start->cols() != window))
    throw std::invalid_argument("norm_lower_bound: warm start lives on another window");
  const Eigen::MatrixXcd W = tabulate(m, window, window);
  Outcome o = run_search(W, p, budget, seed, warm_start ? &warm_start->entries() : nullptr);
  EstimateResult r;
  r.value = o.value;
  r.witness = LabeledMatrix::square(window, std::move(o.witness));
  r.p = p;
  r.window = window;
  r.restarts = o.restarts;
  r.iterations = o.iterations;
  r.seed = seed;
  r.zero_symbol = o.zero;
  return r;
}

EstimateResult cb_lower_bound(const DiscreteSymbol& m, const Box& window, double p, int k, const SearchBudget& budget,
                              std::uint64_t seed, Index window_cap) {
  if (k < 1) throw std::invalid_argument("cb_lower_bound: k must be positive");
  EstimateResult base = norm_lower_bound(m, window, p, budget, seed, nullptr, window_cap);
  if (k == 1) return base;
  check_window(amplified_window(window, k), window_cap);
  const Index n = window.size(), nk = n * k;
  const Eigen::MatrixXcd W = tabulate(m, window, window);
  Eigen::MatrixXcd Wk(nk, nk), warm = Eigen::MatrixXcd::Zero(nk, nk);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Wk.block(i * k, j * k, k, k).setConstant(W(i, j));
      warm(i * k, j * k) = base.witness.entries()(i, j);
    }
  Outcome o = run_search(Wk, p, budget, seed, &warm);
  EstimateResult r;
  r.window = amplified_window(window, k);
  r.value = o.value;
  r.witness = LabeledMatrix::square(r.window, std::move(o.witness));
  r.p = p;
  r.amplification = k;
  r.restarts = base.restarts + o.restarts;
  r.iterations = base.iterations + o.iterations;
  r.seed = seed;
  r.zero_symbol = o.zero;
  return r;
}

double reference_bound(double p, int exponent) { return std::pow(p * p / (p - 1.0), exponent); }

std::vector<GrowthRow> growth_experiment(const DiscreteSymbol& m, const std::vector<double>& p_list,
                                         std::vector<Index> n_list, const SearchBudget& budget, std::uint64_t seed,
                                         Index window_cap) {
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  for (Index N : n_list)
    if (N < 1) throw std::invalid_argument("growth_experiment: N must be positive");
  const int d = m.dim();
  std::vector<GrowthRow> rows;
  for (double p : p_list) {
    require_exponent(p);
    std::optional<LabeledMatrix> previous;
    for (Index N : n_list) {
      const Box window = Box::cube(d, -N, N);
      EstimateResult est;
      if (!previous) {
        est = norm_lower_bound(m, window, p, budget, seed, nullptr, window_cap);
      } else {
        check_window(window, window_cap);
        LabeledMatrix warm(window, window);
        const Box& old = previous->rows();
        old.for_each([&](const Point& s) {
          old.for_each([&](const Point& t) { warm.at(s, t) = previous->at(s, t); });
        });
        SearchBudget b = budget;
        b.restarts = std::max(1, budget.growth_restarts);
        if (budget.growth_iterations >= 0) b.iterations = budget.growth_iterations;
        est = norm_lower_bound(m, window, p, b, seed, &warm, window_cap);
      }
      GrowthRow row;
      row.symbol = m.name();
      row.dim = d;
      row.p = p;
      row.N = N;
      row.estimate = est.value;
      row.reference = reference_bound(p, d + 2);
      row.ratio = row.estimate / row.reference;
      row.restarts = est.restarts;
      row.iterations = est.iterations;
      row.seed = seed;
      rows.push_back(row);
      previous = std::move(est.witness);
    }
  }
  return rows;
}

}  // namespace schurmarc
