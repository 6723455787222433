#include "schurmarc/marcinkiewicz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schurmarc {

std::string to_string(Orientation o) { return o == Orientation::left ? "left" : "right"; }

double ConditionReport::overall() const {
  double top = 0.0;
  for (const auto& e : table) top = std::max(top, e.sum);
  for (const auto& e : continuous_table) top = std::max(top, e.integral);
  return top;
}

namespace {

constexpr Orientation kOrientations[] = {Orientation::left, Orientation::right};

Index pow2(int k) { return Index{1} << k; }

/// t -> m(s, s+t) or m(s+t, s), recording sup |m| on the way.
class OrientedSymbol {
 public:
  OrientedSymbol(const DiscreteSymbol& m, double& sup) : m_(m), sup_(sup) {}

  Complex operator()(const Point& s, const Point& t, Orientation o) const {
    Point shifted(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) shifted[i] = s[i] + t[i];
    const Complex v = o == Orientation::left ? m_(s, shifted) : m_(shifted, s);
    sup_ = std::max(sup_, std::abs(v));
    return v;
  }

 private:
  const DiscreteSymbol& m_;
  double& sup_;
};

void finish(ConditionReport& r) {
  r.level_sup.assign(static_cast<std::size_t>(r.level_max - r.level_min + 1), 0.0);
  for (const auto& e : r.table) {
    auto& slot = r.level_sup[static_cast<std::size_t>(e.level - r.level_min)];
    slot = std::max(slot, e.sum);
  }
  const auto& ls = r.level_sup;
  const std::size_t n = ls.size();
  r.non_uniform = n >= 3 && ls[n - 1] > 0.0 && ls[n - 1] >= 1.5 * ls[n - 2] && ls[n - 2] >= 1.5 * ls[n - 3];
}

void require_dim(const DiscreteSymbol& m, const Box& base_range, int d, const char* who) {
  if (m.dim() != d) throw std::invalid_argument(std::string(who) + ": symbol dimension mismatch");
  if (base_range.dim() != d) throw std::invalid_argument(std::string(who) + ": base range dimension mismatch");
  if (base_range.empty()) throw std::invalid_argument(std::string(who) + ": empty base range");
}

}  // namespace

ConditionReport check_1d(const DiscreteSymbol& m, int n_max, const Box& base_range, BlockDifferences differences) {
  require_dim(m, base_range, 1, "check_1d");
  if (n_max < 1) throw std::invalid_argument("check_1d: n_max must be at least 1");
  ConditionReport r;
  r.checker = "1d";
  r.symbol = m.name();
  r.dim = 1;
  r.level_min = 1;
  r.level_max = n_max;
  r.base_range = base_range;
  r.differences = differences == BlockDifferences::full ? "full" : "interior";
  OrientedSymbol val(m, r.C1);
  for (int N = 1; N <= n_max; ++N) {
    const Index h = pow2(N - 1), f = pow2(N);
    // halves [-f+1, -h] and [h, f-1]
    const std::pair<Index, Index> halves[] = {{-f + 1, -h}, {h, f - 1}};
    base_range.for_each([&](const Point& s) {
      for (Orientation o : kOrientations) {
        double sum = 0.0;
        for (const auto& [lo, hi] : halves) {
          const Index last = differences == BlockDifferences::full ? hi : hi - 1;
          if (last < lo) continue;
          Complex prev = val(s, {lo}, o);
          for (Index t = lo; t <= last; ++t) {
            const Complex next = val(s, {t + 1}, o);
            sum += std::abs(next - prev);
            prev = next;
          }
        }
        r.table.push_back({N, o, "t1", s, sum});
        r.C2 = std::max(r.C2, sum);
      }
    });
  }
  finish(r);
  return r;
}

ConditionReport check_2d(const DiscreteSymbol& m, int k_max, const Box& base_range) {
  require_dim(m, base_range, 2, "check_2d");
  if (k_max < 1) throw std::invalid_argument("check_2d: k_max must be at least 1");
  ConditionReport r;
  r.checker = "2d";
  r.symbol = m.name();
  r.dim = 2;
  r.level_min = 1;
  r.level_max = k_max;
  r.base_range = base_range;
  OrientedSymbol val(m, r.C1);
  const AlphaMask d1(2, 0b01), d2(2, 0b10), d12 = AlphaMask::ones(2);
  for (int k = 1; k <= k_max; ++k) {
    const Index h = pow2(k - 1), f = pow2(k);
    base_range.for_each([&](const Point& s) {
      for (Orientation o : kOrientations) {
        const LatticeFunction phi = [&](const Point& t) { return val(s, t, o); };
        for (int sign : {1, -1}) {
          const Index a = sign * h;
          const char* tag = sign > 0 ? "+" : "-";
          double e1 = 0.0, e2 = 0.0;
          for (Index t = -f + 1; t < f; ++t) {
            e1 += std::abs(forward_difference(phi, d1, {t, a}));
            e2 += std::abs(forward_difference(phi, d2, {a, t}));
          }
          r.table.push_back({k, o, std::string("t1") + tag, s, e1});
          r.table.push_back({k, o, std::string("t2") + tag, s, e2});
          r.table.push_back({k, o, std::string("edge") + tag, s, e1 + e2});
          r.C2 = std::max(r.C2, e1 + e2);
        }
        double mixed = 0.0;
        for (const Point& t : dyadic_block_points({k, 2})) mixed += std::abs(forward_difference(phi, d12, t));
        r.table.push_back({k, o, "11", s, mixed});
        r.C3 = std::max(r.C3, mixed);
      }
    });
  }
  finish(r);
  return r;
}

ConditionReport check_dd(const DiscreteSymbol& m, int d, int k_max, const Box& base_range, int dimension_cap) {
  if (d < 1 || d > dimension_cap)
    throw std::invalid_argument("check_dd: dimension " + std::to_string(d) + " outside [1, " +
                                std::to_string(dimension_cap) + "]");
  require_dim(m, base_range, d, "check_dd");
  if (k_max < 1) throw std::invalid_argument("check_dd: k_max must be at least 1");
  ConditionReport r;
  r.checker = "dd";
  r.symbol = m.name();
  r.dim = d;
  r.level_min = 1;
  r.level_max = k_max;
  r.base_range = base_range;
  OrientedSymbol val(m, r.C1);
  const auto masks = AlphaMask::all(d);
  for (int k = 1; k <= k_max; ++k) {
    const Index h = pow2(k - 1), f = pow2(k);
    base_range.for_each([&](const Point& s) {
      for (Orientation o : kOrientations) {
        const LatticeFunction phi = [&](const Point& t) { return val(s, t, o); };
        for (const AlphaMask& alpha : masks) {
          if (alpha.is_zero()) continue;
          const int r_alpha = alpha.count();
          const bool full_mask = r_alpha == d;
          const Point anchor(static_cast<std::size_t>(d - r_alpha), h);
          double sum = 0.0;
          // with the anchor at 2^{k-1}, t lies in E_k iff |t_alpha|_inf < 2^k
          Box::cube(r_alpha, -f + 1, f).for_each([&](const Point& ta) {
            if (full_mask && sup_norm(ta) < h) return;
            sum += std::abs(forward_difference(phi, alpha, alpha_merge(ta, anchor, alpha)));
          });
          r.table.push_back({k, o, alpha.to_string(), s, sum});
          if (r_alpha == 1)
            r.C2 = std::max(r.C2, sum);
          else
            r.C3 = std::max(r.C3, sum);
        }
      }
    });
  }
  finish(r);
  return r;
}

}  // namespace schurmarc
