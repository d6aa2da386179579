#include "steiner/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lexmin.hpp"
#include "steiner/canon.hpp"

namespace steiner::analysis {

namespace {

// Orderly search over sorted block sequences; the next block always covers
// the smallest uncovered pair.
class StsSearch {
 public:
  explicit StsSearch(int v) : v_(v), block_target_(v * (v - 1) / 6) {
    pair_used_.assign(static_cast<std::size_t>(v) * v, 0);
  }

  std::vector<TripleSystem> run() {
    extend();
    return std::move(found_);
  }

 private:
  bool pair_free(int a, int b) const { return !pair_used_[a * v_ + b]; }

  void mark(const Block& b, std::uint8_t value) {
    pair_used_[b[0] * v_ + b[1]] = value;
    pair_used_[b[0] * v_ + b[2]] = value;
    pair_used_[b[1] * v_ + b[2]] = value;
  }

  void extend() {
    if (static_cast<int>(blocks_.size()) == block_target_) {
      found_.push_back(TripleSystem(v_, blocks_));
      return;
    }
    // Smallest uncovered pair; its block is forced to {a, b, c} with c > b.
    int a = -1, b = -1;
    for (int x = 0; x < v_ && a < 0; ++x) {
      for (int y = x + 1; y < v_; ++y) {
        if (pair_free(x, y)) {
          a = x;
          b = y;
          break;
        }
      }
    }
    if (a < 0) return;
    for (int c = b + 1; c < v_; ++c) {
      if (!pair_free(a, c) || !pair_free(b, c)) continue;
      Block blk{static_cast<Point>(a), static_cast<Point>(b), static_cast<Point>(c)};
      blocks_.push_back(blk);
      mark(blk, 1);
      if (detail::is_lexmin_block_sequence(v_, blocks_)) extend();
      mark(blk, 0);
      blocks_.pop_back();
    }
  }

  int v_, block_target_;
  std::vector<std::uint8_t> pair_used_;
  std::vector<Block> blocks_;
  std::vector<TripleSystem> found_;
};

}  // namespace

std::vector<TripleSystem> classify_small_sts(int v) {
  if (!is_admissible_order(v)) throw input_error("order admits no triple system");
  if (v > 15) throw resource_error("direct classification supported up to order 15");
  if (v == 1) return {TripleSystem(1, {})};
  StsSearch search(v);
  return search.run();
}

MassResult mass_check(const std::vector<DesignLedgerRow>& designs,
                      const std::vector<ConfigMassRow>& configs, int v) {
  mpz_class v_factorial;
  mpz_fac_ui(v_factorial.get_mpz_t(), static_cast<unsigned long>(v));

  MassResult out;
  for (const auto& row : designs) {
    if (row.aut_order == 0 || !mpz_divisible_ui_p(v_factorial.get_mpz_t(), row.aut_order)) {
      throw data_error("design group order does not divide v!");
    }
    mpz_class term = v_factorial / mpz_class(static_cast<unsigned long>(row.aut_order));
    out.lhs += term * static_cast<unsigned long>(row.u);
  }
  for (const auto& row : configs) {
    if (row.aut_order == 0 || !mpz_divisible_ui_p(v_factorial.get_mpz_t(), row.aut_order)) {
      throw data_error("configuration group order does not divide v!");
    }
    mpz_class term = v_factorial / mpz_class(static_cast<unsigned long>(row.aut_order));
    // 7!/168 = 30 labelled order-7 completions per labelled factorization.
    out.rhs += term * 30 * static_cast<unsigned long>(row.factorization_count);
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

AggregateReport aggregate_results(const std::vector<DesignLedgerRow>& designs) {
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>, std::uint64_t>
      grouped;
  std::map<std::uint64_t, std::uint64_t> marginal;
  for (const auto& row : designs) {
    ++grouped[{row.aut_order, row.u, row.i1, row.i3}];
    ++marginal[row.aut_order];
  }
  AggregateReport report;
  for (const auto& [key, count] : grouped) {
    report.rows.push_back(AggregateRow{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                       std::get<3>(key), count});
  }
  report.order_marginal.assign(marginal.begin(), marginal.end());
  return report;
}

std::uint64_t labelled_sts_count(int w) {
  switch (w) {
    case 7:
      return 30;  // 7!/168
    case 9: {
      // Derived once: 9!/|Aut| of the unique order-9 system.
      static const std::uint64_t n9 = [] {
        auto systems = classify_small_sts(9);
        if (systems.size() != 1) throw data_error("order-9 classification is not unique");
        auto canonical = canon::canonical_form(canon::encode_sts(systems.front()));
        return 362880 / canonical.automorphism_order;
      }();
      return n9;
    }
    default:
      throw input_error("labelled counts available for w = 7 and w = 9 only");
  }
}

double mu(int v, int w) {
  if (w != 7 && w != 9) throw input_error("mu supports w = 7 and w = 9");
  if (v < w) throw input_error("v must be at least w");
  if (!is_admissible_order(v)) throw input_error("v is not an admissible order");
  double n_w = static_cast<double>(labelled_sts_count(w));
  int block_count = w * (w - 1) / 6;
  // mu = N(w) * C(v,w) / (v-2)^blocks, computed as a stable product.
  double result = n_w;
  for (int i = 0; i < w; ++i) result *= static_cast<double>(v - i) / (i + 1);
  for (int i = 0; i < block_count; ++i) result /= static_cast<double>(v - 2);
  return result;
}

double alpha() { return 1.0 - std::exp(-1.0 / 168.0); }

double estimate_total(double count_with_subsystem) {
  if (count_with_subsystem < 0) throw input_error("count must be non-negative");
  return count_with_subsystem / alpha();
}

double latin_f(long long n) {
  if (n < 3) throw input_error("latin_f requires n >= 3");
  double c3 = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
  double result = 12.0;
  for (int i = 0; i < 3; ++i) result *= c3 / (static_cast<double>(n) * n * n);
  return result;
}

}  // namespace steiner::analysis
