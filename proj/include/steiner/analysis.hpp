#pragma once

#include <cstdint>
#include <gmpxx.h>

#include <string>
#include <vector>

#include "steiner/types.hpp"

namespace steiner::analysis {

// Transversal of the isomorphism classes of order-v triple systems,
// generated directly by orderly search (independent of the extension
// pipeline). Supports any admissible v up to 15.
std::vector<TripleSystem> classify_small_sts(int v);

// One design ledger row as produced by the pipeline stage.
struct DesignLedgerRow {
  std::uint64_t config_index = 0;
  std::uint64_t design_seq = 0;
  std::uint64_t aut_order = 1;
  std::uint64_t u = 0, i1 = 0, i3 = 0;
  std::string canonical_hex;
};

// Per-configuration data entering the mass formula.
struct ConfigMassRow {
  std::uint64_t config_index = 0;
  std::uint64_t aut_order = 1;
  std::uint64_t factorization_count = 0;  // unordered 1-factorizations of G
};

struct MassResult {
  mpz_class lhs;  // sum over designs of v!/|Aut(S)| * s7(S)
  mpz_class rhs;  // sum over configurations of v!/|Aut(C)| * (7!/168) * f(C)
  bool equal = false;
};

// Orbit-stabilizer double count over a complete run.
MassResult mass_check(const std::vector<DesignLedgerRow>& designs,
                      const std::vector<ConfigMassRow>& configs, int v);

struct AggregateRow {
  std::uint64_t aut_order = 1;
  std::uint64_t u = 0, i1 = 0, i3 = 0;
  std::uint64_t count = 0;
};

struct AggregateReport {
  std::vector<AggregateRow> rows;  // sorted by (aut_order, u, i1, i3)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order_marginal;  // (order, count)
};

AggregateReport aggregate_results(const std::vector<DesignLedgerRow>& designs);

// Number of labelled order-w triple systems on w points. N(7) = 30; N(9)
// is derived from the classified order-9 system and its group order.
std::uint64_t labelled_sts_count(int w);

// Expected number of order-w subsystems in the random model.
double mu(int v, int w);

// Limit proportion of systems with at least one order-7 subsystem.
double alpha();

// Estimated total class count from the count with a subsystem.
double estimate_total(double count_with_subsystem);

// Random-model expectation for 3x3 sub-Latin squares of order n.
double latin_f(long long n);

}  // namespace steiner::analysis
