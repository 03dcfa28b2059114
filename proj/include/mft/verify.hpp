#pragma once

#include "mft/oracle.hpp"
#include "mft/triples.hpp"

namespace mft {

// F_q for q = p^d with p an odd prime and d in {1,2,4}.
FieldPtr field_of_order(int q);

// Identity checks grouped by topic. Each returns one report per identity;
// a tolerance <= 0 selects the default for the group.
std::vector<OracleReport> verify_kloosterman(int q, double tol = 0);     // q in {3,5,7,9,...}
std::vector<OracleReport> verify_mf(int q);                              // q prime
std::vector<OracleReport> verify_mackey(int q);                          // q prime; q = 3 adds triple 2 and Gow
std::vector<OracleReport> verify_triple1(int q, double tol = 0);
std::vector<OracleReport> verify_projections(int q, double tol = 0);
std::vector<OracleReport> verify_triple2(int nu, double tol = 0);       // q = 3
std::vector<OracleReport> verify_fourier(int q, std::uint64_t seed = 1, double tol = 0);
std::vector<OracleReport> verify_fs(int q, double tol = 0);
std::vector<OracleReport> verify_special(int q);
std::vector<OracleReport> verify_normal(std::uint64_t seed = 1, double tol = 0);

// Topic names accepted by verify_topic: kloosterman, mf, mackey, triple1,
// projections, triple2, fourier, fs, special, normal, oracle, all.
const std::vector<std::string>& verify_topics();
// Runs one topic (or every topic that applies at q) and returns the reports.
std::vector<OracleReport> verify_topic(const std::string& topic, int q, std::uint64_t seed = 1, double tol = 0);

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  double max_dev = 0;
  double seconds = 0;
  std::string detail;
  std::vector<OracleReport> reports;
};
// The acceptance criteria, numbered 1..11.
Criterion acceptance_criterion(int id, std::uint64_t seed = 1);

}  // namespace mft
