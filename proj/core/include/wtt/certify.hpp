#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/config.hpp"
#include "wtt/term.hpp"

namespace wtt {

// Generated inputs for the derived combinators. Every input lives over the
// ambient context [X : U0, F : Pi X U0, x0 : X] and supplies a type A and a
// family B over A (a one-binder body).
struct CertInput {
  std::size_t index = 0;
  Term a;
  Term b;
  std::string describe() const;
};

Context cert_ambient();
std::size_t cert_input_count();
CertInput cert_input(std::size_t index);

struct CertOutcome {
  std::string combinator;
  std::size_t input = 0;
  std::string carrier;
  bool ok = false;
  std::size_t judgements = 0;  // kernel checks performed
  std::string error;
};

// transport, compose, inverse, id_join, elim_join, id_tele, elim_tele,
// pi_lift_right, pi_lift_left, frobenius_j, happly.
const std::vector<std::string>& combinator_names();

// Instantiates the combinator over one generated input and checks every
// emitted term at its declared type in Weak mode. `sizes` restricts
// id_tele to {n} and elim_tele to {n, m}; by default id_tele covers
// n = 1..3 and elim_tele checks J for all n, m <= 3 with J-beta on the
// pairs listed by elim_tele_beta_pairs(input): every pair with n + m <= 4,
// on even inputs one of (1, 3), (3, 2), (2, 3) in turn, and (3, 3) on
// input 0.
// Throws std::invalid_argument for unknown names or sizes.
CertOutcome certify_combinator(const std::string& name, std::size_t input, const std::vector<std::size_t>& sizes = {},
                               const Config& cfg = {});

std::vector<std::pair<std::size_t, std::size_t>> elim_tele_beta_pairs(std::size_t input);

}  // namespace wtt
