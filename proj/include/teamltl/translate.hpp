// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/hyper.hpp"

namespace teamltl {

class FragmentMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An LTL formula with every proposition indexed by `var`.
HFormula index_ltl(const Formula& psi, const std::string& var);

// phi^Phi for the trace variables `vars` (no quantifiers).
HFormula kcoherent_body(const Formula& phi, const std::vector<std::string>& vars);

// forall pi1 .. pik. phi^{pi1..pik}
HFormula kcoherent_translate(const Formula& phi, std::size_t k);
std::vector<std::string> kcoherent_vars(std::size_t k);

// exists r exists r1..rn forall pi. r & X G !r & [phi, r]
HFormula leftflat_translate(const Formula& phi);

// exists qS exists q exists r (TR_{q,r}(phi) & forall pi. qS@pi & q & r)
HFormula full_translate(const Formula& phi);

}  // namespace teamltl
