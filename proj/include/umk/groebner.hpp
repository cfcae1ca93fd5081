#pragma once

#include <cstddef>
#include <vector>

#include "umk/poly.hpp"

namespace umk {

inline constexpr std::size_t kDefaultGroebnerBudget = 20000;

struct GroebnerOptions {
  bool track = false;
  std::size_t budget = kDefaultGroebnerBudget;  // S-pairs reduced before giving up
};

// basis[i] == sum_k cofactors[i][k] * gens[k] modulo the ideal spanned by `base`.
struct GroebnerResult {
  std::vector<Poly> basis;
  std::vector<std::vector<Poly>> cofactors;
};

// Multivariate division. Quotients (one per basis element) are accumulated when requested.
Poly reduce(const PolyRing& R, const Poly& f, const std::vector<Poly>& basis,
            std::vector<Poly>* quotients = nullptr);

Poly s_polynomial(const PolyRing& R, const Poly& f, const Poly& g);

// Reduced Groebner basis of base + gens. `base` must already be a reduced Groebner basis;
// its elements carry zero cofactors. Coefficients must form a field.
GroebnerResult groebner(const PolyRing& R, const std::vector<Poly>& base,
                        const std::vector<Poly>& gens, const GroebnerOptions& opts = {});

std::vector<Poly> buchberger(const PolyRing& R, const std::vector<Poly>& gens,
                             std::size_t budget = kDefaultGroebnerBudget);

bool is_groebner_basis(const PolyRing& R, const std::vector<Poly>& G);

}  // namespace umk
