#include <algorithm>
#include <stdexcept>

#include "pellbaker/reduce.hpp"

namespace pellbaker {
namespace {

long bits_of(const BigInt& v) { return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

}  // namespace

DPResult dp_reduce(const DPQuery& query, std::size_t max_attempts) {
  if (query.M < 1) throw std::invalid_argument("dp_reduce: M must be positive");
  {
    RealBall A = query.A(kDefaultPrecision), B = query.B(kDefaultPrecision);
    if (!A.is_positive()) throw std::invalid_argument("dp_reduce: A must be positive");
    if (!(B.lower() > 1)) throw std::invalid_argument("dp_reduce: B must exceed 1");
  }
  ContinuedFraction cf(query.tau);
  const BigInt bound = 6 * query.M;
  std::size_t k = 0;
  for (;;) {
    if (k >= cf.depth()) {
      if (cf.terminated()) throw AllConvergentsFailed("dp_reduce: tau is rational");
      cf.extend(cf.depth() + 16);
    }
    if (cf.q(k) > bound) break;
    ++k;
  }
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt, ++k) {
    if (k >= cf.depth()) {
      if (cf.terminated()) break;
      cf.extend(k + 8);
    }
    const BigInt q = cf.q(k);
    // Sign of eps = ||mu q|| - M ||tau q||, then w from its lower end.
    std::optional<DPResult> r = escalate(
        std::max(kDefaultPrecision, 2 * bits_of(q) + 64),
        [&](long prec) -> std::optional<std::optional<DPResult>> {
          RealBall qb(q, prec);
          RealBall eps = (query.mu(prec) * qb).distance_to_integer() -
                         RealBall(query.M, prec) * (query.tau(prec) * qb).distance_to_integer();
          if (!(eps.upper() > 0)) return std::optional<DPResult>{};
          if (!eps.is_positive()) return std::nullopt;
          RealBall x = log(query.A(prec) * qb / eps) / log(query.B(prec));
          DPResult res;
          res.w_max = floor_of(x.upper());
          res.index = k;
          res.q = q;
          res.epsilon = eps;
          return std::optional<DPResult>(res);
        });
    if (r) return *r;
  }
  throw AllConvergentsFailed("dp_reduce: eps <= 0 for " + std::to_string(max_attempts) +
                             " convergents");
}

}  // namespace pellbaker
