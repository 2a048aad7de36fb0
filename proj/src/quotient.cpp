#include <stdexcept>

#include "lpnq/cover.hpp"
#include "lpnq/nq.hpp"

namespace lpnq {

  NilpotentQuotient nilpotent_quotient(LPresentation const& lp,
                                       size_t               c,
                                       QuotientOptions      opts) {
    if (!lp.invariant()) {
      throw std::invalid_argument("presentation " + lp.name()
                                  + " is not declared invariant");
    }
    NilpotentQuotient q = trivial_quotient(lp.rank());
    for (size_t k = 0; k < c; ++k) {
      Cover                          cv = build_cover(std::move(q), opts.jobs);
      std::vector<CoverEndomorphism> endos;
      for (auto const& e : lp.endomorphisms()) {
        endos.push_back(lift_endomorphism(cv, e.map));
      }
      q = next_quotient(cv, lp, endos, opts.jobs);
    }
    return q;
  }

}  // namespace lpnq
