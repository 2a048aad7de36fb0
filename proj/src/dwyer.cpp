#include "lpnq/dwyer.hpp"

#include <chrono>
#include <stdexcept>

namespace lpnq {

  namespace {
    using clock = std::chrono::steady_clock;

    double ms_since(clock::time_point t) {
      return std::chrono::duration<double, std::milli>(clock::now() - t)
          .count();
    }

    std::vector<CoverEndomorphism> lift_all(Cover const&         cv,
                                            LPresentation const& lp) {
      std::vector<CoverEndomorphism> out;
      for (auto const& e : lp.endomorphisms()) {
        out.push_back(lift_endomorphism(cv, e.map));
      }
      return out;
    }
  }  // namespace

  MultiplierGenerators
  multiplier_seed(AdjustedLPresentation const&          adj,
                  Cover const&                          cv,
                  std::vector<CoverEndomorphism> const& endos) {
    MultiplierGenerators out;
    for (auto const& q : adj.derived_fixed) {
      out.from_fixed.push_back(cv.lift_relator(q));
    }
    for (auto const& r : adj.derived_iterated) {
      out.from_iterated.push_back(cv.lift_relator(r));
    }
    for (auto const& b : adj.basis_words) {
      out.from_basis.push_back(cv.lift_relator(b));
    }
    for (auto const& e : endos) {
      out.endo_matrices.push_back(e.on_tails);
    }
    return out;
  }

  Lattice spin(MultiplierGenerators const& seeds, Lattice const& relations) {
    Lattice l = relations;
    spin(l, seeds.from_iterated, seeds.endo_matrices);
    for (auto const& v : seeds.from_fixed) {
      l.insert(v);
    }
    return l;
  }

  DwyerTower::DwyerTower(LPresentation lp, DwyerOptions opts)
      : _lp(std::move(lp)), _opts(opts) {
    if (!_lp.invariant()) {
      throw std::invalid_argument("presentation " + _lp.name()
                                  + " is not declared invariant");
    }
    _adj   = adjust(_lp);
    _cover = build_cover(trivial_quotient(_lp.rank()), _opts.jobs);
    _endos = lift_all(_cover, _lp);
  }

  DwyerResult const& DwyerTower::next() {
    auto start = clock::now();
    auto q     = next_quotient(_cover, _lp, _endos, _opts.jobs);
    double tq  = ms_since(start);

    start       = clock::now();
    _cover      = build_cover(std::move(q), _opts.jobs);
    _endos      = lift_all(_cover, _lp);
    _seeds      = multiplier_seed(_adj, _cover, _endos);
    _dwyer      = spin(_seeds, _cover.relations);
    _multiplier = central_intersection_with_derived(_cover);

    DwyerResult r;
    r.nilpotency_class = _cover.quotient.nilpotency_class;
    r.invariants       = subquotient_invariants(_dwyer, _cover.relations);
    r.generator_count  = _dwyer.rank();
    r.multiplier = subquotient_invariants(_multiplier, _cover.relations);
    r.t_quotient_ms = tq;
    r.t_dwyer_ms    = ms_since(start);
    _result         = std::move(r);
    return _result;
  }

  DwyerResult dwyer_quotient(LPresentation const& lp,
                             size_t               c,
                             DwyerOptions         opts) {
    if (c == 0) {
      throw std::invalid_argument("the class must be at least 1");
    }
    DwyerTower tower(lp, opts);
    for (size_t k = 1; k < c; ++k) {
      tower.next();
    }
    return tower.next();
  }

  std::vector<DwyerResult> dwyer_quotients(LPresentation const& lp,
                                           size_t               max_class,
                                           DwyerOptions         opts) {
    DwyerTower               tower(lp, opts);
    std::vector<DwyerResult> out;
    for (size_t c = 1; c <= max_class; ++c) {
      out.push_back(tower.next());
    }
    return out;
  }

}  // namespace lpnq
