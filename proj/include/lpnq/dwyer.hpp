#pragma once

// Dwyer quotients M_c(G): the image of the Schur multiplier M(G) in the
// Schur multiplier of the class-c quotient G / gamma_{c+1} G.

#include <cstddef>
#include <memory>
#include <vector>

#include "lpnq/cover.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"
#include "lpnq/zlinalg.hpp"

namespace lpnq {

  // Generators of the image of M(G) in the cover of a quotient, as tail
  // coordinates: the images of the derived fixed relators, of the derived
  // iterated relators (to be spun) and, separately, of the abelianization
  // basis words which span a free complement.
  struct MultiplierGenerators {
    std::vector<Vector>        from_fixed;
    std::vector<Vector>        from_iterated;
    std::vector<Vector>        from_basis;
    std::vector<IntegerMatrix> endo_matrices;
  };

  MultiplierGenerators
  multiplier_seed(AdjustedLPresentation const&          adj,
                  Cover const&                          cv,
                  std::vector<CoverEndomorphism> const& endos);

  // Smallest lattice containing relations and the seeds that is closed
  // under the endomorphisms applied to the iterated seeds.
  Lattice spin(MultiplierGenerators const& seeds, Lattice const& relations);

  struct DwyerResult {
    size_t nilpotency_class = 0;
    // M_c(G)
    AbelianInvariants invariants;
    // Rank of the spun lattice on the tails.
    size_t generator_count = 0;
    // M(G / gamma_{c+1} G)
    AbelianInvariants multiplier;
    double            t_quotient_ms = 0;
    double            t_dwyer_ms    = 0;
  };

  struct DwyerOptions {
    unsigned jobs = 1;
  };

  // Computes M_1(G), M_2(G), ... one class at a time, reusing each quotient
  // for the next.
  class DwyerTower {
   public:
    // Throws std::invalid_argument if lp is not invariant.
    explicit DwyerTower(LPresentation lp, DwyerOptions opts = {});

    DwyerResult const& next();

    // Data of the last class computed by next().
    LPresentation const& presentation() const noexcept {
      return _lp;
    }
    AdjustedLPresentation const& adjusted() const noexcept {
      return _adj;
    }
    Cover const& cover() const noexcept {
      return _cover;
    }
    std::vector<CoverEndomorphism> const& endomorphisms() const noexcept {
      return _endos;
    }
    MultiplierGenerators const& seeds() const noexcept {
      return _seeds;
    }
    // Lattice on the tails presenting M_c(G) modulo the cover relations.
    Lattice const& dwyer_lattice() const noexcept {
      return _dwyer;
    }
    // Lattice on the tails presenting M(G / gamma_{c+1} G).
    Lattice const& multiplier_lattice() const noexcept {
      return _multiplier;
    }
    DwyerResult const& result() const noexcept {
      return _result;
    }

   private:
    LPresentation                  _lp;
    DwyerOptions                   _opts;
    AdjustedLPresentation          _adj;
    Cover                          _cover;
    std::vector<CoverEndomorphism> _endos;
    MultiplierGenerators           _seeds;
    Lattice                        _dwyer;
    Lattice                        _multiplier;
    DwyerResult                    _result;
  };

  DwyerResult dwyer_quotient(LPresentation const& lp,
                             size_t               c,
                             DwyerOptions         opts = {});

  std::vector<DwyerResult> dwyer_quotients(LPresentation const& lp,
                                           size_t               max_class,
                                           DwyerOptions         opts = {});

}  // namespace lpnq
