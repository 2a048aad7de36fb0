#pragma once

// The covering group F / [K, F] of a nilpotent quotient F / K, where
// K = R gamma_{c+1} F, as a polycyclic presentation whose last generators
// (the tails) span the central subgroup K / [K, F].

#include <cstddef>
#include <vector>

#include "lpnq/integer.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"
#include "lpnq/zlinalg.hpp"

namespace lpnq {

  // The relation of the quotient a tail is attached to:
  //   image       x = pi(x) * t
  //   power       a_i^{o_i} = power(i) * t
  //   commutator  [a_j, a_i] = commutator(j, i) * t
  struct Tail {
    enum class Kind { image, power, commutator };

    Kind   kind = Kind::image;
    size_t x    = 0;
    size_t j    = 0;
    size_t i    = 0;

    bool operator==(Tail const&) const = default;
  };

  struct Cover {
    // The quotient F / K that is covered.
    NilpotentQuotient quotient;
    // Collector for the presentation of the quotient with the tails
    // appended as central generators of infinite order; the cover is this
    // group modulo the relation lattice on the tails.
    Collector         collector;
    std::vector<Tail> tails;
    // Lattice of relations among the tails, from the consistency checks.
    Lattice relations;
    // Images of the free generators in the cover.
    QuotientMap lift;
    // Image in F / F' = Z^|X| of each tail.
    std::vector<Vector> abelian;

    size_t first_tail() const noexcept {
      return quotient.presentation.size();
    }
    size_t tail_count() const noexcept {
      return tails.size();
    }

    // The tail coordinates of an element of the central subgroup. Throws
    // std::logic_error if v has a nonzero component outside the tails.
    Vector tail_part(Vector const& v) const;
    // Tail coordinates of the image of a word lying in K.
    Vector lift_relator(Word const& w) const;
  };

  // Throws std::logic_error if the presentation of q is inconsistent.
  Cover build_cover(NilpotentQuotient q, unsigned jobs = 1);

  // The endomorphism of the cover induced by phi, given by the images of
  // the generators of the quotient and by its matrix on the tails (rows are
  // images of tails, modulo the relation lattice). Throws NonInvariantError
  // if phi does not induce a map.
  struct CoverEndomorphism {
    std::vector<Vector> images;
    IntegerMatrix       on_tails;
  };

  CoverEndomorphism lift_endomorphism(Cover const&            cv,
                                      FreeEndomorphism const& phi);

  // Lattice on the tails whose quotient by the relation lattice is
  // (K cap F') / [K, F], the Schur multiplier of the quotient F / K.
  Lattice central_intersection_with_derived(Cover const& cv);

  // The next quotient in the tower: F / R gamma_{c+2} F, obtained from the
  // cover by factoring out the images of the relators. endos holds one
  // lifted endomorphism per endomorphism of lp.
  NilpotentQuotient next_quotient(Cover const&                          cv,
                                  LPresentation const&                  lp,
                                  std::vector<CoverEndomorphism> const& endos,
                                  unsigned                              jobs = 1);

  // The trivial group as the quotient of class 0 of a free group of the
  // given rank.
  NilpotentQuotient trivial_quotient(size_t rank);

}  // namespace lpnq
