#pragma once

// Weighted nilpotent presentations, collection from the left and nilpotent
// quotients of invariant L-presentations.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpnq/integer.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/words.hpp"
#include "lpnq/zlinalg.hpp"

namespace lpnq {

  // Normal form word g_{i_1}^{e_1} ... with increasing generator indices and
  // nonzero exponents.
  using PcWord = std::vector<std::pair<size_t, Integer>>;

  PcWord to_pc_word(Vector const& v);
  Vector to_vector(PcWord const& w, size_t n);

  // Polycyclic presentation on generators a_0, ..., a_{n-1} with relations
  //
  //   a_i^{o_i}   = power(i)          (o_i finite)
  //   [a_j, a_i]  = commutator(j, i)  (j > i)
  //
  // whose right hand sides only involve generators of larger index.
  // Generators from central_from() on are central of infinite order; they
  // carry no commutator relations.
  class NilpotentPresentation {
   public:
    NilpotentPresentation() = default;

    size_t size() const noexcept {
      return _weight.size();
    }

    // relative_order 0 means infinite order.
    size_t add_generator(size_t weight, Integer relative_order = 0);
    size_t add_central_generator(size_t weight);

    size_t weight(size_t i) const {
      return _weight.at(i);
    }
    Integer const& relative_order(size_t i) const {
      return _order.at(i);
    }
    bool finite(size_t i) const {
      return _order.at(i) != 0;
    }
    size_t central_from() const noexcept {
      return _central_from;
    }
    bool central(size_t i) const noexcept {
      return i >= _central_from;
    }
    // Largest weight, 0 for the trivial presentation.
    size_t nilpotency_class() const;

    PcWord const& power(size_t i) const {
      return _power.at(i);
    }
    PcWord const& commutator(size_t j, size_t i) const;

    void set_power(size_t i, PcWord w);
    void set_commutator(size_t j, size_t i, PcWord w);

   private:
    std::vector<size_t>              _weight;
    std::vector<Integer>             _order;
    std::vector<PcWord>              _power;
    std::vector<std::vector<PcWord>> _comm;  // _comm[j][i], i < j
    size_t                           _central_from = 0;
  };

  // Collection from the left in a fixed presentation. Elements are dense
  // exponent vectors; all member functions are const and may be called
  // concurrently.
  class Collector {
   public:
    Collector() = default;
    explicit Collector(NilpotentPresentation p);

    NilpotentPresentation const& presentation() const noexcept {
      return _p;
    }
    size_t size() const noexcept {
      return _p.size();
    }

    Vector identity() const {
      return Vector(size(), 0);
    }
    Vector generator(size_t i, Integer const& e = 1) const;

    // v <- v * a_i^e
    void mul_gen(Vector& v, size_t i, Integer const& e) const;
    // v <- v * x
    void mul(Vector& v, Vector const& x) const;
    void mul(Vector& v, PcWord const& x) const;

    Vector product(Vector u, Vector const& x) const {
      mul(u, x);
      return u;
    }
    Vector inverse(Vector const& x) const;
    Vector pow(Vector const& x, Integer q) const;
    Vector commutator(Vector const& u, Vector const& v) const;
    // Normal form of a word in the polycyclic generators.
    Vector collect(std::span<Syllable const> w) const;

   private:
    void   mul_word_pow(Vector& v, PcWord const& w, Integer const& q) const;
    void   add_power(Vector& v, size_t i, Integer const& e) const;
    void   step(Vector& v, size_t i, int sign) const;
    Vector apply_map(std::vector<Vector> const& images,
                     size_t                     from,
                     Vector const&              x) const;

    NilpotentPresentation            _p;
    std::vector<Vector>              _power;
    std::vector<std::vector<PcWord>> _conj;      // a_k^{a_i}, [k][i]
    std::vector<std::vector<PcWord>> _conj_inv;  // a_k^{a_i^-1}
  };

  // Normal form of w in the group given by p.
  Vector collect(NilpotentPresentation const& p, std::span<Syllable const> w);

  // Images of the free generators in a polycyclic presentation.
  struct QuotientMap {
    std::vector<Vector> images;

    // Image of a word of the free group.
    Vector operator()(Collector const& col, Word const& w) const;
  };

  // How a generator of a quotient arises: as the image of a free generator
  // or as the commutator [a_j, a_i] of two earlier generators.
  struct Definition {
    bool   image = true;
    size_t x     = 0;
    size_t j     = 0;
    size_t i     = 0;

    static Definition of_image(size_t x) {
      return {true, x, 0, 0};
    }
    static Definition of_commutator(size_t j, size_t i) {
      return {false, 0, j, i};
    }
    bool operator==(Definition const&) const = default;
  };

  // A weighted nilpotent presentation of G / gamma_{c+1} G, with the
  // epimorphism from F. Generators of weight w generate
  // gamma_w G / gamma_{w+1} G.
  struct NilpotentQuotient {
    NilpotentPresentation   presentation;
    QuotientMap             map;
    std::vector<Definition> definitions;
    // The c of G / gamma_{c+1} G; the class of the presentation is smaller
    // when G is nilpotent of smaller class.
    size_t nilpotency_class = 0;
  };

  class NonInvariantError : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct QuotientOptions {
    // Worker threads for consistency checks and relator images.
    unsigned jobs = 1;
  };

  // G / gamma_{c+1} G for the group G given by lp. Throws
  // std::invalid_argument if lp is not invariant and NonInvariantError if
  // an endomorphism turns out not to induce a map on the quotient.
  NilpotentQuotient nilpotent_quotient(LPresentation const& lp,
                                       size_t               c,
                                       QuotientOptions      opts = {});

  // The endomorphism of the quotient sending pi(x) to pi(x^phi); images are
  // given per polycyclic generator. Throws NonInvariantError if this is not
  // well defined.
  std::vector<Vector> induce_endomorphism(NilpotentQuotient const& q,
                                          FreeEndomorphism const&  phi);

  // Entry w - 1 is gamma_w / gamma_{w+1}, read off from the generators of
  // weight w.
  std::vector<AbelianInvariants>
  lcs_factors(NilpotentPresentation const& p);

}  // namespace lpnq
