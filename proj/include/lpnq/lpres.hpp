#pragma once

// Finite L-presentations <X | Q | Phi | R>: data model, text format,
// built-in testbed groups and the adjustment to Q, R inside F'.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpnq/words.hpp"
#include "lpnq/zlinalg.hpp"

namespace lpnq {

  struct NamedEndomorphism {
    std::string      name;
    FreeEndomorphism map;

    bool operator==(NamedEndomorphism const&) const = default;
  };

  class LPresentation {
   public:
    LPresentation() = default;
    // Throws std::invalid_argument if a word or an endomorphism is not over
    // the alphabet. An empty fixed part makes the presentation invariant.
    LPresentation(std::string                    name,
                  Alphabet                       alphabet,
                  std::vector<Word>              fixed,
                  std::vector<NamedEndomorphism> endomorphisms,
                  std::vector<Word>              iterated,
                  bool                           invariant);

    std::string const& name() const noexcept {
      return _name;
    }
    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    size_t rank() const noexcept {
      return _alphabet.size();
    }
    std::vector<Word> const& fixed() const noexcept {
      return _fixed;
    }
    std::vector<NamedEndomorphism> const& endomorphisms() const noexcept {
      return _endos;
    }
    std::vector<Word> const& iterated() const noexcept {
      return _iterated;
    }
    bool invariant() const noexcept {
      return _invariant;
    }

    bool operator==(LPresentation const&) const = default;

   private:
    std::string                    _name;
    Alphabet                       _alphabet;
    std::vector<Word>              _fixed;
    std::vector<NamedEndomorphism> _endos;
    std::vector<Word>              _iterated;
    bool                           _invariant = false;
  };

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& msg, size_t line, size_t column);

    size_t line() const noexcept {
      return _line;
    }
    size_t column() const noexcept {
      return _column;
    }
    std::string const& message() const noexcept {
      return _message;
    }

   private:
    std::string _message;
    size_t _line;
    size_t _column;
  };

  // The text format:
  //
  //   group grigorchuk {
  //     generators: a, b, c, d;
  //     fixed: a^2, b^2, c^2, d^2, b*c*d;
  //     endomorphism sigma: a -> c^a, b -> d, c -> b, d -> c;
  //     iterated: (a*d)^4, (a*d*a*c*a*c)^4;
  //     invariant: true;
  //   }
  //
  // Products are written with *, x^n is a power, x^w (w a generator, a
  // bracketed word or a commutator) is w^-1*x*w, ^ associates to the left,
  // [u,v,...] is a left-normed commutator with [u,v] = u^-1*v^-1*u*v and 1
  // is the identity. # starts a comment.
  LPresentation parse(std::string_view text);
  // Parses a single word over the alphabet.
  Word parse_word(std::string_view text, Alphabet const& alphabet);

  std::string serialize(LPresentation const& lp);

  struct AdjustedLPresentation;

  // The presentation base of adj with the derived relators written in
  // factored form.
  std::string serialize(AdjustedLPresentation const& adj);

  std::vector<std::string> catalog_names();
  // Throws std::invalid_argument for an unknown name.
  LPresentation catalog(std::string_view name);

  // Elements of the free monoid on phis of length at most depth, breadth
  // first and starting with the identity. A word phi_1 ... phi_k applies
  // phi_1 first.
  std::vector<FreeEndomorphism>
  enumerate_monoid(std::vector<FreeEndomorphism> const& phis,
                   size_t                               rank,
                   size_t                               depth);

  // Result of rewriting an invariant L-presentation so that all of its
  // relators except the abelianization basis words lie in F'.
  struct AdjustedLPresentation {
    // Fixed part is derived_fixed followed by basis_words, iterated part is
    // derived_iterated.
    LPresentation     base;
    std::vector<Word> derived_fixed;
    std::vector<Word> basis_words;
    std::vector<Word> derived_iterated;
    // The same relators as a relator of the input times powers of basis
    // words.
    std::vector<PowerProduct> derived_fixed_factors;
    std::vector<PowerProduct> derived_iterated_factors;
    // Hermite basis of the relation lattice U <= Z^n; row k is the exponent
    // vector of basis_words[k].
    HNFBasis basis;
    // Torsion-free rank of the abelianization.
    size_t hirsch = 0;
  };

  // Throws std::invalid_argument if lp is not invariant.
  AdjustedLPresentation adjust(LPresentation const& lp);

}  // namespace lpnq
